#include <catch_amalgamated.hpp>

#include <cmath>

#include "phasekit/mub.hpp"

using namespace phasekit;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force S(u,v,w) in floating point, no modular reduction.
Complex oracle_gauss(long long u, long long v, long long w) {
  Complex sum{};
  for (long long k = 0; k < std::abs(w); ++k) {
    sum += std::exp(Complex(0, kPi * double(u * k * k + v * k) / double(w)));
  }
  return sum;
}

bool proportional(const Vector& a, const Vector& b) {
  return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) < 1e-12;
}

}  // namespace

TEST_CASE("quantized phases") {
  CHECK(quantize_phi_finite(2, 0) == 0.0);
  CHECK_THAT(quantize_phi_finite(2, 1), WithinAbs(-kPi / 2, 1e-15));
  CHECK_THAT(quantize_phi_finite(5, 3), WithinAbs(-12 * kPi / 5, 1e-14));
  CHECK_THAT(quantize_phi_truncated(KappaParam(1, 2), 3, 1), WithinAbs(4 * kPi / 3, 1e-14));
  CHECK_THROWS_AS(quantize_phi_truncated(KappaParam(0), 3, 1), DomainError);
}

TEST_CASE("finite route states") {
  const double r = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < 2; ++m) {
    const auto st = mub_state_finite(2, 0, m);
    CHECK(std::abs(st.amplitudes(0) - r) < 1e-15);
    CHECK(std::abs(st.amplitudes(1) - (m == 0 ? r : -r)) < 1e-15);
  }
  const auto plus_i = mub_state_finite(2, 1, 0);
  CHECK(std::abs(plus_i.amplitudes(1) - Complex(0, r)) < 1e-15);

  // The exact modular exponent agrees with the generic phase state at quantized phi.
  for (int d : {3, 4, 5, 7}) {
    for (int p = 0; p < d; ++p) {
      for (int m = 0; m < d; ++m) {
        const auto st = mub_state_finite(d, p, m);
        const auto generic = phase_state(d, KappaParam::for_dimension(d), m, quantize_phi_finite(d, p));
        CHECK(max_abs(st.amplitudes - generic.amplitudes) < 1e-12);
        for (int n = 0; n < d; ++n) CHECK_THAT(std::abs(st.amplitudes(n)), WithinAbs(1 / std::sqrt(d), 1e-15));
      }
    }
  }
  CHECK_THROWS_AS(mub_state_finite(3, 3, 0), DomainError);
}

TEST_CASE("relabeled finite states are the reversed vectors") {
  for (int d : {3, 5}) {
    for (int p = 0; p < d; ++p) {
      for (int m = 0; m < d; ++m) {
        const Vector direct = mub_state_finite(d, p, m).amplitudes;
        const Vector relabeled = mub_state_finite_relabeled(d, p, m).amplitudes;
        CHECK(proportional(relabeled, direct.reverse()));
      }
    }
  }
}

TEST_CASE("truncated route states") {
  const Complex q3 = root_of_unity(1, 3);
  const double r = 1 / std::sqrt(3.0);
  const auto fourier = mub_state_truncated(KappaParam(1), 3, 0, 1);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(fourier.amplitudes(n) - r * std::pow(q3, n)) < 1e-14);

  const auto quad = mub_state_truncated(KappaParam(1), 3, 1, 0);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(quad.amplitudes(n) - r * std::pow(q3, -n * n)) < 1e-14);

  const auto shifted = mub_state_truncated(KappaParam(-1, 3), 3, 1, 2);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(shifted.amplitudes(n) - r * std::pow(q3, n * (4 - n) + 2 * n)) < 1e-14);

  // Agrees with the truncated phase state at the quantized phase.
  for (const auto& kappa : {KappaParam(1), KappaParam(1, 2), KappaParam(-1, 4)}) {
    for (int p = 0; p < 5; ++p) {
      for (int m = 0; m < 5; ++m) {
        const auto generic = phase_state(5, kappa, m, quantize_phi_truncated(kappa, 5, p));
        CHECK(max_abs(mub_state_truncated(kappa, 5, p, m).amplitudes - generic.amplitudes) < 1e-11);
      }
    }
  }
  CHECK_THROWS_AS(mub_state_truncated(KappaParam(0), 3, 0, 0), DomainError);
  CHECK_THROWS_AS(mub_state_truncated(KappaParam(2, 3), 3, 0, 0), DomainError);
  CHECK_THROWS_AS(mub_state_truncated(KappaParam(-1, 2), 5, 0, 0), DomainError);
}

TEST_CASE("Gauss sums") {
  CHECK(std::abs(gauss_sum({2, 0, 3}) - Complex(0, std::sqrt(3.0))) < 1e-14);
  CHECK(std::abs(gauss_sum({1, 0, 2}) - Complex(1, 1)) < 1e-14);
  for (long long w : {-7, -4, 1, 2, 3, 5, 6, 11}) {
    for (long long u = -6; u <= 6; ++u) {
      for (long long v = -8; v <= 8; ++v) {
        CHECK(std::abs(gauss_sum({u, v, w}) - oracle_gauss(u, v, w)) < 1e-11);
      }
    }
  }
  CHECK_THROWS_AS(gauss_sum({1, 0, 0}), DomainError);
}

TEST_CASE("Gauss modulus is sqrt(w) only away from u = 0 mod w") {
  for (long long w : {3, 5, 7}) {
    for (long long u = 1; u < 2 * w; ++u) {
      if (u % w == 0) continue;
      for (long long v = 0; v < 2 * w; ++v) {
        if ((u * w + v) % 2 != 0) continue;
        CHECK_THAT(std::abs(gauss_sum({u, v, w})), WithinAbs(std::sqrt(double(w)), 1e-12));
      }
    }
  }
  // u = w with uw + v even: the sum degenerates to w or 0.
  CHECK_THAT(std::abs(gauss_sum({3, 3, 3})), WithinAbs(3.0, 1e-12));
  CHECK_THAT(std::abs(gauss_sum({3, 1, 3})), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::abs(gauss_sum({2, 0, 2})), WithinAbs(0.0, 1e-12));
  CHECK_THAT(std::abs(gauss_sum({2, 2, 2})), WithinAbs(2.0, 1e-12));
}

TEST_CASE("overlaps through Gauss sums") {
  for (int d : {2, 3, 4, 5, 6, 7}) {
    for (int p = 0; p < d; ++p) {
      for (int pp = 0; pp < d; ++pp) {
        for (int m = 0; m < d; ++m) {
          for (int mp = 0; mp < d; ++mp) {
            const Complex direct = overlap(mub_state_finite(d, p, m), mub_state_finite(d, pp, mp));
            CHECK(std::abs(direct - overlap_via_gauss_finite(d, p, m, pp, mp)) < 1e-12);
          }
        }
      }
    }
  }
  for (const auto& kappa : {KappaParam(1), KappaParam(-1, 4)}) {
    const int s = 5;
    for (int p = 0; p < s; ++p) {
      for (int pp = 0; pp < s; ++pp) {
        for (int m = 0; m < s; ++m) {
          for (int mp = 0; mp < s; ++mp) {
            const Complex direct = overlap(mub_state_truncated(kappa, s, p, m), mub_state_truncated(kappa, s, pp, mp));
            CHECK(std::abs(direct - overlap_via_gauss_truncated(kappa, s, p, m, pp, mp)) < 1e-12);
          }
        }
      }
    }
  }
  for (int m = 0; m < 3; ++m) {
    for (int mp = 0; mp < 3; ++mp) {
      CHECK_THAT(std::abs(overlap_via_gauss_finite(3, 0, m, 1, mp)), WithinAbs(1 / std::sqrt(3.0), 1e-12));
    }
  }
}

TEST_CASE("qubit MUBs are the standard three") {
  const auto set = build_mub_set(FiniteRoute{2});
  REQUIRE(set.bases.size() == 3);
  CHECK(set.complete);
  const double r = 1 / std::sqrt(2.0);
  std::vector<std::vector<Vector>> expected(3);
  expected[0] = {Vector{{r, r}}, Vector{{r, -r}}};
  expected[1] = {Vector{{Complex(r), Complex(0, r)}}, Vector{{Complex(r), Complex(0, -r)}}};
  expected[2] = {Vector{{1, 0}}, Vector{{0, 1}}};
  for (int b = 0; b < 3; ++b) {
    for (int m = 0; m < 2; ++m) CHECK(proportional(set.bases[b].vectors[m].amplitudes, expected[b][m]));
  }
}

TEST_CASE("complete sets for primes") {
  const auto seven = build_mub_set(FiniteRoute{7});
  CHECK(seven.bases.size() == 8);
  CHECK(seven.prime);
  CHECK(seven.complete);
  CHECK(seven.max_deviation < 1e-10);
  CHECK(seven.overlap_report.size() == 28);

  const auto five = build_mub_set(TruncatedRoute{KappaParam(1), 5});
  CHECK(five.bases.size() == 6);
  CHECK(five.complete);
  CHECK(five.max_orthonormality_residual < 1e-12);
  CHECK(route_name(five.route) == "truncated");
}

TEST_CASE("composite dimensions are flagged") {
  for (int d : {4, 6}) {
    const auto set = build_mub_set(FiniteRoute{d});
    CHECK_FALSE(set.prime);
    CHECK_FALSE(set.complete);
    CHECK_FALSE(set.violating_pairs(1e-10).empty());
  }
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("qubit truncated route cannot be unbiased") {
  // Real +-1 amplitudes only: two of the phase bases coincide.
  for (const auto& kappa : {KappaParam(1), KappaParam(-1)}) {
    const auto set = build_mub_set(TruncatedRoute{kappa, 2});
    CHECK_FALSE(set.complete);
    CHECK_FALSE(set.violating_pairs(1e-10).empty());
  }
}

TEST_CASE("pseudo-commutation") {
  for (const auto& [d, p] : {std::pair{3, 0}, std::pair{4, 1}, std::pair{5, 3}}) {
    const auto r = pseudo_commutation_check(d, p);
    CHECK(r.max() < 1e-12);
  }
}
