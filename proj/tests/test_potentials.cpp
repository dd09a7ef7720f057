#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "phasekit/mub.hpp"
#include "phasekit/potentials.hpp"

using namespace phasekit;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("potential parsing") {
  CHECK(PotentialSpec::parse("ho").name() == "ho");
  const auto pt = PotentialSpec::parse("pt:u=2,v=3");
  CHECK(pt.name() == "pt");
  CHECK(pt.to_string() == "pt:u=2,v=3");
  CHECK(PotentialSpec::parse("morse:l=4").to_string() == "morse:l=4");
  CHECK_THROWS_AS(PotentialSpec::parse("pt:u=1,v=3"), DomainError);
  CHECK_THROWS_AS(PotentialSpec::parse("morse:l=0"), DomainError);
  CHECK_THROWS_AS(PotentialSpec::parse("morse:l=2.5"), DomainError);
  CHECK_THROWS_AS(PotentialSpec::parse("square"), DomainError);
  CHECK_THROWS_AS(PotentialSpec::parse("pt:u=2"), DomainError);
}

TEST_CASE("spectrum parameters") {
  const auto ho = to_spectrum_params(PotentialSpec::parse("ho"));
  CHECK(ho.a == 0.0);
  CHECK(ho.b == 1.0);
  CHECK(ho.kappa_exact == KappaParam(0));

  const auto pt = to_spectrum_params(PotentialSpec::parse("pt:u=2,v=3"));
  CHECK(pt.b == 3.0);
  CHECK(pt.kappa_exact == KappaParam(1, 6));
  CHECK_FALSE(pt.level_count);

  const auto morse = to_spectrum_params(PotentialSpec::parse("morse:l=3"));
  CHECK(morse.kappa_exact == KappaParam(-1, 5));
  CHECK(morse.level_count == 4);

  CHECK_THROWS_AS(SpectrumParams::from_ab(1.0, 0.0), DomainError);
}

TEST_CASE("energies") {
  const auto ho = to_spectrum_params(PotentialSpec::parse("ho"));
  CHECK(energy(ho, 5) == 5.0);
  const auto morse2 = to_spectrum_params(PotentialSpec::parse("morse:l=2"));
  CHECK(energies(morse2, 3) == std::vector<double>{0.0, 1.5, 2.0});
  CHECK_THROWS_AS(energy(morse2, 3), DomainError);
  CHECK(energy(to_spectrum_params(PotentialSpec::parse("morse:l=3")), 2) == 4.0);
  const auto pt22 = to_spectrum_params(PotentialSpec::parse("pt:u=2,v=2"));
  CHECK(energy(pt22, 1) == 2.5);
  CHECK(energy(pt22, 2) == 6.0);
  CHECK(energy(to_spectrum_params(PotentialSpec::parse("pt:u=2,v=3")), 3) == 12.0);
}

TEST_CASE("energies are b F(n) for kappa = a / 2b") {
  for (const char* text : {"ho", "pt:u=2,v=2", "pt:u=3,v=5", "morse:l=2", "morse:l=7"}) {
    const auto params = to_spectrum_params(PotentialSpec::parse(text));
    const int count = params.level_count.value_or(20);
    for (int n = 0; n < count; ++n) {
      const double f = n * (1.0 + params.kappa_equiv * (n - 1));
      CHECK_THAT(energy(params, n), WithinAbs(params.b * f, 1e-12));
    }
  }
}

TEST_CASE("truncation orders") {
  CHECK(truncation_order(to_spectrum_params(PotentialSpec::parse("morse:l=2"))).order == 3);
  CHECK(truncation_order(SpectrumParams::from_ab(-1.0, 2.0)).order == 3);
  const auto ho = truncation_order(to_spectrum_params(PotentialSpec::parse("ho")));
  CHECK(ho.is_infinite());
  CHECK(ho.effective() == kDefaultCutoff);
  CHECK_THROWS_AS(SpectrumParams::from_ab(-1.0, 1.3), DomainError);

  for (int l = 1; l <= 10; ++l) {
    const auto params = to_spectrum_params(PotentialSpec(Morse{l}));
    const int s = truncation_order(params).order.value();
    CHECK(s == l + 1);
    std::set<double> seen;
    for (int n = 0; n < s; ++n) seen.insert(energy(params, n));
    CHECK(seen.size() == static_cast<std::size_t>(s));
    // The next level would repeat e_{2l-s}.
    const double beyond = 0.5 * params.a * s * (s - 1) + params.b * s;
    CHECK(seen.count(beyond) == 1);
  }
}

TEST_CASE("weights against Gamma closed forms") {
  const auto ho = weight_table(PotentialSpec::parse("ho"), 4);
  for (int n = 0; n <= 4; ++n) CHECK(ho.table.at(n) == std::vector<double>{1, 1, 2, 6, 24}[n]);

  const auto morse = weight_table(PotentialSpec::parse("morse:l=2"), 2);
  CHECK_THAT(morse.table.at(1), WithinRel(1.5, 1e-15));
  CHECK_THAT(morse.table.at(2), WithinRel(3.0, 1e-15));
  CHECK_THAT(morse.gamma_values[2], WithinRel(3.0, 1e-13));

  const auto pt = weight_table(PotentialSpec::parse("pt:u=2,v=2"), 2);
  CHECK_THAT(pt.table.at(2), WithinRel(15.0, 1e-15));
  CHECK_THAT(pt.gamma_values[2], WithinRel(15.0, 1e-13));

  CHECK(weight_table(PotentialSpec::parse("ho"), 20).max_rel_err < 1e-10);
  for (double u = 2; u <= 5; ++u) {
    for (double v = 2; v <= 5; ++v) {
      CHECK(weight_table(PotentialSpec(PoschlTeller{u, v}), 15).max_rel_err < 1e-10);
    }
  }
  for (int l = 1; l <= 10; ++l) CHECK(weight_table(PotentialSpec(Morse{l}), l).max_rel_err < 1e-10);

  const auto deep = weight_table(PotentialSpec::parse("ho"), 120);
  CHECK(deep.table.log_domain);
  CHECK(deep.max_rel_err < 1e-10);
}

TEST_CASE("physical phase states") {
  const auto morse = physical_phase_states(PotentialSpec::parse("morse:l=2"), 3, 0.0);
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) {
      CHECK(std::abs(morse.fourier[m].amplitudes(n) - root_of_unity(m * n, 3) / std::sqrt(3.0)) < 1e-15);
    }
  }

  const auto ho = PotentialSpec::parse("ho");
  const auto at1 = physical_phase_states(ho, 4, 1.0);
  const auto at17 = physical_phase_states(ho, 4, 1.7);
  for (int m = 0; m < 4; ++m) {
    CHECK(max_abs(evolve(at1.fourier[m], 0.7).amplitudes - at17.fourier[m].amplitudes) < 1e-12);
    CHECK(max_abs(evolve(at1.discrete[m], 0.7).amplitudes - at17.discrete[m].amplitudes) < 1e-12);
  }

  const auto pt = physical_phase_states(PotentialSpec::parse("pt:u=2,v=2"), 4, 0.0);
  const double e3 = energy(to_spectrum_params(PotentialSpec::parse("pt:u=2,v=2")), 3);
  Vector expected(4);
  expected << 1.0, 1.0 / std::sqrt(2.5), 1.0 / std::sqrt(15.0), 1.0 / std::sqrt(15.0 * e3);
  expected.normalize();
  CHECK(max_abs(pt.discrete[0].amplitudes - expected) < 1e-14);

  CHECK_THROWS_AS(physical_phase_states(PotentialSpec::parse("morse:l=2"), 4, 0.0), DomainError);
}

TEST_CASE("physical phase at quantized phi reproduces truncated MUB vectors") {
  for (const char* text : {"pt:u=2,v=2", "morse:l=3"}) {
    const auto spec = PotentialSpec::parse(text);
    const auto params = to_spectrum_params(spec);
    const int s = params.level_count.value_or(5);
    for (int p = 0; p < s; ++p) {
      const auto states = physical_phase_states(spec, s, physical_mub_phi(spec, s, p));
      for (int m = 0; m < s; ++m) {
        const auto mub = mub_state_truncated(*params.kappa_exact, s, p, m);
        CHECK(max_abs(states.fourier[m].amplitudes - mub.amplitudes) < 1e-11);
      }
    }
  }
  CHECK_THROWS_AS(physical_mub_phi(PotentialSpec::parse("ho"), 3, 1), DomainError);
}
