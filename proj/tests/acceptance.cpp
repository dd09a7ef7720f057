// Acceptance gate: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "phasekit/mub.hpp"
#include "phasekit/potentials.hpp"

using namespace phasekit;

namespace {

struct Outcome {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void below(double value, double tol) {
    worst = std::max(worst, value);
    if (!(value < tol)) ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      if (!note.empty()) note += "; ";
      note += why;
    }
  }
};

const std::vector<double> kPhis{0.0, 0.3, 1.7};
const std::vector<double> kTimes{0.0, 0.7, -2.1};

struct TruncatedCell {
  KappaParam kappa;
  int s;
};

std::vector<TruncatedCell> truncated_grid() {
  std::vector<TruncatedCell> cells;
  for (const auto& kappa : {KappaParam(1), KappaParam(1, 2), KappaParam(-1, 3), KappaParam(-1, 5)}) {
    const auto d = dimension_of(kappa);
    for (int s = 2; s <= 8; ++s) {
      if (d.finite && s > d.value()) continue;
      cells.push_back({kappa, s});
    }
  }
  return cells;
}

Outcome algebra_identities() {
  Outcome out;
  for (int d = 2; d <= 12; ++d) {
    for (double phi : kPhis) {
      const auto rep = build_representation(KappaParam::for_dimension(d), phi, d, RepresentationKind::finite);
      const auto report = commutator_residual(rep, CommutatorRhs::algebra);
      out.below(report.residual, 1e-12);
      out.below(std::abs(report.trace), 1e-12);
    }
  }
  for (const auto& cell : truncated_grid()) {
    for (double phi : kPhis) {
      const auto rep = build_representation(cell.kappa, phi, cell.s, RepresentationKind::truncated);
      out.below(commutator_residual(rep, CommutatorRhs::truncated).residual, 1e-12);
      const auto nil = nilpotency_report(rep);
      out.below(nil.minus_power_norm, 1e-12);
      out.below(nil.plus_power_norm, 1e-12);
    }
  }
  return out;
}

Outcome phase_operator_checks() {
  Outcome out;
  auto check = [&](const Representation& rep) {
    const auto op = phase_operator(rep);
    const auto r = phase_operator_residuals(op, rep);
    out.below(r.unitarity, 1e-12);
    out.below(r.cyclic, 1e-12);
    out.below(r.polar, 1e-12);
    for (const auto& st : phase_states(rep.dim, rep.kappa, rep.phi)) {
      out.below(max_abs(op.matrix * st.amplitudes - root_of_unity(st.label.index, rep.dim) * st.amplitudes), 1e-12);
    }
  };
  for (int d = 2; d <= 12; ++d) {
    for (double phi : kPhis) check(build_representation(KappaParam::for_dimension(d), phi, d, RepresentationKind::finite));
  }
  for (const auto& cell : truncated_grid()) {
    for (double phi : kPhis) check(build_representation(cell.kappa, phi, cell.s, RepresentationKind::truncated));
  }
  return out;
}

Outcome temporal_stability() {
  Outcome out;
  auto family = [&](const KappaParam& kappa, int dim) {
    const auto weights = build_weights(kappa, dim);
    for (double phi : kPhis) {
      for (double t : kTimes) {
        const auto before = phase_states(dim, kappa, phi);
        const auto after = phase_states(dim, kappa, phi + t);
        const auto rep0 = build_representation(kappa, phi, dim, RepresentationKind::truncated);
        const auto rep1 = build_representation(kappa, phi + t, dim, RepresentationKind::truncated);
        const auto mu0 = vs_phase_states(rep0, weights);
        const auto mu1 = vs_phase_states(rep1, weights);
        for (int m = 0; m < dim; ++m) {
          out.below(max_abs(evolve(before[m], t).amplitudes - after[m].amplitudes), 1e-12);
          out.below(max_abs(evolve(mu0[m], t).amplitudes - mu1[m].amplitudes), 1e-12);
        }
      }
    }
  };
  for (int d = 2; d <= 12; ++d) family(KappaParam::for_dimension(d), d);
  for (const auto& cell : truncated_grid()) family(cell.kappa, cell.s);
  for (const auto& kappa : {KappaParam(0), KappaParam(1, 3), KappaParam(1)}) {
    for (double phi : kPhis) {
      for (double t : kTimes) {
        for (double theta : {-2.5, 0.0, 1.1}) {
          const auto st = theta_phase_state(theta, phi, kappa, 24);
          out.below(max_abs(evolve(st, t).amplitudes - theta_phase_state(theta, phi + t, kappa, 24).amplitudes),
                    1e-12);
        }
      }
    }
  }
  return out;
}

Outcome overlap_oracle() {
  Outcome out;
  for (int d = 2; d <= 13; ++d) {
    const auto kappa = KappaParam::for_dimension(d);
    for (double phi : kPhis) {
      for (double phi_p : kPhis) {
        const auto a = phase_states(d, kappa, phi);
        const auto b = phase_states(d, kappa, phi_p);
        for (int m = 0; m < d; ++m) {
          for (int mp = 0; mp < d; ++mp) {
            out.below(std::abs(overlap(a[m], b[mp]) - overlap_rho_sum(d, kappa, m, phi, mp, phi_p)), 1e-12);
          }
        }
      }
    }
    for (int p = 0; p < d; ++p) {
      for (int pp = 0; pp < d; ++pp) {
        for (int m = 0; m < d; ++m) {
          for (int mp = 0; mp < d; ++mp) {
            const Complex direct = overlap(mub_state_finite(d, p, m), mub_state_finite(d, pp, mp));
            out.below(std::abs(direct - overlap_via_gauss_finite(d, p, m, pp, mp)), 1e-12);
          }
        }
      }
    }
    for (const auto& tk : {KappaParam(1), KappaParam::for_dimension(d)}) {
      for (int p = 0; p < d; ++p) {
        for (int pp = 0; pp < d; ++pp) {
          for (int m = 0; m < d; ++m) {
            for (int mp = 0; mp < d; ++mp) {
              const Complex direct = overlap(mub_state_truncated(tk, d, p, m), mub_state_truncated(tk, d, pp, mp));
              out.below(std::abs(direct - overlap_via_gauss_truncated(tk, d, p, m, pp, mp)), 1e-12);
            }
          }
        }
      }
    }
  }
  return out;
}

Outcome mub_completeness() {
  Outcome out;
  auto check = [&](const MubRoute& route, const std::string& label) {
    const auto set = build_mub_set(route, 1e-10);
    out.require(static_cast<int>(set.bases.size()) == set.dim + 1, label + ": wrong basis count");
    out.worst = std::max(out.worst, set.max_deviation);
    out.require(set.complete && set.max_deviation <= 1e-10,
                label + ": max deviation " + std::to_string(set.max_deviation));
  };
  for (int d : {2, 3, 5, 7, 11, 13}) {
    check(FiniteRoute{d}, "finite d=" + std::to_string(d));
    check(TruncatedRoute{KappaParam(1), d}, "truncated kappa=1 d=" + std::to_string(d));
    const auto k = KappaParam::for_dimension(d);
    check(TruncatedRoute{k, d}, "truncated kappa=" + k.to_string() + " d=" + std::to_string(d));
  }
  for (int d : {4, 6}) {
    const auto set = build_mub_set(FiniteRoute{d}, 1e-10);
    out.require(!set.complete, "composite d=" + std::to_string(d) + " reported complete");
    out.require(!set.violating_pairs(1e-10).empty(), "composite d=" + std::to_string(d) + " without a violating pair");
  }
  return out;
}

Outcome weyl_structure() {
  Outcome out;
  for (const auto& cell : truncated_grid()) {
    for (double phi : kPhis) {
      const auto rep = build_representation(cell.kappa, phi, cell.s, RepresentationKind::truncated);
      const auto pair = build_vs_us(rep);
      const auto r = weyl_residuals(pair);
      out.below(r.v_power, 1e-12);
      out.below(r.u_power, 1e-12);
      out.below(r.s_commutation, 1e-12);
      const auto w = build_weights(cell.kappa, cell.s);
      bool constant = true;
      for (int n = 1; n < w.size(); ++n) constant = constant && std::abs(w.at(n) - 1.0) < 1e-15;
      if (!constant) out.require(r.nonunitarity > 0.1, "nonunitarity witness too small");
    }
  }
  return out;
}

Outcome potentials() {
  Outcome out;
  std::vector<PotentialSpec> specs{PotentialSpec::parse("ho")};
  for (double u = 2; u <= 5; ++u) {
    for (double v = 2; v <= 5; ++v) specs.emplace_back(PoschlTeller{u, v});
  }
  for (int l = 1; l <= 10; ++l) specs.emplace_back(Morse{l});
  for (const auto& spec : specs) {
    const auto params = to_spectrum_params(spec);
    const int count = params.level_count.value_or(21);
    for (int n = 0; n < count; ++n) {
      const double f = n * (1.0 + params.kappa_equiv * (n - 1));
      out.below(std::abs(energy(params, n) - params.b * f), 1e-12);
    }
    const int n_max = spec.name() == "ho" ? 20 : spec.name() == "pt" ? 15 : count - 1;
    out.below(weight_table(spec, n_max).max_rel_err, 1e-10);
    if (const auto* morse = std::get_if<Morse>(&spec.variant())) {
      // -2b/a = 2l - 1 is odd: s = -b/a + 3/2 = l + 1.
      const int s = truncation_order(params).order.value_or(-1);
      out.require(s == morse->l + 1, "Morse truncation mismatch at l=" + std::to_string(morse->l));
      std::set<double> seen;
      for (int n = 0; n < s; ++n) seen.insert(energy(params, n));
      out.require(static_cast<int>(seen.size()) == s, "repeated level within truncation");
    }
  }
  return out;
}

Outcome infinite_surrogate() {
  Outcome out;
  for (const auto& kappa : {KappaParam(0), KappaParam(1, 3), KappaParam(1)}) {
    for (double phi : kPhis) {
      const auto op = phase_operator_infinite_cutoff(kappa, phi, 24);
      const auto r = cutoff_identity_report(op);
      out.require(r.left_residual == 0.0 || r.left_residual < 1e-15, "E^dag E deviates from I - |0><0|");
      out.worst = std::max(out.worst, r.left_residual);
      for (int grid : {25, 26, 100}) out.below(max_abs(theta_closure(kappa, phi, 24, grid) - Matrix::Identity(25, 25)), 1e-12);
    }
  }
  return out;
}

Outcome qubit_anchor() {
  Outcome out;
  const auto set = build_mub_set(FiniteRoute{2});
  const double r = 1 / std::sqrt(2.0);
  const std::vector<std::vector<Vector>> standard{
      {Vector{{r, r}}, Vector{{r, -r}}},
      {Vector{{Complex(r), Complex(0, r)}}, Vector{{Complex(r), Complex(0, -r)}}},
      {Vector{{1, 0}}, Vector{{0, 1}}}};
  out.require(set.bases.size() == 3, "expected three bases");
  for (std::size_t b = 0; b < standard.size() && b < set.bases.size(); ++b) {
    for (std::size_t m = 0; m < 2; ++m) {
      const Vector& v = set.bases[b].vectors[m].amplitudes;
      out.below(std::abs(std::abs(v.dot(standard[b][m])) - 1.0), 1e-12);
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "algebra identities", 5, algebra_identities},
      {2, "phase operator", 5, phase_operator_checks},
      {3, "temporal stability", 5, temporal_stability},
      {4, "overlap oracle (rho-sum, Gauss sum), d <= 13", 10, overlap_oracle},
      {5, "MUB completeness, both routes", 30, mub_completeness},
      {6, "V_s / U_s structure", 5, weyl_structure},
      {7, "potentials", 5, potentials},
      {8, "infinite-regime surrogate", 5, infinite_surrogate},
      {9, "qubit anchor", 1, qubit_anchor},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.note = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) outcome.require(false, "runtime limit exceeded");
    if (!outcome.ok) ++failures;
    std::printf("criterion %d %-46s %s  max residual %.3e  %.3fs (limit %.0fs)%s%s\n", c.id, c.name,
                outcome.ok ? "PASS" : "FAIL", outcome.worst, seconds, c.limit_seconds,
                outcome.note.empty() ? "" : "  ", outcome.note.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
