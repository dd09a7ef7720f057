#include "phasekit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "phasekit/mub.hpp"
#include "phasekit/potentials.hpp"

namespace phasekit {

namespace {

class Row {
 public:
  Row(std::string name, double tol, bool lower_bound = false) {
    row_.invariant = std::move(name);
    row_.tolerance = tol;
    row_.lower_bound = lower_bound;
    row_.max_residual = lower_bound ? std::numeric_limits<double>::infinity() : 0.0;
  }

  void add(double residual) {
    ++row_.cells;
    row_.max_residual = row_.lower_bound ? std::min(row_.max_residual, residual)
                                         : std::max(row_.max_residual, residual);
  }

  void add_flag(bool ok) { add(ok ? 0.0 : 1.0); }

  VerificationRow finish() {
    row_.passed = row_.lower_bound ? row_.max_residual > row_.tolerance
                                   : row_.max_residual < row_.tolerance;
    if (row_.cells == 0) row_.passed = false;
    return row_;
  }

 private:
  VerificationRow row_;
};

const std::vector<double> kPhis{0.0, 0.3, 1.7};
const std::vector<double> kTimes{0.0, 0.7, -2.1};
const std::vector<int> kPrimes{2, 3, 5, 7, 11, 13};

struct TruncatedCell {
  KappaParam kappa;
  int s;
};

std::vector<TruncatedCell> truncated_grid() {
  std::vector<TruncatedCell> cells;
  for (const auto& k : {KappaParam(1), KappaParam(1, 2), KappaParam(-1, 3), KappaParam(-1, 5)}) {
    const Dimension d = dimension_of(k);
    for (int s = 2; s <= 8; ++s) {
      if (d.finite && s > d.value()) continue;
      cells.push_back({k, s});
    }
  }
  return cells;
}

double state_distance(const PhaseState& a, const PhaseState& b) {
  return max_abs(Vector(a.amplitudes - b.amplitudes));
}

void algebra_rows(const Tolerances& tol, std::vector<VerificationRow>& out) {
  Row recurrence("F(n+1) - F(n) = 1 + 2 kappa n (exact)", 0.5);
  Row symmetry("F(n) = F(d-n) in the finite regime (exact)", 0.5);
  Row ground("ground level nondegenerate", 0.5);
  Row adjoint("a+ = (a-)^dagger", 1e-14);
  Row comm("[a-,a+] = I + 2 kappa N (finite d = 2..12)", tol.matrix);
  Row trace("trace [a-,a+] = 0 (finite d = 2..12)", tol.matrix);
  Row trunc("[b-,b+] = I + 2 kappa N - F(s)|s-1><s-1|", tol.matrix);
  Row nil("(b-)^s = (b+)^s = 0", 0.5);

  for (int d = 2; d <= 12; ++d) {
    const KappaParam kappa = KappaParam::for_dimension(d);
    const auto F = structure_function(kappa, d - 1);
    bool rec_ok = true;
    bool sym_ok = true;
    for (int n = 0; n + 1 < d; ++n) {
      rec_ok = rec_ok && F.values[n + 1] - F.values[n] == Rational(1) + Rational(2) * kappa.value() * Rational(n);
    }
    for (int n = 1; n < d; ++n) sym_ok = sym_ok && F.values[n] == F.values[d - n];
    recurrence.add_flag(rec_ok);
    symmetry.add_flag(sym_ok);
    const auto min_it = std::min_element(F.values.begin() + 1, F.values.end());
    ground.add_flag(*min_it > F.values[0]);

    for (double phi : kPhis) {
      const auto rep = build_representation(kappa, phi, d, RepresentationKind::finite);
      adjoint.add(max_abs(Matrix(rep.a_plus - rep.a_minus.adjoint())));
      const auto report = commutator_residual(rep);
      comm.add(report.residual);
      trace.add(std::abs(report.trace));
      nil.add_flag(nilpotency_check(rep, tol.matrix));
    }
  }
  for (const auto& cell : truncated_grid()) {
    const auto F = structure_function(cell.kappa, cell.s - 1);
    bool rec_ok = true;
    for (int n = 0; n + 1 < cell.s; ++n) {
      rec_ok = rec_ok && F.values[n + 1] - F.values[n] ==
                             Rational(1) + Rational(2) * cell.kappa.value() * Rational(n);
    }
    recurrence.add_flag(rec_ok);
    for (double phi : kPhis) {
      const auto rep = build_representation(cell.kappa, phi, cell.s, RepresentationKind::truncated);
      adjoint.add(max_abs(Matrix(rep.a_plus - rep.a_minus.adjoint())));
      trunc.add(commutator_residual(rep).residual);
      nil.add_flag(nilpotency_check(rep, tol.matrix));
    }
  }
  for (auto* r : {&recurrence, &symmetry, &ground, &adjoint, &comm, &trace, &trunc, &nil}) {
    out.push_back(r->finish());
  }
}

void phase_rows(const Tolerances& tol, std::vector<VerificationRow>& out) {
  Row unitary("E unitary (finite and truncated)", tol.matrix);
  Row cyclic("E^dim = I", tol.matrix);
  Row polar("a- = E sqrt(F(N))", tol.matrix);
  Row eigen("E|m,phi> = exp(2 pi i m/dim)|m,phi>", tol.matrix);
  Row equi("|<n|m,phi>| = 1/sqrt(dim)", tol.matrix);
  Row ortho("<m,phi|m',phi> = delta and closure", tol.matrix);
  Row stable_m("temporal stability |m,phi>", tol.matrix);
  Row stable_theta("temporal stability |theta,phi>", tol.matrix);
  Row stable_mu("temporal stability |mu,phi>", tol.matrix);
  Row rho("overlap = rho-sum", tol.matrix);
  Row mu_formula("mu-overlap = weighted sum", tol.matrix);
  Row weighted("weighted closure of |mu,phi>", tol.matrix);
  Row vs_eigen("V_s|mu,phi> = q_s^mu |mu,phi>", tol.matrix);
  Row weyl("V_s^s = I, U_s^s = I, V_sU_s = q_s U_sV_s", tol.matrix);
  Row witness("||V_s^dag V_s - I|| > 0.1 (non-constant weights)", 0.1, true);

  auto check_family = [&](const Representation& rep) {
    const auto op = phase_operator(rep);
    const auto r = phase_operator_residuals(op, rep);
    unitary.add(r.unitarity);
    cyclic.add(r.cyclic);
    polar.add(r.polar);
    const auto states = phase_states(rep.dim, rep.kappa, rep.phi);
    for (const auto& st : states) {
      const Complex z = root_of_unity(st.label.index, rep.dim);
      eigen.add(max_abs(Vector(op.matrix * st.amplitudes - z * st.amplitudes)));
      equi.add(std::abs(st.amplitudes.cwiseAbs().maxCoeff() - 1.0 / std::sqrt(rep.dim)) +
               std::abs(st.amplitudes.cwiseAbs().minCoeff() - 1.0 / std::sqrt(rep.dim)));
      for (double t : kTimes) {
        stable_m.add(state_distance(evolve(st, t), phase_state(rep.dim, rep.kappa, st.label.index, rep.phi + t)));
      }
      for (double phi2 : kPhis) {
        for (int m2 = 0; m2 < rep.dim; ++m2) {
          const auto other = phase_state(rep.dim, rep.kappa, m2, phi2);
          rho.add(std::abs(overlap(st, other) -
                           overlap_rho_sum(rep.dim, rep.kappa, st.label.index, rep.phi, m2, phi2)));
        }
      }
    }
    ortho.add(std::max(orthonormality_residual(states), closure_residual(states)));
  };

  for (int d = 2; d <= 12; ++d) {
    for (double phi : kPhis) {
      check_family(build_representation(KappaParam::for_dimension(d), phi, d, RepresentationKind::finite));
    }
  }
  for (const auto& cell : truncated_grid()) {
    for (double phi : kPhis) {
      const auto rep = build_representation(cell.kappa, phi, cell.s, RepresentationKind::truncated);
      check_family(rep);

      const auto weights = build_weights(cell.kappa, cell.s);
      const auto levels = structure_levels(cell.kappa, cell.s);
      const auto pair = build_vs_us(rep);
      const auto wr = weyl_residuals(pair);
      weyl.add(std::max({wr.v_power, wr.u_power, wr.s_commutation}));
      bool constant = true;
      for (int n = 1; n < weights.size(); ++n) constant = constant && std::abs(weights.at(n) - 1.0) < 1e-15;
      if (!constant) witness.add(wr.nonunitarity);

      const auto mu_states = vs_phase_states(rep, weights);
      weighted.add(vs_weighted_closure_residual(mu_states, weights));
      for (const auto& st : mu_states) {
        const Complex z = root_of_unity(st.label.index, cell.s);
        vs_eigen.add(max_abs(Vector(pair.V * st.amplitudes - z * st.amplitudes)));
        for (double t : kTimes) {
          stable_mu.add(state_distance(evolve(st, t), vs_phase_state(levels, weights, st.label.index, phi + t)));
        }
        for (double phi2 : kPhis) {
          for (int mu2 = 0; mu2 < cell.s; ++mu2) {
            const auto other = vs_phase_state(levels, weights, mu2, phi2);
            mu_formula.add(std::abs(overlap(st, other) -
                                    vs_overlap_formula(levels, weights, st.label.index, phi, mu2, phi2)));
          }
        }
      }
    }
  }
  for (const auto& kappa : {KappaParam(0), KappaParam(1, 2), KappaParam(1)}) {
    for (double phi : kPhis) {
      for (double theta : {-kPi, -1.0, 0.0, 2.5}) {
        const auto st = theta_phase_state(theta, phi, kappa, 8);
        for (double t : kTimes) {
          stable_theta.add(state_distance(evolve(st, t), theta_phase_state(theta, phi + t, kappa, 8)));
        }
      }
    }
  }
  for (auto* r : {&unitary, &cyclic, &polar, &eigen, &equi, &ortho, &stable_m, &stable_theta, &stable_mu,
                  &rho, &mu_formula, &weighted, &vs_eigen, &weyl, &witness}) {
    out.push_back(r->finish());
  }
}

void infinite_rows(const Tolerances& tol, std::vector<VerificationRow>& out) {
  Row left("E_inf: E^dag E = I - |0><0| (cutoff)", tol.matrix);
  Row right("E_inf: E E^dag = I except the cutoff entry", tol.matrix);
  Row eig("E_inf|theta,phi> = exp(i theta)|theta,phi> below cutoff", tol.matrix);
  Row closure("theta-grid closure, n_max = 24", tol.matrix);
  for (const auto& kappa : {KappaParam(0), KappaParam(1, 3), KappaParam(1)}) {
    for (double phi : kPhis) {
      const auto op = phase_operator_infinite_cutoff(kappa, phi, 24);
      const auto r = cutoff_identity_report(op);
      left.add(r.left_residual);
      right.add(r.right_residual);
      for (double theta : {-2.0, 0.4, 3.0}) {
        const auto st = theta_phase_state(theta, phi, kappa, 24);
        const Vector diff = op.matrix * st.amplitudes - std::polar(1.0, theta) * st.amplitudes;
        eig.add(max_abs(Vector(diff.head(24))));
      }
      closure.add(max_abs(Matrix(theta_closure(kappa, phi, 24) - Matrix::Identity(25, 25))));
    }
  }
  for (auto* r : {&left, &right, &eig, &closure}) out.push_back(r->finish());
}

void mub_rows(const Tolerances& tol, std::vector<VerificationRow>& out) {
  Row gauss_mag("|S(u,v,w)| = sqrt(w), prime w, u != 0 mod w, uw+v even", tol.composite);
  Row gauss_oracle("Gauss-sum overlap = inner product (dim <= 13)", tol.matrix);
  Row finite_mub("finite route: d+1 MUBs for prime d", tol.composite);
  Row trunc_mub("truncated route: s+1 MUBs for odd prime s", tol.composite);
  Row in_basis("orthonormality within each B_p", tol.matrix);
  Row composite("composite d = 4, 6 flagged incomplete", 0.5);
  Row pseudo("E_d = U_phi V and quantized pseudo-commutation", tol.matrix);

  for (int w : kPrimes) {
    for (long long u = 1; u < 2 * w; ++u) {
      if (u % w == 0) continue;
      for (long long v = -2 * w; v <= 2 * w; ++v) {
        const GaussSumParams params{u, v, w};
        if (!params.parity_even()) continue;
        gauss_mag.add(std::abs(std::abs(gauss_sum(params)) - std::sqrt(static_cast<double>(w))));
      }
    }
  }

  for (int d = 2; d <= 13; ++d) {
    std::vector<std::vector<PhaseState>> states(d);
    for (int p = 0; p < d; ++p) {
      for (int m = 0; m < d; ++m) states[p].push_back(mub_state_finite(d, p, m));
    }
    for (int p = 0; p < d; ++p) {
      for (int m = 0; m < d; ++m) {
        for (int p2 = 0; p2 < d; ++p2) {
          for (int m2 = 0; m2 < d; ++m2) {
            gauss_oracle.add(std::abs(overlap(states[p][m], states[p2][m2]) -
                                      overlap_via_gauss_finite(d, p, m, p2, m2)));
          }
        }
      }
    }
    for (const auto& kappa : {KappaParam(1), KappaParam::for_dimension(d)}) {
      for (int p = 0; p < d; ++p) {
        for (int m = 0; m < d; ++m) {
          const auto a = mub_state_truncated(kappa, d, p, m);
          for (int p2 = 0; p2 < d; ++p2) {
            for (int m2 = 0; m2 < d; ++m2) {
              gauss_oracle.add(std::abs(overlap(a, mub_state_truncated(kappa, d, p2, m2)) -
                                        overlap_via_gauss_truncated(kappa, d, p, m, p2, m2)));
            }
          }
        }
      }
    }
  }

  for (int d : kPrimes) {
    const auto set = build_mub_set(FiniteRoute{d}, tol.composite);
    finite_mub.add(set.bases.size() == static_cast<std::size_t>(d + 1) ? set.max_deviation : 1.0);
    in_basis.add(set.max_orthonormality_residual);
    if (d == 2) continue;
    for (const auto& kappa : {KappaParam(1), KappaParam(1, 2), KappaParam::for_dimension(d)}) {
      const auto tset = build_mub_set(TruncatedRoute{kappa, d}, tol.composite);
      trunc_mub.add(tset.bases.size() == static_cast<std::size_t>(d + 1) ? tset.max_deviation : 1.0);
      in_basis.add(tset.max_orthonormality_residual);
    }
  }
  for (int d : {4, 6}) {
    const auto set = build_mub_set(FiniteRoute{d}, tol.composite);
    composite.add_flag(!set.complete && !set.violating_pairs(tol.composite).empty());
  }
  for (int d = 2; d <= 12; ++d) {
    for (int p = 0; p < d; ++p) pseudo.add(pseudo_commutation_check(d, p).max());
  }
  for (auto* r : {&gauss_mag, &gauss_oracle, &finite_mub, &trunc_mub, &in_basis, &composite, &pseudo}) {
    out.push_back(r->finish());
  }
}

void potential_rows(const Tolerances& tol, std::vector<VerificationRow>& out) {
  Row link("e_n = b F(n; a/2b)", tol.matrix);
  Row gamma("E(n) product = Gamma closed form (relative)", tol.composite);
  Row morse_s("Morse truncation order = l + 1", 0.5);
  Row distinct("energies distinct within truncation; collisions beyond", 0.5);
  Row stable("physical phase states temporally stable", tol.matrix);
  Row handoff("physical states at quantized phi = truncated MUB states", tol.matrix);

  std::vector<std::pair<PotentialSpec, int>> systems{{PotentialSpec(HarmonicOscillator{}), 16},
                                                     {PotentialSpec(PoschlTeller{2, 2}), 12}};
  for (int l = 2; l <= 6; ++l) systems.emplace_back(PotentialSpec(Morse{l}), l + 1);

  for (const auto& [spec, s] : systems) {
    const auto params = to_spectrum_params(spec);
    const auto kappa = *params.kappa_exact;
    for (int n = 0; n < s; ++n) {
      link.add(std::abs(energy(params, n) - params.b * to_double(structure_value(kappa, n))));
    }
    for (double phi : kPhis) {
      const auto states = physical_phase_states(spec, s, phi);
      for (double t : kTimes) {
        const auto rebuilt = physical_phase_states(spec, s, phi + t);
        for (int m = 0; m < s; ++m) {
          stable.add(state_distance(evolve(states.fourier[m], t), rebuilt.fourier[m]));
          stable.add(state_distance(evolve(states.discrete[m], t), rebuilt.discrete[m]));
        }
      }
    }
    if (kappa.is_zero()) continue;
    for (int p = 0; p < s; ++p) {
      const auto states = physical_phase_states(spec, s, physical_mub_phi(spec, s, p));
      for (int m = 0; m < s; ++m) {
        const auto mub = mub_state_truncated(kappa, s, p, m);
        handoff.add(std::abs(std::abs(overlap(states.fourier[m], mub)) - 1.0));
      }
    }
  }

  gamma.add(weight_table(PotentialSpec(HarmonicOscillator{}), 20).max_rel_err);
  for (int u = 2; u <= 5; ++u) {
    for (int v = 2; v <= 5; ++v) gamma.add(weight_table(PotentialSpec(PoschlTeller{double(u), double(v)}), 15).max_rel_err);
  }
  for (int l = 1; l <= 10; ++l) {
    const PotentialSpec spec(Morse{l});
    const auto params = to_spectrum_params(spec);
    gamma.add(weight_table(spec, l).max_rel_err);
    const auto order = truncation_order(params);
    morse_s.add_flag(order.order && *order.order == l + 1);

    // within 0..l all distinct; e_n = e_{2l-n} once the range is extended
    std::vector<double> inside;
    for (int n = 0; n <= l; ++n) inside.push_back(energy(params, n));
    std::sort(inside.begin(), inside.end());
    const bool unique = std::adjacent_find(inside.begin(), inside.end()) == inside.end();
    bool collides = false;
    for (int n = l + 1; n <= 2 * l - 1; ++n) {
      const double extended = 0.5 * params.a * n * (n - 1) + params.b * n;
      collides = collides || std::abs(extended - energy(params, 2 * l - n)) < 1e-12;
    }
    distinct.add_flag(unique && (l == 1 || collides));
  }
  for (auto* r : {&link, &gamma, &morse_s, &distinct, &stable, &handoff}) out.push_back(r->finish());
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.passed; });
}

VerificationReport run_verification(const Tolerances& tol) {
  VerificationReport report;
  algebra_rows(tol, report.rows);
  phase_rows(tol, report.rows);
  infinite_rows(tol, report.rows);
  mub_rows(tol, report.rows);
  potential_rows(tol, report.rows);
  return report;
}

std::string format_report(const VerificationReport& report) {
  std::size_t width = 0;
  for (const auto& r : report.rows) width = std::max(width, r.invariant.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "invariant"
     << "  result  cells  max residual  tolerance\n";
  for (const auto& r : report.rows) {
    os << std::left << std::setw(static_cast<int>(width)) << r.invariant << "  "
       << (r.passed ? "PASS  " : "FAIL  ") << "  " << std::right << std::setw(5) << r.cells << "  "
       << std::scientific << std::setprecision(3) << std::setw(12) << r.max_residual << "  "
       << (r.lower_bound ? ">" : "<") << std::setw(9) << r.tolerance << std::defaultfloat << '\n';
  }
  const auto failed = std::count_if(report.rows.begin(), report.rows.end(),
                                    [](const VerificationRow& r) { return !r.passed; });
  os << (failed == 0 ? "all invariants hold" : std::to_string(failed) + " invariant(s) failed") << '\n';
  return os.str();
}

}  // namespace phasekit
