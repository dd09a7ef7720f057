#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phasekit/mub.hpp"
#include "phasekit/serialize.hpp"
#include "phasekit/verify.hpp"

namespace phasekit::cli {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string short_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8g", x);
  return buf;
}

// "a+bi" with entries below 1e-12 printed as 0.
std::string format_complex(Complex z) {
  const double scale = std::max(1.0, std::abs(z));
  const double re = std::abs(z.real()) < 1e-12 * scale ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 1e-12 * scale ? 0.0 : z.imag();
  std::string out = short_number(re);
  out += im < 0 ? "-" : "+";
  out += short_number(std::abs(im));
  out += "i";
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

KappaParam require_kappa(const RunConfig& c) {
  if (!c.kappa) throw ConfigError(c.command + ": --kappa is required");
  return KappaParam::parse(*c.kappa);
}

int require_dim(const RunConfig& c) {
  if (!c.dim) throw ConfigError(c.command + ": --dim is required");
  return *c.dim;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                    const std::string& command) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw ConfigError(command + ": format '" + format + "' is not supported");
}

std::string pretty_matrix(const std::string& name, const Matrix& m) {
  std::ostringstream os;
  os << name << ":\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << std::setw(24) << format_complex(m(r, c));
    os << '\n';
  }
  return os.str();
}

std::string pretty_state(const PhaseState& st) {
  std::ostringstream os;
  os << to_string(st.label.type) << " index=" << st.label.index << " phi=" << short_number(st.label.phi);
  if (st.label.type == LabelType::theta_phi) os << " theta=" << short_number(st.label.theta);
  if (st.label.p) os << " p=" << *st.label.p;
  os << "\n ";
  for (Eigen::Index n = 0; n < st.amplitudes.size(); ++n) os << ' ' << format_complex(st.amplitudes(n));
  os << '\n';
  return os.str();
}

std::string run_rep(const RunConfig& c, const std::string& format) {
  require_format(format, {"json", "pretty"}, c.command);
  if (c.truncated && c.open_top) throw ConfigError("rep: --truncated and --open-top are exclusive");
  const KappaParam kappa = require_kappa(c);
  RepresentationKind kind = RepresentationKind::finite;
  if (c.truncated) kind = RepresentationKind::truncated;
  if (c.open_top) kind = RepresentationKind::open_top;
  int size = 0;
  if (c.dim) {
    size = *c.dim;
  } else if (kind == RepresentationKind::finite) {
    size = dimension_of(kappa).finite.value_or(0);
  }
  if (size == 0) throw ConfigError("rep: --dim is required outside the finite regime");
  const Representation rep = build_representation(kappa, c.phi, size, kind);
  if (format == "json") return dump(to_json(rep));
  const auto report = commutator_residual(rep);
  std::ostringstream os;
  os << "kappa = " << kappa.to_string() << ", dim = " << rep.dim << ", kind = " << to_string(rep.kind)
     << ", phi = " << short_number(rep.phi) << '\n'
     << pretty_matrix("a-", rep.a_minus) << pretty_matrix("a+", rep.a_plus)
     << "commutator residual = " << report.residual << ", trace = " << format_complex(report.trace) << '\n';
  return os.str();
}

std::string run_phases(const RunConfig& c, const std::string& format) {
  require_format(format, {"json", "pretty"}, c.command);
  const KappaParam kappa = require_kappa(c);
  std::vector<PhaseState> states;
  if (c.theta) {
    if (c.m) throw ConfigError("phases: --theta and --m are exclusive");
    states.push_back(theta_phase_state(*c.theta, c.phi, kappa, require_dim(c) - 1));
  } else {
    const int dim = c.dim ? *c.dim : dimension_of(kappa).finite.value_or(0);
    if (dim == 0) throw ConfigError("phases: --dim is required for kappa >= 0");
    if (c.m) {
      states.push_back(phase_state(dim, kappa, *c.m, c.phi));
    } else {
      states = phase_states(dim, kappa, c.phi);
    }
  }
  if (format == "pretty") {
    std::string out;
    for (const auto& st : states) out += pretty_state(st);
    return out;
  }
  Json arr = Json::array();
  for (const auto& st : states) arr.push_back(to_json(st));
  return dump(Json{{"states", std::move(arr)}});
}

std::string run_vs_states(const RunConfig& c, const std::string& format) {
  require_format(format, {"json", "pretty"}, c.command);
  const KappaParam kappa = require_kappa(c);
  const int s = require_dim(c);
  const Representation rep = build_representation(kappa, c.phi, s, RepresentationKind::truncated);
  const WeightTable weights = build_weights(kappa, s);
  auto states = vs_phase_states(rep, weights);
  if (c.mu) states = {states.at(static_cast<std::size_t>(mod(*c.mu, s)))};
  const auto residuals = weyl_residuals(build_vs_us(rep));
  if (format == "pretty") {
    std::ostringstream os;
    os << "C_0 = " << short_number(vs_normalization(weights))
       << ", nonunitarity ||V^dag V - I|| = " << short_number(residuals.nonunitarity) << '\n';
    for (const auto& st : states) os << pretty_state(st);
    return os.str();
  }
  Json arr = Json::array();
  for (const auto& st : states) arr.push_back(to_json(st));
  Json w = Json::array();
  for (int n = 0; n < weights.size(); ++n) w.push_back(weights.at(n));
  return dump(Json{{"s", s},
                   {"kappa", kappa_to_json(kappa)},
                   {"phi", c.phi},
                   {"c0", vs_normalization(weights)},
                   {"weights", std::move(w)},
                   {"nonunitarity_witness", residuals.nonunitarity},
                   {"states", std::move(arr)}});
}

std::string run_mub(const RunConfig& c, const std::string& format, const Tolerances& tol) {
  require_format(format, {"json", "csv", "pretty"}, c.command);
  const int dim = require_dim(c);
  MubRoute route;
  if (c.route == "finite") {
    if (c.kappa) throw ConfigError("mub: --kappa only applies to --route truncated");
    route = FiniteRoute{dim};
  } else if (c.route == "truncated") {
    route = TruncatedRoute{require_kappa(c), dim};
  } else {
    throw ConfigError("mub: unknown route '" + c.route + "'");
  }
  const MubSet set = build_mub_set(route, tol.composite);
  if (format == "csv") return overlap_csv(set);
  if (format == "json") return dump(to_json(set));
  std::ostringstream os;
  os << "dim = " << set.dim << ", route = " << route_name(set.route) << ", bases = " << set.bases.size()
     << ", prime = " << (set.prime ? "yes" : "no") << ", complete = " << (set.complete ? "yes" : "no")
     << "\nmax | |<x|y>| - 1/sqrt(dim) | = " << set.max_deviation << '\n';
  for (const auto& pair : set.violating_pairs(tol.composite)) {
    os << "  biased pair (" << pair.a << ", " << pair.b << "): min " << short_number(pair.min_abs)
       << ", max " << short_number(pair.max_abs) << '\n';
  }
  return os.str();
}

std::string run_gauss(const RunConfig& c, const std::string& format) {
  require_format(format, {"json", "pretty"}, c.command);
  if (!c.u || !c.v || !c.w) throw ConfigError("gauss: --u, --v and --w are required");
  const GaussSumParams params{*c.u, *c.v, *c.w};
  const Complex s = gauss_sum(params);
  if (format == "pretty") return format_complex(s) + "\n";
  return dump(Json{{"u", params.u},
                   {"v", params.v},
                   {"w", params.w},
                   {"re", s.real()},
                   {"im", s.imag()},
                   {"modulus", std::abs(s)},
                   {"parity_even", params.parity_even()}});
}

std::string run_potential(const RunConfig& c, const std::string& format) {
  require_format(format, {"json", "pretty"}, c.command);
  if (!c.potential) throw ConfigError("potential: --potential is required");
  const PotentialSpec spec = PotentialSpec::parse(*c.potential);
  const SpectrumParams params = to_spectrum_params(spec);
  const int s = c.dim ? *c.dim : truncation_order(params).effective();
  Json report = potential_report(spec, s);
  const auto states = physical_phase_states(spec, s, c.phi);
  if (format == "pretty") {
    std::ostringstream os;
    os << report["variant"].get<std::string>() << ": a = " << short_number(params.a)
       << ", b = " << short_number(params.b) << ", kappa = " << short_number(params.kappa_equiv)
       << ", s = " << s << "\nenergies:";
    for (double e : report["energies"]) os << ' ' << short_number(e);
    os << "\nweights:";
    for (double e : report["weights"]) os << ' ' << short_number(e);
    os << "\nGamma closed form max relative error: " << report["gamma_check"]["max_rel_err"].get<double>()
       << '\n';
    return os.str();
  }
  Json fourier = Json::array();
  Json discrete = Json::array();
  for (const auto& st : states.fourier) fourier.push_back(to_json(st));
  for (const auto& st : states.discrete) discrete.push_back(to_json(st));
  report["phi"] = c.phi;
  report["phase_states"] = Json{{"fourier", std::move(fourier)}, {"discrete", std::move(discrete)}};
  return dump(report);
}

std::pair<std::string, bool> run_verify(const std::string& format, const Tolerances& tol) {
  require_format(format, {"json", "pretty"}, "verify");
  const VerificationReport report = run_verification(tol);
  if (format == "pretty") return {format_report(report), report.all_passed()};
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back(Json{{"invariant", r.invariant},
                        {"passed", r.passed},
                        {"cells", r.cells},
                        {"max_residual", r.max_residual},
                        {"tolerance", r.tolerance},
                        {"lower_bound", r.lower_bound}});
  }
  return {dump(Json{{"all_passed", report.all_passed()}, {"rows", std::move(rows)}}), report.all_passed()};
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Generalized oscillator algebras, phase states and mutually unbiased bases"};
  app.require_subcommand(1, 1);
  RunConfig c;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", c.output, "Write the artifact to this file");
    sub->add_option("--format", c.format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--tolerance", c.tolerance, "Override tolerances: 1e-12 or 1e-12,1e-10");
  };

  auto* rep = app.add_subcommand("rep", "Matrix representation of the (truncated) algebra");
  rep->add_option("--kappa", c.kappa, "kappa as p/q")->required();
  rep->add_option("--dim,--s", c.dim, "Size (defaults to d in the finite regime)");
  rep->add_option("--phi", c.phi, "Phase parameter");
  auto* trunc_flag = rep->add_flag("--truncated", c.truncated, "Truncated algebra of order --dim");
  rep->add_flag("--open-top", c.open_top, "Cutoff surrogate of the infinite representation")->excludes(trunc_flag);
  add_output(rep);

  auto* phases = app.add_subcommand("phases", "Eigenstates |m,phi> of the phase operator, or |theta,phi>");
  phases->add_option("--kappa", c.kappa, "kappa as p/q")->required();
  phases->add_option("--dim,--s", c.dim, "Dimension (or n_max + 1 with --theta)");
  phases->add_option("--phi", c.phi, "Phase parameter");
  auto* m_opt = phases->add_option("--m", c.m, "Single state label");
  phases->add_option("--theta", c.theta, "Build |theta,phi> instead (kappa >= 0)")->excludes(m_opt);
  add_output(phases);

  auto* vs = app.add_subcommand("vs-states", "Eigenstates |mu,phi> of V_s");
  vs->add_option("--kappa", c.kappa, "kappa as p/q")->required();
  vs->add_option("--dim,--s", c.dim, "Truncation order s")->required();
  vs->add_option("--phi", c.phi, "Phase parameter");
  vs->add_option("--mu", c.mu, "Single state label");
  add_output(vs);

  auto* mub = app.add_subcommand("mub", "Mutually unbiased bases from quantized phase states");
  mub->add_option("--dim,--s", c.dim, "Dimension")->required();
  mub->add_option("--route", c.route, "finite | truncated")->check(CLI::IsMember({"finite", "truncated"}));
  mub->add_option("--kappa", c.kappa, "kappa for the truncated route (1/kappa integer)");
  add_output(mub);

  auto* gauss = app.add_subcommand("gauss", "Generalized quadratic Gauss sum S(u,v,w)");
  gauss->add_option("--u", c.u)->required();
  gauss->add_option("--v", c.v)->required();
  gauss->add_option("--w", c.w)->required();
  add_output(gauss);

  auto* pot = app.add_subcommand("potential", "Spectrum, weights and phase states of a solvable system");
  pot->add_option("--potential", c.potential, "ho | pt:u=2,v=3 | morse:l=4")->required();
  pot->add_option("--dim,--s", c.dim, "Number of levels (defaults to the truncation order or cutoff)");
  pot->add_option("--phi", c.phi, "Phase parameter for the phase states");
  add_output(pot);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite over the built-in grid");
  add_output(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    return {std::nullopt, kExitOk, os.str()};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    return {std::nullopt, kExitOk, os.str()};
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    app.exit(e, out, err);
    return {std::nullopt, kExitInvalidConfig, err.str() + out.str()};
  }
  c.command = app.get_subcommands().front()->get_name();
  return {c, kExitOk, {}};
}

RunResult run(const RunConfig& c) {
  RunResult result;
  try {
    Tolerances tol = c.tolerance ? Tolerances::parse(*c.tolerance) : Tolerances::from_env();
    std::string format = c.format;
    if (format.empty()) format = (c.command == "gauss" || c.command == "verify") ? "pretty" : "json";

    std::string text;
    bool verified = true;
    if (c.command == "rep") text = run_rep(c, format);
    else if (c.command == "phases") text = run_phases(c, format);
    else if (c.command == "vs-states") text = run_vs_states(c, format);
    else if (c.command == "mub") text = run_mub(c, format, tol);
    else if (c.command == "gauss") text = run_gauss(c, format);
    else if (c.command == "potential") text = run_potential(c, format);
    else if (c.command == "verify") std::tie(text, verified) = run_verify(format, tol);
    else throw ConfigError("unknown command '" + c.command + "'");

    if (c.output.empty()) {
      result.out = std::move(text);
    } else {
      std::ofstream file(c.output, std::ios::binary);
      if (!file) throw ConfigError("cannot open '" + c.output + "' for writing");
      file << text;
    }
    result.exit_code = verified ? kExitOk : kExitVerificationFailed;
  } catch (const ConfigError& e) {
    result.exit_code = kExitInvalidConfig;
    result.err = std::string("error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {  // DomainError and parse failures
    result.exit_code = kExitInvalidConfig;
    result.err = std::string("error: ") + e.what() + "\n";
  }
  return result;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const ParseOutcome parsed = parse_args(args);
  if (!parsed.config) {
    (parsed.exit_code == kExitOk ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  const RunResult result = run(*parsed.config);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}

}  // namespace phasekit::cli
