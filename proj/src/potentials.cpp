#include "phasekit/potentials.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "phasekit/mub.hpp"

namespace phasekit {

namespace {

bool near_integer(double x, long long& out) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) return false;
  out = static_cast<long long>(r);
  return true;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double parse_double(std::string_view text, std::string_view whole) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double value = std::stod(s, &used);
    if (used == s.size()) return value;
  } catch (const std::exception&) {
  }
  throw DomainError("potential: cannot parse number in '" + std::string(whole) + "'");
}

// "u=2,v=3" -> {u: 2, v: 3}
std::map<std::string, double> parse_assignments(std::string_view text, std::string_view whole) {
  std::map<std::string, double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("potential: expected key=value in '" + std::string(whole) + "'");
    }
    out[std::string(item.substr(0, eq))] = parse_double(item.substr(eq + 1), whole);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double lgamma_checked(double x) { return std::lgamma(x); }

}  // namespace

PotentialSpec::PotentialSpec(Variant variant) : variant_(std::move(variant)) {
  if (const auto* pt = std::get_if<PoschlTeller>(&variant_)) {
    if (!(pt->u > 1.0) || !(pt->v > 1.0)) {
      throw DomainError("Poschl-Teller requires u > 1 and v > 1, got u = " + format_number(pt->u) +
                        ", v = " + format_number(pt->v));
    }
  } else if (const auto* morse = std::get_if<Morse>(&variant_)) {
    if (morse->l < 1) throw DomainError("Morse requires l >= 1, got l = " + std::to_string(morse->l));
  }
}

PotentialSpec PotentialSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  const auto args = parse_assignments(rest, text);
  auto require = [&](const char* key) {
    auto it = args.find(key);
    if (it == args.end()) throw DomainError("potential '" + std::string(text) + "' is missing " + key);
    return it->second;
  };

  if (head == "ho") {
    if (!args.empty()) throw DomainError("potential 'ho' takes no parameters");
    return PotentialSpec(HarmonicOscillator{});
  }
  if (head == "pt") {
    if (args.size() != 2) throw DomainError("potential 'pt' takes exactly u and v");
    return PotentialSpec(PoschlTeller{require("u"), require("v")});
  }
  if (head == "morse") {
    if (args.size() != 1) throw DomainError("potential 'morse' takes exactly l");
    long long l = 0;
    if (!near_integer(require("l"), l)) throw DomainError("Morse l must be an integer");
    return PotentialSpec(Morse{static_cast<int>(l)});
  }
  throw DomainError("unknown potential '" + std::string(text) + "' (expected ho, pt:u=..,v=.., morse:l=..)");
}

std::string PotentialSpec::name() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HarmonicOscillator>) return "ho";
        else if constexpr (std::is_same_v<T, PoschlTeller>) return "pt";
        else return "morse";
      },
      variant_);
}

std::string PotentialSpec::to_string() const {
  if (const auto* pt = std::get_if<PoschlTeller>(&variant_)) {
    return "pt:u=" + format_number(pt->u) + ",v=" + format_number(pt->v);
  }
  if (const auto* morse = std::get_if<Morse>(&variant_)) return "morse:l=" + std::to_string(morse->l);
  return "ho";
}

std::string PotentialSpec::description() const {
  if (std::holds_alternative<PoschlTeller>(variant_)) {
    return "Poschl-Teller: v0(x) = [u(u-1)/sin^2(x/2) + v(v-1)/cos^2(x/2)]/8 - (u+v)^2/8, "
           "w(x) = (u cot(x/2) - v tan(x/2))/2";
  }
  if (std::holds_alternative<Morse>(variant_)) {
    return "Morse: v0(x) = [exp(-2x) - (2l+1) exp(-x) + l^2]/2, w(x) = l - exp(-x)";
  }
  return "harmonic oscillator: v0(x) = (x^2 - 1)/2, w(x) = x";
}

SpectrumParams SpectrumParams::from_ab(double a, double b) {
  if (!(b > 0.0)) throw DomainError("spectrum parameter b must be > 0");
  SpectrumParams params;
  params.a = a;
  params.b = b;
  params.kappa_equiv = a / (2.0 * b);
  long long a_int = 0;
  long long two_b_int = 0;
  if (near_integer(a, a_int) && near_integer(2.0 * b, two_b_int)) {
    params.kappa_exact = KappaParam(a_int, two_b_int);
  }
  if (a < 0.0) params.level_count = truncation_order(params).order;
  return params;
}

SpectrumParams to_spectrum_params(const PotentialSpec& spec) {
  const auto& v = spec.variant();
  if (const auto* pt = std::get_if<PoschlTeller>(&v)) return SpectrumParams::from_ab(1.0, (pt->u + pt->v + 1.0) / 2.0);
  if (const auto* morse = std::get_if<Morse>(&v)) return SpectrumParams::from_ab(-1.0, morse->l - 0.5);
  return SpectrumParams::from_ab(0.0, 1.0);
}

TruncationOrder truncation_order(const SpectrumParams& params) {
  TruncationOrder out;
  if (params.a >= 0.0) return out;
  long long twice = 0;
  if (!near_integer(-2.0 * params.b / params.a, twice)) {
    throw DomainError("truncation order undefined: -2b/a = " + format_number(-2.0 * params.b / params.a) +
                      " is not an integer");
  }
  // -b/a = twice/2
  out.order = static_cast<int>(twice % 2 != 0 ? (twice + 3) / 2 : twice / 2 + 1);
  return out;
}

double energy(const SpectrumParams& params, int n) {
  if (n < 0) throw DomainError("energy: n must be >= 0");
  if (params.level_count && n >= *params.level_count) {
    throw DomainError("energy: level " + std::to_string(n) + " outside the admitted range 0.." +
                      std::to_string(*params.level_count - 1));
  }
  return 0.5 * params.a * n * (n - 1) + params.b * n;
}

std::vector<double> energies(const SpectrumParams& params, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int n = 0; n < count; ++n) out.push_back(energy(params, n));
  return out;
}

double gamma_log_weight(const PotentialSpec& spec, int n) {
  const double ln2 = std::log(2.0);
  const auto& v = spec.variant();
  if (const auto* pt = std::get_if<PoschlTeller>(&v)) {
    const double c = pt->u + pt->v + 1.0;
    return lgamma_checked(n + 1.0) + lgamma_checked(n + c) - n * ln2 - lgamma_checked(c);
  }
  if (const auto* morse = std::get_if<Morse>(&v)) {
    const double two_l = 2.0 * morse->l;
    return lgamma_checked(n + 1.0) + lgamma_checked(two_l) - n * ln2 - lgamma_checked(two_l - n);
  }
  return lgamma_checked(n + 1.0);
}

namespace {

// Linear-domain closed form through tgamma; empty when it would overflow.
std::optional<double> gamma_weight_linear(const PotentialSpec& spec, int n) {
  const auto& v = spec.variant();
  double value = 0.0;
  if (const auto* pt = std::get_if<PoschlTeller>(&v)) {
    const double c = pt->u + pt->v + 1.0;
    value = std::tgamma(n + 1.0) * std::tgamma(n + c) / (std::ldexp(1.0, n) * std::tgamma(c));
  } else if (const auto* morse = std::get_if<Morse>(&v)) {
    const double two_l = 2.0 * morse->l;
    value = std::tgamma(n + 1.0) * std::tgamma(two_l) / (std::ldexp(1.0, n) * std::tgamma(two_l - n));
  } else {
    value = std::tgamma(n + 1.0);
  }
  if (!std::isfinite(value) || value == 0.0) return std::nullopt;
  return value;
}

}  // namespace

WeightReport weight_table(const PotentialSpec& spec, int n_max) {
  const SpectrumParams params = to_spectrum_params(spec);
  if (n_max < 0) throw DomainError("weight_table: n_max must be >= 0");
  const auto levels = energies(params, n_max + 1);  // range-checked

  WeightReport report;
  report.table = weights_from_levels(levels);
  report.gamma_values.reserve(levels.size());
  for (int n = 0; n <= n_max; ++n) {
    const auto linear = gamma_weight_linear(spec, n);
    double rel = 0.0;
    if (linear && !report.table.log_domain) {
      report.gamma_values.push_back(*linear);
      rel = std::abs(report.table.at(n) / *linear - 1.0);
    } else {
      const double log_gamma = gamma_log_weight(spec, n);
      report.gamma_values.push_back(std::exp(log_gamma));
      rel = std::abs(std::expm1(report.table.log_at(n) - log_gamma));
    }
    report.max_rel_err = std::max(report.max_rel_err, rel);
  }
  return report;
}

PhysicalPhaseStates physical_phase_states(const PotentialSpec& spec, int s, double phi) {
  const SpectrumParams params = to_spectrum_params(spec);
  if (s < 1) throw DomainError("physical_phase_states: s must be >= 1");
  if (params.level_count && s > *params.level_count) {
    throw DomainError("physical_phase_states: s = " + std::to_string(s) + " exceeds the truncation order " +
                      std::to_string(*params.level_count));
  }
  const auto levels = energies(params, s);
  const WeightTable weights = weights_from_levels(levels);
  PhysicalPhaseStates out;
  for (int m = 0; m < s; ++m) {
    out.fourier.push_back(fourier_phase_state(levels, m, phi));
    out.discrete.push_back(vs_phase_state(levels, weights, m, phi));
  }
  return out;
}

double physical_mub_phi(const PotentialSpec& spec, int s, int p) {
  const SpectrumParams params = to_spectrum_params(spec);
  if (!params.kappa_exact || params.kappa_exact->is_zero() || !params.kappa_exact->has_integer_inverse()) {
    throw DomainError("physical_mub_phi: " + spec.to_string() + " has no integral 1/kappa");
  }
  return quantize_phi_truncated(*params.kappa_exact, s, p) / params.b;
}

}  // namespace phasekit
