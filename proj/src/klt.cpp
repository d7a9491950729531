#include "magineq/klt.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "magineq/closed_bounds.hpp"
#include "magineq/errors.hpp"

namespace magineq {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(std::string_view text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size() && std::isfinite(out);
}

}  // namespace

PotentialGrid::PotentialGrid(std::vector<double> nodes, std::vector<double> values, int d, TailModel tail,
                             double tail_exponent, double tail_level)
    : d_(d), tail_(tail), tail_exponent_(tail_exponent), tail_level_(tail_level) {
  if (d != 2 && d != 3) throw UnsupportedParameterError("potential dimension must be 2 or 3");
  if (!std::isfinite(tail_exponent) || !std::isfinite(tail_level)) throw InputError("tail parameters must be finite");
  if (!nodes.empty() && nodes.front() < 0.0) throw InputError("potential radii must be nonnegative");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("potential values must be finite");
  }
  interp_ = MonotoneCubic(std::move(nodes), std::move(values));
}

PotentialGrid PotentialGrid::parse(std::istream& in) {
  std::string line;
  int lineno = 0;
  int d = 0;
  TailModel tail = TailModel::none;
  double k = 0.0;
  bool have_header = false;
  std::vector<double> r, phi;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      if (have_header) continue;
      std::istringstream fields(t.substr(1));
      std::string tok;
      bool seen_d = false, seen_tail = false;
      while (fields >> tok) {
        if (tok.rfind("d=", 0) == 0) {
          const std::string v = tok.substr(2);
          if (v == "2") d = 2;
          else if (v == "3") d = 3;
          else throw ParseError("dimension must be 2 or 3, got '" + v + "'", lineno);
          seen_d = true;
        } else if (tok.rfind("tail=", 0) == 0) {
          const std::string v = tok.substr(5);
          if (v == "none") {
            tail = TailModel::none;
          } else if (v == "constant") {
            tail = TailModel::constant;
          } else if (v.rfind("power:", 0) == 0) {
            tail = TailModel::power;
            if (!parse_double(v.substr(6), k)) throw ParseError("invalid power tail exponent '" + v + "'", lineno);
          } else {
            throw ParseError("unknown tail model '" + v + "'", lineno);
          }
          seen_tail = true;
        } else {
          throw ParseError("unexpected header field '" + tok + "'", lineno);
        }
      }
      if (!seen_d || !seen_tail) throw ParseError("header must declare d=<2|3> and tail=<model>", lineno);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("missing '# d=... tail=...' header", lineno);
    if (r.empty() && (t == "r,phi" || t == "r, phi")) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw ParseError("expected two comma-separated columns 'r,phi'", lineno);
    }
    double rv = 0.0, pv = 0.0;
    if (!parse_double(std::string_view(t).substr(0, comma), rv)) throw ParseError("invalid radius", lineno);
    if (!parse_double(std::string_view(t).substr(comma + 1), pv)) throw ParseError("invalid potential value", lineno);
    if (rv < 0.0) throw ParseError("radius must be nonnegative", lineno);
    if (!r.empty() && !(rv > r.back())) throw ParseError("radii must increase strictly", lineno);
    r.push_back(rv);
    phi.push_back(pv);
  }
  if (!have_header) throw ParseError("missing '# d=... tail=...' header", lineno);
  if (r.size() < 2) throw ParseError("at least two data rows are required", lineno);
  return PotentialGrid(std::move(r), std::move(phi), d, tail, k);
}

PotentialGrid PotentialGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open potential file '" + path + "'");
  return parse(in);
}

double PotentialGrid::value(double r) const {
  const double R = last_radius();
  if (r <= nodes().front()) return values().front();
  if (r <= R) return interp_(r);
  switch (tail_) {
    case TailModel::none:
      return tail_level_;
    case TailModel::constant:
      return values().back();
    case TailModel::power:
      return tail_level_ + (values().back() - tail_level_) * std::pow(r / R, tail_exponent_);
  }
  return tail_level_;
}

double PotentialGrid::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values()) m = std::min(m, v);
  return m;
}

PotentialGrid PotentialGrid::shifted(double s) const {
  std::vector<double> v = values();
  for (double& x : v) x += s;
  return PotentialGrid(nodes(), std::move(v), d_, tail_, tail_exponent_, tail_level_ + s);
}

PotentialGrid PotentialGrid::scaled(double t) const {
  std::vector<double> v = values();
  for (double& x : v) x *= t;
  return PotentialGrid(nodes(), std::move(v), d_, tail_, tail_exponent_, tail_level_ * t);
}

namespace {

[[noreturn]] void diverges(const std::string& what) {
  throw IntegrabilityError(what + " diverges under the declared tail model");
}

// |S^{d-1}| int_R^inf (lam - L - A (r/R)^k)_+^q r^{d-1} dr.
double plus_tail(const PotentialGrid& pot, double q, double lambda) {
  const int d = pot.d();
  const double R = pot.last_radius();
  const double L = pot.tail_level();
  const double lam = lambda - L;
  double A = 0.0;
  double k = 0.0;
  switch (pot.tail()) {
    case TailModel::none:
      if (lam > 0.0) diverges("positive part");
      return 0.0;
    case TailModel::constant:
      if (lambda - pot.values().back() > 0.0) diverges("positive part");
      return 0.0;
    case TailModel::power:
      A = pot.values().back() - L;
      k = pot.tail_exponent();
      break;
  }
  if (k == 0.0 || A == 0.0) {
    if (lam - A > 0.0) diverges("positive part");
    return 0.0;
  }
  // Limit of lam - A (r/R)^k at infinity.
  const double limit = k > 0.0 ? (A > 0.0 ? -1.0 : 1.0) : lam;
  if (limit > 0.0) diverges("positive part");
  if (limit == 0.0) {
    // lam = 0, k < 0: pure power (-A)^q (r/R)^{kq} when A < 0.
    if (A > 0.0) return 0.0;
    const double e = k * q + d;
    if (e >= 0.0) diverges("positive part");
    return sphere_area(d) * std::pow(-A, q) * std::pow(R, d) / (-e);
  }
  const double g_start = lam - A;
  if (g_start <= 0.0) return 0.0;
  const double r_end = R * std::pow(lam / A, 1.0 / k);
  auto f = [&](double r) {
    const double g = lam - A * std::pow(r / R, k);
    return g > 0.0 ? std::pow(g, q) * detail::radial_weight(d, r) : 0.0;
  };
  return sphere_area(d) * GK::integrate(f, R, r_end, 12, 1e-13);
}

void check_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw InputError("norm exponent q must be >= 1");
}

}  // namespace

double lq_plus_norm(const PotentialGrid& pot, double q, double lambda) {
  check_q(q);
  const double grid = pot.integrate_grid([&](double phi) { return std::pow(lambda - phi, q); }, lambda, true);
  const double total = grid + plus_tail(pot, q, lambda);
  if (!std::isfinite(total)) throw IntegrabilityError("positive-part integral is not finite");
  return std::pow(total, 1.0 / q);
}

double lq_norm_negative_part(const PotentialGrid& pot, double q) { return lq_plus_norm(pot, q, 0.0); }

double lq_norm_inverse(const PotentialGrid& pot, double q) {
  check_q(q);
  if (pot.min_value() <= 0.0) throw DomainError("inverse norm needs a positive potential");
  const int d = pot.d();
  const double R = pot.last_radius();
  const double L = pot.tail_level();
  double tail = 0.0;
  switch (pot.tail()) {
    case TailModel::none:
      if (L <= 0.0) throw DomainError("potential vanishes beyond the sampled range");
      diverges("inverse norm");
    case TailModel::constant:
      diverges("inverse norm");
    case TailModel::power: {
      const double A = pot.values().back() - L;
      const double k = pot.tail_exponent();
      if (!(k > 0.0) || !(A > 0.0)) {
        if (k < 0.0 && L <= 0.0) throw DomainError("potential decays to a nonpositive level");
        diverges("inverse norm");
      }
      if (L < 0.0) throw DomainError("power tail crosses zero");
      if (k * q <= d) diverges("inverse norm");
      if (L == 0.0) {
        tail = sphere_area(d) * std::pow(A, -q) * std::pow(R, d) / (k * q - d);
      } else {
        boost::math::quadrature::exp_sinh<double> integrator;
        auto f = [&](double s) {
          const double r = R + s;
          return std::pow(L + A * std::pow(r / R, k), -q) * detail::radial_weight(d, r);
        };
        tail = sphere_area(d) * integrator.integrate(f, 1e-12);
      }
      break;
    }
  }
  const double grid = pot.integrate_grid([&](double phi) { return std::pow(phi, -q); }, 0.0, false);
  const double total = grid + tail;
  if (!std::isfinite(total)) throw IntegrabilityError("inverse norm is not finite");
  return std::pow(total, 1.0 / q);
}

double gibbs_integral(const PotentialGrid& pot, double gamma) {
  if (!(gamma > 0.0)) throw InputError("gamma must be positive");
  const int d = pot.d();
  const double R = pot.last_radius();
  const double L = pot.tail_level();
  double tail = 0.0;
  if (pot.tail() != TailModel::power) diverges("Gibbs integral");
  const double A = pot.values().back() - L;
  const double k = pot.tail_exponent();
  if (!(k > 0.0) || !(A > 0.0)) diverges("Gibbs integral");
  // int_R^inf exp(-(L + A (r/R)^k)/gamma) r^{d-1} dr via t = (A/gamma)(r/R)^k.
  const double c = A / (gamma * std::pow(R, k));
  const double t0 = A / gamma;
  tail = sphere_area(d) * std::exp(-L / gamma) * std::pow(c, -d / k) / k * boost::math::tgamma(d / k, t0);
  const double grid = pot.integrate_grid([&](double phi) { return std::exp(-phi / gamma); }, 0.0, false);
  const double total = grid + tail;
  if (!std::isfinite(total)) throw IntegrabilityError("Gibbs integral is not finite");
  return total;
}

std::string_view to_string(BoundSource s) {
  switch (s) {
    case BoundSource::closed_form_interp:
      return "closed-form-interp";
    case BoundSource::closed_form_LT:
      return "closed-form-LT";
    case BoundSource::el_curve:
      return "EL-curve";
  }
  return "unknown";
}

BoundSource bound_source_from_string(std::string_view s) {
  if (s == "interp" || s == "closed-form-interp") return BoundSource::closed_form_interp;
  if (s == "lt" || s == "LT" || s == "closed-form-LT") return BoundSource::closed_form_LT;
  if (s == "el" || s == "EL" || s == "EL-curve") return BoundSource::el_curve;
  throw InputError("unknown bound source '" + std::string(s) + "'");
}

namespace {

void require_constant_field_2d(const ProblemParams& params) {
  if (params.d != 2 || !(params.B > 0.0) || params.Lambda != params.B) {
    throw DomainError("this bound source needs a two-dimensional constant field (Lambda = B > 0)");
  }
}

const BoundCurve& need_curve(const BoundCurve* curve) {
  if (curve == nullptr || curve->size() < 2) throw InputError("EL-curve source needs a sampled curve");
  return *curve;
}

}  // namespace

double alpha_of_mu(const ProblemParams& params, const GNConstants& gn, double mu, BoundSource source,
                   const BoundCurve* curve, bool* extended) {
  params.validate();
  const double p = params.p;
  if (!(p > 2.0)) throw DomainError("alpha_B is defined for p > 2");
  if (!(mu >= 0.0)) throw DomainError("mu must be nonnegative");
  const double lambda = params.Lambda;
  if (extended) *extended = false;
  if (mu == 0.0) return -lambda;
  const double a = params.d * (p - 2.0) / (2.0 * p);
  switch (source) {
    case BoundSource::closed_form_interp: {
      const double threshold = lambda > 0.0 ? gn.S_p * std::pow(lambda, 1.0 - a) / a : 0.0;
      if (mu <= threshold) return mu * std::pow(lambda, a) / gn.S_p - lambda;
      return std::pow(mu / gn.C_p, 1.0 / (1.0 - a));
    }
    case BoundSource::closed_form_LT: {
      require_constant_field_2d(params);
      const double B = params.B;
      // Unknown s = log(alpha + B); mu_LT increases with alpha.
      auto f = [&](double s) { return std::log(mu_LT(p, B, std::exp(s) - B, gn.C_p)) - std::log(mu); };
      double lo = std::log(B) - 1.0;
      while (f(lo) > 0.0) lo -= 2.0;
      double hi = std::log(B) + 1.0;
      while (f(hi) < 0.0) hi += 1.0;
      boost::uintmax_t iters = 200;
      auto [s0, s1] = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
      return std::exp(0.5 * (s0 + s1)) - B;
    }
    case BoundSource::el_curve: {
      const BoundCurve& c = need_curve(curve);
      const auto& x = c.parameters();
      const auto& y = c.values();
      if (mu > y.back()) {
        if (extended) *extended = true;
        return std::pow(mu / gn.C_p, 1.0 / (1.0 - a));
      }
      if (mu < y.front()) {
        if (extended) *extended = true;
        return -lambda + (x.front() + lambda) * mu / y.front();
      }
      return c.invert(mu);
    }
  }
  throw InputError("unknown bound source");
}

double nu_of_beta(const ProblemParams& params, const GNConstants& gn, double beta, BoundSource source,
                  const BoundCurve* curve, bool* extended) {
  params.validate();
  const double p = params.p;
  if (!(p > 1.0 && p < 2.0)) throw DomainError("nu_B is defined for 1 < p < 2");
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  const double lambda = params.Lambda;
  if (extended) *extended = false;
  if (beta == 0.0) return lambda;
  switch (source) {
    case BoundSource::closed_form_interp:
      return nu_interp(params, gn, beta);
    case BoundSource::closed_form_LT:
      require_constant_field_2d(params);
      return nu_LT(p, params.B, beta, gn).value;
    case BoundSource::el_curve: {
      const BoundCurve& c = need_curve(curve);
      const auto& x = c.parameters();
      const auto& y = c.values();
      if (beta > y.back()) {
        if (extended) *extended = true;
        const double n = 2.0 * p + params.d * (2.0 - p);
        return gn.C_p * std::pow(beta, 2.0 * p / n);
      }
      if (beta < y.front()) {
        if (extended) *extended = true;
        return lambda + (x.front() - lambda) * beta / y.front();
      }
      return c.invert(beta);
    }
  }
  throw InputError("unknown bound source");
}

KLTBound klt_case_i(const ProblemParams& params, const GNConstants& gn, double norm_V, BoundSource source,
                    const BoundCurve* curve) {
  params.validate();
  const double p = params.p;
  if (!(p > 2.0)) throw DomainError("case i needs p > 2");
  const double q = p / (p - 2.0);
  if (!(q > 0.5 * params.d)) throw DomainError("case i needs q > d/2");
  if (!(norm_V >= 0.0)) throw DomainError("norm must be nonnegative");
  KLTBound b;
  b.case_name = "i";
  b.input_norm = norm_V;
  b.bound_source = source;
  b.bound_value = -alpha_of_mu(params, gn, norm_V, source, curve, &b.asymptotic_extended);
  return b;
}

KLTBound klt_case_ii(const ProblemParams& params, const GNConstants& gn, double beta, BoundSource source,
                     const BoundCurve* curve) {
  params.validate();
  if (!(beta >= 0.0)) throw DomainError("beta must be nonnegative");
  KLTBound b;
  b.case_name = "ii";
  b.input_norm = beta;
  b.bound_source = source;
  b.bound_value = nu_of_beta(params, gn, beta, source, curve, &b.asymptotic_extended);
  return b;
}

KLTBound klt_case_iii(const ProblemParams& params, double gamma, double gibbs) {
  params.validate(true);
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  if (!(gibbs > 0.0) || !std::isfinite(gibbs)) throw DomainError("Gibbs integral must be positive and finite");
  KLTBound b;
  b.case_name = "iii";
  b.input_norm = gibbs;
  const bool sharp = params.d == 2 && params.B > 0.0 && params.Lambda == params.B;
  b.bound_source = sharp ? BoundSource::closed_form_LT : BoundSource::closed_form_interp;
  const double xi = sharp ? xi_constant_field(params.B, gamma) : xi_zero_field(params.d, gamma);
  b.bound_value = xi - gamma * std::log(gibbs);
  return b;
}

KLTBound klt_threshold_case(const ProblemParams& params, const GNConstants& gn, const PotentialGrid& potential,
                            double q, double lambda, ThresholdCase which, BoundSource source,
                            const BoundCurve* curve) {
  params.validate();
  if (potential.d() != params.d) throw InputError("potential dimension differs from the problem dimension");
  const double p = params.p;
  KLTBound b;
  if (which == ThresholdCase::i) {
    if (!(p > 2.0)) throw DomainError("threshold case i needs p > 2");
    if (std::abs(q - p / (p - 2.0)) > 1e-12 * q) throw InputError("case i uses q = p/(p-2)");
    const double norm = lq_plus_norm(potential, q, lambda);
    b = klt_case_i(params, gn, norm, source, curve);
    b.case_name = "i-threshold";
  } else {
    if (!(p > 1.0 && p < 2.0)) throw DomainError("threshold case ii needs 1 < p < 2");
    if (std::abs(q - p / (2.0 - p)) > 1e-12 * q) throw InputError("case ii uses q = p/(2-p)");
    if (!(potential.min_value() > lambda)) {
      throw InputError("threshold case ii requires phi > lambda on the whole grid");
    }
    const double inv = lq_norm_inverse(potential.shifted(-lambda), q);
    b = klt_case_ii(params, gn, 1.0 / inv, source, curve);
    b.case_name = "ii-threshold";
  }
  b.bound_value += lambda;
  b.threshold_lambda = lambda;
  return b;
}

}  // namespace magineq
