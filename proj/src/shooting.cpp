#include "magineq/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include "magineq/errors.hpp"

namespace magineq {

namespace ode = boost::numeric::odeint;

std::string_view to_string(ShootClass c) {
  switch (c) {
    case ShootClass::crossed:
      return "crossed";
    case ShootClass::rebound:
      return "rebound";
    case ShootClass::converged_decay:
      return "converged-decay";
    case ShootClass::tangential_touchdown:
      return "tangential-touchdown";
  }
  return "unknown";
}

namespace {

using State = std::array<double, 2>;

void push_node(RadialProfile& prof, double r, const State& s) {
  if (!prof.nodes.empty() && r <= prof.nodes.back()) {
    prof.values.back() = s[0];
    prof.derivative_values.back() = s[1];
    return;
  }
  prof.nodes.push_back(r);
  prof.values.push_back(s[0]);
  prof.derivative_values.push_back(s[1]);
}

template <class Dense>
double locate_root(const Dense& dense, double t0, double t1, int component) {
  State s;
  auto f = [&](double t) {
    dense.calc_state(t, s);
    return s[component];
  };
  const double f0 = f(t0);
  const double f1 = f(t1);
  if (f1 == 0.0) return t1;
  if (f0 == 0.0) return t0;
  if (f0 * f1 > 0.0) return t1;
  boost::uintmax_t max_iter = 100;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto [lo, hi] = boost::math::tools::toms748_solve(f, t0, t1, f0, f1, tol, max_iter);
  return 0.5 * (lo + hi);
}

double midpoint(double lo, double hi) { return hi > 2.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi); }

bool undecided_window(const ShootOutcome& o, double r_max, const SolverConfig& config) {
  if (o.classification != ShootClass::converged_decay) return false;
  if (o.event_radius < r_max) return false;
  return std::abs(o.profile.values.back()) > std::sqrt(config.decay_cutoff) * o.profile.initial_amplitude;
}

struct WindowTooSmall {};

}  // namespace

ShootOutcome shoot(const RadialShooter& shooter, double a, const SolverConfig& config) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("shooting amplitude must be positive and finite");
  const int d = shooter.d;
  const double r0 = config.r0;
  const double c2 = shooter.source(0.0, a) / (2.0 * d);

  ShootOutcome out;
  out.profile.d = d;
  out.profile.initial_amplitude = a;

  State x{a + c2 * r0 * r0, 2.0 * c2 * r0};
  push_node(out.profile, r0, x);
  if (c2 >= 0.0) {
    out.classification = ShootClass::rebound;
    out.event_radius = r0;
    return out;
  }

  auto system = [&](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = shooter.source(r, s[0]) - (d - 1) * s[1] / r;
  };

  auto dense = ode::make_dense_output(config.ode_abs_tol * a, config.ode_rel_tol, config.max_step,
                                      ode::runge_kutta_dopri5<State>());
  dense.initialize(x, r0, std::min(config.max_step, 1e-4));

  const double touch = config.touchdown_tol * a;
  auto touching = [&](const State& s) {
    return shooter.compact_support && std::abs(s[0]) < touch && std::abs(s[1]) < touch;
  };

  State s1;
  try {
    while (dense.current_time() < shooter.r_max) {
      auto [t0, t1] = dense.do_step(system);
      s1 = dense.current_state();
      if (t1 > shooter.r_max) {
        t1 = shooter.r_max;
        dense.calc_state(t1, s1);
      }
      if (!std::isfinite(s1[0]) || !std::isfinite(s1[1])) {
        throw IntegrationError("non-finite state at r = " + std::to_string(t1));
      }
      const double r_cross = s1[0] <= 0.0 ? locate_root(dense, t0, t1, 0) : std::numeric_limits<double>::infinity();
      const double r_turn = s1[1] >= 0.0 ? locate_root(dense, t0, t1, 1) : std::numeric_limits<double>::infinity();
      if (std::isfinite(r_cross) || std::isfinite(r_turn)) {
        const double r_e = std::min(r_cross, r_turn);
        State se;
        dense.calc_state(r_e, se);
        if (r_cross <= r_turn) {
          se[0] = 0.0;
          out.classification = ShootClass::crossed;
        } else {
          se[1] = 0.0;
          out.classification = ShootClass::rebound;
        }
        if (touching(se)) out.classification = ShootClass::tangential_touchdown;
        push_node(out.profile, r_e, se);
        out.event_radius = r_e;
        return out;
      }
      push_node(out.profile, t1, s1);
      if (touching(s1)) {
        out.classification = ShootClass::tangential_touchdown;
        out.event_radius = t1;
        return out;
      }
      if (!shooter.compact_support && s1[0] < config.decay_cutoff * a) break;
    }
  } catch (const ode::step_adjustment_error& e) {
    throw IntegrationError(std::string("step size collapse: ") + e.what());
  }
  out.classification = ShootClass::converged_decay;
  out.event_radius = out.profile.nodes.back();
  return out;
}

AmplitudeBracket find_bracket(const RadialShooter& shooter, double start, double a_min, double a_max,
                              const SolverConfig& config) {
  double a = std::clamp(start, a_min, a_max);
  const ShootClass c = shoot(shooter, a, config).classification;
  if (c == ShootClass::converged_decay || c == ShootClass::tangential_touchdown) return {a, a};
  if (c == ShootClass::rebound) {
    double lo = a;
    for (double hi = 2.0 * lo; hi <= a_max; lo = hi, hi *= 2.0) {
      const ShootClass ch = shoot(shooter, hi, config).classification;
      if (ch == ShootClass::crossed) return {lo, hi};
      if (ch != ShootClass::rebound) return {hi, hi};
    }
    throw SolverError("no crossing trajectory for amplitudes up to " + std::to_string(a_max));
  }
  for (double hi = a; hi > a_min;) {
    const double lo = std::max(0.5 * hi, a_min);
    const ShootClass cl = shoot(shooter, lo, config).classification;
    if (cl == ShootClass::rebound) return {lo, hi};
    if (cl != ShootClass::crossed) return {lo, lo};
    hi = lo;
  }
  throw SolverError("no rebounding trajectory for amplitudes down to " + std::to_string(a_min));
}

std::vector<AmplitudeBracket> scan_brackets(const RadialShooter& shooter, double a_lo, double a_hi, int samples,
                                            const SolverConfig& config) {
  if (!(a_lo > 0.0) || !(a_hi > a_lo) || samples < 2) throw InputError("invalid amplitude scan range");
  std::vector<AmplitudeBracket> found;
  const double ratio = std::pow(a_hi / a_lo, 1.0 / (samples - 1));
  double prev_a = a_lo;
  ShootClass prev = shoot(shooter, prev_a, config).classification;
  for (int i = 1; i < samples; ++i) {
    const double a = i + 1 == samples ? a_hi : a_lo * std::pow(ratio, i);
    const ShootClass c = shoot(shooter, a, config).classification;
    if (prev == ShootClass::rebound && c == ShootClass::crossed) found.push_back({prev_a, a});
    if (c == ShootClass::tangential_touchdown) found.push_back({a, a});
    prev = c;
    prev_a = a;
  }
  return found;
}

namespace {

// Narrows the bracket until its relative width is below `tol`. Returns an
// exact hit when a midpoint is itself converged.
std::optional<ShootOutcome> bisect(const RadialShooter& shooter, AmplitudeBracket& br, double tol,
                                   const SolverConfig& config, int& iterations, bool strict_window) {
  while (br.crossed > br.rebound && br.relative_width() > tol) {
    const double mid = midpoint(br.rebound, br.crossed);
    if (mid <= br.rebound || mid >= br.crossed) break;
    ShootOutcome o = shoot(shooter, mid, config);
    ++iterations;
    if (strict_window && undecided_window(o, shooter.r_max, config)) throw WindowTooSmall{};
    switch (o.classification) {
      case ShootClass::crossed:
        br.crossed = mid;
        break;
      case ShootClass::rebound:
        br.rebound = mid;
        break;
      default:
        br = {mid, mid};
        return o;
    }
  }
  return std::nullopt;
}

RadialProfile truncate(const RadialProfile& prof, std::size_t count) {
  RadialProfile out = prof;
  out.nodes.resize(count);
  out.values.resize(count);
  out.derivative_values.resize(count);
  return out;
}

}  // namespace

ShootingSolution solve_decaying(RadialShooter shooter, double start, double a_min, const SolverConfig& config) {
  for (int attempt = 0; attempt < 8; ++attempt, shooter.r_max *= 2.0) {
    ShootingSolution sol;
    sol.window = shooter.r_max;
    try {
      AmplitudeBracket br = find_bracket(shooter, start, a_min, config.amplitude_max, config);
      auto hit = bisect(shooter, br, config.bracket_tol, config, sol.iterations, true);
      sol.bracket = br;
      if (hit) {
        if (undecided_window(*hit, shooter.r_max, config)) throw WindowTooSmall{};
        sol.profile = std::move(hit->profile);
        sol.amplitude = br.rebound;
        sol.truncation_radius = sol.profile.nodes.back();
        sol.terminal = hit->classification;
        return sol;
      }
      ShootOutcome lo = shoot(shooter, br.rebound, config);
      const ShootOutcome hi = shoot(shooter, br.crossed, config);
      if (undecided_window(lo, shooter.r_max, config)) throw WindowTooSmall{};
      // Keep the rebound trajectory while both endpoints still agree.
      const auto& pl = lo.profile;
      std::size_t keep = pl.nodes.size();
      for (std::size_t i = 0; i < pl.nodes.size(); ++i) {
        const double r = pl.nodes[i];
        const double v = pl.values[i];
        if (r >= hi.event_radius || pl.derivative_values[i] >= 0.0 ||
            std::abs(hi.profile.value(r) - v) > 1e-4 * std::abs(v)) {
          keep = i;
          break;
        }
      }
      if (keep < 8) throw SolverError("bracket trajectories separate immediately; amplitude not resolved");
      sol.profile = truncate(pl, keep);
      sol.amplitude = 0.5 * (br.rebound + br.crossed);
      sol.profile.initial_amplitude = sol.amplitude;
      sol.truncation_radius = sol.profile.nodes.back();
      sol.terminal = lo.classification;
      return sol;
    } catch (const WindowTooSmall&) {
      continue;
    }
  }
  throw SolverError("decaying solution not resolved within the enlarged integration window");
}

namespace {

// Profile ending at the event of a compact-support candidate, with v
// forced to zero beyond the event radius.
RadialProfile compact_profile(const ShootOutcome& o) {
  RadialProfile p = o.profile;
  p.values.back() = 0.0;
  p.support_radius = o.event_radius;
  return p;
}

}  // namespace

ShootingSolution solve_compact(const RadialShooter& shooter, AmplitudeBracket br, double exponent,
                               const SolverConfig& config) {
  ShootingSolution sol;
  sol.window = shooter.r_max;
  double tol = config.bracket_tol;
  for (int round = 0; round < 6; ++round) {
    auto hit = bisect(shooter, br, tol, config, sol.iterations, false);
    sol.bracket = br;
    if (hit) {
      sol.profile = compact_profile(*hit);
      sol.amplitude = br.rebound;
      sol.truncation_radius = hit->event_radius;
      sol.terminal = hit->classification;
      return sol;
    }
    const ShootOutcome lo = shoot(shooter, br.rebound, config);
    const ShootOutcome hi = shoot(shooter, br.crossed, config);
    if (lo.classification != ShootClass::rebound || hi.classification != ShootClass::crossed) {
      throw SolverError("compact-support bracket lost its sign structure");
    }
    const RadialProfile plo = compact_profile(lo);
    const RadialProfile phi = compact_profile(hi);
    const double i_lo = weighted_integral(plo, exponent);
    const double i_hi = weighted_integral(phi, exponent);
    const bool settled = std::abs(i_lo - i_hi) <= config.beta_change_tol * std::abs(i_hi) &&
                         std::abs(hi.profile.derivative_values.back()) < config.touchdown_tol * br.crossed * 100.0;
    if (settled || br.relative_width() < 8.0 * std::numeric_limits<double>::epsilon()) {
      sol.profile = phi;
      sol.amplitude = br.crossed;
      sol.truncation_radius = hi.event_radius;
      sol.terminal = ShootClass::tangential_touchdown;
      return sol;
    }
    tol *= 1e-1;
  }
  throw SolverError("tangential touchdown not resolved; bracket [" + std::to_string(br.rebound) + ", " +
                    std::to_string(br.crossed) + "]");
}

double ode_residual(const RadialProfile& profile, const std::function<double(double, double)>& source) {
  const std::size_t n = profile.nodes.size();
  if (n < 8) throw InputError("profile too short for a residual check");
  double worst = 0.0;
  const int d = profile.d;
  for (std::size_t i = 3; i + 3 < n; ++i) {
    const std::span<const double> xs(profile.nodes.data() + i - 3, 7);
    const auto w = fd_first_derivative_weights(profile.nodes[i], xs);
    double second = 0.0;
    for (std::size_t j = 0; j < 7; ++j) second += w[j] * profile.derivative_values[i - 3 + j];
    const double r = profile.nodes[i];
    const double res = second + (d - 1) * profile.derivative_values[i] / r - source(r, profile.values[i]);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

}  // namespace magineq
