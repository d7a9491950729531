#include "magineq/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "magineq/el_solver.hpp"
#include "magineq/errors.hpp"
#include "magineq/shooting.hpp"

namespace magineq {

std::string_view to_string(EigenMethod m) {
  return m == EigenMethod::finite_difference ? "finite-difference" : "shooting";
}

double sector_potential(const SectorProblem& pb, double r) {
  double u = 0.25 * pb.B * pb.B * r * r - pb.B + pb.alpha;
  if (pb.psi0 != nullptr && pb.coupling != 0.0) {
    u -= pb.coupling * 0.5 * pb.p * std::pow(std::abs(pb.psi0->value(r)), pb.p - 2.0);
  }
  return u;
}

double sector_window(const SectorProblem& pb) {
  if (pb.r_max > 0.0) return pb.r_max;
  if (!(pb.B > 0.0)) throw DomainError("the perturbation problem needs B > 0");
  return 2.0 * std::sqrt(50.0 + 2.0 * pb.B + 2.0 * std::abs(pb.alpha)) / pb.B;
}

namespace {

struct Tridiagonal {
  std::vector<double> diag, off, mass, nodes;
  /// Face conductances r^3/h at (i + 1/2) h; the last one couples to w_n = 0.
  std::vector<double> face;
  std::vector<double> potential;
};

// Symmetric form M^{-1/2} K M^{-1/2} + U of the finite-volume operator on
// nodes i h, i = 0..n-1, with w_n = 0 at r = n h.
Tridiagonal assemble(const SectorProblem& pb, double h, int n) {
  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.off.assign(n > 0 ? n - 1 : 0, 0.0);
  t.mass.resize(n);
  t.nodes.resize(n);
  t.potential.resize(n);
  const double R = n * h;
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) {
    const double r = i * h;
    const double a = std::max(0.0, r - 0.5 * h);
    const double b = std::min(R, r + 0.5 * h);
    t.nodes[i] = r;
    t.mass[i] = 0.25 * (b * b * b * b - a * a * a * a);
    const double face = r + 0.5 * h;
    k[i] = face * face * face / h;
  }
  for (int i = 0; i < n; ++i) {
    double kii = k[i];
    if (i > 0) kii += k[i - 1];
    t.potential[i] = sector_potential(pb, t.nodes[i]);
    t.diag[i] = kii / t.mass[i] + t.potential[i];
    if (i + 1 < n) t.off[i] = -k[i] / std::sqrt(t.mass[i] * t.mass[i + 1]);
  }
  t.face = std::move(k);
  return t;
}

// Number of eigenvalues strictly below x.
int sturm_count(const Tridiagonal& t, double x) {
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double b2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = t.diag[i] - x - (i > 0 ? b2 / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

double tridiagonal_eigenvalue(const Tridiagonal& t, int index) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off[i - 1]);
    if (i + 1 < t.diag.size()) radius += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > index) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration with a shift just below `lambda`; returns w on the nodes.
std::vector<double> tridiagonal_eigenvector(const Tridiagonal& t, double lambda) {
  const std::size_t n = t.diag.size();
  const double shift = lambda - 1e-9 * std::max(1.0, std::abs(lambda));
  std::vector<double> x(n, 1.0), c(n), dprime(n);
  for (int sweep = 0; sweep < 4; ++sweep) {
    // Thomas algorithm on (A - shift) y = x.
    std::vector<double> y(n);
    double denom = t.diag[0] - shift;
    c[0] = n > 1 ? t.off[0] / denom : 0.0;
    dprime[0] = x[0] / denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = t.diag[i] - shift - t.off[i - 1] * c[i - 1];
      c[i] = i + 1 < n ? t.off[i] / denom : 0.0;
      dprime[i] = (x[i] - t.off[i - 1] * dprime[i - 1]) / denom;
    }
    y[n - 1] = dprime[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) y[i] = dprime[i] - c[i] * y[i + 1];
    double norm = 0.0;
    for (double v : y) norm += v * v;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  // Back from the symmetric form: w = M^{-1/2} x.
  for (std::size_t i = 0; i < n; ++i) x[i] /= std::sqrt(t.mass[i]);
  return x;
}

// Discrete Rayleigh quotient in energy form. Bisection alone is limited to
// roughly eps * ||A|| ~ eps / h^2 in absolute terms, far too coarse when the
// eigenvalue itself is tiny; the edge sums below carry no such cancellation.
double rayleigh_quotient(const Tridiagonal& t, const std::vector<double>& w) {
  const std::size_t n = w.size();
  double energy = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? w[i + 1] : 0.0;
    const double jump = next - w[i];
    energy += t.face[i] * jump * jump + t.mass[i] * t.potential[i] * w[i] * w[i];
    norm += t.mass[i] * w[i] * w[i];
  }
  return energy / norm;
}

RadialProfile eigenfunction_profile(const Tridiagonal& t, std::vector<double> w, double h) {
  const std::size_t n = w.size();
  w.push_back(0.0);
  std::vector<double> r = t.nodes;
  r.push_back(n * h);
  // Sign: positive near the origin.
  if (w[0] < 0.0) {
    for (double& v : w) v = -v;
  }
  RadialProfile prof;
  prof.d = 2;
  prof.nodes = r;
  prof.values.resize(r.size());
  prof.derivative_values.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::size_t lo = i < 2 ? 0 : std::min(i - 2, r.size() - 5);
    const auto wts = fd_first_derivative_weights(r[i], std::span<const double>(r.data() + lo, 5));
    double dw = 0.0;
    for (std::size_t j = 0; j < 5; ++j) dw += wts[j] * w[lo + j];
    prof.values[i] = r[i] * w[i];
    prof.derivative_values[i] = w[i] + r[i] * dw;
  }
  prof.initial_amplitude = 0.0;
  prof.support_radius = r.back();
  const double norm = std::sqrt(radial_norm_squared(prof));
  for (std::size_t i = 0; i < r.size(); ++i) {
    prof.values[i] /= norm;
    prof.derivative_values[i] /= norm;
  }
  return prof;
}

EigenEstimate finite_difference(const SectorProblem& pb, int index, const SolverConfig& config) {
  const double h0 = config.fd_step;
  if (!(h0 > 0.0)) throw InputError("fd_step must be positive");
  const int n0 = static_cast<int>(std::ceil(sector_window(pb) / h0));
  std::array<double, 3> lam{};
  Tridiagonal finest;
  double h = h0;
  for (int level = 0, n = n0; level < 3; ++level, h *= 0.5, n *= 2) {
    Tridiagonal t = assemble(pb, h, n);
    lam[level] = rayleigh_quotient(t, tridiagonal_eigenvector(t, tridiagonal_eigenvalue(t, index)));
    if (level == 2) finest = std::move(t);
  }
  h *= 2.0;
  const double r1 = (4.0 * lam[1] - lam[0]) / 3.0;
  const double r2 = (4.0 * lam[2] - lam[1]) / 3.0;
  EigenEstimate est;
  est.value = (16.0 * r2 - r1) / 15.0;
  est.r_max = n0 * h0;
  std::ostringstream os;
  os.precision(6);
  os << "fd h=" << h0 << "/" << h0 / 2 << "/" << h0 / 4 << " n=" << n0 << "/" << 4 * n0 << " R=" << est.r_max
     << " richardson=2";
  est.discretization = os.str();
  est.eigenfunction = eigenfunction_profile(finest, tridiagonal_eigenvector(finest, lam[2]), h);
  return est;
}

// Zeros of w on (0, R] for spectral parameter mu.
int zero_count(const SectorProblem& pb, double mu, double R, const SolverConfig& config) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double r0 = config.r0;
  const double c = (sector_potential(pb, 0.0) - mu) / 8.0;
  State x{1.0 + c * r0 * r0, 2.0 * c * r0};
  auto system = [&](const State& s, State& ds, double r) {
    ds[0] = s[1];
    ds[1] = -3.0 * s[1] / r + (sector_potential(pb, r) - mu) * s[0];
  };
  auto stepper = ode::make_controlled(1e-14, 1e-12, config.max_step, ode::runge_kutta_dopri5<State>());
  double r = r0;
  double dt = 1e-4;
  int zeros = 0;
  double prev = x[0];
  while (r < R) {
    if (r + dt > R) dt = R - r;
    State before = x;
    const double r_before = r;
    if (stepper.try_step(system, x, r, dt) == ode::fail) {
      x = before;
      r = r_before;
      if (dt < 1e-14) throw IntegrationError("step size collapse in the perturbation shooting");
      continue;
    }
    if (!std::isfinite(x[0])) throw IntegrationError("non-finite perturbation trajectory");
    if ((x[0] < 0.0) != (prev < 0.0)) ++zeros;
    prev = x[0];
    // Renormalize to keep the growing mode in range.
    const double scale = std::abs(x[0]) + std::abs(x[1]);
    if (scale > 1e100) {
      x[0] /= scale;
      x[1] /= scale;
    }
  }
  return zeros;
}

EigenEstimate shooting(const SectorProblem& pb, int index, const SolverConfig& config) {
  const double R = std::ceil(sector_window(pb) / config.fd_step) * config.fd_step;
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 200; ++i) lo = std::min(lo, sector_potential(pb, R * i / 200.0));
  lo -= 1.0;
  while (zero_count(pb, lo, R, config) > index) lo -= 2.0 * std::abs(lo) + 1.0;
  double hi = std::abs(lo) + 1.0;
  while (zero_count(pb, hi, R, config) <= index) hi = 2.0 * hi + 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    if (zero_count(pb, mid, R, config) > index) hi = mid;
    else lo = mid;
  }
  EigenEstimate est;
  est.value = 0.5 * (lo + hi);
  est.r_max = R;
  std::ostringstream os;
  os << "shooting r0=" << config.r0 << " R=" << R << " rtol=1e-12";
  est.discretization = os.str();
  return est;
}

}  // namespace

EigenEstimate sector_eigenvalue(const SectorProblem& problem, int index, EigenMethod method,
                                const SolverConfig& config) {
  if (index < 0) throw InputError("eigenvalue index must be nonnegative");
  if (problem.psi0 != nullptr && !(problem.p > 2.0)) throw DomainError("the perturbation problem needs p > 2");
  return method == EigenMethod::finite_difference ? finite_difference(problem, index, config)
                                                  : shooting(problem, index, config);
}

StabilityResult lowest_c1_eigenvalue(const RadialProfile& psi0, double p, double B, double alpha,
                                     const SolverConfig& config) {
  if (psi0.empty()) throw InputError("missing base profile");
  psi0.validate();
  if (!(p > 2.0)) throw DomainError("stability analysis needs p > 2");
  if (!(B > 0.0)) throw DomainError("stability analysis needs B > 0");
  const double a = std::max(1.0, std::abs(psi0.initial_amplitude));
  const double residual =
      ode_residual(psi0, [&](double r, double v) { return supercritical_source(p, B, alpha, r, v); });
  if (residual > 1e-5 * a) {
    throw InputError("base profile does not solve the Euler-Lagrange equation for these parameters (residual " +
                     std::to_string(residual) + ")");
  }

  SectorProblem pb{&psi0, p, B, alpha, 1.0, 0.0};
  const EigenEstimate fd = sector_eigenvalue(pb, 0, EigenMethod::finite_difference, config);
  const EigenEstimate sh = sector_eigenvalue(pb, 0, EigenMethod::shooting, config);

  StabilityResult out;
  out.alpha = alpha;
  out.mu_fd = fd.value;
  out.mu_shooting = sh.value;
  out.mu_eig = sh.value;
  out.relative_gap = std::abs(fd.value - sh.value) / std::max(std::abs(sh.value), 1e-300);
  std::ostringstream ref;
  ref << "mu_EL profile p=" << p << " B=" << B << " alpha=" << alpha << " a=" << psi0.initial_amplitude
      << " nodes=" << psi0.nodes.size();
  out.base_profile_ref = ref.str();
  out.method = "finite-difference+shooting";
  out.discretization = fd.discretization + "; " + sh.discretization;
  out.r_max = sh.r_max;
  out.truncation_margin = sector_potential(pb, sh.r_max) - out.mu_eig;
  out.eigenfunction = fd.eigenfunction;
  if (out.relative_gap > config.eig_tol) {
    throw AccuracyError("finite-difference (" + std::to_string(fd.value) + ") and shooting (" +
                        std::to_string(sh.value) + ") eigenvalues disagree");
  }
  return out;
}

double radial_norm_squared(const RadialProfile& v) {
  v.validate();
  return integrate_on_profile(v, [](double, double x, double) { return x * x; }) / sphere_area(v.d);
}

double quadratic_form_check(const RadialProfile& psi0, double p, double B, double alpha, const RadialProfile& v_test,
                            double coupling) {
  v_test.validate();
  double vmax = 0.0;
  for (double x : v_test.values) vmax = std::max(vmax, std::abs(x));
  const double v_origin = v_test.nodes.front() == 0.0 ? v_test.values.front() : v_test.initial_amplitude;
  if (std::abs(v_origin) > 1e-12 * vmax) {
    throw InputError("test function does not vanish at the origin; the 1/r^2 term diverges");
  }
  auto integrand = [&](double r, double v, double dv) {
    const double m = 1.0 / r - 0.5 * B * r;
    double q = dv * dv + (m * m + alpha) * v * v;
    if (coupling != 0.0) q -= coupling * 0.5 * p * std::pow(std::abs(psi0.value(r)), p - 2.0) * v * v;
    return q;
  };
  return integrate_on_profile(v_test, integrand) / sphere_area(v_test.d);
}

}  // namespace magineq
