#pragma once

// Reference computations that share no code with the library: uniform
// Simpson quadrature, golden-section search and a finite-difference
// Petviashvili iteration for positive radial ground states.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

inline double sphere(int d) { return d == 2 ? 2.0 * pi : 4.0 * pi; }

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Radial integral |S^{d-1}| int_0^R f(r) r^{d-1} dr.
inline double radial(const std::function<double(double)>& f, int d, double R, int n = 20000) {
  return sphere(d) * simpson([&](double r) { return f(r) * std::pow(r, d - 1); }, 0.0, R, n);
}

/// Minimizer of a unimodal f on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// L^p mass P = |S| int u^p r^{d-1} dr of the positive solution of
/// -u'' - (d-1)u'/r + V(r) u = u^{p-1}, u'(0) = 0, u(R) = 0, on a uniform
/// mesh of width h; trapezoid weights.
inline double petviashvili_mass(int d, double p, const std::function<double(double)>& V, double R, double h) {
  const int n = static_cast<int>(std::lround(R / h));
  std::vector<double> r(n), lo(n), di(n), up(n), u(n), rhs(n), w(n);
  for (int i = 0; i < n; ++i) {
    r[i] = i * h;
    w[i] = (i == 0 ? 0.5 : 1.0) * h * std::pow(r[i], d - 1);
    if (i == 0) {
      // Delta u(0) = d u''(0) with the even extension.
      di[i] = 2.0 * d / (h * h) + V(0.0);
      up[i] = -2.0 * d / (h * h);
      lo[i] = 0.0;
    } else {
      const double c = (d - 1) / (2.0 * h * r[i]);
      lo[i] = -1.0 / (h * h) + c;
      di[i] = 2.0 / (h * h) + V(r[i]);
      up[i] = -1.0 / (h * h) - c;
    }
    u[i] = std::exp(-r[i] * r[i]);
  }
  // d = 3 weights: the volume element at 0 vanishes anyway.
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int i = 0; i < n; ++i) {
      y[i] = di[i] * x[i];
      if (i > 0) y[i] += lo[i] * x[i - 1];
      if (i + 1 < n) y[i] += up[i] * x[i + 1];
    }
  };
  auto solve = [&](std::vector<double> b) {
    std::vector<double> c(n), x(n);
    double m = di[0];
    c[0] = up[0] / m;
    b[0] /= m;
    for (int i = 1; i < n; ++i) {
      m = di[i] - lo[i] * c[i - 1];
      c[i] = up[i] / m;
      b[i] = (b[i] - lo[i] * b[i - 1]) / m;
    }
    x[n - 1] = b[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = b[i] - c[i] * x[i + 1];
    return x;
  };
  // The scheme is not symmetric for the plain weights, so the stabilizing
  // factor uses the discrete identity <u, L u>_w / <u, u^{p-1}>_w with the
  // row-consistent weights below (finite-volume form).
  const double gamma = (p - 1.0) / (p - 2.0);
  std::vector<double> Lu(n);
  for (int it = 0; it < 5000; ++it) {
    for (int i = 0; i < n; ++i) rhs[i] = std::pow(std::max(u[i], 0.0), p - 1.0);
    apply(u, Lu);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const double wi = i == 0 ? std::pow(0.5 * h, d) / d : h * std::pow(r[i], d - 1);
      num += wi * u[i] * Lu[i];
      den += wi * u[i] * rhs[i];
    }
    const double M = num / den;
    std::vector<double> next = solve(rhs);
    const double scale = std::pow(M, gamma);
    double change = 0.0, size = 0.0;
    for (int i = 0; i < n; ++i) {
      next[i] *= scale;
      change = std::max(change, std::abs(next[i] - u[i]));
      size = std::max(size, std::abs(next[i]));
    }
    u = std::move(next);
    if (change < 1e-14 * size) break;
    if (it == 4999) throw std::runtime_error("Petviashvili iteration did not converge");
  }
  double P = 0.0;
  for (int i = 0; i < n; ++i) P += w[i] * std::pow(u[i], p);
  return sphere(d) * P;
}

/// P^{1 - 2/p} from meshes h and h/2 with one Richardson step (second order).
inline double petviashvili_constant(int d, double p, const std::function<double(double)>& V, double R, double h) {
  const double e = 1.0 - 2.0 / p;
  const double c0 = std::pow(petviashvili_mass(d, p, V, R, h), e);
  const double c1 = std::pow(petviashvili_mass(d, p, V, R, 0.5 * h), e);
  return (4.0 * c1 - c0) / 3.0;
}

/// Moments of u = exp(-r^2 / (2 sigma)) in two dimensions with field B:
/// kinetic int |grad_A u|^2 (for real radial u this is u'^2 + (B r/2)^2 u^2),
/// mass int u^2, lp int u^p.
struct GaussMoments {
  double kinetic, mass, lp;
};

inline GaussMoments gauss_moments(double p, double B, double sigma) {
  const double R = std::sqrt(2.0 * sigma * 800.0 / std::min(p, 2.0));
  auto u = [sigma](double r) { return std::exp(-r * r / (2.0 * sigma)); };
  GaussMoments m;
  m.kinetic = radial(
      [&](double r) {
        const double du = -r / sigma * u(r);
        return du * du + 0.25 * B * B * r * r * u(r) * u(r);
      },
      2, R, 40000);
  m.mass = radial([&](double r) { return u(r) * u(r); }, 2, R, 40000);
  m.lp = radial([&](double r) { return std::pow(u(r), p); }, 2, R, 40000);
  return m;
}

/// (int |grad_A u|^2 + alpha int u^2) / ||u||_p^2.
inline double gauss_mu_quotient(double p, double B, double alpha, double sigma) {
  const auto m = gauss_moments(p, B, sigma);
  return (m.kinetic + alpha * m.mass) / std::pow(m.lp, 2.0 / p);
}

/// (int |grad_A u|^2 + beta ||u||_p^2) / int u^2.
inline double gauss_nu_quotient(double p, double B, double beta, double sigma) {
  const auto m = gauss_moments(p, B, sigma);
  return (m.kinetic + beta * std::pow(m.lp, 2.0 / p)) / m.mass;
}

}  // namespace oracle
