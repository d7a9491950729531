#include <doctest.h>

#include <cmath>
#include <vector>

#include "magineq/closed_bounds.hpp"
#include "magineq/el_solver.hpp"
#include "magineq/errors.hpp"
#include "oracles.hpp"

using namespace magineq;

namespace {

struct Moments {
  double G, R, M, P;
};

Moments moments(const RadialProfile& v, double p) {
  Moments m;
  m.G = gradient_norm_squared(v);
  m.R = integrate_on_profile(v, [](double r, double u, double) { return r * r * u * u; });
  m.M = weighted_integral(v, 2.0);
  m.P = weighted_integral(v, p);
  return m;
}

}  // namespace

TEST_CASE("mu_EL agrees with an independent finite-difference iteration") {
  // Frozen from oracle::petviashvili_constant(2, 3, r^2/4 + 1, 30, 0.01).
  const double frozen = 4.295273097291;
  CHECK(oracle::petviashvili_constant(2, 3.0, [](double r) { return 0.25 * r * r + 1.0; }, 30.0, 0.01) ==
        doctest::Approx(frozen).epsilon(1e-10));
  const ELPoint pt = solve_mu_el(3.0, 1.0, 1.0);
  CHECK(pt.value == doctest::Approx(frozen).epsilon(1e-8));
  CHECK(pt.residual < 1e-8);
}

TEST_CASE("supercritical EL profile satisfies the energy and virial identities") {
  for (double alpha : {-0.9, 0.0, 3.0}) {
    for (double p : {3.0, 4.0}) {
      const double B = 1.0;
      const ELPoint pt = solve_mu_el(p, B, alpha);
      const auto m = moments(pt.profile, p);
      CAPTURE(alpha);
      CAPTURE(p);
      CHECK(m.G + 0.25 * B * B * m.R + alpha * m.M == doctest::Approx(m.P).epsilon(1e-7));
      CHECK(alpha * m.M + 0.5 * B * B * m.R == doctest::Approx(2.0 / p * m.P).epsilon(1e-7));
      CHECK(pt.value == doctest::Approx(std::pow(m.P, 1.0 - 2.0 / p)).epsilon(1e-9));
    }
  }
}

TEST_CASE("subcritical EL profile: identities, compact support, inversion") {
  const double p = 1.4, B = 1.0;
  for (double nu : {1.2, 2.0, 6.0}) {
    const ELPoint pt = solve_nu_el(p, B, nu);
    CHECK(std::isfinite(pt.support_radius));
    const auto m = moments(pt.profile, p);
    CAPTURE(nu);
    CHECK(m.G + 0.25 * B * B * m.R + m.P == doctest::Approx(nu * m.M).epsilon(1e-6));
    CHECK(nu * m.M == doctest::Approx(0.5 * B * B * m.R + 2.0 / p * m.P).epsilon(1e-6));
    CHECK(pt.value == doctest::Approx(std::pow(m.P, 1.0 - 2.0 / p)).epsilon(1e-9));
    const ELPoint back = solve_nu_for_beta(p, B, pt.value);
    CHECK(back.parameter == doctest::Approx(nu).epsilon(1e-8));
  }
}

TEST_CASE("zero-field reduction of mu_EL") {
  const double Cp = compute_C_p(2, 3.0).C_p;
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    CHECK(solve_mu_el(3.0, 0.0, alpha).value == doctest::Approx(Cp * std::pow(alpha, 2.0 / 3.0)).epsilon(1e-6));
  }
}

TEST_CASE("field scaling identity") {
  const double p = 3.0, B = 1.0, alpha = 1.0;
  for (double eps : {0.5, 2.0}) {
    const double lhs = solve_mu_el(p, eps * B, alpha).value;
    const double rhs = std::pow(eps, 2.0 / p) * solve_mu_el(p, B, alpha / eps).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("mu_EL sits between the Loss-Thaller and Gaussian bounds and degenerates at -B") {
  const double Cp = compute_C_p(2, 3.0).C_p;
  double prev = INFINITY;
  for (double alpha : {-0.5, -0.9, -0.99}) {
    const double mu = solve_mu_el(3.0, 1.0, alpha).value;
    CHECK(mu < prev);
    CHECK(mu >= mu_LT(3.0, 1.0, alpha, Cp));
    CHECK(mu <= mu_gauss(3.0, 1.0, alpha).quotient_value);
    prev = mu;
  }
  prev = INFINITY;
  for (double alpha : {10.0, 30.0, 100.0}) {
    const double gap = std::abs(solve_mu_el(3.0, 1.0, alpha).value * std::pow(alpha, -2.0 / 3.0) - Cp);
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK_THROWS_AS(solve_mu_el(3.0, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(solve_nu_el(1.4, 1.0, 0.9), DomainError);
}

TEST_CASE("beta(nu) decreases to zero as nu approaches B") {
  const ELPoint a = solve_nu_el(1.4, 1.0, 1.5);
  const ELPoint b = solve_nu_el(1.4, 1.0, 1.1);
  CHECK(b.value < a.value);
  CHECK(solve_nu_for_beta(1.4, 1.0, 0.01).parameter < solve_nu_for_beta(1.4, 1.0, 0.1).parameter);
}

TEST_CASE("build_curve samples an increasing curve that inverts off the nodes") {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(-1.0 + 0.1 * std::pow(60.0, i / 15.0));
  const BoundCurve c = build_curve([](double a) { return solve_mu_el(3.0, 1.0, a); }, grid, "alpha", "el");
  CHECK(c.increasing());
  CHECK(c.size() == grid.size());
  for (double a : {-0.7, 0.5, 2.2}) CHECK(c.invert(solve_mu_el(3.0, 1.0, a).value) == doctest::Approx(a).epsilon(1e-3));
}
