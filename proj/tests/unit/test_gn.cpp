#include <doctest.h>

#include <cmath>

#include "magineq/errors.hpp"
#include "magineq/gn_ground_states.hpp"
#include "oracles.hpp"

using namespace magineq;

namespace {

struct Moments {
  double G, M, P;
};

Moments moments(const RadialProfile& v, double p) {
  return {gradient_norm_squared(v), weighted_integral(v, 2.0), weighted_integral(v, p)};
}

}  // namespace

TEST_CASE("C_p agrees with an independent finite-difference iteration") {
  auto one = [](double) { return 1.0; };
  // Oracle values frozen from the Petviashvili iteration on [0, 30], h = 0.01.
  const double frozen_d2 = 3.596105845385;
  const double frozen_d3 = 6.398513818026;
  CHECK(oracle::petviashvili_constant(2, 3.0, one, 30.0, 0.01) == doctest::Approx(frozen_d2).epsilon(1e-10));
  CHECK(compute_C_p(2, 3.0).C_p == doctest::Approx(frozen_d2).epsilon(1e-8));
  CHECK(compute_C_p(3, 3.0).C_p == doctest::Approx(frozen_d3).epsilon(1e-8));
}

TEST_CASE("supercritical ground state satisfies both integral identities") {
  for (int d : {2, 3}) {
    for (double p : {2.5, 3.0, 4.0}) {
      const GNConstants gn = compute_C_p(d, p);
      CHECK(gn.solver_residual < 1e-8);
      const auto m = moments(solve_ground_state_supercritical(d, p), p);
      CAPTURE(d);
      CAPTURE(p);
      CHECK(m.G + m.M == doctest::Approx(m.P).epsilon(1e-7));
      CHECK(0.5 * (d - 2) * m.G + 0.5 * d * m.M == doctest::Approx(d / p * m.P).epsilon(1e-7));
    }
  }
}

TEST_CASE("subcritical ground state: identities and compact support") {
  for (int d : {2, 3}) {
    for (double p : {1.4, 1.7}) {
      const RadialProfile v = solve_ground_state_subcritical(d, p);
      CHECK(v.compact());
      CHECK(std::abs(v.value(v.support_radius + 0.5)) == 0.0);
      const auto m = moments(v, p);
      CAPTURE(d);
      CAPTURE(p);
      CHECK(m.G + m.P == doctest::Approx(m.M).epsilon(1e-6));
      CHECK(0.5 * (d - 2) * m.G + d / p * m.P == doctest::Approx(0.5 * d * m.M).epsilon(1e-6));
    }
  }
}

TEST_CASE("ground states minimize their quotients under dilations") {
  const int d = 2;
  {
    // p > 2: (G + M) / P^{2/p} is least at the optimizer and equals C_p there.
    const double p = 3.0;
    const auto m = moments(solve_ground_state_supercritical(d, p), p);
    auto q = [&](double l) { return (m.G * std::pow(l, d - 2) + m.M * std::pow(l, d)) / std::pow(m.P * std::pow(l, d), 2.0 / p); };
    CHECK(oracle::golden_min(q, 0.2, 5.0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(q(1.0) == doctest::Approx(compute_C_p(d, p).C_p).epsilon(1e-8));
  }
  {
    // p < 2: with beta = P^{1-2/p}, (G + beta P^{2/p}) / M is least at the
    // optimizer, with value one.
    const double p = 1.5;
    const auto m = moments(solve_ground_state_subcritical(d, p), p);
    const double beta = std::pow(m.P, 1.0 - 2.0 / p);
    auto q = [&](double l) {
      return (m.G * std::pow(l, d - 2) + beta * std::pow(m.P * std::pow(l, d), 2.0 / p)) / (m.M * std::pow(l, d));
    };
    CHECK(oracle::golden_min(q, 0.2, 5.0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(q(1.0) == doctest::Approx(1.0).epsilon(1e-6));
  }
  for (double p : {1.5, 3.0}) {
    const GNConstants gn = compute_C_p(2, p);
    CHECK(gn.S_p > 0.0);
    CHECK(gn.S_p <= gn.C_p);
  }
}

TEST_CASE("C_p tends to one as p -> 2 following the two-term expansion") {
  double prev = INFINITY;
  for (double eps : {0.04, 0.02, 0.01}) {
    const double c = compute_C_p(2, 2.0 + eps).C_p;
    const double r = std::abs(c - cp_expansion(2, eps, cp_expansion_constant())) / eps;
    CHECK(r < prev);
    prev = r;
  }
  CHECK(compute_C_p(2, 2.0).C_p == 1.0);
  CHECK(cp_expansion_constant() == doctest::Approx(2.0 * oracle::pi * std::exp(2.0)));
}

TEST_CASE("zero-field log-Sobolev constant") {
  CHECK(xi_zero_field(2, oracle::pi) == doctest::Approx(2.0 * oracle::pi));
  CHECK_THROWS_AS(xi_zero_field(2, 0.0), InputError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(compute_C_p(4, 3.0), UnsupportedParameterError);
  CHECK_THROWS_AS(compute_C_p(3, 6.0), Error);
  CHECK_THROWS_AS(solve_ground_state_supercritical(2, 1.5), DomainError);
  CHECK_THROWS_AS(solve_ground_state_subcritical(2, 3.0), DomainError);
  CHECK_THROWS_AS(compute_S_p(2, 3.0, -1.0), InputError);
}
