#include "magineq/config.hpp"

#include <cmath>

#include "json.hpp"
#include "magineq/errors.hpp"

namespace magineq {

using nlohmann::json;

void ProblemParams::validate(bool allow_p2) const {
  if (d != 2 && d != 3) {
    throw UnsupportedParameterError("dimension must be 2 or 3, got " + std::to_string(d));
  }
  if (!std::isfinite(p) || p <= 1.0) throw InputError("exponent p must exceed 1");
  if (p >= critical_exponent()) {
    throw UnsupportedParameterError("p must stay below the critical exponent 2*");
  }
  if (p == 2.0 && !allow_p2) throw DomainError("p = 2 is not admitted by this operation");
  if (!(B >= 0.0)) throw InputError("field strength B must be nonnegative");
  if (B > 0.0 && !(Lambda > 0.0)) throw InputError("spectral gap must be positive when B > 0");
}

namespace {

#define MAGINEQ_CONFIG_FIELDS(X) \
  X(ode_rel_tol)                 \
  X(ode_abs_tol)                 \
  X(max_step)                    \
  X(r0)                          \
  X(r_max)                       \
  X(bracket_tol)                 \
  X(quad_tol)                    \
  X(decay_cutoff)                \
  X(touchdown_tol)               \
  X(beta_change_tol)             \
  X(amplitude_min)               \
  X(amplitude_max)               \
  X(eig_tol)                     \
  X(fd_step)                     \
  X(threads)

json to_object(const SolverConfig& c) {
  json j = json::object();
#define X(name) j[#name] = c.name;
  MAGINEQ_CONFIG_FIELDS(X)
#undef X
  return j;
}

void overlay(SolverConfig& c, const json& j) {
  if (!j.is_object()) throw ParseError("solver config must be a JSON object", 0);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
#define X(name)                                                       \
  if (key == #name) {                                                 \
    if (!value.is_number()) throw ParseError(key + " must be numeric", 0); \
    c.name = value.get<decltype(c.name)>();                           \
    known = true;                                                     \
  }
    MAGINEQ_CONFIG_FIELDS(X)
#undef X
    if (!known) throw ParseError("unknown solver config key '" + key + "'", 0);
  }
}

}  // namespace

std::string SolverConfig::to_json() const { return to_object(*this).dump(); }

SolverConfig SolverConfig::from_json(std::string_view text) { return merge_json(SolverConfig{}, text); }

SolverConfig SolverConfig::merge_json(const SolverConfig& base, std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  SolverConfig c = base;
  overlay(c, j);
  return c;
}

}  // namespace magineq
