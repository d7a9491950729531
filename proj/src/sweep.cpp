#include "magineq/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magineq/closed_bounds.hpp"
#include "magineq/el_solver.hpp"
#include "magineq/errors.hpp"
#include "magineq/gn_ground_states.hpp"
#include "magineq/stability.hpp"
#include "parallel.hpp"

namespace magineq {

Spacing spacing_from_string(std::string_view s) {
  if (s == "linear") return Spacing::linear;
  if (s == "log") return Spacing::log;
  throw InputError("spacing must be linear or log, got '" + std::string(s) + "'");
}

std::string_view to_string(Spacing s) { return s == Spacing::linear ? "linear" : "log"; }

std::vector<double> make_grid(const Range& range, double offset) {
  if (range.steps < 2) throw InputError("a sweep needs at least two steps");
  if (!std::isfinite(range.min) || !std::isfinite(range.max) || !(range.max > range.min)) {
    throw InputError("range needs finite min < max");
  }
  std::vector<double> grid(range.steps);
  const double last = range.steps - 1;
  if (range.spacing == Spacing::linear) {
    for (int i = 0; i < range.steps; ++i) grid[i] = range.min + (range.max - range.min) * (i / last);
  } else {
    const double lo = range.min + offset;
    const double hi = range.max + offset;
    if (!(lo > 0.0)) throw InputError("log spacing needs min + offset > 0");
    const double step = std::log(hi / lo);
    for (int i = 0; i < range.steps; ++i) grid[i] = lo * std::exp(step * (i / last)) - offset;
  }
  grid.front() = range.min;
  grid.back() = range.max;
  return grid;
}

Subcommand subcommand_from_string(std::string_view s) {
  if (s == "gn") return Subcommand::gn;
  if (s == "mu-curve") return Subcommand::mu_curve;
  if (s == "nu-curve") return Subcommand::nu_curve;
  if (s == "xi-curve") return Subcommand::xi_curve;
  if (s == "stability-curve") return Subcommand::stability_curve;
  if (s == "klt") return Subcommand::klt;
  throw InputError("unknown subcommand '" + std::string(s) + "'");
}

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::gn:
      return "gn";
    case Subcommand::mu_curve:
      return "mu-curve";
    case Subcommand::nu_curve:
      return "nu-curve";
    case Subcommand::xi_curve:
      return "xi-curve";
    case Subcommand::stability_curve:
      return "stability-curve";
    case Subcommand::klt:
      return "klt";
  }
  return "unknown";
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Orderings are judged with this relative slack, which covers the solver
// tolerance on the EL values and nothing more.
constexpr double order_slack = 1e-9;

bool ordered(double lo, double hi) { return lo <= hi + order_slack * std::abs(hi); }

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string params_json(const ProblemParams& p) {
  return "{\"d\":" + std::to_string(p.d) + ",\"p\":" + format_number(p.p) + ",\"B\":" + format_number(p.B) +
         ",\"Lambda\":" + format_number(p.Lambda) + "}";
}

std::string range_json(const Range& r) {
  return "{\"min\":" + format_number(r.min) + ",\"max\":" + format_number(r.max) +
         ",\"steps\":" + std::to_string(r.steps) + ",\"spacing\":" + json_string(to_string(r.spacing)) + "}";
}

Table start_table(const SweepSpec& spec, bool with_range) {
  Table t;
  t.metadata.emplace_back("tool", json_string("magineq " MAGINEQ_VERSION));
  t.metadata.emplace_back("subcommand", json_string(to_string(spec.subcommand)));
  t.metadata.emplace_back("params", params_json(spec.params));
  if (with_range) t.metadata.emplace_back("range", range_json(spec.range));
  t.metadata.emplace_back("config", spec.config.to_json());
  return t;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string failure_status(const std::exception& e) { return std::string("failed: ") + e.what(); }

void require_constant_field_2d(const ProblemParams& p) {
  if (p.d != 2) throw UnsupportedParameterError("magnetic curves are two-dimensional");
  if (!(p.B > 0.0)) throw DomainError("magnetic curves need B > 0");
  if (p.Lambda != p.B) throw InputError("a constant field has Lambda = B");
}

}  // namespace

void SweepSpec::validate() const {
  const bool p2 = subcommand == Subcommand::gn || subcommand == Subcommand::xi_curve;
  params.validate(p2);
  switch (subcommand) {
    case Subcommand::gn:
      break;
    case Subcommand::mu_curve:
    case Subcommand::stability_curve:
      require_constant_field_2d(params);
      if (!(params.p > 2.0)) throw DomainError("this curve needs p > 2");
      if (!(range.min > -params.Lambda)) throw DomainError("alpha range must stay above -Lambda");
      make_grid(range, params.Lambda);
      break;
    case Subcommand::nu_curve:
      require_constant_field_2d(params);
      if (!(params.p > 1.0 && params.p < 2.0)) throw DomainError("nu-curve needs 1 < p < 2");
      if (!(range.min > 0.0)) throw DomainError("beta range must be positive");
      make_grid(range);
      break;
    case Subcommand::xi_curve:
      if (!(params.B > 0.0)) throw DomainError("xi-curve needs B > 0");
      if (!(range.min > 0.0)) throw DomainError("gamma range must be positive");
      make_grid(range);
      break;
    case Subcommand::klt:
      if (klt.potential_path.empty()) throw InputError("klt needs a potential file");
      if (klt.lambda_range) make_grid(*klt.lambda_range);
      break;
  }
}

SweepResult run_gn(const SweepSpec& spec) {
  spec.validate();
  SweepResult res;
  res.table = start_table(spec, false);
  res.table.columns = {"d",         "p",      "C_p",    "S_p",       "amplitude", "support_radius", "truncation_radius",
                       "residual",  "candidates", "grid", "status"};
  const int d = spec.params.d;
  const double p = spec.params.p;
  try {
    const GNConstants gn = compute_C_p(d, p, spec.config);
    res.table.add_row({number_cell(d), number_cell(p), number_cell(gn.C_p), number_cell(gn.S_p),
                       number_cell(gn.amplitude), number_cell(gn.support_radius), number_cell(gn.truncation_radius),
                       number_cell(gn.solver_residual), number_cell(gn.candidates), text_cell(gn.grid_spec),
                       text_cell("ok")});
  } catch (const Error& e) {
    res.ok = false;
    res.table.add_row({number_cell(d), number_cell(p), number_cell(nan()), number_cell(nan()), number_cell(nan()),
                       number_cell(nan()), number_cell(nan()), number_cell(nan()), number_cell(nan()),
                       text_cell(""), text_cell(failure_status(e))});
  }
  return res;
}

SweepResult run_mu_curve(const SweepSpec& spec) {
  spec.validate();
  const ProblemParams& pp = spec.params;
  const double p = pp.p;
  const double B = pp.B;
  const GNConstants gn = compute_C_p(2, p, spec.config);
  const std::vector<double> grid = make_grid(spec.range, pp.Lambda);

  struct Node {
    double interp = nan(), lt = nan(), el = nan(), gauss = nan(), residual = nan();
    std::string status = "ok";
  };
  std::vector<Node> nodes(grid.size());
  detail::parallel_for(grid.size(), spec.config.threads, [&](std::size_t i) {
    Node& n = nodes[i];
    const double alpha = grid[i];
    try {
      n.interp = mu_interp(pp, gn, alpha);
      n.lt = mu_LT(p, B, alpha, gn.C_p);
      n.gauss = mu_gauss(p, B, alpha).quotient_value;
      const ELPoint pt = solve_mu_el(p, B, alpha, spec.config);
      n.el = pt.value;
      n.residual = pt.residual;
    } catch (const Error& e) {
      n.status = failure_status(e);
    }
  });

  SweepResult res;
  res.table = start_table(spec, true);
  res.table.metadata.emplace_back("C_p", format_number(gn.C_p));
  auto& cols = res.table.columns;
  cols = {"alpha", "mu_interp", "mu_LT", "mu_EL", "mu_Gauss"};
  if (spec.figure_axes) {
    for (const char* c : {"mu_interp_fig", "mu_LT_fig", "mu_EL_fig", "mu_Gauss_fig"}) cols.emplace_back(c);
  }
  for (const char* c : {"log10_Gauss_over_EL", "log10_LT_over_EL", "log10_interp_over_EL", "log10_Gauss_over_LT",
                        "order_ok", "residual", "status"}) {
    cols.emplace_back(c);
  }
  const double fig = std::pow(two_pi, 2.0 / p - 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Node& n = nodes[i];
    const bool node_ok = n.status == "ok";
    const bool order = node_ok && ordered(n.interp, n.lt) && ordered(n.lt, n.el) && ordered(n.el, n.gauss);
    res.ok = res.ok && node_ok && order;
    std::vector<Cell> row{number_cell(grid[i]), number_cell(n.interp), number_cell(n.lt), number_cell(n.el),
                          number_cell(n.gauss)};
    if (spec.figure_axes) {
      for (double v : {n.interp, n.lt, n.el, n.gauss}) row.push_back(number_cell(fig * v));
    }
    row.push_back(number_cell(std::log10(n.gauss / n.el)));
    row.push_back(number_cell(std::log10(n.lt / n.el)));
    row.push_back(number_cell(std::log10(n.interp / n.el)));
    row.push_back(number_cell(std::log10(n.gauss / n.lt)));
    row.push_back(flag_cell(order));
    row.push_back(number_cell(n.residual));
    row.push_back(text_cell(n.status));
    res.table.add_row(std::move(row));
  }
  return res;
}

SweepResult run_nu_curve(const SweepSpec& spec) {
  spec.validate();
  const ProblemParams& pp = spec.params;
  const double p = pp.p;
  const double B = pp.B;
  const GNConstants gn = compute_C_p(2, p, spec.config);
  const std::vector<double> grid = make_grid(spec.range);

  struct Node {
    double interp = nan(), lt = nan(), el = nan(), gauss = nan(), beta_check = nan(), residual = nan();
    std::string status = "ok";
  };
  std::vector<Node> nodes(grid.size());
  detail::parallel_for(grid.size(), spec.config.threads, [&](std::size_t i) {
    Node& n = nodes[i];
    const double beta = grid[i];
    try {
      n.interp = nu_interp(pp, gn, beta);
      n.lt = nu_LT(p, B, beta, gn).value;
      n.gauss = nu_gauss(p, B, beta).quotient_value;
      const ELPoint pt = solve_nu_for_beta(p, B, beta, spec.config);
      n.el = pt.parameter;
      n.beta_check = pt.value;
      n.residual = pt.residual;
    } catch (const Error& e) {
      n.status = failure_status(e);
    }
  });

  SweepResult res;
  res.table = start_table(spec, true);
  res.table.metadata.emplace_back("C_p", format_number(gn.C_p));
  auto& cols = res.table.columns;
  cols = {"beta", "nu_interp", "nu_LT", "nu_EL", "nu_Gauss"};
  if (spec.figure_axes) cols.emplace_back("beta_fig");
  for (const char* c : {"log10_Gauss_over_EL", "log10_LT_over_EL", "log10_interp_over_EL", "log10_Gauss_over_LT",
                        "beta_EL", "order_ok", "residual", "status"}) {
    cols.emplace_back(c);
  }
  const double fig = std::pow(two_pi, 1.0 - 2.0 / p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Node& n = nodes[i];
    const bool node_ok = n.status == "ok";
    const bool order = node_ok && ordered(n.interp, n.lt) && ordered(n.lt, n.el) && ordered(n.el, n.gauss);
    res.ok = res.ok && node_ok && order;
    std::vector<Cell> row{number_cell(grid[i]), number_cell(n.interp), number_cell(n.lt), number_cell(n.el),
                          number_cell(n.gauss)};
    if (spec.figure_axes) row.push_back(number_cell(fig * grid[i]));
    row.push_back(number_cell(std::log10(n.gauss / n.el)));
    row.push_back(number_cell(std::log10(n.lt / n.el)));
    row.push_back(number_cell(std::log10(n.interp / n.el)));
    row.push_back(number_cell(std::log10(n.gauss / n.lt)));
    row.push_back(number_cell(n.beta_check));
    row.push_back(flag_cell(order));
    row.push_back(number_cell(n.residual));
    row.push_back(text_cell(n.status));
    res.table.add_row(std::move(row));
  }
  return res;
}

SweepResult run_xi_curve(const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = make_grid(spec.range);
  std::vector<double> xb(grid.size()), x0(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    xb[i] = xi_constant_field(spec.params.B, grid[i]);
    x0[i] = xi_zero_field(2, grid[i]);
  }
  SweepResult res;
  res.table = start_table(spec, true);
  res.table.columns = {"gamma", "xi_B", "xi_0", "xi_B_minus_xi_0", "second_difference", "order_ok", "concave_ok",
                       "status"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double second = nan();
    bool concave = true;
    if (i > 0 && i + 1 < grid.size()) {
      // Divided second difference on a possibly nonuniform grid.
      const double h0 = grid[i] - grid[i - 1];
      const double h1 = grid[i + 1] - grid[i];
      second = 2.0 * ((xb[i + 1] - xb[i]) / h1 - (xb[i] - xb[i - 1]) / h0) / (h0 + h1);
      const double scale = std::abs(xb[i]) / (h0 * h1);
      concave = second <= 1e-12 * scale;
    }
    const bool order = xb[i] >= x0[i];
    res.ok = res.ok && order && concave;
    res.table.add_row({number_cell(grid[i]), number_cell(xb[i]), number_cell(x0[i]), number_cell(xb[i] - x0[i]),
                       number_cell(second), flag_cell(order), flag_cell(concave), text_cell("ok")});
  }
  return res;
}

SweepResult run_stability_curve(const SweepSpec& spec) {
  spec.validate();
  const ProblemParams& pp = spec.params;
  const std::vector<double> grid = make_grid(spec.range, pp.Lambda);
  struct Node {
    double mu_el = nan();
    StabilityResult st;
    std::string status = "ok";
  };
  std::vector<Node> nodes(grid.size());
  for (auto& n : nodes) {
    n.st.mu_eig = n.st.mu_fd = n.st.mu_shooting = n.st.relative_gap = n.st.truncation_margin = n.st.r_max = nan();
  }
  detail::parallel_for(grid.size(), spec.config.threads, [&](std::size_t i) {
    Node& n = nodes[i];
    try {
      const ELPoint pt = solve_mu_el(pp.p, pp.B, grid[i], spec.config);
      n.mu_el = pt.value;
      n.st = lowest_c1_eigenvalue(pt.profile, pp.p, pp.B, grid[i], spec.config);
    } catch (const Error& e) {
      n.status = failure_status(e);
    }
  });
  SweepResult res;
  res.table = start_table(spec, true);
  res.table.columns = {"alpha",        "mu_EL", "mu_eig", "mu_fd",    "mu_shooting", "relative_gap",
                       "truncation_margin", "r_max", "positive", "status"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Node& n = nodes[i];
    const bool positive = n.status == "ok" && n.st.mu_eig > 0.0;
    res.ok = res.ok && positive;
    res.table.add_row({number_cell(grid[i]), number_cell(n.mu_el), number_cell(n.st.mu_eig), number_cell(n.st.mu_fd),
                       number_cell(n.st.mu_shooting), number_cell(n.st.relative_gap),
                       number_cell(n.st.truncation_margin), number_cell(n.st.r_max), flag_cell(positive),
                       text_cell(n.status)});
  }
  return res;
}

namespace {

// Sampled alpha -> mu_EL covering the alpha at which the closed form
// reaches `norm` (the EL alpha lies below it).
BoundCurve mu_el_curve_for(const ProblemParams& pp, const GNConstants& gn, double norm, const SolverConfig& config) {
  require_constant_field_2d(pp);
  const double alpha_top = std::max(1.0, 1.25 * alpha_of_mu(pp, gn, std::max(norm, 1e-12), BoundSource::closed_form_interp,
                                                             nullptr) + 1.0);
  Range r{-0.99 * pp.B, alpha_top, 24, Spacing::log};
  const std::vector<double> grid = make_grid(r, pp.Lambda);
  return build_curve([&](double a) { return solve_mu_el(pp.p, pp.B, a, config); }, grid, "alpha", "EL shooting",
                     config);
}

// Sampled nu -> beta(nu) up to beyond the Gaussian nu at `beta`.
BoundCurve beta_el_curve_for(const ProblemParams& pp, double beta, const SolverConfig& config) {
  require_constant_field_2d(pp);
  const double nu_top = std::max(2.0 * pp.B, 1.25 * nu_gauss(pp.p, pp.B, std::max(beta, 1e-12)).quotient_value);
  Range r{pp.B * (1.0 + 1e-3), nu_top, 24, Spacing::log};
  const std::vector<double> grid = make_grid(r, -pp.B);
  return build_curve([&](double nu) { return solve_nu_el(pp.p, pp.B, nu, config); }, grid, "nu", "EL shooting",
                     config);
}

}  // namespace

SweepResult run_klt(const SweepSpec& spec) {
  spec.validate();
  const KLTRequest& req = spec.klt;
  const PotentialGrid potential = PotentialGrid::load(req.potential_path);
  ProblemParams pp = spec.params;
  pp.d = potential.d();
  const std::string& which = req.case_name;
  const bool threshold = which == "i-threshold" || which == "ii-threshold";
  const bool case_one = which == "i" || which == "i-threshold";
  const bool case_two = which == "ii" || which == "ii-threshold";
  if (!case_one && !case_two && which != "iii") throw InputError("unknown KLT case '" + which + "'");

  SweepResult res;
  res.table = start_table(spec, false);
  res.table.metadata.emplace_back("potential", json_string(req.potential_path));
  res.table.metadata.emplace_back("case", json_string(which));
  res.table.metadata.emplace_back("source", json_string(to_string(req.source)));
  res.table.columns = {"case", "lambda", "q", "input_norm", "bound_value", "bound_source", "asymptotic_extended",
                       "status"};

  if (which == "iii") {
    pp.validate(true);
    const double gibbs = gibbs_integral(potential, req.gamma);
    const KLTBound b = klt_case_iii(pp, req.gamma, gibbs);
    res.table.metadata.emplace_back("gamma", format_number(req.gamma));
    res.table.add_row({text_cell(b.case_name), number_cell(0.0), number_cell(nan()), number_cell(b.input_norm),
                       number_cell(b.bound_value), text_cell(std::string(to_string(b.bound_source))),
                       flag_cell(b.asymptotic_extended), text_cell("ok")});
    return res;
  }

  pp.validate();
  const double q_default = case_one ? pp.p / (pp.p - 2.0) : pp.p / (2.0 - pp.p);
  const double q = req.q.value_or(q_default);
  if (case_one && !(pp.p > 2.0)) throw DomainError("case i needs p > 2");
  if (case_two && !(pp.p > 1.0 && pp.p < 2.0)) throw DomainError("case ii needs 1 < p < 2");
  if (std::abs(q - q_default) > 1e-12 * q_default) throw InputError("the norm exponent is fixed by p for this case");
  const GNConstants gn = compute_C_p(pp.d, pp.p, spec.config);
  res.table.metadata.emplace_back("C_p", format_number(gn.C_p));

  std::vector<double> lambdas{threshold ? req.lambda : 0.0};
  if (threshold && req.lambda_range) {
    lambdas = make_grid(*req.lambda_range);
    // The unshifted bound is always part of the comparison.
    if (std::find(lambdas.begin(), lambdas.end(), 0.0) == lambdas.end()) {
      lambdas.insert(std::upper_bound(lambdas.begin(), lambdas.end(), 0.0), 0.0);
    }
  }

  // Norms first so an EL curve can be sized to cover all of them.
  std::vector<double> norms(lambdas.size(), nan());
  std::vector<std::string> status(lambdas.size(), "ok");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    try {
      if (case_one) {
        norms[i] = lq_plus_norm(potential, q, lambdas[i]);
      } else {
        if (!(potential.min_value() > lambdas[i])) throw InputError("case ii requires phi > lambda on the grid");
        norms[i] = 1.0 / lq_norm_inverse(potential.shifted(-lambdas[i]), q);
      }
    } catch (const Error& e) {
      status[i] = failure_status(e);
    }
  }
  BoundCurve curve;
  if (req.source == BoundSource::el_curve) {
    double top = 0.0;
    for (double n : norms) {
      if (std::isfinite(n)) top = std::max(top, n);
    }
    curve = case_one ? mu_el_curve_for(pp, gn, top, spec.config) : beta_el_curve_for(pp, top, spec.config);
  }

  double best = -std::numeric_limits<double>::infinity();
  double best_lambda = nan();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    KLTBound b;
    b.case_name = which;
    b.bound_source = req.source;
    b.bound_value = nan();
    b.input_norm = norms[i];
    if (status[i] == "ok") {
      try {
        const BoundCurve* c = req.source == BoundSource::el_curve ? &curve : nullptr;
        if (case_one) b = klt_case_i(pp, gn, norms[i], req.source, c);
        else b = klt_case_ii(pp, gn, norms[i], req.source, c);
        b.bound_value += lambdas[i];
        b.case_name = which;
        if (b.bound_value > best) {
          best = b.bound_value;
          best_lambda = lambdas[i];
        }
      } catch (const Error& e) {
        status[i] = failure_status(e);
      }
    }
    res.ok = res.ok && status[i] == "ok";
    res.table.add_row({text_cell(b.case_name), number_cell(lambdas[i]), number_cell(q), number_cell(b.input_norm),
                       number_cell(b.bound_value), text_cell(std::string(to_string(req.source))),
                       flag_cell(b.asymptotic_extended), text_cell(status[i])});
  }
  if (lambdas.size() > 1) {
    res.table.add_row({text_cell(which + "-max"), number_cell(best_lambda), number_cell(q), number_cell(nan()),
                       number_cell(best), text_cell(std::string(to_string(req.source))), flag_cell(false),
                       text_cell(std::isfinite(best) ? "ok" : "failed: no admissible lambda")});
  }
  return res;
}

SweepResult run_sweep(const SweepSpec& spec) {
  switch (spec.subcommand) {
    case Subcommand::gn:
      return run_gn(spec);
    case Subcommand::mu_curve:
      return run_mu_curve(spec);
    case Subcommand::nu_curve:
      return run_nu_curve(spec);
    case Subcommand::xi_curve:
      return run_xi_curve(spec);
    case Subcommand::stability_curve:
      return run_stability_curve(spec);
    case Subcommand::klt:
      return run_klt(spec);
  }
  throw InputError("unknown subcommand");
}

}  // namespace magineq
