#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "magineq/errors.hpp"
#include "magineq/sweep.hpp"

namespace {

using namespace magineq;

struct Flags {
  int d = 2;
  std::optional<double> p, B, Lambda;
  std::optional<double> alpha_min, alpha_max, beta_min, beta_max, gamma_min, gamma_max;
  std::optional<int> steps;
  std::optional<std::string> spacing;
  std::optional<double> tol, rmax;
  std::optional<int> threads;
  std::string format = "csv";
  std::string out;
  std::string config_path;
  bool figure_axes = false;
  // klt
  std::string potential;
  std::string klt_case = "i";
  std::optional<double> q;
  double lambda = 0.0;
  std::optional<double> lambda_min, lambda_max;
  int lambda_steps = 11;
  std::string source = "interp";
  double gamma = 1.0;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--d", f.d, "dimension (2 or 3)");
  app->add_option("--p", f.p, "exponent");
  app->add_option("--B", f.B, "field strength");
  app->add_option("--Lambda", f.Lambda, "spectral gap (defaults to B)");
  app->add_option("--tol", f.tol, "relative ODE tolerance");
  app->add_option("--rmax", f.rmax, "outer radius for zero-field states");
  app->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  app->add_option("--config", f.config_path, "JSON solver config file");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", f.out, "output file (default stdout)");
}

void add_range(CLI::App* app, Flags& f, const std::string& name, std::optional<double>& lo, std::optional<double>& hi) {
  app->add_option("--" + name + "-min", lo, name + " range start");
  app->add_option("--" + name + "-max", hi, name + " range end");
  app->add_option("--steps", f.steps, "number of grid nodes");
  app->add_option("--spacing", f.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Range range_from(double lo, double hi, int steps, Spacing spacing, const Flags& f, const std::optional<double>& flo,
                 const std::optional<double>& fhi) {
  Range r{flo.value_or(lo), fhi.value_or(hi), f.steps.value_or(steps), spacing};
  if (f.spacing) r.spacing = spacing_from_string(*f.spacing);
  return r;
}

SweepSpec build_spec(Subcommand cmd, const Flags& f) {
  SweepSpec spec;
  spec.subcommand = cmd;
  double p_default = 3.0;
  if (cmd == Subcommand::nu_curve) p_default = 1.4;
  const double B = f.B.value_or(1.0);
  spec.params = ProblemParams{f.d, f.p.value_or(p_default), B, f.Lambda.value_or(B)};
  if (cmd == Subcommand::gn) spec.params = ProblemParams{f.d, f.p.value_or(p_default), 0.0, 0.0};

  if (!f.config_path.empty()) spec.config = SolverConfig::from_json(read_file(f.config_path));
  if (f.tol) spec.config.ode_rel_tol = *f.tol;
  if (f.rmax) spec.config.r_max = *f.rmax;
  if (f.threads) spec.config.threads = *f.threads;
  spec.figure_axes = f.figure_axes;

  switch (cmd) {
    case Subcommand::gn:
      break;
    case Subcommand::mu_curve:
      spec.range = range_from(-0.9, 10.0, 50, Spacing::log, f, f.alpha_min, f.alpha_max);
      break;
    case Subcommand::stability_curve:
      spec.range = range_from(-0.99, 5.0, 15, Spacing::log, f, f.alpha_min, f.alpha_max);
      break;
    case Subcommand::nu_curve:
      spec.range = range_from(0.01, 10.0, 20, Spacing::log, f, f.beta_min, f.beta_max);
      break;
    case Subcommand::xi_curve:
      spec.range = range_from(0.01, 10.0, 50, Spacing::log, f, f.gamma_min, f.gamma_max);
      break;
    case Subcommand::klt:
      spec.klt.potential_path = f.potential;
      spec.klt.case_name = f.klt_case;
      spec.klt.q = f.q;
      spec.klt.lambda = f.lambda;
      if (f.lambda_min || f.lambda_max) {
        if (!f.lambda_min || !f.lambda_max) throw InputError("a lambda sweep needs both --lambda-min and --lambda-max");
        spec.klt.lambda_range = Range{*f.lambda_min, *f.lambda_max, f.lambda_steps, Spacing::linear};
      }
      spec.klt.source = bound_source_from_string(f.source);
      spec.klt.gamma = f.gamma;
      break;
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magnetic interpolation inequalities: optimal constants, bound curves and eigenvalue estimates"};
  app.set_version_flag("--version", "magineq " MAGINEQ_VERSION);
  app.require_subcommand(1);
  Flags f;

  auto* gn = app.add_subcommand("gn", "zero-field Gagliardo-Nirenberg constants C_p and S_p");
  add_common(gn, f);

  auto* mu = app.add_subcommand("mu-curve", "alpha -> mu bounds (p > 2)");
  add_common(mu, f);
  add_range(mu, f, "alpha", f.alpha_min, f.alpha_max);
  mu->add_flag("--figure-axes", f.figure_axes, "add (2 pi)^(2/p - 1) scaled columns");

  auto* nu = app.add_subcommand("nu-curve", "beta -> nu bounds (1 < p < 2)");
  add_common(nu, f);
  add_range(nu, f, "beta", f.beta_min, f.beta_max);
  nu->add_flag("--figure-axes", f.figure_axes, "add the (2 pi)^(1 - 2/p) beta column");

  auto* xi = app.add_subcommand("xi-curve", "logarithmic Sobolev constants xi_B(gamma) and xi_0(gamma)");
  add_common(xi, f);
  add_range(xi, f, "gamma", f.gamma_min, f.gamma_max);

  auto* st = app.add_subcommand("stability-curve", "lowest angular-momentum-one perturbation eigenvalue");
  add_common(st, f);
  add_range(st, f, "alpha", f.alpha_min, f.alpha_max);

  auto* klt = app.add_subcommand("klt", "eigenvalue lower bounds from a radial potential file");
  add_common(klt, f);
  klt->add_option("--potential", f.potential, "potential CSV file")->required();
  klt->add_option("--case", f.klt_case, "i, ii, iii, i-threshold or ii-threshold")
      ->check(CLI::IsMember({"i", "ii", "iii", "i-threshold", "ii-threshold"}));
  klt->add_option("--q", f.q, "norm exponent (fixed by p)");
  klt->add_option("--lambda", f.lambda, "threshold level");
  klt->add_option("--lambda-min", f.lambda_min, "threshold sweep start");
  klt->add_option("--lambda-max", f.lambda_max, "threshold sweep end");
  klt->add_option("--lambda-steps", f.lambda_steps, "threshold sweep nodes");
  klt->add_option("--source", f.source, "interp, lt or el")->check(CLI::IsMember({"interp", "lt", "el"}));
  klt->add_option("--gamma", f.gamma, "temperature for case iii");

  CLI11_PARSE(app, argc, argv);

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const SweepSpec spec = build_spec(subcommand_from_string(chosen->get_name()), f);
    const SweepResult result = run_sweep(spec);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!f.out.empty()) {
      file.open(f.out, std::ios::binary);
      if (!file) throw InputError("cannot write '" + f.out + "'");
      out = &file;
    }
    if (f.format == "json") write_json(result.table, *out);
    else write_csv(result.table, *out);
    out->flush();
    if (!result.ok) {
      std::cerr << "magineq: some nodes failed or an ordering check did not hold\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "magineq: error: " << e.what() << '\n';
    return 2;
  }
}
