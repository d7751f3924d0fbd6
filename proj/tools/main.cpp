#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catbell/bell.hpp"
#include "catbell/homodyne.hpp"
#include "catbell/local_ops.hpp"
#include "catbell/oracle.hpp"
#include "output.hpp"
#include "sampling.hpp"

#ifndef CATBELL_VERSION
#define CATBELL_VERSION "unknown"
#endif

namespace {

using namespace catbell;
using namespace catbell::cli;

constexpr double kPi = std::numbers::pi;

struct Options {
  std::string command;
  double alpha = 1.0;
  double alpha_min = 0.3;
  double alpha_max = 3.0;
  int alpha_steps = 28;
  std::string kind = "ideal-r";
  std::vector<double> angles;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  int grid_points = 0;
  int starts = 50;
  double rotation = kPi;
  std::string out;
  std::string in;
  std::string format = "csv";
};

ConfigEcho echo(const Options& o, std::initializer_list<std::string> keys) {
  ConfigEcho e{{"engine", std::string("catbell ") + CATBELL_VERSION}, {"command", o.command}};
  for (const auto& k : keys) {
    if (k == "alpha") e.emplace_back(k, format_number(o.alpha));
    else if (k == "alpha-range")
      e.emplace_back(k, format_number(o.alpha_min) + ":" + format_number(o.alpha_max) + ":" +
                            std::to_string(o.alpha_steps));
    else if (k == "kind") e.emplace_back(k, o.kind);
    else if (k == "n") e.emplace_back(k, std::to_string(o.n));
    else if (k == "seed") e.emplace_back(k, std::to_string(o.seed));
    else if (k == "grid-points") e.emplace_back(k, std::to_string(o.grid_points));
    else if (k == "starts") e.emplace_back(k, std::to_string(o.starts));
    else if (k == "rotation") e.emplace_back(k, format_number(o.rotation));
    else if (k == "angles") {
      std::string s;
      for (double a : o.angles) s += (s.empty() ? "" : ",") + format_number(a);
      e.emplace_back(k, s);
    }
  }
  return e;
}

Format parse_format(const std::string& f) { return f == "json" ? Format::kJson : Format::kCsv; }

std::vector<double> alpha_grid(const Options& o) {
  if (o.alpha_steps == 1) return {o.alpha_min};
  std::vector<double> out;
  for (int k = 0; k < o.alpha_steps; ++k) {
    out.push_back(o.alpha_min + (o.alpha_max - o.alpha_min) * k / (o.alpha_steps - 1));
  }
  return out;
}

OptimizerConfig optimizer_config(const Options& o) {
  OptimizerConfig cfg;
  cfg.random_starts = o.starts;
  cfg.seed = o.seed;
  return cfg;
}

/// The fixed angle set used for a kind's reference curve.
AngleSet reference_angles(OpKind kind) {
  const AngleSet ideal = AngleSet::canonical_ideal();
  switch (kind) {
    case OpKind::kIdealR: return ideal;
    case OpKind::kIdealRPrime: {
      auto prime = [](double a) { return 0.5 * (0.5 * kPi - a); };
      return {prime(ideal.phi1), prime(ideal.phi2), prime(ideal.theta1), prime(ideal.theta2)};
    }
    case OpKind::kPhysicalV: return AngleSet::reference_physical();
  }
  return ideal;
}

AngleSet angles_or_default(const Options& o, OpKind kind) {
  if (o.angles.empty()) return reference_angles(kind);
  return {o.angles[0], o.angles[1], o.angles[2], o.angles[3]};
}

nlohmann::json result_json(const BellResult& r) {
  return {{"alpha", r.alpha},
          {"kind", std::string(to_string(r.kind))},
          {"angles",
           {{"phi1", r.angles.phi1}, {"phi2", r.angles.phi2}, {"theta1", r.angles.theta1},
            {"theta2", r.angles.theta2}}},
          {"s_value", r.s_value},
          {"correlations", r.correlations},
          {"optimizer_meta",
           {{"starts", r.meta.starts},
            {"converged", r.meta.converged},
            {"iterations", r.meta.iterations}}}};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError(ErrorCode::kIo, "cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Options& o, const nlohmann::json& j) {
  Output out(o.out);
  out.stream() << j.dump(2) << '\n';
}

void run_correlations(const Options& o) {
  const int points = o.grid_points > 0 ? o.grid_points : 181;
  Table t{{"lambda", "amp_corr", "phase_corr"}, {}};
  for (int k = 0; k < points; ++k) {
    const double lambda = 2 * kPi * k / (points - 1);
    const auto c = quadrature_correlations(o.alpha, 0.5 * lambda);
    t.rows.push_back({lambda, c.amp, c.phase});
  }
  Output out(o.out);
  write_table(out.stream(), t, echo(o, {"alpha", "grid-points"}), parse_format(o.format));
}

void run_bell_scan(const Options& o) {
  const OpKind kind = parse_op_kind(o.kind);
  const auto alphas = alpha_grid(o);
  const auto points = scan_alpha(kind, alphas, optimizer_config(o));
  const AngleSet fixed = reference_angles(kind);
  Table t{{"alpha", "max_abs_S", "S", "phi1", "phi2", "theta1", "theta2", "fixed_angle_S",
           "converged"},
          {}};
  for (const auto& p : points) {
    const double nan = std::nan("");
    double fixed_s = nan;
    try {
      fixed_s = bell_S(p.alpha, fixed, kind).s_value;
    } catch (const DomainError&) {
    }
    if (!p.error.empty()) {
      std::cerr << nlohmann::json{{"alpha", p.alpha}, {"error", p.error}}.dump() << '\n';
    }
    if (p.result) {
      const auto& r = *p.result;
      t.rows.push_back({p.alpha, std::abs(r.s_value), r.s_value, r.angles.phi1, r.angles.phi2,
                        r.angles.theta1, r.angles.theta2, fixed_s, r.meta.converged ? 1.0 : 0.0});
    } else {
      t.rows.push_back({p.alpha, nan, nan, nan, nan, nan, nan, fixed_s, 0.0});
    }
  }
  Output out(o.out);
  write_table(out.stream(), t, echo(o, {"kind", "alpha-range", "starts", "seed"}),
              parse_format(o.format));
}

void run_optimize(const Options& o) {
  const BellResult r = optimize_S(o.alpha, parse_op_kind(o.kind), optimizer_config(o));
  const ConfigEcho e = echo(o, {"alpha", "kind", "starts", "seed"});
  if (parse_format(o.format) == Format::kCsv) {
    Table t{{"alpha", "S", "phi1", "phi2", "theta1", "theta2", "E11", "E12", "E21", "E22"},
            {{r.alpha, r.s_value, r.angles.phi1, r.angles.phi2, r.angles.theta1, r.angles.theta2,
              r.correlations[0], r.correlations[1], r.correlations[2], r.correlations[3]}}};
    Output out(o.out);
    write_table(out.stream(), t, e, Format::kCsv);
    return;
  }
  emit_json(o, {{"config", echo_json(e)}, {"result", result_json(r)}});
}

void run_fidelity(const Options& o) {
  Table t{{"alpha", "rotation", "epsilon", "fidelity", "worst_fidelity"}, {}};
  for (double alpha : alpha_grid(o)) {
    const QubitCoeffs q = normalize_qubit({Complex(1), Complex(1)}, alpha);
    const double eps = o.rotation / (2 * alpha);
    t.rows.push_back({alpha, o.rotation, eps, fidelity_uz(q, alpha, eps),
                      worst_case_fidelity_uz(q, alpha, o.rotation)});
  }
  Output out(o.out);
  write_table(out.stream(), t, echo(o, {"alpha-range", "rotation"}), parse_format(o.format));
}

void run_sample(const Options& o) {
  const OpKind kind = parse_op_kind(o.kind);
  const AngleSet angles = angles_or_default(o, kind);
  const SampleLog log = simulate_chsh(o.alpha, kind, angles, o.n, o.seed);
  Options shown = o;
  shown.angles = {angles.phi1, angles.phi2, angles.theta1, angles.theta2};
  const ConfigEcho e = echo(shown, {"alpha", "kind", "angles", "n", "seed"});
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw DomainError(ErrorCode::kIo, "cannot open output file: " + o.out);
    Table t{{"x_a", "x_b"}, {}};
    t.rows.reserve(log.size());
    for (const auto& x : log) t.rows.push_back({x[0], x[1]});
    write_table(f, t, e, Format::kCsv);
  }
  const double exact = bell_S(o.alpha, angles, kind).s_value;
  std::cout << nlohmann::json{{"config", echo_json(e)},
                              {"estimate", summarize_chsh(log)},
                              {"analytic_S", exact}}
                   .dump(2)
            << '\n';
}

void run_summarize(const Options& o) {
  std::ifstream f(o.in);
  if (!f) throw DomainError(ErrorCode::kIo, "cannot open input file: " + o.in);
  const Table t = read_csv(f);
  if (t.columns != std::vector<std::string>{"x_a", "x_b"}) {
    throw DomainError(ErrorCode::kIo, "expected an x_a,x_b sample log");
  }
  SampleLog log;
  for (const auto& r : t.rows) log.push_back({r[0], r[1]});
  std::cout << nlohmann::json{{"estimate", summarize_chsh(log)}}.dump(2) << '\n';
}

void run_threshold(const Options& o) {
  ThresholdConfig cfg;
  cfg.optimizer = optimizer_config(o);
  const double t = threshold_alpha(parse_op_kind(o.kind), cfg);
  emit_json(o, {{"config", echo_json(echo(o, {"kind", "starts", "seed"}))},
                {"threshold", t},
                {"bracket", {cfg.lower, cfg.upper}},
                {"width", cfg.width}});
}

void run_discrimination(const Options& o) {
  Table t{{"alpha", "error_rate"}, {}};
  for (double alpha : alpha_grid(o)) t.rows.push_back({alpha, discrimination_error(alpha)});
  Output out(o.out);
  write_table(out.stream(), t, echo(o, {"alpha-range"}), parse_format(o.format));
}

void run_marginal_grid(const Options& o) {
  const OpKind kind = parse_op_kind(o.kind);
  const AngleSet a = angles_or_default(o, kind);
  const State s = rotated_state(o.alpha, a.phi1, a.theta1, kind);
  const PhaseSpaceGrid g = wigner_marginal_grid(s, o.grid_points > 0 ? o.grid_points : 64);
  Table t{{"x_a", "x_b", "density"}, {}};
  for (int i = 0; i < g.points_per_axis; ++i) {
    for (int j = 0; j < g.points_per_axis; ++j) t.rows.push_back({g.x(i), g.x(j), g.values(i, j)});
  }
  Output out(o.out);
  write_table(out.stream(), t, echo(o, {"alpha", "kind", "angles", "grid-points"}),
              parse_format(o.format));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homodyne Bell tests with entangled coherent states"};
  app.set_version_flag("--version", std::string(CATBELL_VERSION));
  app.require_subcommand(1);
  Options o;

  const auto kinds = CLI::IsMember({"ideal-r", "ideal-rprime", "physical-v"});
  const auto formats = CLI::IsMember({"csv", "json"});
  auto add_alpha = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--alpha", o.alpha, "coherent amplitude")->check(CLI::PositiveNumber);
    if (required) opt->required();
  };
  auto add_range = [&](CLI::App* c, double lo, double hi, int steps) {
    o.alpha_min = lo, o.alpha_max = hi, o.alpha_steps = steps;
    c->add_option("--alpha-min", o.alpha_min)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--alpha-max", o.alpha_max)->check(CLI::PositiveNumber)->capture_default_str();
    c->add_option("--alpha-steps", o.alpha_steps)->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_kind = [&](CLI::App* c) { c->add_option("--kind", o.kind)->check(kinds)->capture_default_str(); };
  auto add_opt = [&](CLI::App* c) {
    c->add_option("--starts", o.starts, "random optimizer starts")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    c->add_option("--seed", o.seed)->capture_default_str();
  };
  auto add_out = [&](CLI::App* c, bool format) {
    c->add_option("--out", o.out, "output file (default stdout)");
    if (format) c->add_option("--format", o.format)->check(formats)->capture_default_str();
  };
  auto add_angles = [&](CLI::App* c) {
    c->add_option("--angles", o.angles, "phi1,phi2,theta1,theta2")->delimiter(',')->expected(4);
  };

  auto* corr = app.add_subcommand("correlations", "quadrature correlations against lambda");
  add_alpha(corr, true);
  corr->add_option("--grid-points", o.grid_points, "lambda samples over [0, 2pi]")
      ->check(CLI::Range(2, 1000000));
  add_out(corr, true);

  auto* scan = app.add_subcommand("bell-scan", "optimized |S| over an amplitude range");
  add_kind(scan);
  add_range(scan, 0.3, 3.0, 28);
  add_opt(scan);
  add_out(scan, true);

  auto* optimize = app.add_subcommand("optimize", "maximize |S| at one amplitude");
  add_alpha(optimize, true);
  add_kind(optimize);
  add_opt(optimize);
  add_out(optimize, true);

  auto* fid = app.add_subcommand("fidelity", "displacement vs exact z-rotation fidelity");
  add_range(fid, 1.0, 30.0, 30);
  fid->add_option("--rotation", o.rotation, "rotation angle 2 alpha eps")->capture_default_str();
  add_out(fid, true);

  auto* sample = app.add_subcommand("sample", "simulated homodyne CHSH run");
  add_alpha(sample, true);
  add_kind(sample);
  add_angles(sample);
  sample->add_option("--n", o.n, "samples per setting")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed)->capture_default_str();
  sample->add_option("--out", o.out, "x_a,x_b sample log");

  auto* summarize = app.add_subcommand("summarize", "recompute a sample summary from its log");
  summarize->add_option("--in", o.in)->required();

  auto* threshold = app.add_subcommand("threshold", "smallest amplitude with |S| > 2");
  add_kind(threshold);
  add_opt(threshold);
  add_out(threshold, false);

  auto* disc = app.add_subcommand("discrimination", "sign-discrimination error of |a> vs |-a>");
  add_range(disc, 0.1, 3.0, 30);
  add_out(disc, true);

  auto* grid = app.add_subcommand("marginal-grid", "Fourier-grid quadrature density dump");
  add_alpha(grid, true);
  add_kind(grid);
  add_angles(grid);
  grid->add_option("--grid-points", o.grid_points, "points per axis (power of two >= 64)");
  add_out(grid, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.alpha_max < o.alpha_min) {
    std::cerr << "--alpha-max must not be below --alpha-min\n";
    return 2;
  }

  try {
    if (corr->parsed()) run_correlations(o);
    else if (scan->parsed()) run_bell_scan(o);
    else if (optimize->parsed()) run_optimize(o);
    else if (fid->parsed()) run_fidelity(o);
    else if (sample->parsed()) run_sample(o);
    else if (summarize->parsed()) run_summarize(o);
    else if (threshold->parsed()) run_threshold(o);
    else if (disc->parsed()) run_discrimination(o);
    else if (grid->parsed()) run_marginal_grid(o);
  } catch (const ConvergenceError& e) {
    std::cerr << nlohmann::json{{"error", to_string(e.code())},
                                {"message", e.what()},
                                {"best", result_json(e.best())}}
                     .dump()
              << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << nlohmann::json{{"error", to_string(e.code())}, {"message", e.what()}}.dump()
              << '\n';
    return 1;
  }
  return 0;
}
