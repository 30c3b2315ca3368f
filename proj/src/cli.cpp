#include "qroute/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "qroute/classical.hpp"
#include "qroute/error.hpp"
#include "qroute/hybrid.hpp"
#include "qroute/qwalk.hpp"
#include "qroute/scenario.hpp"

namespace qroute::cli {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

namespace {

struct SolveFlags {
  std::optional<std::string> kernel;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::optional<double> noise_p;
  std::optional<std::size_t> depth;
  std::optional<double> lambda_flow;
  std::optional<double> lambda_int;
  std::optional<std::size_t> max_hops;
  std::optional<double> latency_budget;
  bool timings = false;

  void attach(CLI::App* app, bool with_kernel = true, bool with_seed = true) {
    if (with_kernel) app->add_option("--kernel", kernel, "qaoa | grover | classical_only");
    if (with_seed) app->add_option("--seed", seed, "RNG seed");
    app->add_option("--shots", shots, "measurement shots");
    app->add_option("--noise-p", noise_p, "depolarizing probability in [0,1]");
    app->add_option("--depth", depth, "QAOA depth p");
    app->add_option("--lambda-flow", lambda_flow, "flow penalty weight (default: auto)");
    app->add_option("--lambda-int", lambda_int, "interference penalty weight (default: 1)");
    app->add_option("--max-hops", max_hops, "Grover candidate hop bound");
    app->add_option("--latency-budget", latency_budget, "wall-clock budget in seconds");
    app->add_flag("--timings", timings, "record measured stage times (output no longer reproducible)");
  }

  PipelineConfig build(const Scenario& sc) const {
    PipelineConfig cfg = apply_config_json(PipelineConfig{}, sc.defaults);
    cfg.record_wall_clock = timings;
    if (kernel) cfg.kernel = parse_kernel(*kernel);
    if (seed) cfg.seed = *seed;
    if (shots) cfg.shots = *shots;
    if (noise_p) cfg.noise_p = *noise_p;
    if (depth) cfg.qaoa.depth = *depth;
    if (lambda_flow) cfg.lambda_flow = *lambda_flow;
    if (lambda_int) cfg.lambda_int = *lambda_int;
    if (max_hops) cfg.max_hops = *max_hops;
    if (latency_budget) cfg.latency_budget = *latency_budget;
    cfg.validate();
    return cfg;
  }
};

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw Error(ErrorCode::InvalidArgument, "write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + s + "'");
  }
  return v;
}

int cmd_gen(const GeneratorSpec& spec, const std::string& out_path, std::ostream& out) {
  const Scenario s = generate_scenario(spec);
  OutputSink sink(out_path, out);
  sink.stream() << scenario_to_json(s).dump(2) << '\n';
  sink.finish();
  return kFeasible;
}

int cmd_solve(const std::string& path, const SolveFlags& flags, const std::string& out_path, std::ostream& out) {
  const Scenario sc = load_scenario(path);
  const RoutingDecision d = run_pipeline(sc, flags.build(sc));
  OutputSink sink(out_path, out);
  sink.stream() << to_json(d).dump(2) << '\n';
  sink.finish();
  return d.feasible ? kFeasible : kInfeasible;
}

int cmd_compare(const std::string& path, const std::string& seeds_arg, SolveFlags flags, const std::string& out_path,
                std::ostream& out) {
  const Scenario sc = load_scenario(path);
  std::vector<std::uint64_t> seeds;
  for (const std::string& s : split_list(seeds_arg)) seeds.push_back(static_cast<std::uint64_t>(parse_double(s)));
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "--seeds needs at least one value");
  OutputSink sink(out_path, out);
  std::ostream& csv = sink.stream();
  csv << "kernel,seed,feasible,cost,ratio,feasibility_rate,fallback,t_prep,t_map,t_quantum_model,t_class_opt,t_post,"
         "total\n";
  for (Kernel k : {Kernel::Qaoa, Kernel::Grover, Kernel::ClassicalOnly}) {
    for (std::uint64_t seed : seeds) {
      flags.kernel = std::string(to_string(k));
      flags.seed = seed;
      const RoutingDecision d = run_pipeline(sc, flags.build(sc));
      const RuntimeLedger& l = d.ledger;
      csv << to_string(k) << ',' << seed << ',' << (d.feasible ? 1 : 0) << ',' << format_number(d.cost) << ','
          << optional_cell(d.ratio) << ',' << format_number(d.feasibility_rate) << ',' << (d.fallback_used ? 1 : 0)
          << ',' << format_number(l.t_prep) << ',' << format_number(l.t_map) << ','
          << format_number(l.t_quantum_model) << ',' << format_number(l.t_class_opt) << ','
          << format_number(l.t_post) << ',' << format_number(l.total()) << '\n';
    }
  }
  sink.finish();
  return kFeasible;
}

int cmd_sweep(const std::string& path, const std::string& axis, const std::string& values_arg, SolveFlags flags,
              const std::string& out_path, std::ostream& out) {
  const Scenario sc = load_scenario(path);
  const std::vector<std::string> values = split_list(values_arg);
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "--values needs at least one value");
  if (axis != "lambda_flow" && axis != "depth_p" && axis != "noise_p") {
    throw Error(ErrorCode::InvalidArgument, "unknown sweep axis '" + axis + "'");
  }
  const Demand demand = demand_vector(sc.source, sc.dest, sc.graph.node_count());
  flags.kernel = "qaoa";
  OutputSink sink(out_path, out);
  std::ostream& csv = sink.stream();
  csv << axis << ",F_opt,feasibility_rate,ratio,fallback,ground_feasible\n";
  std::optional<QaoaParams> warm;
  for (const std::string& raw : values) {
    PipelineConfig cfg = flags.build(sc);
    std::string label = raw;
    if (axis == "lambda_flow") {
      if (raw == "auto" || raw == "safe") {
        cfg.lambda_flow.reset();
      } else {
        cfg.lambda_flow = parse_double(raw);
      }
      label = format_number(cfg.resolve_penalties(sc.graph, sc.alpha).flow);
    } else if (axis == "noise_p") {
      cfg.noise_p = parse_double(raw);
      label = format_number(cfg.noise_p);
    } else {
      const double p = parse_double(raw);
      if (p < 1.0 || p != std::floor(p)) throw Error(ErrorCode::InvalidArgument, "depth values must be integers >= 1");
      cfg.qaoa.depth = static_cast<std::size_t>(p);
      if (warm && warm->depth() <= cfg.qaoa.depth) cfg.qaoa.warm_start = warm;
      label = std::to_string(cfg.qaoa.depth);
    }
    cfg.validate();
    const RoutingDecision d = run_pipeline(sc, cfg);
    if (d.qaoa_params) warm = d.qaoa_params;

    std::string ground = "";
    const QuboModel model =
        build_routing_hamiltonian(sc.graph, sc.alpha, demand, cfg.resolve_penalties(sc.graph, sc.alpha));
    if (model.num_vars() <= 20) {
      const GroundState gs = brute_force_ground_state(model);
      ground = decode_index(model, gs.minimizers.front(), sc.graph, sc.alpha, sc.source, sc.dest).check.valid ? "1"
                                                                                                               : "0";
    }
    csv << label << ',' << optional_cell(d.objective) << ',' << format_number(d.feasibility_rate) << ','
        << optional_cell(d.ratio) << ',' << (d.fallback_used ? 1 : 0) << ',' << ground << '\n';
  }
  sink.finish();
  return kFeasible;
}

int cmd_walk(const std::string& path, const std::string& kind, double t_max, std::size_t steps,
             const std::string& out_path, std::ostream& out) {
  if (steps == 0) throw Error(ErrorCode::InvalidArgument, "--steps must be >= 1");
  if (!std::isfinite(t_max) || t_max < 0.0) throw Error(ErrorCode::InvalidArgument, "--t-max must be >= 0");
  const Scenario sc = load_scenario(path);
  std::vector<double> times(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    times[i] = i == steps ? t_max : t_max * static_cast<double>(i) / static_cast<double>(steps);
  }
  const auto rows = hitting_profile(sc.graph, sc.source, sc.dest, parse_walk_kind(kind), sc.alpha, times);
  OutputSink sink(out_path, out);
  sink.stream() << "t,quantum_p,classical_p\n";
  for (const HittingRow& r : rows) {
    sink.stream() << format_number(r.t) << ',' << format_number(r.quantum_p) << ',' << format_number(r.classical_p)
                  << '\n';
  }
  sink.finish();
  return kFeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid quantum-classical routing laboratory", "qroute"};
  app.require_subcommand(1);

  GeneratorSpec gen_spec;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a seeded random scenario");
  gen->add_option("--nodes", gen_spec.nodes, "node count (>= 2)");
  gen->add_option("--edge-prob", gen_spec.edge_prob, "directed edge probability");
  gen->add_option("--coupling-prob", gen_spec.coupling_prob, "pairwise coupling probability");
  gen->add_option("--seed", gen_spec.seed, "RNG seed");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  std::string scenario_path;
  std::string out_path;

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "run the hybrid pipeline and print the decision JSON");
  solve->add_option("scenario", scenario_path, "scenario JSON")->required();
  solve_flags.attach(solve);
  solve->add_option("--out", out_path, "output file (default stdout)");

  SolveFlags compare_flags;
  std::string seeds = "1,2,3";
  auto* compare = app.add_subcommand("compare", "run every kernel over a list of seeds, CSV out");
  compare->add_option("scenario", scenario_path, "scenario JSON")->required();
  compare->add_option("--seeds", seeds, "comma-separated seeds");
  compare_flags.attach(compare, false, false);
  compare->add_option("--out", out_path, "CSV file (default stdout)");

  SolveFlags sweep_flags;
  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "sweep one QAOA setting, CSV out");
  sweep->add_option("scenario", scenario_path, "scenario JSON")->required();
  sweep->add_option("--axis", axis, "lambda_flow | depth_p | noise_p")->required();
  sweep->add_option("--values", values, "comma-separated values ('auto' allowed for lambda_flow)")->required();
  sweep_flags.attach(sweep, false, true);
  sweep->add_option("--out", out_path, "CSV file (default stdout)");

  std::string walk_kind = "adjacency";
  double t_max = std::numbers::pi / 2.0;
  std::size_t steps = 16;
  auto* walk = app.add_subcommand("walk", "continuous-time walk hitting profile, CSV out");
  walk->add_option("scenario", scenario_path, "scenario JSON")->required();
  walk->add_option("--kind", walk_kind, "adjacency | laplacian | weighted_adjacency");
  walk->add_option("--t-max", t_max, "end of the time grid");
  walk->add_option("--steps", steps, "grid intervals (>= 1)");
  walk->add_option("--out", out_path, "CSV file (default stdout)");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kFeasible;
  } catch (const CLI::ParseError& e) {
    err << "qroute: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*gen) return cmd_gen(gen_spec, gen_out, out);
    if (*solve) return cmd_solve(scenario_path, solve_flags, out_path, out);
    if (*compare) return cmd_compare(scenario_path, seeds, compare_flags, out_path, out);
    if (*sweep) return cmd_sweep(scenario_path, axis, values, sweep_flags, out_path, out);
    if (*walk) return cmd_walk(scenario_path, walk_kind, t_max, steps, out_path, out);
  } catch (const std::exception& e) {
    err << "qroute: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qroute::cli
