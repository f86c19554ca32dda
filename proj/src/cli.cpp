#include "neareq/cli.hpp"

#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "neareq/io.hpp"

namespace neareq::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

enum ExitCode { kOk = 0, kNegative = 1, kInputError = 2, kUnsupported = 3 };

struct Options {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string output_dir = ".";
  std::string format = "json";

  // generate
  std::string construction;
  std::size_t n = 0;
  std::size_t k = 1;
  double t = 0.0;
  double eps = 0.1;
  double t1 = 0.0;
  double t2 = 0.0;
  double box = 0.0;

  // shared inputs
  std::string points;
  std::string intervals;
  std::string method = "pruned";
  double delta = 0.2;
  double bound_constant = 0.0;

  // search
  std::string config;
  std::string initial;
  std::uint64_t iterations = 10000;
  std::size_t restarts = 1;
  std::optional<double> temperature;
  std::optional<double> cooling;
  std::optional<double> sigma;
  std::optional<double> teleport;

  // analyze
  std::size_t s = 2;
  std::optional<std::size_t> m;
};

// Writes files into the output directory and records them for the manifest.
class OutputSink {
public:
  explicit OutputSink(const Options& opt) : dir_(opt.output_dir) {
    fs::create_directories(dir_);
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = dir_ / name;
    io::write_file_atomic(path, content);
    written_.push_back(path.generic_string());
  }

  void manifest(const std::string& command, json params, std::vector<std::string> inputs,
                std::optional<std::uint64_t> seed) {
    json m = {{"command", command},
              {"params", std::move(params)},
              {"input_paths", std::move(inputs)},
              {"output_paths", written_},
              {"seed", seed ? json(*seed) : json(nullptr)},
              {"tool_version", kToolVersion}};
    io::write_file_atomic(dir_ / ("manifest_" + command + ".json"), io::dump(m));
  }

private:
  fs::path dir_;
  std::vector<std::string> written_;
};

std::string points_file_name(const Options& opt, const std::string& stem) {
  return stem + (opt.format == "csv" ? ".csv" : ".json");
}

std::string encode_points(const Options& opt, const PointSet& ps) {
  return opt.format == "csv" ? io::points_to_csv(ps) : io::dump(io::to_json(ps));
}

int cmd_generate(const Options& opt, std::ostream& out) {
  const std::string& name = opt.construction;
  OutputSink sink(opt);
  json params;
  std::optional<std::uint64_t> seed;

  if (name == "random") {
    const PointSet ps = random_separated(opt.n, opt.box, opt.seed);
    params = {{"n", opt.n}, {"box", opt.box}};
    seed = opt.seed;
    sink.write(points_file_name(opt, "points"), encode_points(opt, ps));
    sink.write("construction.json",
               io::dump({{"name", "random"}, {"params", params}, {"predicted_count", nullptr}}));
    out << "generated random n=" << ps.size() << "\n";
  } else {
    std::optional<ConstructionOutput> c;
    if (name == "two-column") {
      c = two_column(opt.n, opt.k, opt.t, opt.eps);
      params = {{"n", opt.n}, {"k", opt.k}, {"t", opt.t}, {"eps", opt.eps}};
    } else if (name == "remark2") {
      c = remark2_three_column(opt.n, opt.t1, opt.t2);
      params = {{"n", opt.n}, {"t1", opt.t1}, {"t2", opt.t2}};
    } else if (name == "emp1") {
      c = emp1_chain(opt.n, opt.k, opt.t);
      params = {{"n", opt.n}, {"k", opt.k}, {"t", opt.t}};
    } else if (name == "problem3") {
      c = problem3_chain(opt.n, opt.k, opt.t);
      params = {{"n", opt.n}, {"k", opt.k}, {"t", opt.t}};
    } else {
      throw InputError("unknown construction '" + name +
                       "' (expected two-column, remark2, emp1, problem3 or random)");
    }
    sink.write(points_file_name(opt, "points"), encode_points(opt, c->ps));
    sink.write("intervals.json", io::dump(io::to_json(c->iv)));
    sink.write("construction.json", io::dump(io::construction_sidecar(*c)));
    out << "generated " << c->name << " n=" << c->ps.size()
        << " predicted_count=" << c->predicted_count << "\n";
  }
  params["format"] = opt.format;
  sink.manifest("generate", {{"construction", name}, {"args", params}}, {}, seed);
  return kOk;
}

int cmd_count(const Options& opt, std::ostream& out) {
  const PointSet ps = io::read_points(opt.points);
  const IntervalFamily iv = io::read_intervals(opt.intervals);
  const auto method = parse_count_method(opt.method);
  const auto report = count_pairs(ps, iv, method);

  OutputSink sink(opt);
  sink.write("count.json", io::dump(io::to_json(report)));
  sink.manifest("count", {{"method", opt.method}}, {opt.points, opt.intervals}, std::nullopt);
  out << "n=" << ps.size() << " total=" << report.total << " method=" << to_string(method) << "\n";
  return kOk;
}

int cmd_check_hypothesis(const Options& opt, std::ostream& out) {
  const IntervalFamily iv = io::read_intervals(opt.intervals);
  const auto report = check_hypothesis(iv, opt.delta);

  OutputSink sink(opt);
  sink.write("hypothesis.json", io::dump(io::to_json(report)));
  sink.manifest("check-hypothesis", {{"delta", opt.delta}}, {opt.intervals}, std::nullopt);
  out << "holds=" << (report.holds ? "true" : "false")
      << " violations=" << report.violations.size() << "\n";
  return report.holds ? kOk : kNegative;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const PointSet ps = io::read_points(opt.points);
  const IntervalFamily iv = io::read_intervals(opt.intervals);
  const auto report =
      verify_theorem(ps, iv, opt.delta, opt.bound_constant, parse_count_method(opt.method));

  OutputSink sink(opt);
  sink.write("verify.json", io::dump(io::to_json(report)));
  sink.manifest("verify", {{"delta", opt.delta}, {"C", opt.bound_constant}, {"method", opt.method}},
                {opt.points, opt.intervals}, std::nullopt);
  out << "n=" << ps.size() << " total=" << report.count.total
      << " bound=" << io::format_double(report.bound_value)
      << " within_bound=" << (report.within_bound ? "true" : "false")
      << " hypothesis=" << (report.hypothesis.holds ? "holds" : "fails")
      << " separated=" << (report.separated ? "true" : "false") << "\n";
  return report.within_bound && report.hypothesis.holds ? kOk : kNegative;
}

int cmd_search(const Options& opt, std::ostream& out) {
  std::vector<std::string> inputs;
  std::optional<PointSet> initial;
  if (!opt.initial.empty()) initial = io::read_points(opt.initial);

  std::optional<SearchConfig> cfg;
  if (!opt.config.empty()) {
    cfg = io::search_config_from_json(io::parse_json(io::read_text_file(opt.config)));
    inputs.push_back(opt.config);
    if (opt.seed_given) cfg->seed = opt.seed;
  } else {
    if (opt.intervals.empty()) throw InputError("search needs --config or --intervals");
    const std::size_t n = opt.n == 0 && initial ? initial->size() : opt.n;
    cfg = SearchConfig::defaults(n, io::read_intervals(opt.intervals), opt.iterations, opt.seed);
    inputs.push_back(opt.intervals);
    cfg->restarts = opt.restarts;
    if (opt.temperature) cfg->initial_temperature = *opt.temperature;
    if (opt.cooling) cfg->cooling_factor = *opt.cooling;
    if (opt.sigma) cfg->jitter_sigma = *opt.sigma;
    if (opt.teleport) cfg->teleport_probability = *opt.teleport;
  }

  if (initial) inputs.push_back(opt.initial);
  const auto result = anneal(*cfg, initial);

  OutputSink sink(opt);
  sink.write(points_file_name(opt, "best_points"), encode_points(opt, result.best_ps));
  sink.write("search.json", io::dump(io::search_summary(*cfg, result)));
  sink.write("trajectory.csv", io::trajectory_csv(result));
  sink.manifest("search", io::to_json(*cfg), inputs, cfg->seed);
  out << "n=" << cfg->n << " best_count=" << result.best_count
      << " accepted=" << result.accepted_moves << " rejected=" << result.rejected_moves << "\n";
  return kOk;
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const PointSet ps = io::read_points(opt.points);
  const IntervalFamily iv = io::read_intervals(opt.intervals);
  const std::size_t m = opt.m.value_or(opt.s);
  const auto constants = proof_constants(opt.delta);
  const NearEqualGraph g = build_graph(ps, iv);
  const auto witness = find_tripartite(g, opt.s);

  json doc;
  if (!witness) {
    doc = {{"status", "none"}, {"s", opt.s}, {"edges", g.edge_count()}};
  } else {
    doc = io::to_json(*witness);
    doc["status"] = "found";
    doc["edges"] = g.edge_count();
    const auto hom = homogenize(g, *witness, m);
    doc["m"] = m;
    doc["B2"] = nullptr;
    doc["D2"] = nullptr;
    doc["labels"] = nullptr;
    doc["case"] = nullptr;
    json diagnostics = json::array();
    if (hom) {
      doc["B2"] = hom->B2;
      doc["D2"] = hom->D2;
      doc["labels"] = {{"xy", hom->l_xy}, {"xz", hom->l_xz}, {"yz", hom->l_yz}};
      const auto which = classify_case(hom->l_xy, hom->l_yz, hom->l_xz);
      doc["case"] = which == TriangleCase::I ? "I" : "II";
      if (which == TriangleCase::I) {
        for (auto y : hom->B2) {
          for (auto z : hom->D2) {
            diagnostics.push_back(io::to_json(case1_angle_diagnostic(ps, {witness->x, y, z}, iv, opt.delta)));
          }
        }
      }
    }
    doc["angle_diagnostics"] = diagnostics;
  }
  doc["proof_constants"] = io::to_json(constants);

  OutputSink sink(opt);
  sink.write("analysis.json", io::dump(doc));
  sink.manifest("analyze", {{"s", opt.s}, {"m", m}, {"delta", opt.delta}},
                {opt.points, opt.intervals}, std::nullopt);
  out << "edges=" << g.edge_count() << " witness=" << (witness ? "found" : "none") << "\n";
  return kOk;
}

int cmd_diameter(const Options& opt, std::ostream& out) {
  const PointSet ps = io::read_points(opt.points);
  const double d = diameter(ps);
  OutputSink sink(opt);
  sink.write("diameter.json", io::dump({{"n", ps.size()}, {"diameter", d}}));
  sink.manifest("diameter", json::object(), {opt.points}, std::nullopt);
  out << "n=" << ps.size() << " diameter=" << io::format_double(d) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Nearly-equal distance counting, verification, constructions and search", "neareq"};
  app.require_subcommand(1);
  app.add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { opt.seed = v; opt.seed_given = true; }, "random seed");
  app.add_option("--output-dir", opt.output_dir, "directory for output files");
  app.add_option("--format", opt.format, "point output format")->check(CLI::IsMember({"json", "csv"}));

  auto* generate = app.add_subcommand("generate", "write a construction or a random separated set");
  generate->add_option("construction", opt.construction,
                       "two-column | remark2 | emp1 | problem3 | random")->required();
  generate->add_option("--n", opt.n, "number of points")->required();
  generate->add_option("--k", opt.k, "number of intervals");
  generate->add_option("--t", opt.t, "largest distance value / column spacing");
  generate->add_option("--eps", opt.eps, "interval width (two-column)");
  generate->add_option("--t1", opt.t1, "first spacing (remark2)");
  generate->add_option("--t2", opt.t2, "second spacing (remark2)");
  generate->add_option("--box", opt.box, "box side (random)");
  generate->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { opt.seed = v; opt.seed_given = true; }, "random seed");

  auto* count = app.add_subcommand("count", "count qualifying pairs");
  count->add_option("--points", opt.points)->required();
  count->add_option("--intervals", opt.intervals)->required();
  count->add_option("--method", opt.method)->check(CLI::IsMember({"brute", "pruned"}));

  auto* hyp = app.add_subcommand("check-hypothesis", "check the distance-value hypothesis");
  hyp->add_option("--intervals", opt.intervals)->required();
  hyp->add_option("--delta", opt.delta)->required();

  auto* verify = app.add_subcommand("verify", "full report against n^2/4 + C n");
  verify->add_option("--points", opt.points)->required();
  verify->add_option("--intervals", opt.intervals)->required();
  verify->add_option("--delta", opt.delta)->required();
  verify->add_option("--C", opt.bound_constant)->required();
  verify->add_option("--method", opt.method)->check(CLI::IsMember({"brute", "pruned"}));

  auto* search = app.add_subcommand("search", "simulated annealing for configurations with many pairs");
  search->add_option("--config", opt.config, "SearchConfig JSON");
  search->add_option("--intervals", opt.intervals);
  search->add_option("--n", opt.n);
  search->add_option("--initial", opt.initial, "starting point set");
  search->add_option("--iterations", opt.iterations);
  search->add_option("--restarts", opt.restarts);
  search->add_option("--temperature", opt.temperature);
  search->add_option("--cooling", opt.cooling);
  search->add_option("--sigma", opt.sigma);
  search->add_option("--teleport", opt.teleport);
  search->add_option_function<std::uint64_t>(
      "--seed", [&](std::uint64_t v) { opt.seed = v; opt.seed_given = true; }, "random seed");

  auto* analyze = app.add_subcommand("analyze", "extract K(1,s,s) and homogeneous witnesses");
  analyze->add_option("--points", opt.points)->required();
  analyze->add_option("--intervals", opt.intervals)->required();
  analyze->add_option("--s", opt.s);
  analyze->add_option("--m", opt.m);
  analyze->add_option("--delta", opt.delta);

  auto* diam = app.add_subcommand("diameter", "largest pairwise distance");
  diam->add_option("--points", opt.points)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (generate->parsed()) return cmd_generate(opt, out);
    if (count->parsed()) return cmd_count(opt, out);
    if (hyp->parsed()) return cmd_check_hypothesis(opt, out);
    if (verify->parsed()) return cmd_verify(opt, out);
    if (search->parsed()) return cmd_search(opt, out);
    if (analyze->parsed()) return cmd_analyze(opt, out);
    if (diam->parsed()) return cmd_diameter(opt, out);
  } catch (const UnsupportedInput& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace neareq::cli
