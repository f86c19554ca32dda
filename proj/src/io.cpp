#include "neareq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace neareq::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::uint64_t count_at(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw InputError(std::string(what) + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

json ids_json(const std::vector<std::size_t>& ids) { return json(ids); }

}  // namespace

PointSet points_from_json(const json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw InputError("point set JSON needs a \"points\" array");
  }
  std::size_t dim = 2;
  if (j.contains("dim")) dim = static_cast<std::size_t>(count_at(j["dim"], "dim"));
  if (dim != 2) throw UnsupportedInput("only planar point sets (dim 2) are supported");

  std::vector<Point> pts;
  for (const auto& row : j["points"]) {
    if (!row.is_array()) throw InputError("each point must be an [x, y] array");
    if (row.size() != 2) {
      throw UnsupportedInput("point with " + std::to_string(row.size()) +
                             " coordinates; only planar points are supported");
    }
    pts.push_back({number_at(row[0], "x"), number_at(row[1], "y")});
  }
  if (pts.empty()) throw InputError("point set is empty");
  return PointSet(std::move(pts));
}

json to_json(const PointSet& ps) {
  json rows = json::array();
  for (const auto& p : ps) rows.push_back({p.x, p.y});
  return {{"dim", 2}, {"points", std::move(rows)}};
}

PointSet points_from_csv(std::string_view text) {
  std::vector<Point> pts;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    double x = 0.0, y = 0.0;
    const bool numeric = fields.size() >= 1 && parse_number(fields[0], x);
    if (!numeric && pts.empty() && line_no == 1) continue;  // header row
    if (fields.size() != 2) {
      if (numeric && fields.size() > 2) {
        throw UnsupportedInput("CSV row " + std::to_string(line_no) +
                               " has more than two coordinates; only planar points are supported");
      }
      throw InputError("CSV row " + std::to_string(line_no) + " must have the form x,y");
    }
    if (!numeric || !parse_number(fields[1], y)) {
      throw InputError("CSV row " + std::to_string(line_no) + " is not numeric");
    }
    pts.push_back({x, y});
  }
  if (pts.empty()) throw InputError("point set is empty");
  return PointSet(std::move(pts));
}

std::string points_to_csv(const PointSet& ps) {
  std::string out = "x,y\n";
  for (const auto& p : ps) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += '\n';
  }
  return out;
}

IntervalFamily intervals_from_json(const json& j) {
  if (!j.is_object() || !j.contains("t") || !j["t"].is_array() || !j.contains("alpha")) {
    throw InputError("interval JSON needs \"alpha\" and a \"t\" array");
  }
  std::vector<double> t;
  for (const auto& v : j["t"]) t.push_back(number_at(v, "t value"));
  return IntervalFamily(std::move(t), number_at(j["alpha"], "alpha"));
}

json to_json(const IntervalFamily& iv) {
  return {{"alpha", iv.alpha()}, {"t", std::vector<double>(iv.t().begin(), iv.t().end())}};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PointSet read_points(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  if (path.extension() == ".csv") return points_from_csv(text);
  return points_from_json(parse_json(text));
}

IntervalFamily read_intervals(const std::filesystem::path& path) {
  return intervals_from_json(parse_json(read_text_file(path)));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const HypothesisReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"l1", v.l1},
                          {"l2", v.l2},
                          {"l3", v.l3},
                          {"forbidden_low", v.forbidden_low},
                          {"forbidden_high", v.forbidden_high}});
  }
  return {{"delta", r.delta}, {"alpha", r.alpha}, {"holds", r.holds}, {"violations", violations}};
}

json to_json(const PairCountReport& r) {
  return {{"total", r.total}, {"per_interval", r.per_interval}, {"method", to_string(r.method)}};
}

json to_json(const VerifierReport& r) {
  json min_distance = std::isfinite(r.min_distance) ? json(r.min_distance) : json(nullptr);
  return {{"separated", r.separated},
          {"min_distance", min_distance},
          {"hypothesis", to_json(r.hypothesis)},
          {"count", to_json(r.count)},
          {"bound_constant", r.bound_constant},
          {"bound_value", r.bound_value},
          {"within_bound", r.within_bound},
          {"diameter", r.diameter}};
}

json construction_sidecar(const ConstructionOutput& c) {
  json params = json::object();
  for (const auto& [key, value] : c.params) params[key] = value;
  params["column_sizes"] = c.column_sizes;
  return {{"name", c.name}, {"params", params}, {"predicted_count", c.predicted_count}};
}

json to_json(const TripartiteWitness& w) {
  return {{"x", w.x}, {"B", ids_json(w.B)}, {"D", ids_json(w.D)}, {"s", w.s}};
}

json to_json(const HomogeneousWitness& w) {
  return {{"base", to_json(w.base)},
          {"B2", ids_json(w.B2)},
          {"D2", ids_json(w.D2)},
          {"m", w.m},
          {"labels", {{"xy", w.l_xy}, {"xz", w.l_xz}, {"yz", w.l_yz}}}};
}

json to_json(const AngleDiagnostic& d) {
  return {{"ids", d.ids},
          {"labels", d.labels},
          {"angles", d.angles},
          {"degenerate", d.degenerate},
          {"delta1", d.delta1},
          {"delta2", d.delta2},
          {"min_angle_ok", d.min_angle_ok},
          {"max_angle_ok", d.max_angle_ok}};
}

json to_json(const ProofConstants& c) {
  return {{"delta", c.delta},
          {"delta1", c.delta1},
          {"delta2", c.delta2},
          {"small_delta_residual", c.small_delta_residual}};
}

json to_json(const LocalOptReport& r) {
  json moves = json::array();
  for (const auto& m : r.moves) {
    moves.push_back({{"point", m.point}, {"dx", m.dx}, {"dy", m.dy}, {"gain", m.gain}});
  }
  return {{"base_count", r.base_count}, {"locally_maximal", r.locally_maximal()}, {"moves", moves}};
}

json to_json(const SearchConfig& c) {
  return {{"n", c.n},
          {"intervals", to_json(c.iv)},
          {"iterations", c.iterations},
          {"seed", c.seed},
          {"initial_temperature", c.initial_temperature},
          {"cooling_factor", c.cooling_factor},
          {"jitter_sigma", c.jitter_sigma},
          {"teleport_probability", c.teleport_probability},
          {"restarts", c.restarts}};
}

json search_summary(const SearchConfig& config, const SearchResult& r) {
  return {{"config", to_json(config)},
          {"best_count", r.best_count},
          {"best_restart", r.best_restart},
          {"accepted_moves", r.accepted_moves},
          {"rejected_moves", r.rejected_moves},
          {"trajectory_samples", r.trajectory.size()}};
}

SearchConfig search_config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("search config must be a JSON object");
  if (!j.contains("n") || !j.contains("intervals")) {
    throw InputError("search config needs \"n\" and \"intervals\"");
  }
  const auto n = static_cast<std::size_t>(count_at(j["n"], "n"));
  const std::uint64_t iterations = j.contains("iterations") ? count_at(j["iterations"], "iterations") : 10000;
  const std::uint64_t seed = j.contains("seed") ? count_at(j["seed"], "seed") : 0;
  auto cfg = SearchConfig::defaults(n, intervals_from_json(j["intervals"]), iterations, seed);
  if (j.contains("initial_temperature")) cfg.initial_temperature = number_at(j["initial_temperature"], "initial_temperature");
  if (j.contains("cooling_factor")) cfg.cooling_factor = number_at(j["cooling_factor"], "cooling_factor");
  if (j.contains("jitter_sigma")) cfg.jitter_sigma = number_at(j["jitter_sigma"], "jitter_sigma");
  if (j.contains("teleport_probability")) cfg.teleport_probability = number_at(j["teleport_probability"], "teleport_probability");
  if (j.contains("restarts")) cfg.restarts = static_cast<std::size_t>(count_at(j["restarts"], "restarts"));
  cfg.validate();
  return cfg;
}

std::string trajectory_csv(const SearchResult& r) {
  std::string out = "iteration,count\n";
  for (const auto& s : r.trajectory) {
    out += std::to_string(s.iteration);
    out += ',';
    out += std::to_string(s.count);
    out += '\n';
  }
  return out;
}

}  // namespace neareq::io
