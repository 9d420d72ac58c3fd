#include "mobnb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace mobnb {

using nlohmann::json;

std::string to_string(SolverKind kind) { return kind == SolverKind::nsga2 ? "nsga2" : "bnb"; }

SolverKind parse_solver(const std::string& name) {
  if (name == "nsga2") return SolverKind::nsga2;
  if (name == "bnb") return SolverKind::bnb;
  throw UsageError("unknown solver '" + name + "' (expected nsga2 or bnb)");
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw UsageError("repetitions must be at least 1");
  if (id.empty() || id.find_first_of(",\n\r\"") != std::string::npos) {
    throw UsageError("combination id must be non-empty and free of commas, quotes and newlines");
  }
  if (workers < 1) throw UsageError("workers must be at least 1");
  if (solver == SolverKind::nsga2) {
    nsga2.validate();
  } else {
    bnb.validate();
  }
  oracle.validate();
}

namespace {

[[noreturn]] void config_error(const std::string& origin, const std::string& what) {
  throw UsageError(origin + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& origin,
                const std::string& where) {
  if (!obj.is_object()) config_error(origin, where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) config_error(origin, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out, const std::string& origin) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    config_error(origin, std::string("field '") + key + "' has the wrong type");
  }
}

void read_nsga2(const json& obj, Nsga2Config& cfg, const std::string& origin, const std::string& where) {
  check_keys(obj,
             {"population", "generations", "stall", "crossover_probability", "mutation_probability", "eta_c", "eta_m"},
             origin, where);
  read_field(obj, "population", cfg.population_size, origin);
  read_field(obj, "generations", cfg.max_generations, origin);
  read_field(obj, "stall", cfg.stall_generations, origin);
  read_field(obj, "crossover_probability", cfg.crossover_probability, origin);
  read_field(obj, "mutation_probability", cfg.mutation_probability, origin);
  read_field(obj, "eta_c", cfg.eta_c, origin);
  read_field(obj, "eta_m", cfg.eta_m, origin);
}

}  // namespace

ExperimentFile parse_experiment_file(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(origin, std::string("invalid JSON: ") + e.what());
  }
  check_keys(doc,
             {"problem", "problem_options", "repetitions", "seed", "snap", "oracle", "nsga2_defaults", "record_wall_time",
              "combinations"},
             origin, "top level");

  ExperimentConfig base;
  read_field(doc, "problem", base.problem, origin);
  read_field(doc, "repetitions", base.repetitions, origin);
  read_field(doc, "seed", base.base_seed, origin);
  read_field(doc, "snap", base.snap, origin);
  read_field(doc, "record_wall_time", base.record_wall_time, origin);
  if (doc.contains("problem_options")) {
    const auto& po = doc["problem_options"];
    check_keys(po, {"gear_objective", "tong_g2"}, origin, "problem_options");
    std::string gear = "squared_error";
    std::string tong = "minus";
    read_field(po, "gear_objective", gear, origin);
    read_field(po, "tong_g2", tong, origin);
    if (gear == "squared_error") {
      base.problem_options.gear = GearObjective::squared_error;
    } else if (gear == "literal") {
      base.problem_options.gear = GearObjective::literal;
    } else {
      config_error(origin, "gear_objective must be squared_error or literal");
    }
    if (tong == "minus") {
      base.problem_options.tong_g2 = TongG2Sign::minus;
    } else if (tong == "plus") {
      base.problem_options.tong_g2 = TongG2Sign::plus;
    } else {
      config_error(origin, "tong_g2 must be minus or plus");
    }
  }
  if (doc.contains("oracle")) {
    const auto& o = doc["oracle"];
    check_keys(o, {"grid", "refine_points", "refine_rounds", "epsilon", "resample", "max_enumeration", "cache"}, origin,
               "oracle");
    read_field(o, "grid", base.oracle.continuous_grid_points, origin);
    read_field(o, "refine_points", base.oracle.refine_points, origin);
    read_field(o, "refine_rounds", base.oracle.refine_rounds, origin);
    read_field(o, "epsilon", base.oracle.epsilon, origin);
    read_field(o, "resample", base.oracle.resample, origin);
    read_field(o, "max_enumeration", base.oracle.max_enumeration, origin);
    std::string cache;
    read_field(o, "cache", cache, origin);
    base.oracle_cache = cache;
  }
  Nsga2Config defaults;
  if (doc.contains("nsga2_defaults")) read_nsga2(doc["nsga2_defaults"], defaults, origin, "nsga2_defaults");

  if (!doc.contains("combinations") || !doc["combinations"].is_array() || doc["combinations"].empty()) {
    config_error(origin, "'combinations' must be a non-empty array");
  }
  ExperimentFile file;
  std::set<std::string> seen;
  for (const auto& entry : doc["combinations"]) {
    check_keys(entry, {"id", "solver", "nsga2", "root", "node", "leaf", "max_nodes", "fathoming"}, origin,
               "combination");
    ExperimentConfig cfg = base;
    cfg.nsga2 = defaults;
    cfg.bnb.root = cfg.bnb.node = cfg.bnb.leaf = defaults;
    if (!entry.contains("id")) config_error(origin, "combination without 'id'");
    if (entry["id"].is_number_integer()) {
      cfg.id = std::to_string(entry["id"].get<long long>());
    } else {
      read_field(entry, "id", cfg.id, origin);
    }
    if (!seen.insert(cfg.id).second) config_error(origin, "duplicate combination id '" + cfg.id + "'");
    std::string solver = "nsga2";
    read_field(entry, "solver", solver, origin);
    cfg.solver = parse_solver(solver);
    const std::string where = "combination " + cfg.id;
    if (cfg.solver == SolverKind::nsga2) {
      for (const char* k : {"root", "node", "leaf", "max_nodes", "fathoming"}) {
        if (entry.contains(k)) config_error(origin, std::string("'") + k + "' is a bnb setting in " + where);
      }
      if (entry.contains("nsga2")) read_nsga2(entry["nsga2"], cfg.nsga2, origin, where + " nsga2");
    } else {
      if (entry.contains("nsga2")) config_error(origin, "'nsga2' is not a bnb setting in " + where);
      if (entry.contains("root")) read_nsga2(entry["root"], cfg.bnb.root, origin, where + " root");
      if (entry.contains("node")) read_nsga2(entry["node"], cfg.bnb.node, origin, where + " node");
      if (entry.contains("leaf")) read_nsga2(entry["leaf"], cfg.bnb.leaf, origin, where + " leaf");
      if (entry.contains("max_nodes")) {
        std::size_t m = 0;
        read_field(entry, "max_nodes", m, origin);
        cfg.bnb.max_nodes = m;
      }
      read_field(entry, "fathoming", cfg.bnb.fathoming, origin);
    }
    try {
      cfg.validate();
    } catch (const UsageError& e) {
      config_error(origin, where + ": " + e.what());
    }
    file.combinations.push_back(std::move(cfg));
  }
  return file;
}

ExperimentFile load_experiment_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_file(buffer.str(), path.string());
}

unsigned workers_from_env() {
  const char* raw = std::getenv("MOBNB_WORKERS");
  if (raw == nullptr || *raw == '\0') return 1;
  unsigned value = 0;
  const char* end = raw + std::char_traits<char>::length(raw);
  const auto res = std::from_chars(raw, end, value);
  if (res.ec != std::errc{} || res.ptr != end || value == 0) {
    throw UsageError(std::string("MOBNB_WORKERS must be a positive integer, got '") + raw + "'");
  }
  return value;
}

bool operator==(const RunRecord& a, const RunRecord& b) {
  auto same = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
  const auto& m = a.metrics;
  const auto& n = b.metrics;
  return a.problem == b.problem && a.solver == b.solver && a.id == b.id && a.rep == b.rep && a.seed == b.seed &&
         m.onvg == n.onvg && same(m.purity, n.purity) && same(m.gd, n.gd) && same(m.igd, n.igd) &&
         same(m.spread, n.spread) && same(m.relative_spread, n.relative_spread) && m.evaluations == n.evaluations &&
         a.wall_ms == b.wall_ms && a.failed == b.failed;
}

ParetoArchive solve_once(const ProblemSpec& problem, const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.solver == SolverKind::nsga2) {
    Nsga2Config c = cfg.nsga2;
    c.seed = seed;
    return run_nsga2(problem, std::nullopt, c).archive;
  }
  BnbConfig c = cfg.bnb;
  c.seed = seed;
  return solve(problem, c).archive;
}

namespace {

RunRecord run_one(const ProblemSpec& problem, const ExperimentConfig& cfg, const Front& reference, std::size_t rep) {
  RunRecord r;
  r.problem = cfg.problem;
  r.solver = to_string(cfg.solver);
  r.id = cfg.id;
  r.rep = rep;
  r.seed = cfg.base_seed + rep;
  const auto start = std::chrono::steady_clock::now();
  try {
    const ParetoArchive archive = solve_once(problem, cfg, r.seed);
    if (archive.empty() || archive.infeasible) throw EvaluationError("no feasible solution found");
    r.front = front_of(archive);
    std::sort(r.front.points.begin(), r.front.points.end());
    auto& m = r.metrics;
    m.onvg = onvg(r.front);
    m.purity = purity(r.front, reference);
    m.gd = gd(r.front, reference, cfg.snap);
    m.igd = igd(r.front, reference, cfg.snap);
    if (r.front.size() >= 2) {
      m.spread = spread(r.front, reference);
      m.relative_spread = relative_spread(r.front, reference);
    } else {
      // Spread is undefined for a single point.
      m.spread = std::numeric_limits<double>::quiet_NaN();
      m.relative_spread = std::numeric_limits<double>::quiet_NaN();
    }
    m.evaluations = archive.evaluation_count;
  } catch (const std::exception& e) {
    r.failed = true;
    r.error = e.what();
    r.metrics = {};
    r.front = {};
  }
  if (cfg.record_wall_time) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const Front& reference) {
  cfg.validate();
  if (reference.empty()) throw UsageError("run_experiment: empty reference front");
  const ProblemSpec problem = make_problem(cfg.problem, cfg.problem_options);
  std::vector<RunRecord> records(cfg.repetitions);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t rep = next++; rep < cfg.repetitions; rep = next++) records[rep] = run_one(problem, cfg, reference, rep);
  };
  const unsigned n = std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.repetitions));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const ProblemSpec problem = make_problem(cfg.problem, cfg.problem_options);
  OracleConfig oc = cfg.oracle;
  oc.workers = cfg.workers;
  std::string key = cfg.problem;
  if (cfg.problem == "gear" && cfg.problem_options.gear == GearObjective::literal) key += "-literal";
  if (cfg.problem == "tong" && cfg.problem_options.tong_g2 == TongG2Sign::plus) key += "-plus";
  const Front reference =
      cfg.oracle_cache.empty() ? reference_front(problem, oc).front : cached_reference_front(problem, key, oc, cfg.oracle_cache);
  return run_experiment(cfg, reference);
}

double quantile_inclusive(std::vector<double> values, double p) {
  if (values.empty()) throw UsageError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw UsageError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

BoxStats box_stats(const std::vector<double>& input) {
  std::vector<double> values;
  for (double v : input) {
    if (std::isfinite(v)) values.push_back(v);
  }
  BoxStats s;
  s.n = values.size();
  if (values.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.min = s.q1 = s.median = s.q3 = s.max = s.mean = nan;
    return s;
  }
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_inclusive(values, 0.25);
  s.median = quantile_inclusive(values, 0.5);
  s.q3 = quantile_inclusive(values, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low = s.q1 - 1.5 * iqr;
  const double high = s.q3 + 1.5 * iqr;
  double sum = 0.0;
  std::size_t kept = 0;
  for (double v : values) {
    if (v < low || v > high) {
      s.outliers.push_back(v);
    } else {
      sum += v;
      ++kept;
    }
  }
  s.mean = sum / static_cast<double>(kept);
  return s;
}

Summary summarize(const std::vector<RunRecord>& records) {
  Summary s;
  std::map<std::string, std::vector<double>> columns;
  for (const auto& r : records) {
    if (s.runs == 0) {
      s.problem = r.problem;
      s.solver = r.solver;
      s.id = r.id;
    } else if (r.problem != s.problem || r.solver != s.solver || r.id != s.id) {
      throw UsageError("summarize: records from different experiments");
    }
    ++s.runs;
    if (r.failed) {
      ++s.failures;
      continue;
    }
    const auto& m = r.metrics;
    columns["onvg"].push_back(static_cast<double>(m.onvg));
    columns["purity"].push_back(m.purity);
    columns["gd"].push_back(m.gd);
    columns["igd"].push_back(m.igd);
    columns["spread"].push_back(m.spread);
    columns["d_spread"].push_back(m.relative_spread);
    columns["evals"].push_back(static_cast<double>(m.evaluations));
  }
  if (s.runs == s.failures) throw UsageError("summarize: no successful run to summarize");
  for (const auto& name : kMetricNames) s.metrics[name] = box_stats(columns[name]);
  return s;
}

std::string classify_investment(double ir) {
  if (std::isnan(ir)) return "undefined";
  if (ir == std::numeric_limits<double>::infinity()) return "best quality";
  if (ir >= 1.0) return "good investment";
  if (ir > 0.0) return "enhanced quality";
  if (std::abs(ir + 1.0) <= 1e-12) return "break-even";
  if (ir > -1.0) return "acceptable tradeoff";
  return "bad investment";
}

Comparison compare_means(double gd_baseline, double d_spread_baseline, double evals_baseline, double gd_candidate,
                         double d_spread_candidate, double evals_candidate) {
  if (!(evals_baseline > 0.0)) throw UsageError("compare: baseline evaluation mean must be positive");
  if (!(evals_candidate > 0.0)) throw UsageError("compare: candidate evaluation mean must be positive");
  Comparison c;
  c.q = quality_ratio(gd_baseline, d_spread_baseline, gd_candidate, d_spread_candidate);
  c.c = evals_candidate / evals_baseline;
  c.ir = investment_ratio(c.q, c.c);
  c.verdict = classify_investment(c.ir);
  return c;
}

Comparison compare(const Summary& baseline, const Summary& candidate) {
  auto mean = [](const Summary& s, const char* name) {
    const auto it = s.metrics.find(name);
    if (it == s.metrics.end() || it->second.n == 0) {
      throw UsageError("compare: summary " + s.id + " has no '" + name + "' values");
    }
    return it->second.mean;
  };
  Comparison c = compare_means(mean(baseline, "gd"), mean(baseline, "d_spread"), mean(baseline, "evals"),
                               mean(candidate, "gd"), mean(candidate, "d_spread"), mean(candidate, "evals"));
  c.baseline = baseline.problem + "/" + baseline.solver + "/" + baseline.id;
  c.candidate = candidate.problem + "/" + candidate.solver + "/" + candidate.id;
  return c;
}

std::string runs_csv(const std::vector<RunRecord>& records) {
  std::string out = kRunsHeader;
  out += '\n';
  for (const auto& r : records) {
    const auto& m = r.metrics;
    out += r.problem + ',' + r.solver + ',' + r.id + ',' + std::to_string(r.rep) + ',' + std::to_string(r.seed) + ',';
    if (r.failed) {
      out += ",,,,,,,";
    } else {
      out += std::to_string(m.onvg) + ',' + format_double(m.purity) + ',' + format_double(m.gd) + ',' +
             format_double(m.igd) + ',' + format_double(m.spread) + ',' + format_double(m.relative_spread) + ',' +
             std::to_string(m.evaluations) + ',';
    }
    if (r.wall_ms) out += format_double(*r.wall_ms);
    out += r.failed ? ",1\n" : ",0\n";
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw UsageError("runs.csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<RunRecord> parse_runs_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw UsageError("runs.csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunsHeader) throw UsageError("runs.csv: unexpected header '" + line + "'");
  std::vector<RunRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 14) throw UsageError("runs.csv line " + std::to_string(line_no) + ": expected 14 fields");
    RunRecord r;
    r.problem = f[0];
    r.solver = f[1];
    r.id = f[2];
    r.rep = parse_number<std::size_t>(f[3], line_no);
    r.seed = parse_number<std::uint64_t>(f[4], line_no);
    r.failed = f[13] == "1";
    if (!r.failed && f[13] != "0") throw UsageError("runs.csv line " + std::to_string(line_no) + ": bad failed flag");
    if (!r.failed) {
      r.metrics.onvg = parse_number<std::size_t>(f[5], line_no);
      r.metrics.purity = parse_number<double>(f[6], line_no);
      r.metrics.gd = parse_number<double>(f[7], line_no);
      r.metrics.igd = parse_number<double>(f[8], line_no);
      r.metrics.spread = parse_number<double>(f[9], line_no);
      r.metrics.relative_spread = parse_number<double>(f[10], line_no);
      r.metrics.evaluations = parse_number<std::uint64_t>(f[11], line_no);
    }
    if (!f[12].empty()) r.wall_ms = parse_number<double>(f[12], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RunRecord> import_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_runs_csv(buffer.str());
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

// Infinite ratios are meaningful in comparisons and kept as strings.
json ratio_value(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string summary_json(const std::vector<Summary>& summaries) {
  json arr = json::array();
  for (const auto& s : summaries) {
    json metrics = json::object();
    for (const auto& [name, b] : s.metrics) {
      json outliers = json::array();
      for (double v : b.outliers) outliers.push_back(v);
      metrics[name] = {{"n", b.n},
                       {"min", number_or_null(b.min)},
                       {"q1", number_or_null(b.q1)},
                       {"median", number_or_null(b.median)},
                       {"q3", number_or_null(b.q3)},
                       {"max", number_or_null(b.max)},
                       {"mean", number_or_null(b.mean)},
                       {"outliers", outliers}};
    }
    arr.push_back({{"problem", s.problem},
                   {"solver", s.solver},
                   {"id", s.id},
                   {"runs", s.runs},
                   {"failures", s.failures},
                   {"metrics", metrics}});
  }
  return arr.dump(2) + "\n";
}

std::vector<Summary> parse_summary_json(const std::string& text) {
  std::vector<Summary> out;
  try {
    for (const auto& j : json::parse(text)) {
      Summary s;
      s.problem = j.at("problem").get<std::string>();
      s.solver = j.at("solver").get<std::string>();
      s.id = j.at("id").get<std::string>();
      s.runs = j.at("runs").get<std::size_t>();
      s.failures = j.at("failures").get<std::size_t>();
      for (const auto& [name, m] : j.at("metrics").items()) {
        BoxStats b;
        b.n = m.at("n").get<std::size_t>();
        b.min = number_from(m.at("min"));
        b.q1 = number_from(m.at("q1"));
        b.median = number_from(m.at("median"));
        b.q3 = number_from(m.at("q3"));
        b.max = number_from(m.at("max"));
        b.mean = number_from(m.at("mean"));
        b.outliers = m.at("outliers").get<std::vector<double>>();
        s.metrics[name] = std::move(b);
      }
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("summary.json: ") + e.what());
  }
  return out;
}

std::string comparison_json(const std::vector<Comparison>& comparisons) {
  json arr = json::array();
  for (const auto& c : comparisons) {
    arr.push_back({{"baseline", c.baseline},
                   {"candidate", c.candidate},
                   {"q", ratio_value(c.q)},
                   {"c", ratio_value(c.c)},
                   {"ir", ratio_value(c.ir)},
                   {"verdict", c.verdict}});
  }
  return arr.dump(2) + "\n";
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

}  // namespace

void export_results(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                    const std::vector<Summary>& summaries, const std::vector<Comparison>& comparisons,
                    const Front* reference) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "fronts", ec);
  if (ec) throw std::runtime_error("cannot create " + (dir / "fronts").string() + ": " + ec.message());
  write_text(dir / "runs.csv", runs_csv(records));
  write_text(dir / "summary.json", summary_json(summaries));
  write_text(dir / "comparison.json", comparison_json(comparisons));
  if (reference) write_front_csv(dir / "fronts" / "reference.csv", *reference);
  for (const auto& r : records) {
    if (r.failed) continue;
    write_front_csv(dir / "fronts" / (r.solver + "-" + r.id + "-" + std::to_string(r.rep) + ".csv"), r.front);
  }
}

}  // namespace mobnb
