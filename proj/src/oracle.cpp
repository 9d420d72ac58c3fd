#include "mobnb/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace mobnb {

void OracleConfig::validate() const {
  if (continuous_grid_points == 0) throw UsageError("continuous_grid_points must be positive");
  if (!(epsilon > 0.0)) throw UsageError("epsilon must be positive");
  if (max_enumeration < 1) throw UsageError("max_enumeration must be at least 1");
}

std::string OracleConfig::canonical() const {
  std::ostringstream s;
  s << "grid=" << continuous_grid_points << ";refine=" << refine_points << "x" << refine_rounds
    << ";eps=" << format_double(epsilon) << ";resample=" << resample;
  return s.str();
}

namespace {

constexpr std::uint64_t kChunkEvaluations = 1u << 20;

// Combination index -> integer codes, mixed radix with the last variable fastest.
class ComboDecoder {
 public:
  explicit ComboDecoder(const IntegerBox& box) : box_(box) {}
  void decode(std::uint64_t index, std::vector<int>& codes) const {
    codes.resize(box_.size());
    for (std::size_t i = box_.size(); i-- > 0;) {
      const auto width = static_cast<std::uint64_t>(box_.upper[i] - box_.lower[i] + 1);
      codes[i] = box_.lower[i] + static_cast<int>(index % width);
      index /= width;
    }
  }

 private:
  IntegerBox box_;
};

// Evaluation points plus the indices of the surviving ones.
struct Candidates {
  std::vector<ObjectiveVector> objectives;
  std::vector<VariableVector> vars;

  void compact() {
    const auto keep = nondominated_indices(objectives);
    std::vector<ObjectiveVector> o;
    std::vector<VariableVector> v;
    o.reserve(keep.size());
    v.reserve(keep.size());
    for (std::size_t i : keep) {
      o.push_back(std::move(objectives[i]));
      v.push_back(std::move(vars[i]));
    }
    objectives = std::move(o);
    vars = std::move(v);
  }
  void append(Candidates&& other) {
    std::move(other.objectives.begin(), other.objectives.end(), std::back_inserter(objectives));
    std::move(other.vars.begin(), other.vars.end(), std::back_inserter(vars));
  }
};

// Evaluates a point and keeps it when feasible.
class PointSink {
 public:
  explicit PointSink(const ProblemSpec& problem) : problem_(problem) {}

  void add(const VariableVector& v, Candidates& out) {
    const auto& ints = problem_.integer_domains();
    values_.resize(ints.size());
    for (std::size_t i = 0; i < ints.size(); ++i) values_[i] = ints[i].value(v.integer[i]);
    problem_.evaluate_values(v.continuous, values_, scratch_);
    ++evaluations;
    for (double f : scratch_.objectives) {
      if (!std::isfinite(f)) throw EvaluationError(problem_.name() + ": non-finite objective during enumeration");
    }
    if (aggregate_violation(scratch_.inequality, scratch_.equality) != 0.0) return;
    out.objectives.push_back(scratch_.objectives);
    out.vars.push_back(v);
    if (out.objectives.size() > next_compaction_) {
      out.compact();
      next_compaction_ = 2 * out.objectives.size() + 65536;
    }
  }

  std::uint64_t evaluations = 0;

 private:
  const ProblemSpec& problem_;
  std::vector<double> values_;
  RawEvaluation scratch_;
  std::size_t next_compaction_ = 65536;
};

// Runs task(chunk, sink, out) for every chunk on `workers` threads and
// concatenates the compacted chunk results in chunk order.
template <typename Task>
Candidates run_chunks(const ProblemSpec& problem, std::uint64_t chunks, unsigned workers, std::uint64_t& evaluations,
                      Task task) {
  std::vector<Candidates> results(chunks);
  std::vector<std::uint64_t> chunk_evals(chunks, 0);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    PointSink sink(problem);
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      try {
        const auto before = sink.evaluations;
        task(c, sink, results[c]);
        results[c].compact();
        chunk_evals[c] = sink.evaluations - before;
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(chunks, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  Candidates all;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    evaluations += chunk_evals[c];
    all.append(std::move(results[c]));
  }
  all.compact();
  return all;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t grid_size(const ProblemSpec& problem, std::size_t per_variable) {
  std::uint64_t g = 1;
  for (std::size_t i = 0; i < problem.continuous_domains().size(); ++i) g = checked_mul(g, per_variable);
  return g;
}

// Grid index -> continuous point, last variable fastest.
void decode_grid(std::uint64_t index, std::span<const double> lo, std::span<const double> hi, std::size_t points,
                 std::vector<double>& x) {
  x.resize(lo.size());
  for (std::size_t i = lo.size(); i-- > 0;) {
    const auto k = index % points;
    index /= points;
    if (points == 1) {
      x[i] = 0.5 * (lo[i] + hi[i]);
    } else if (k + 1 == points) {
      x[i] = hi[i];
    } else {
      x[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
  }
}

OracleFront finish(const ProblemSpec& problem, Candidates&& all) {
  OracleFront out;
  out.front.source = FrontSource::reference;
  out.front.points = all.objectives;
  out.solutions.reserve(all.vars.size());
  for (std::size_t i = 0; i < all.vars.size(); ++i) {
    out.solutions.push_back({std::move(all.vars[i]), std::move(all.objectives[i]), 0.0});
  }
  for (const auto& s : out.solutions) out.contributing_combinations.push_back(s.vars.integer);
  std::sort(out.contributing_combinations.begin(), out.contributing_combinations.end());
  out.contributing_combinations.erase(
      std::unique(out.contributing_combinations.begin(), out.contributing_combinations.end()),
      out.contributing_combinations.end());
  (void)problem;
  return out;
}

}  // namespace

std::uint64_t lattice_size(const ProblemSpec& problem, const OracleConfig& cfg) {
  const std::uint64_t total =
      checked_mul(problem.integer_box().combinations(), grid_size(problem, cfg.continuous_grid_points));
  if (total > cfg.max_enumeration) {
    throw CapacityError(problem.name() + ": enumeration needs " + std::to_string(total) +
                            " evaluations, above max_enumeration=" + std::to_string(cfg.max_enumeration),
                        total);
  }
  return total;
}

OracleFront enumerate_true_front(const ProblemSpec& problem, const OracleConfig& cfg) {
  cfg.validate();
  (void)lattice_size(problem, cfg);
  const IntegerBox box = problem.integer_box();
  const ComboDecoder decoder(box);
  const std::uint64_t combos = box.combinations();
  const std::size_t g_points = cfg.continuous_grid_points;
  const std::uint64_t per_combo = grid_size(problem, g_points);
  const std::uint64_t combos_per_chunk = std::max<std::uint64_t>(1, kChunkEvaluations / per_combo);
  const std::uint64_t chunks = (combos + combos_per_chunk - 1) / combos_per_chunk;

  std::vector<double> lo, hi;
  for (const auto& d : problem.continuous_domains()) {
    lo.push_back(d.lo);
    hi.push_back(d.hi);
  }

  OracleFront out;
  auto task = [&](std::uint64_t chunk, PointSink& sink, Candidates& result) {
    VariableVector v;
    const std::uint64_t first = chunk * combos_per_chunk;
    const std::uint64_t last = std::min(combos, first + combos_per_chunk);
    for (std::uint64_t c = first; c < last; ++c) {
      decoder.decode(c, v.integer);
      for (std::uint64_t g = 0; g < per_combo; ++g) {
        decode_grid(g, lo, hi, g_points, v.continuous);
        sink.add(v, result);
      }
    }
  };
  std::uint64_t evaluations = 0;
  auto all = run_chunks(problem, chunks, cfg.workers, evaluations, task);
  out = finish(problem, std::move(all));
  out.evaluations = evaluations;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out.continuous_pitch.push_back(g_points > 1 ? (hi[i] - lo[i]) / static_cast<double>(g_points - 1) : hi[i] - lo[i]);
  }
  return out;
}

OracleFront refine_continuous_sections(const OracleFront& coarse, const ProblemSpec& problem, const OracleConfig& cfg) {
  const std::size_t n_c = problem.continuous_domains().size();
  if (n_c == 0 || cfg.refine_points < 2 || cfg.refine_rounds == 0 || coarse.solutions.empty()) return coarse;

  std::vector<double> dom_lo, dom_hi;
  for (const auto& d : problem.continuous_domains()) {
    dom_lo.push_back(d.lo);
    dom_hi.push_back(d.hi);
  }
  OracleFront current = coarse;
  std::vector<double> pitch = coarse.continuous_pitch;
  if (pitch.size() != n_c) throw UsageError("refine_continuous_sections: missing grid pitch");
  const std::size_t r = cfg.refine_points;
  const std::uint64_t local = grid_size(problem, r);

  for (std::size_t round = 0; round < cfg.refine_rounds; ++round) {
    const auto& seeds = current.solutions;
    const std::uint64_t per_chunk = std::max<std::uint64_t>(1, kChunkEvaluations / local);
    const std::uint64_t chunks = (seeds.size() + per_chunk - 1) / per_chunk;
    auto task = [&](std::uint64_t chunk, PointSink& sink, Candidates& result) {
      std::vector<double> lo(n_c), hi(n_c);
      VariableVector v;
      const std::uint64_t first = chunk * per_chunk;
      const std::uint64_t last = std::min<std::uint64_t>(seeds.size(), first + per_chunk);
      for (std::uint64_t s = first; s < last; ++s) {
        const auto& seed = seeds[s];
        result.objectives.push_back(seed.objectives);
        result.vars.push_back(seed.vars);
        for (std::size_t i = 0; i < n_c; ++i) {
          lo[i] = std::max(dom_lo[i], seed.vars.continuous[i] - pitch[i]);
          hi[i] = std::min(dom_hi[i], seed.vars.continuous[i] + pitch[i]);
        }
        v.integer = seed.vars.integer;
        for (std::uint64_t g = 0; g < local; ++g) {
          decode_grid(g, lo, hi, r, v.continuous);
          sink.add(v, result);
        }
      }
    };
    std::uint64_t evaluations = 0;
    auto all = run_chunks(problem, chunks, cfg.workers, evaluations, task);
    const auto total = current.evaluations + evaluations;
    current = finish(problem, std::move(all));
    current.evaluations = total;
    for (auto& p : pitch) p = 2.0 * p / static_cast<double>(r - 1);
    current.continuous_pitch = pitch;
  }
  return current;
}

namespace {

// Monotone piecewise cubic Hermite interpolant y(t) through strictly
// increasing knots (Fritsch-Carlson slopes). Monotone data stays monotone.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> t, std::vector<double> y) : t_(std::move(t)), y_(std::move(y)), d_(t_.size(), 0.0) {
    const std::size_t n = t_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = t_[k + 1] - t_[k];
      delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] <= 0.0) continue;
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    d_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  [[nodiscard]] double operator()(std::size_t interval, double t) const {
    const std::size_t i = interval;
    const double h = t_[i + 1] - t_[i];
    const double u = (t - t_[i]) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * h * d_[i] + (-2 * u3 + 3 * u2) * y_[i + 1] +
           (u3 - u2) * h * d_[i + 1];
  }

 private:
  static double end_slope(double h0, double h1, double m0, double m1) {
    double d = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (d * m0 <= 0.0) return 0.0;
    if (m0 * m1 <= 0.0 && std::abs(d) > std::abs(3.0 * m0)) return 3.0 * m0;
    return d;
  }

  std::vector<double> t_, y_, d_;
};

void resample_section(const std::vector<ObjectiveVector>& pts, double epsilon, std::vector<ObjectiveVector>& out) {
  // Knots too close to advance the chord parameter are dropped; the last
  // point always closes the section.
  std::vector<double> s{0.0}, x{pts.front()[0]}, y{pts.front()[1]};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double next = s.back() + std::hypot(pts[i][0] - x.back(), pts[i][1] - y.back());
    if (next <= s.back() * (1.0 + 1e-12)) {
      if (i + 1 < pts.size() || s.size() == 1) continue;
      s.pop_back();
      x.pop_back();
      y.pop_back();
      s.push_back(s.back() + std::hypot(pts[i][0] - x.back(), pts[i][1] - y.back()));
    } else {
      s.push_back(next);
    }
    x.push_back(pts[i][0]);
    y.push_back(pts[i][1]);
  }
  const std::size_t n = s.size();
  if (n < 2) {
    out.insert(out.end(), pts.begin(), pts.end());
    return;
  }
  const MonotoneCubic fx(s, x);
  const MonotoneCubic fy(s, y);

  // Cumulative arc length on a fine sub-grid of each knot interval.
  constexpr std::size_t kSub = 32;
  std::vector<double> param{0.0};
  std::vector<std::size_t> interval{0};
  std::vector<double> arc{0.0};
  double px = x[0];
  double py = y[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 1; k <= kSub; ++k) {
      const double t = k == kSub ? s[i + 1] : s[i] + (s[i + 1] - s[i]) * static_cast<double>(k) / kSub;
      const double qx = fx(i, t);
      const double qy = fy(i, t);
      arc.push_back(arc.back() + std::hypot(qx - px, qy - py));
      param.push_back(t);
      interval.push_back(i);
      px = qx;
      py = qy;
    }
  }
  const double length = arc.back();
  if (!std::isfinite(length)) throw EvaluationError("uniform_resample: non-finite section length");
  const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / epsilon - 1e-9)));

  out.push_back(pts.front());
  for (std::size_t k = 1; k < steps; ++k) {
    const double target = length * static_cast<double>(k) / static_cast<double>(steps);
    const auto it = std::lower_bound(arc.begin(), arc.end(), target);
    const auto j = static_cast<std::size_t>(std::distance(arc.begin(), it));
    const double w = (target - arc[j - 1]) / (arc[j] - arc[j - 1]);
    const double t = param[j - 1] + w * (param[j] - param[j - 1]);
    const std::size_t iv = interval[j];
    out.push_back({fx(iv, t), fy(iv, t)});
  }
  out.push_back(pts.back());
}

}  // namespace

Front uniform_resample(const Front& front, double epsilon, std::vector<std::string>* warnings) {
  if (!(epsilon > 0.0)) throw UsageError("uniform_resample: epsilon must be positive");
  std::vector<ObjectiveVector> pts = front.points;
  for (const auto& p : pts) {
    if (p.size() != 2) throw UsageError("uniform_resample: only two-objective fronts are supported");
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Front out;
  out.source = front.source;
  if (pts.size() < 2) {
    out.points = pts;
    return out;
  }

  std::vector<double> gaps(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    gaps[i] = std::hypot(pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]);
  }
  std::vector<double> sorted_gaps = gaps;
  std::nth_element(sorted_gaps.begin(), sorted_gaps.begin() + static_cast<std::ptrdiff_t>(sorted_gaps.size() / 2),
                   sorted_gaps.end());
  const double threshold = 10.0 * sorted_gaps[sorted_gaps.size() / 2];

  std::vector<ObjectiveVector> resampled;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const bool last = i + 1 == pts.size();
    if (!last && gaps[i] <= threshold) continue;
    std::vector<ObjectiveVector> section(pts.begin() + static_cast<std::ptrdiff_t>(begin),
                                         pts.begin() + static_cast<std::ptrdiff_t>(i + 1));
    begin = i + 1;
    if (section.size() <= 3) {
      resampled.insert(resampled.end(), section.begin(), section.end());
      continue;
    }
    const bool repeated_f1 = std::adjacent_find(section.begin(), section.end(), [](const auto& a, const auto& b) {
                               return a[0] == b[0];
                             }) != section.end();
    if (repeated_f1) {
      if (warnings) {
        warnings->push_back("section starting at f1=" + format_double(section.front()[0]) +
                            " has repeated f1 values; passed through");
      }
      resampled.insert(resampled.end(), section.begin(), section.end());
      continue;
    }
    resample_section(section, epsilon, resampled);
  }

  out.points = pareto_filter(resampled);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

OracleFront reference_front(const ProblemSpec& problem, const OracleConfig& cfg) {
  OracleFront result = refine_continuous_sections(enumerate_true_front(problem, cfg), problem, cfg);
  if (cfg.resample && !problem.continuous_domains().empty()) {
    result.front = uniform_resample(result.front, cfg.epsilon);
    result.front.source = FrontSource::reference;
    result.solutions.clear();
  }
  return result;
}

std::filesystem::path oracle_cache_path(const std::filesystem::path& cache_dir, const std::string& problem_key,
                                        const OracleConfig& cfg) {
  // FNV-1a over the key and the canonical config.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char ch : problem_key + "|" + cfg.canonical()) {
    hash ^= static_cast<unsigned char>(ch);
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream name;
  name << problem_key << '-' << std::hex << std::setw(16) << std::setfill('0') << hash << ".csv";
  return cache_dir / name.str();
}

Front cached_reference_front(const ProblemSpec& problem, const std::string& problem_key, const OracleConfig& cfg,
                             const std::filesystem::path& cache_dir) {
  const auto path = oracle_cache_path(cache_dir, problem_key, cfg);
  if (std::filesystem::exists(path)) return read_front_csv(path, FrontSource::reference);
  const auto result = reference_front(problem, cfg);
  std::filesystem::create_directories(cache_dir);
  // Write-then-rename so concurrent readers never see a partial file.
  auto tmp = path;
  tmp += ".tmp";
  write_front_csv(tmp, result.front);
  std::filesystem::rename(tmp, path);
  return result.front;
}

}  // namespace mobnb
