#pragma once

// Numerical search for counterexamples to the n-variable multiplicative
// refinement of weighted AM-GM:
//
//   sum w_i a_i >= S(h^r) prod a_i^{w_i},  h = max a / min a,  r = min w.
//
// For n = 2 this is the scalar multiplicative refinement and holds; for
// n >= 3 it is open. The search combines box-corner probes, log-uniform
// sampling and a coordinate pattern search on the gap.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "scalar_core.hpp"

namespace youngref {

namespace search_defaults {
inline constexpr double min_weight = 1e-9;       ///< weights are kept at least this far inside
inline constexpr double corner_epsilon = 1e-6;   ///< small weight in the extreme corner splits
inline constexpr double negative_rel = 1e-9;     ///< gap < -negative_rel * scale is a candidate
inline constexpr double min_step = 1e-10;        ///< descent stops below this step
inline constexpr std::size_t sample_chunk = 4096; ///< samples per substream
inline constexpr std::size_t max_n = 16;          ///< keeps the 2^n corner probes bounded
} // namespace search_defaults

/// Positive weights summing to 1 within 1e-12.
class SimplexWeights {
public:
  explicit SimplexWeights(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) {
      throw InputError("SimplexWeights: empty weight vector");
    }
    double s = 0.0;
    for (double x : w_) {
      if (!std::isfinite(x) || !(x > 0.0)) {
        throw InputError("SimplexWeights: weights must be finite and positive");
      }
      s += x;
    }
    if (std::abs(s - 1.0) > 1e-12) {
      throw InputError("SimplexWeights: weights must sum to 1");
    }
  }

  /// Normalizes positive raw values, lifting each weight to at least `floor`.
  static SimplexWeights normalized(std::vector<double> raw, double floor = 0.0) {
    for (int pass = 0; pass < 2; ++pass) {
      const double s = std::accumulate(raw.begin(), raw.end(), 0.0);
      for (double& x : raw) {
        x = std::max(x / s, floor);
      }
    }
    const double s = std::accumulate(raw.begin(), raw.end(), 0.0);
    for (double& x : raw) {
      x /= s;
    }
    return SimplexWeights(std::move(raw));
  }

  static SimplexWeights barycentric(std::size_t n) {
    return SimplexWeights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const noexcept { return w_[i]; }
  std::span<const double> values() const noexcept { return w_; }
  double min() const { return *std::min_element(w_.begin(), w_.end()); }

private:
  std::vector<double> w_;
};

/// One evaluation of the gap function.
struct GapSample {
  std::vector<double> points;
  SimplexWeights weights;
  double h;       ///< max(points) / min(points)
  double r;       ///< min weight
  double arith;   ///< sum w_i a_i
  double refined; ///< S(h^r) prod a_i^{w_i}
  double gap;     ///< arith - refined

  double scale() const { return 1.0 + std::abs(arith) + std::abs(refined); }
  bool is_negative() const { return gap < -search_defaults::negative_rel * scale(); }
};

namespace detail {

/// Indices sorted by (point, weight), so accumulation order does not depend
/// on how the caller permuted the pairs.
inline std::vector<std::size_t> canonical_order(std::span<const double> points,
                                                const SimplexWeights& w) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return points[i] < points[j] || (points[i] == points[j] && w[i] < w[j]);
  });
  return idx;
}

inline void check_points(std::span<const double> points, const SimplexWeights& w) {
  if (points.size() != w.size()) {
    throw InputError("gap: points and weights differ in length");
  }
  if (points.size() < 2) {
    throw InputError("gap: at least two points are required");
  }
  for (double a : points) {
    if (!std::isfinite(a) || !(a > 0.0)) {
      throw InputError("gap: points must be finite and positive");
    }
  }
}

} // namespace detail

/// Evaluates sum w_i a_i - S(h^r) prod a_i^{w_i}.
inline GapSample gap(std::vector<double> points, SimplexWeights weights) {
  detail::check_points(points, weights);
  const auto order = detail::canonical_order(points, weights);
  double arith = 0.0;
  double log_geo = 0.0;
  for (std::size_t i : order) {
    arith += weights[i] * points[i];
    log_geo += weights[i] * std::log(points[i]);
  }
  const double h = points[order.back()] / points[order.front()];
  const double r = weights.min();
  const double refined = specht_ratio(std::pow(h, r)) * std::exp(log_geo);
  return {std::move(points), std::move(weights), h, r, arith, refined, arith - refined};
}

/// Recomputes the gap of a sample in extended precision with compensated
/// (Neumaier) summation.
inline long double gap_compensated(const GapSample& s) {
  using L = long double;
  auto add = [](L& sum, L& comp, L v) {
    const L t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  };
  const auto order = detail::canonical_order(s.points, s.weights);
  L arith = 0, arith_c = 0, lg = 0, lg_c = 0;
  for (std::size_t i : order) {
    const L w = s.weights[i];
    const L a = s.points[i];
    add(arith, arith_c, w * a);
    add(lg, lg_c, w * std::log(a));
  }
  const L h = static_cast<L>(s.points[order.back()]) / static_cast<L>(s.points[order.front()]);
  const L r = static_cast<L>(s.weights.min());
  const L refined = specht_ratio(std::pow(h, r)) * std::exp(lg + lg_c);
  return (arith + arith_c) - refined;
}

struct SearchConfig {
  std::size_t n = 3;
  double box_lo = 0.1;
  double box_hi = 10.0;
  std::size_t samples = 100000;
  std::size_t restarts = 10;
  std::size_t descent_iters = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0; ///< 0 = hardware concurrency; results do not depend on it

  void validate() const {
    if (n < 2 || n > search_defaults::max_n) {
      throw InputError("SearchConfig: n must lie in [2, " +
                       std::to_string(search_defaults::max_n) + "]");
    }
    if (!std::isfinite(box_lo) || !std::isfinite(box_hi) || !(box_lo > 0.0) ||
        !(box_lo < box_hi)) {
      throw InputError("SearchConfig: box must satisfy 0 < lo < hi");
    }
    if (descent_iters == 0) {
      throw InputError("SearchConfig: descent_iters must be positive");
    }
  }
};

struct SearchResult {
  double min_gap;
  GapSample argmin;
  std::size_t negatives_found;
  std::size_t total_evaluated;
  std::uint64_t seed;
  std::size_t corner_probes;
  std::size_t sampled;
  std::size_t descent_evaluations;
};

namespace detail {

/// Running minimum and negative count over a stream of samples.
struct Tally {
  std::optional<GapSample> best;
  std::size_t negatives = 0;
  std::size_t evaluated = 0;

  void add(GapSample s) {
    ++evaluated;
    if (s.is_negative()) {
      ++negatives;
    }
    if (!best || s.gap < best->gap) {
      best = std::move(s);
    }
  }

  /// Merges a later tally; ties keep the earlier minimum.
  void merge(Tally&& o) {
    negatives += o.negatives;
    evaluated += o.evaluated;
    if (o.best && (!best || o.best->gap < best->gap)) {
      best = std::move(o.best);
    }
  }
};

inline GapSample random_sample(const SearchConfig& c, Rng& rng) {
  std::vector<double> pts(c.n);
  for (double& a : pts) {
    a = log_uniform(rng, c.box_lo, c.box_hi);
  }
  std::vector<double> raw(c.n);
  for (double& w : raw) {
    w = standard_exponential(rng);
  }
  return gap(std::move(pts),
             SimplexWeights::normalized(std::move(raw), search_defaults::min_weight));
}

inline std::vector<SimplexWeights> corner_weight_splits(std::size_t n) {
  std::vector<SimplexWeights> out;
  const double eps = search_defaults::corner_epsilon;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> w(n, eps);
    w[k] = 1.0 - static_cast<double>(n - 1) * eps;
    out.push_back(SimplexWeights::normalized(std::move(w)));
  }
  out.push_back(SimplexWeights::barycentric(n));
  return out;
}

inline Tally corner_probes(const SearchConfig& c) {
  Tally t;
  const auto splits = corner_weight_splits(c.n);
  const std::size_t corners = std::size_t{1} << c.n;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    std::vector<double> pts(c.n);
    for (std::size_t i = 0; i < c.n; ++i) {
      pts[i] = (mask >> i & 1U) ? c.box_hi : c.box_lo;
    }
    for (const auto& w : splits) {
      t.add(gap(pts, w));
    }
  }
  return t;
}

struct DescentOutcome {
  Tally tally;
  GapSample final_sample;
};

/// Coordinate pattern search. Points move in log space within the box,
/// weights move multiplicatively and are re-normalized after every trial.
/// Only strict improvements are accepted; a sweep without one halves the step.
inline DescentOutcome descend(const GapSample& start, const SearchConfig& c) {
  const std::size_t n = start.points.size();
  const double log_lo = std::log(c.box_lo);
  const double log_hi = std::log(c.box_hi);
  const double width = log_hi - log_lo;

  DescentOutcome out{{}, start};
  GapSample& cur = out.final_sample;
  double step = 0.25;
  for (std::size_t it = 0; it < c.descent_iters && step >= search_defaults::min_step; ++it) {
    bool improved = false;
    for (std::size_t coord = 0; coord < 2 * n; ++coord) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> pts = cur.points;
        std::vector<double> w(cur.weights.values().begin(), cur.weights.values().end());
        if (coord < n) {
          const double y = std::clamp(std::log(pts[coord]) + dir * step * width, log_lo, log_hi);
          pts[coord] = std::clamp(std::exp(y), c.box_lo, c.box_hi);
          if (pts[coord] == cur.points[coord]) {
            continue;
          }
        } else {
          w[coord - n] *= std::exp(dir * 4.0 * step);
        }
        GapSample trial =
            gap(std::move(pts), SimplexWeights::normalized(std::move(w), search_defaults::min_weight));
        const bool better = trial.gap < cur.gap;
        out.tally.add(trial);
        if (better) {
          cur = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
  }
  return out;
}

inline constexpr std::uint32_t sample_stream_tag = 1;
inline constexpr std::uint32_t restart_stream_tag = 2;

} // namespace detail

/// Derivative-free descent of the gap from `start`; never returns a larger gap.
inline GapSample local_descent(const GapSample& start, const SearchConfig& config) {
  config.validate();
  return detail::descend(start, config).final_sample;
}

/// Corner probes, then `samples` random draws (points log-uniform in the box,
/// weights uniform on the simplex), then `restarts` descents. Restart 0
/// starts from the best point seen so far, the others from fresh draws.
///
/// Each chunk of samples and each restart owns a substream of the seed, and
/// partial results are merged in index order, so the result is independent
/// of the thread count.
inline SearchResult random_search(const SearchConfig& config) {
  config.validate();

  detail::Tally total = detail::corner_probes(config);
  const std::size_t corner_count = total.evaluated;

  const std::size_t chunk = search_defaults::sample_chunk;
  const std::size_t chunks = (config.samples + chunk - 1) / chunk;
  auto partial = parallel_map(chunks, config.threads, [&](std::size_t k) {
    Rng rng = substream(config.seed, k, detail::sample_stream_tag);
    const std::size_t end = std::min(config.samples, (k + 1) * chunk);
    detail::Tally t;
    for (std::size_t i = k * chunk; i < end; ++i) {
      t.add(detail::random_sample(config, rng));
    }
    return t;
  });
  for (auto& t : partial) {
    total.merge(std::move(t));
  }
  const std::size_t sampled = total.evaluated - corner_count;

  const GapSample seed_best = *total.best;
  auto descents = parallel_map(config.restarts, config.threads, [&](std::size_t k) {
    Rng rng = substream(config.seed, k, detail::restart_stream_tag);
    const GapSample start = k == 0 ? seed_best : detail::random_sample(config, rng);
    detail::Tally t;
    t.add(start);
    auto d = detail::descend(start, config);
    t.merge(std::move(d.tally));
    return t;
  });
  std::size_t descent_evals = 0;
  for (auto& t : descents) {
    descent_evals += t.evaluated;
    total.merge(std::move(t));
  }

  return {total.best->gap, *total.best,      total.negatives, total.evaluated,
          config.seed,     corner_count,     sampled,         descent_evals};
}

/// Outcome of a search, with a compensated recheck of a negative minimum.
struct Certification {
  SearchConfig config;
  SearchResult result;
  bool candidate = false;          ///< a negative gap survived the recheck
  std::optional<double> recheck_gap; ///< extended-precision gap of the argmin, if rechecked

  std::string_view verdict() const {
    return candidate ? "CANDIDATE COUNTEREXAMPLE" : "no counterexample found";
  }
};

/// Runs the search; a negative minimum is re-evaluated in extended precision
/// with compensated summation and kept as a candidate only if it is still
/// below -1e-9 scale. Candidates call for high-precision confirmation.
inline Certification certify(const SearchConfig& config) {
  Certification c{config, random_search(config), false, std::nullopt};
  if (c.result.negatives_found > 0) {
    const double g = static_cast<double>(gap_compensated(c.result.argmin));
    c.recheck_gap = g;
    c.candidate = g < -search_defaults::negative_rel * c.result.argmin.scale();
  }
  return c;
}

} // namespace youngref
