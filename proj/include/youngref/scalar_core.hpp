#pragma once

// Specht's ratio, the nu-weighted scalar means, and the scalar Young-type
// bounds built from them: classical, reverse, additive and multiplicative
// refinements, and the refined harmonic bound.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace youngref {

namespace tolerance {
inline constexpr double inequality = 1e-10; ///< default slack for scalar inequalities
inline constexpr double identity = 1e-12;   ///< default slack for identities
inline constexpr double lemma = 1e-12;      ///< lemma scan acceptance
} // namespace tolerance

/// Below this distance from 1 the Specht ratio switches to its Taylor branch.
inline constexpr double specht_taylor_threshold = 1e-5;

namespace detail {

template <std::floating_point T>
T specht_direct(T h) {
  // With x = h - 1 and L = log(1 + x) / x: h^{1/(h-1)} = exp(L), so
  // S(h) = exp(L) / (e L) = exp(L - 1 - log L). The exponent form stays finite
  // for h near the extremes of the floating range where exp(L) alone overflows.
  // h - 1 is exact on [1/2, 2]; outside it log1p(h - 1) would lose the low
  // bits of h, so log h is taken directly.
  const T x = h - T(1);
  const T log_h = (h >= T(0.5) && h <= T(2)) ? std::log1p(x) : std::log(h);
  const T l = log_h / x;
  return std::exp((l - T(1)) - std::log(l));
}

template <std::floating_point T>
T specht_taylor(T h) {
  const T x = h - T(1);
  return T(1) + x * x / T(8);
}

} // namespace detail

/// Specht's ratio S(h) = h^{1/(h-1)} / (e log h^{1/(h-1)}), extended by S(1) = 1.
///
/// The direct formula cancels catastrophically as h -> 1, so within
/// `specht_taylor_threshold` of 1 the second-order expansion 1 + (h-1)^2/8 is
/// used instead; its truncation error there is below 1e-15.
template <std::floating_point T>
T specht_ratio(T h) {
  if (!std::isfinite(h) || !(h > T(0))) {
    throw DomainError("specht_ratio: argument must be a finite positive number");
  }
  if (h == T(1)) {
    return T(1);
  }
  if (std::abs(h - T(1)) <= T(specht_taylor_threshold)) {
    return detail::specht_taylor(h);
  }
  return std::max(T(1), detail::specht_direct(h));
}

/// Both branches, exposed so the crossover can be checked from either side.
template <std::floating_point T>
T specht_ratio_direct(T h) {
  return detail::specht_direct(h);
}

template <std::floating_point T>
T specht_ratio_taylor(T h) {
  return detail::specht_taylor(h);
}

/// Two positive scalars and a weight nu in [0, 1].
template <std::floating_point T>
class BasicWeightedPair {
public:
  BasicWeightedPair(T a, T b, T nu) : a_(a), b_(b), nu_(nu) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a > T(0)) || !(b > T(0))) {
      throw DomainError("WeightedPair: a and b must be finite and positive");
    }
    if (!(nu >= T(0) && nu <= T(1))) {
      throw DomainError("WeightedPair: nu must lie in [0, 1]");
    }
  }

  T a() const noexcept { return a_; }
  T b() const noexcept { return b_; }
  T nu() const noexcept { return nu_; }
  /// r = min{nu, 1 - nu}, in [0, 1/2].
  T r() const noexcept { return std::min(nu_, T(1) - nu_); }

private:
  T a_;
  T b_;
  T nu_;
};

using WeightedPair = BasicWeightedPair<double>;

// The three weighted means are written so that a == b, nu == 0 and nu == 1
// return an argument exactly.

/// (1 - nu) a + nu b
template <std::floating_point T>
T arithmetic_mean(const BasicWeightedPair<T>& p) {
  return p.a() + p.nu() * (p.b() - p.a());
}

/// a^{1-nu} b^nu
template <std::floating_point T>
T geometric_mean(const BasicWeightedPair<T>& p) {
  return p.a() * std::pow(p.b() / p.a(), p.nu());
}

/// ((1 - nu)/a + nu/b)^{-1}
template <std::floating_point T>
T harmonic_mean(const BasicWeightedPair<T>& p) {
  return p.a() / (T(1) + p.nu() * (p.a() / p.b() - T(1)));
}

/// S((b/a)^r) a^{1-nu} b^nu, the multiplicative refinement of Young's lower bound.
template <std::floating_point T>
T mult_refined_lower_bound(const BasicWeightedPair<T>& p) {
  return specht_ratio(std::pow(p.b() / p.a(), p.r())) * geometric_mean(p);
}

/// a^{1-nu} b^nu + r (sqrt a - sqrt b)^2
template <std::floating_point T>
T add_refined_lower_bound(const BasicWeightedPair<T>& p) {
  const T d = std::sqrt(p.a()) - std::sqrt(p.b());
  return geometric_mean(p) + p.r() * d * d;
}

/// S(a/b) a^{1-nu} b^nu, an upper bound for the arithmetic mean.
template <std::floating_point T>
T reverse_young_upper_bound(const BasicWeightedPair<T>& p) {
  return specht_ratio(p.a() / p.b()) * geometric_mean(p);
}

/// S((a/b)^r) ((1-nu)/a + nu/b)^{-1}, a lower bound for the geometric mean.
template <std::floating_point T>
T refined_harmonic_bound(const BasicWeightedPair<T>& p) {
  return specht_ratio(std::pow(p.a() / p.b(), p.r())) * harmonic_mean(p);
}

enum class BoundKind {
  YoungClassic,
  ReverseYoung,
  AddRefined,
  MultRefined,
  HarmonicClassic,
  HarmonicRefined,
};

inline std::string_view to_string(BoundKind k) {
  switch (k) {
  case BoundKind::YoungClassic: return "YoungClassic";
  case BoundKind::ReverseYoung: return "ReverseYoung";
  case BoundKind::AddRefined: return "AddRefined";
  case BoundKind::MultRefined: return "MultRefined";
  case BoundKind::HarmonicClassic: return "HarmonicClassic";
  case BoundKind::HarmonicRefined: return "HarmonicRefined";
  }
  return "?";
}

/// One checked instance of lhs >= rhs.
struct BoundComparison {
  BoundKind kind;
  std::string relation; ///< human-readable "lhs >= rhs" label
  double lhs;
  double rhs;
  double gap; ///< lhs - rhs
  bool holds;
  double rel_tolerance;
};

/// holds <=> lhs - rhs >= -tol (1 + |lhs| + |rhs|)
inline BoundComparison compare_bound(BoundKind kind, std::string relation, double lhs, double rhs,
                                     double tol) {
  const double gap = lhs - rhs;
  const bool holds = gap >= -tol * (1.0 + std::abs(lhs) + std::abs(rhs));
  return {kind, std::move(relation), lhs, rhs, gap, holds, tol};
}

/// Every mean and bound for one pair, for reporting.
struct ScalarBounds {
  double arithmetic;
  double geometric;
  double harmonic;
  double mult_refined;
  double add_refined;
  double reverse_young;
  double harmonic_refined;
};

inline ScalarBounds compute_scalar_bounds(const WeightedPair& p) {
  return {arithmetic_mean(p),         geometric_mean(p),
          harmonic_mean(p),           mult_refined_lower_bound(p),
          add_refined_lower_bound(p), reverse_young_upper_bound(p),
          refined_harmonic_bound(p)};
}

/// The seven comparisons of the scalar chain, in order:
///   A >= mult, A >= add, mult >= G, add >= G, G >= harm_refined,
///   harm_refined >= H, reverse >= A.
/// No ordering between the two refinements is asserted.
inline std::vector<BoundComparison> evaluate_scalar_chain(const WeightedPair& p, double tol) {
  if (!(tol > 0.0)) {
    throw InputError("evaluate_scalar_chain: tolerance must be positive");
  }
  const ScalarBounds s = compute_scalar_bounds(p);
  std::vector<BoundComparison> out;
  out.reserve(7);
  out.push_back(compare_bound(BoundKind::MultRefined, "arithmetic >= mult_refined", s.arithmetic,
                              s.mult_refined, tol));
  out.push_back(compare_bound(BoundKind::AddRefined, "arithmetic >= add_refined", s.arithmetic,
                              s.add_refined, tol));
  out.push_back(compare_bound(BoundKind::MultRefined, "mult_refined >= geometric", s.mult_refined,
                              s.geometric, tol));
  out.push_back(compare_bound(BoundKind::AddRefined, "add_refined >= geometric", s.add_refined,
                              s.geometric, tol));
  out.push_back(compare_bound(BoundKind::HarmonicRefined, "geometric >= harmonic_refined",
                              s.geometric, s.harmonic_refined, tol));
  out.push_back(compare_bound(BoundKind::HarmonicClassic, "harmonic_refined >= harmonic",
                              s.harmonic_refined, s.harmonic, tol));
  out.push_back(compare_bound(BoundKind::ReverseYoung, "reverse_young >= arithmetic",
                              s.reverse_young, s.arithmetic, tol));
  return out;
}

inline bool all_hold(std::span<const BoundComparison> cs) {
  return std::all_of(cs.begin(), cs.end(), [](const BoundComparison& c) { return c.holds; });
}

// ---------------------------------------------------------------------------
// n-variable additive refinement

struct JensenGap {
  double lhs_gap; ///< sum p_i a_i - prod a_i^{p_i}
  double rhs_gap; ///< n min(p) (mean(a) - geomean(a))
};

/// Both sides of the n-variable additive refinement of weighted AM-GM:
///   sum p_i a_i - prod a_i^{p_i} >= n lambda (mean(a) - geomean(a)),
/// lambda = min p_i. The contract is lhs_gap >= rhs_gap >= 0.
inline JensenGap weighted_jensen_gap(std::span<const double> a, std::span<const double> p) {
  if (a.size() != p.size()) {
    throw InputError("weighted_jensen_gap: values and weights differ in length");
  }
  if (a.size() < 2) {
    throw InputError("weighted_jensen_gap: at least two values are required");
  }
  for (double x : a) {
    if (!std::isfinite(x) || !(x > 0.0)) {
      throw DomainError("weighted_jensen_gap: values must be finite and positive");
    }
  }
  double psum = 0.0;
  for (double w : p) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw DomainError("weighted_jensen_gap: weights must be finite and positive");
    }
    psum += w;
  }
  if (std::abs(psum - 1.0) > 1e-12) {
    throw InputError("weighted_jensen_gap: weights must sum to 1");
  }

  const auto n = static_cast<double>(a.size());
  double wsum = 0.0;
  double wlog = 0.0;
  double sum = 0.0;
  double slog = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double la = std::log(a[i]);
    wsum += p[i] * a[i];
    wlog += p[i] * la;
    sum += a[i];
    slog += la;
  }
  const double lambda = *std::min_element(p.begin(), p.end());
  return {wsum - std::exp(wlog), n * lambda * (sum / n - std::exp(slog / n))};
}

// ---------------------------------------------------------------------------
// Lemma scans

enum class LemmaId {
  LogBounds,  ///< 2(x-1)/(x+1) <= log x <= (x-1)/sqrt(x), x >= 1
  ThreeMeans, ///< sqrt(xy) < (x-y)/(log x - log y) < (x+y)/2, x != y
  ExpTLemma,  ///< e(t^2+1) >= (t+1) t^{t/(t-1)}, t > 0
};

inline std::string_view to_string(LemmaId id) {
  switch (id) {
  case LemmaId::LogBounds: return "LogBounds";
  case LemmaId::ThreeMeans: return "ThreeMeans";
  case LemmaId::ExpTLemma: return "ExpTLemma";
  }
  return "?";
}

/// Margin of one lemma at one point: the larger side minus the smaller side,
/// minimized over the inequalities the lemma asserts.
struct LemmaMargin {
  double margin;
  double scale; ///< 1 + |larger| + |smaller| of the tightest inequality
};

/// LogBounds margin at x >= 1; exactly 0 at x = 1.
inline LemmaMargin log_bounds_margin(double x) {
  if (x == 1.0) {
    return {0.0, 1.0};
  }
  const double u = x - 1.0;
  const double lower = 2.0 * u / (x + 1.0);
  const double mid = std::log1p(u);
  const double upper = u / std::sqrt(x);
  const double m1 = mid - lower;
  const double m2 = upper - mid;
  if (m1 <= m2) {
    return {m1, 1.0 + std::abs(mid) + std::abs(lower)};
  }
  return {m2, 1.0 + std::abs(upper) + std::abs(mid)};
}

/// Logarithmic mean (x-y)/(log x - log y), with the limit x at x = y.
inline double logarithmic_mean(double x, double y) {
  if (x == y) {
    return x;
  }
  const double u = (x - y) / y;
  return y * u / std::log1p(u);
}

/// ThreeMeans margin; exactly 0 on the diagonal, where all three means coincide.
inline LemmaMargin three_means_margin(double x, double y) {
  if (x == y) {
    return {0.0, 1.0 + 2.0 * std::abs(x)};
  }
  const double g = std::sqrt(x) * std::sqrt(y);
  const double l = logarithmic_mean(x, y);
  const double a = 0.5 * (x + y);
  const double m1 = l - g;
  const double m2 = a - l;
  if (m1 <= m2) {
    return {m1, 1.0 + std::abs(l) + std::abs(g)};
  }
  return {m2, 1.0 + std::abs(a) + std::abs(l)};
}

/// t^{t/(t-1)} for t > 0, with the limit e at t = 1.
inline double exp_t_power(double t) {
  if (t == 1.0) {
    return std::numbers::e;
  }
  const double u = t - 1.0;
  return t * std::exp(std::log1p(u) / u);
}

/// ExpTLemma margin e(t^2+1) - (t+1) t^{t/(t-1)}; exactly 0 at t = 1.
inline LemmaMargin exp_t_margin(double t) {
  if (t == 1.0) {
    return {0.0, 1.0 + 4.0 * std::numbers::e};
  }
  const double larger = std::numbers::e * (t * t + 1.0);
  const double smaller = (t + 1.0) * exp_t_power(t);
  return {larger - smaller, 1.0 + std::abs(larger) + std::abs(smaller)};
}

struct LemmaScanReport {
  LemmaId lemma_id;
  double domain_lo;
  double domain_hi;
  std::size_t grid_points;      ///< requested resolution
  std::size_t evaluated;        ///< points actually evaluated
  double min_margin;
  double argmin;                ///< scan variable at the minimum (x for ThreeMeans)
  std::optional<double> argmin_y; ///< y coordinate, ThreeMeans only
  double scale_at_min;
  bool holds; ///< every point satisfied margin >= -1e-12 * scale
};

namespace detail {

inline std::vector<double> scan_grid(double lo, double hi, std::size_t n, bool log_spaced) {
  std::vector<double> g(n);
  const double denom = static_cast<double>(n - 1);
  if (log_spaced) {
    const double span = std::log(hi / lo);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = lo * std::exp(span * (static_cast<double>(i) / denom));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = lo + (hi - lo) * (static_cast<double>(i) / denom);
    }
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

} // namespace detail

/// Evaluates a lemma's margin over a grid of its domain.
///
/// LogBounds and ExpTLemma scan `grid_points` points of [lo, hi]; LogBounds
/// switches to a log-uniform grid when hi/lo > 10. ThreeMeans scans the square
/// [lo, hi]^2 on a k-by-k grid with k = ceil(sqrt(grid_points)), skipping the
/// diagonal so that the reported minimum reflects the strict inequalities.
inline LemmaScanReport scan_lemma(LemmaId id, double lo, double hi, std::size_t grid_points) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InputError("scan_lemma: domain must satisfy lo < hi, both finite");
  }
  if (grid_points < 2) {
    throw InputError("scan_lemma: at least two grid points are required");
  }
  if (id == LemmaId::LogBounds && lo < 1.0) {
    throw InputError("scan_lemma: LogBounds requires lo >= 1");
  }
  if ((id == LemmaId::ExpTLemma || id == LemmaId::ThreeMeans) && !(lo > 0.0)) {
    throw InputError("scan_lemma: domain must be positive");
  }

  LemmaScanReport rep{id, lo, hi, grid_points, 0, 0.0, lo, std::nullopt, 1.0, true};
  bool first = true;
  auto visit = [&](const LemmaMargin& m, double x, std::optional<double> y) {
    ++rep.evaluated;
    if (m.margin < -tolerance::lemma * m.scale) {
      rep.holds = false;
    }
    if (first || m.margin < rep.min_margin) {
      first = false;
      rep.min_margin = m.margin;
      rep.argmin = x;
      rep.argmin_y = y;
      rep.scale_at_min = m.scale;
    }
  };

  switch (id) {
  case LemmaId::LogBounds: {
    for (double x : detail::scan_grid(lo, hi, grid_points, hi / lo > 10.0)) {
      visit(log_bounds_margin(x), x, std::nullopt);
    }
    break;
  }
  case LemmaId::ExpTLemma: {
    for (double t : detail::scan_grid(lo, hi, grid_points, false)) {
      visit(exp_t_margin(t), t, std::nullopt);
    }
    break;
  }
  case LemmaId::ThreeMeans: {
    const auto k = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(grid_points)))));
    const auto g = detail::scan_grid(lo, hi, k, false);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j) {
          visit(three_means_margin(g[i], g[j]), g[i], g[j]);
        }
      }
    }
    break;
  }
  }
  return rep;
}

} // namespace youngref
