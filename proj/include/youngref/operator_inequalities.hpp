#pragma once

// Loewner-order verification of the three operator Young chains: the
// classical chain, its additive refinement and its Specht-ratio
// (multiplicative) refinement.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "scalar_core.hpp"
#include "spd_linalg.hpp"

namespace youngref {

/// Loewner tolerance; looser than the scalar one because each link goes
/// through several eigendecompositions.
inline constexpr double default_loewner_tol = 1e-9;

enum class ChainKind { MultChain, AddChain, ClassicChain };

inline std::string_view to_string(ChainKind k) {
  switch (k) {
  case ChainKind::MultChain: return "MultChain";
  case ChainKind::AddChain: return "AddChain";
  case ChainKind::ClassicChain: return "ClassicChain";
  }
  return "?";
}

struct ChainLink {
  std::string name;
  double min_eig_gap;
  bool holds;
};

/// Links are listed from the top of the chain to the bottom.
struct ChainReport {
  ChainKind chain_kind;
  std::vector<ChainLink> links;
  double specht_factor = 1.0;
  std::optional<SpectralBounds> bounds;

  bool passed() const {
    return std::all_of(links.begin(), links.end(), [](const ChainLink& l) { return l.holds; });
  }
};

namespace detail {

inline void check_chain_args(const SpdMatrix& a, const SpdMatrix& b, double nu, double tol) {
  if (a.dim() != b.dim()) {
    throw InputError("operator chain: dimension mismatch");
  }
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw DomainError("operator chain: nu must lie in [0, 1]");
  }
  if (!(tol > 0.0)) {
    throw InputError("operator chain: tolerance must be positive");
  }
}

inline ChainLink link(std::string name, const Matrix& lhs, const Matrix& rhs, double tol) {
  const LoewnerResult r = loewner_geq(lhs, rhs, tol);
  return {std::move(name), r.min_eig_gap, r.holds};
}

inline double weight_r(double nu) { return std::min(nu, 1.0 - nu); }

/// A #_nu B + 2r ((A + B)/2 - A #_{1/2} B)
inline Matrix additive_refined_mean(const SpdMatrix& a, const SpdMatrix& b, double nu) {
  const double r = weight_r(nu);
  const Matrix mid = 0.5 * (a.matrix() + b.matrix()) - power_mean(a, b, 0.5).matrix();
  return power_mean(a, b, nu).matrix() + (2.0 * r) * mid;
}

} // namespace detail

/// S(h^r) for the given bounds and weight.
inline double specht_factor(const SpectralBounds& bounds, double nu) {
  return specht_ratio(std::pow(bounds.h, detail::weight_r(nu)));
}

/// (1-nu)A + nu B >= S(h^r) A#B >= A#B >= S(h^r) H >= H, H the weighted
/// harmonic mean. Needs spectrally separated A and B; h comes from the
/// tightest admissible bounds unless `user_bounds` is given, in which case
/// those are checked against the spectra and used instead.
inline ChainReport verify_mult_chain(const SpdMatrix& a, const SpdMatrix& b, double nu,
                                     double tol = default_loewner_tol,
                                     std::optional<SpectralBounds> user_bounds = std::nullopt) {
  detail::check_chain_args(a, b, nu, tol);
  const SpectralBounds bounds =
      user_bounds ? validate_bounds(a, b, user_bounds->m_prime, user_bounds->m,
                                    user_bounds->big_m, user_bounds->big_m_prime)
                  : spectral_bounds_from(a, b);
  const double s = specht_factor(bounds, nu);

  const Matrix arith = weighted_arith(a, b, nu).matrix();
  const Matrix geo = power_mean(a, b, nu).matrix();
  const Matrix harm = weighted_harm(a, b, nu).matrix();
  const Matrix s_geo = s * geo;
  const Matrix s_harm = s * harm;

  ChainReport rep{ChainKind::MultChain, {}, s, bounds};
  rep.links.push_back(detail::link("arith >= S(h^r) geo", arith, s_geo, tol));
  rep.links.push_back(detail::link("S(h^r) geo >= geo", s_geo, geo, tol));
  rep.links.push_back(detail::link("geo >= S(h^r) harm", geo, s_harm, tol));
  rep.links.push_back(detail::link("S(h^r) harm >= harm", s_harm, harm, tol));
  return rep;
}

/// (1-nu)A + nu B >= A#B + 2r((A+B)/2 - A#_{1/2}B) >= A#B
///   >= {A^{-1}#B^{-1} + 2r((A^{-1}+B^{-1})/2 - A^{-1}#_{1/2}B^{-1})}^{-1} >= H.
/// No spectral hypothesis.
inline ChainReport verify_add_chain(const SpdMatrix& a, const SpdMatrix& b, double nu,
                                    double tol = default_loewner_tol) {
  detail::check_chain_args(a, b, nu, tol);
  const Matrix arith = weighted_arith(a, b, nu).matrix();
  const Matrix geo = power_mean(a, b, nu).matrix();
  const Matrix harm = weighted_harm(a, b, nu).matrix();
  const Matrix upper = detail::additive_refined_mean(a, b, nu);
  const Matrix lower =
      inverse(SpdMatrix(detail::additive_refined_mean(inverse(a), inverse(b), nu))).matrix();

  ChainReport rep{ChainKind::AddChain, {}, 1.0, std::nullopt};
  rep.links.push_back(detail::link("arith >= geo + 2r(mid - geo_half)", arith, upper, tol));
  rep.links.push_back(detail::link("geo + 2r(mid - geo_half) >= geo", upper, geo, tol));
  rep.links.push_back(detail::link("geo >= inverse refined of inverses", geo, lower, tol));
  rep.links.push_back(detail::link("inverse refined of inverses >= harm", lower, harm, tol));
  return rep;
}

/// (1-nu)A + nu B >= A#B >= ((1-nu)A^{-1} + nu B^{-1})^{-1}
inline ChainReport verify_classic_chain(const SpdMatrix& a, const SpdMatrix& b, double nu,
                                        double tol = default_loewner_tol) {
  detail::check_chain_args(a, b, nu, tol);
  const Matrix arith = weighted_arith(a, b, nu).matrix();
  const Matrix geo = power_mean(a, b, nu).matrix();
  const Matrix harm = weighted_harm(a, b, nu).matrix();

  ChainReport rep{ChainKind::ClassicChain, {}, 1.0, std::nullopt};
  rep.links.push_back(detail::link("arith >= geo", arith, geo, tol));
  rep.links.push_back(detail::link("geo >= harm", geo, harm, tol));
  return rep;
}

struct RefinementComparison {
  double mult_minus_add_min_eig; ///< lambda_min(M - D)
  double add_minus_mult_min_eig; ///< lambda_min(D - M) = -lambda_max(M - D)
};

/// Extreme eigenvalues of the difference between the two refined lower
/// bounds M = S(h^r) A#B and D = A#B + 2r((A+B)/2 - A#_{1/2}B). Neither
/// refinement is assumed to dominate; the signs are data.
inline RefinementComparison compare_refinements(const SpdMatrix& a, const SpdMatrix& b, double nu) {
  detail::check_chain_args(a, b, nu, default_loewner_tol);
  const SpectralBounds bounds = spectral_bounds_from(a, b);
  const double s = specht_factor(bounds, nu);
  const Matrix mult = s * power_mean(a, b, nu).matrix();
  const Matrix add = detail::additive_refined_mean(a, b, nu);
  const auto eig = sym_eigen(SymMatrix((mult - add).symmetrized())).lambda;
  return {eig.front(), -eig.back()};
}

} // namespace youngref
