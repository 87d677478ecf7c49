#pragma once

// Human-readable tables and machine-readable (JSON) documents for every
// result type. Machine documents are deterministic: keys are emitted in a
// fixed order and numbers in their shortest round-trip form.

#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "conjecture_search.hpp"
#include "operator_inequalities.hpp"
#include "scalar_core.hpp"
#include "spd_linalg.hpp"

namespace youngref::report {

using ordered_json = nlohmann::ordered_json;

inline std::string printf_string(const char* fmt, auto... args) {
  const int n = std::snprintf(nullptr, 0, fmt, args...);
  std::string s(static_cast<std::size_t>(n), '\0');
  std::snprintf(s.data(), s.size() + 1, fmt, args...);
  return s;
}

inline std::string g15(double v) { return printf_string("%.15g", v); }

inline const char* yes_no(bool b) { return b ? "yes" : "NO"; }

// ---------------------------------------------------------------------------
// scalar bounds

inline ordered_json to_json(const BoundComparison& c) {
  return {{"kind", to_string(c.kind)}, {"relation", c.relation}, {"lhs", c.lhs},
          {"rhs", c.rhs},              {"gap", c.gap},           {"holds", c.holds}};
}

inline ordered_json bounds_json(const WeightedPair& p, const ScalarBounds& s,
                                std::span<const BoundComparison> cs) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : cs) {
    comps.push_back(to_json(c));
  }
  return {{"a", p.a()},
          {"b", p.b()},
          {"nu", p.nu()},
          {"r", p.r()},
          {"bounds",
           {{"arithmetic", s.arithmetic},
            {"geometric", s.geometric},
            {"harmonic", s.harmonic},
            {"mult_refined", s.mult_refined},
            {"add_refined", s.add_refined},
            {"reverse_young", s.reverse_young},
            {"harmonic_refined", s.harmonic_refined}}},
          {"comparisons", comps},
          {"all_hold", all_hold(cs)}};
}

inline std::string bounds_text(const WeightedPair& p, const ScalarBounds& s,
                               std::span<const BoundComparison> cs) {
  std::string out = printf_string("a = %.15g, b = %.15g, nu = %.15g, r = %.15g\n\n", p.a(), p.b(),
                                  p.nu(), p.r());
  const std::pair<const char*, double> rows[] = {
      {"arithmetic", s.arithmetic},       {"geometric", s.geometric},
      {"harmonic", s.harmonic},           {"mult_refined", s.mult_refined},
      {"add_refined", s.add_refined},     {"reverse_young", s.reverse_young},
      {"harmonic_refined", s.harmonic_refined}};
  for (const auto& [name, v] : rows) {
    out += printf_string("  %-18s %.15g\n", name, v);
  }
  out += "\n";
  out += printf_string("  %-32s %-12s %s\n", "comparison", "gap", "holds");
  for (const auto& c : cs) {
    out += printf_string("  %-32s %-12.4e %s\n", c.relation.c_str(), c.gap, yes_no(c.holds));
  }
  return out;
}

// ---------------------------------------------------------------------------
// operator chains

inline ordered_json to_json(const SpectralBounds& b) {
  return {{"condition", b.condition == SeparationCondition::AUnderB ? "A<B" : "B<A"},
          {"m_prime", b.m_prime},
          {"m", b.m},
          {"M", b.big_m},
          {"M_prime", b.big_m_prime},
          {"h", b.h},
          {"h_prime", b.h_prime}};
}

inline ordered_json to_json(const ChainReport& r) {
  ordered_json links = ordered_json::array();
  for (const auto& l : r.links) {
    links.push_back({{"name", l.name}, {"min_eig_gap", l.min_eig_gap}, {"holds", l.holds}});
  }
  ordered_json j = {{"chain", to_string(r.chain_kind)},
                    {"specht_factor", r.specht_factor},
                    {"links", links},
                    {"passed", r.passed()}};
  if (r.bounds) {
    j["bounds"] = to_json(*r.bounds);
  }
  return j;
}

inline std::string chain_text(const ChainReport& r) {
  std::string out = printf_string("%s\n", std::string(to_string(r.chain_kind)).c_str());
  if (r.bounds) {
    const auto& b = *r.bounds;
    out += printf_string("  bounds (%s): m' = %.15g, m = %.15g, M = %.15g, M' = %.15g\n",
                         b.condition == SeparationCondition::AUnderB ? "A below B" : "B below A",
                         b.m_prime, b.m, b.big_m, b.big_m_prime);
    out += printf_string("  h = %.15g, h' = %.15g\n", b.h, b.h_prime);
  }
  if (r.chain_kind == ChainKind::MultChain) {
    out += printf_string("  S(h^r) = %.15g\n", r.specht_factor);
  }
  out += printf_string("\n  %-40s %-14s %s\n", "link", "min_eig_gap", "holds");
  for (const auto& l : r.links) {
    out += printf_string("  %-40s %-14.6e %s\n", l.name.c_str(), l.min_eig_gap, yes_no(l.holds));
  }
  out += printf_string("\n  %s\n", r.passed() ? "all links hold" : "VIOLATION");
  return out;
}

// ---------------------------------------------------------------------------
// lemma scans

inline ordered_json to_json(const LemmaScanReport& r) {
  ordered_json j = {{"lemma", to_string(r.lemma_id)},
                    {"domain_lo", r.domain_lo},
                    {"domain_hi", r.domain_hi},
                    {"grid_points", r.grid_points},
                    {"evaluated", r.evaluated},
                    {"min_margin", r.min_margin},
                    {"argmin", r.argmin}};
  if (r.argmin_y) {
    j["argmin_y"] = *r.argmin_y;
  }
  j["holds"] = r.holds;
  return j;
}

inline std::string lemma_text(std::span<const LemmaScanReport> rs) {
  std::string out = printf_string("  %-11s %-22s %-10s %-14s %-24s %s\n", "lemma", "domain",
                                  "points", "min_margin", "argmin", "holds");
  for (const auto& r : rs) {
    const std::string dom = printf_string("[%.6g, %.6g]", r.domain_lo, r.domain_hi);
    const std::string arg = r.argmin_y ? printf_string("(%.6g, %.6g)", r.argmin, *r.argmin_y)
                                       : printf_string("%.6g", r.argmin);
    out += printf_string("  %-11s %-22s %-10zu %-14.6e %-24s %s\n",
                         std::string(to_string(r.lemma_id)).c_str(), dom.c_str(), r.evaluated,
                         r.min_margin, arg.c_str(), yes_no(r.holds));
  }
  return out;
}

// ---------------------------------------------------------------------------
// conjecture search

inline ordered_json to_json(const GapSample& s) {
  return {{"points", s.points},
          {"weights", std::vector<double>(s.weights.values().begin(), s.weights.values().end())},
          {"h", s.h},
          {"r", s.r},
          {"arith", s.arith},
          {"refined", s.refined},
          {"gap", s.gap}};
}

inline ordered_json to_json(const Certification& c) {
  const auto& r = c.result;
  ordered_json j = {{"n", c.config.n},
                    {"box", {c.config.box_lo, c.config.box_hi}},
                    {"seed", c.config.seed},
                    {"samples", c.config.samples},
                    {"restarts", c.config.restarts},
                    {"descent_iters", c.config.descent_iters},
                    {"total_evaluated", r.total_evaluated},
                    {"corner_probes", r.corner_probes},
                    {"descent_evaluations", r.descent_evaluations},
                    {"min_gap", r.min_gap},
                    {"argmin", to_json(r.argmin)},
                    {"negatives_found", r.negatives_found}};
  if (c.recheck_gap) {
    j["recheck_gap"] = *c.recheck_gap;
  }
  j["candidate"] = c.candidate;
  j["verdict"] = c.verdict();
  return j;
}

inline std::string vector_text(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? ", " : "") + printf_string("%.17g", v[i]);
  }
  return s + ")";
}

inline std::string certification_text(const Certification& c) {
  const auto& r = c.result;
  std::string out;
  out += printf_string("n                 %zu\n", c.config.n);
  out += printf_string("box               [%.15g, %.15g]\n", c.config.box_lo, c.config.box_hi);
  out += printf_string("seed              %llu\n", static_cast<unsigned long long>(c.config.seed));
  out += printf_string("total_evaluated   %zu (corners %zu, samples %zu, descent %zu)\n",
                       r.total_evaluated, r.corner_probes, r.sampled, r.descent_evaluations);
  out += printf_string("min_gap           %.17g\n", r.min_gap);
  out += "argmin points     " + vector_text(r.argmin.points) + "\n";
  out += "argmin weights    " + vector_text(r.argmin.weights.values()) + "\n";
  out += printf_string("argmin h, r       %.17g, %.17g\n", r.argmin.h, r.argmin.r);
  out += printf_string("negatives_found   %zu\n", r.negatives_found);
  if (c.recheck_gap) {
    out += printf_string("recheck_gap       %.17g (extended precision, compensated)\n",
                         *c.recheck_gap);
  }
  out += printf_string("verdict           %s\n", std::string(c.verdict()).c_str());
  if (c.candidate) {
    out += "                  negative gap survived the recheck; confirm in high precision\n";
  }
  return out;
}

} // namespace youngref::report
