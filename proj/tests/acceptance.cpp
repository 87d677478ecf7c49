// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is 0 only if every criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <youngref/report.hpp>
#include <youngref/youngref.hpp>

namespace {

using namespace youngref;
using report::printf_string;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

/// Accumulates named checks; the first failure is kept for the report line.
class Checks {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) {
      first_failure_ = what;
    }
    ok_ = ok_ && ok;
  }
  Outcome outcome(std::string detail) const {
    return {ok_, ok_ ? std::move(detail) : "failed: " + first_failure_};
  }

private:
  bool ok_ = true;
  std::string first_failure_;
};

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), std::numeric_limits<double>::min());
}

// ---------------------------------------------------------------------------

Outcome specht_suite() {
  Checks c;
  c.expect(specht_ratio(1.0) == 1.0, "S(1) == 1");

  double worst_sym = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double h = std::pow(10.0, -8.0 + 16.0 * i / (n - 1));
    const double s = specht_ratio(h);
    worst_sym = std::max(worst_sym, std::abs(s - specht_ratio(1.0 / h)) / s);
    c.expect(s >= 1.0, "S(h) >= 1");
  }
  c.expect(worst_sym <= 1e-12, printf_string("symmetry %.3e", worst_sym));

  double prev_up = 1.0;
  double prev_down = std::numeric_limits<double>::infinity();
  bool mono = true;
  for (int i = 1; i <= n; ++i) {
    const double up = specht_ratio(std::pow(10.0, 8.0 * i / n));
    const double down = specht_ratio(std::pow(10.0, -8.0 + 8.0 * (i - 1) / n));
    mono = mono && up >= prev_up && down <= prev_down;
    prev_up = up;
    prev_down = down;
  }
  c.expect(mono, "monotonicity");

  double worst_branch = 0.0;
  for (double x : {specht_taylor_threshold, -specht_taylor_threshold}) {
    const double d = specht_ratio_direct(1.0 + x);
    worst_branch = std::max(worst_branch, std::abs(d - specht_ratio_taylor(1.0 + x)) / d);
  }
  c.expect(worst_branch <= 1e-12, printf_string("branch mismatch %.3e", worst_branch));
  return c.outcome(printf_string("symmetry max rel %.2e, branch max rel %.2e, monotone on 2x%d",
                                 worst_sym, worst_branch, n));
}

Outcome scalar_chain_suite() {
  Rng rng = seeded_rng(20240601);
  const int n = 1000000;
  long violations = 0;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const WeightedPair p(log_uniform(rng, 1e-6, 1e6), log_uniform(rng, 1e-6, 1e6),
                         uniform01(rng));
    for (const auto& cmp : evaluate_scalar_chain(p, tolerance::inequality)) {
      violations += !cmp.holds;
      worst = std::min(worst, cmp.gap / (1 + std::abs(cmp.lhs) + std::abs(cmp.rhs)));
    }
  }
  Checks c;
  c.expect(violations == 0, std::to_string(violations) + " violations");
  return c.outcome(printf_string("%d pairs x 7 comparisons, 0 violations, worst scaled gap %.2e",
                                 n, worst));
}

Outcome lemma_suite() {
  Checks c;
  const std::size_t n = 100000;
  const auto log_bounds = scan_lemma(LemmaId::LogBounds, 1.0, 100.0, n);
  const auto three = scan_lemma(LemmaId::ThreeMeans, 0.5, 8.0, n);
  const auto exp_t = scan_lemma(LemmaId::ExpTLemma, 100.0 / static_cast<double>(n), 100.0, n);
  for (const auto* r : {&log_bounds, &three, &exp_t}) {
    c.expect(r->holds && r->min_margin >= -tolerance::lemma * r->scale_at_min,
             std::string(to_string(r->lemma_id)));
  }
  c.expect(log_bounds_margin(1.0).margin == 0.0, "LogBounds at x = 1");
  c.expect(exp_t_margin(1.0).margin == 0.0, "ExpTLemma at t = 1");
  c.expect(three_means_margin(2.0, 2.0).margin == 0.0, "ThreeMeans on diagonal");
  c.expect(log_bounds.argmin == 1.0, "LogBounds argmin");
  return c.outcome(printf_string("min margins: LogBounds %.2e, ThreeMeans %.2e, ExpT %.2e",
                                 log_bounds.min_margin, three.min_margin, exp_t.min_margin));
}

Outcome jensen_suite() {
  Checks c;
  Rng rng = seeded_rng(8);
  const int n = 100000;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = 2 + static_cast<std::size_t>(i % 5);
    std::vector<double> a(k), raw(k);
    for (std::size_t j = 0; j < k; ++j) {
      a[j] = log_uniform(rng, 1e-3, 1e3);
      raw[j] = standard_exponential(rng);
    }
    const auto p = SimplexWeights::normalized(raw, 1e-12);
    const auto g = weighted_jensen_gap(a, p.values());
    double scale = 1.0;
    for (double x : a) {
      scale += x;
    }
    const double slack = tolerance::inequality * scale;
    worst = std::min(worst, std::min(g.lhs_gap - g.rhs_gap, g.rhs_gap) / scale);
    c.expect(g.lhs_gap >= g.rhs_gap - slack && g.rhs_gap >= -slack, "lhs >= rhs >= 0");
  }
  for (double v : {0.01, 1.0, 3.7, 500.0}) {
    const std::vector<double> a(4, v);
    const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
    const auto g = weighted_jensen_gap(a, p);
    c.expect(std::abs(g.lhs_gap) <= 1e-12 * (1 + v) && std::abs(g.rhs_gap) <= 1e-12 * (1 + v),
             "equality case");
  }
  Rng rng2 = seeded_rng(9);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> a{log_uniform(rng2, 1e-3, 1e3), log_uniform(rng2, 1e-3, 1e3)};
    const std::vector<double> p{0.5, 0.5};
    const auto g = weighted_jensen_gap(a, p);
    c.expect(std::abs(g.lhs_gap - g.rhs_gap) <= 1e-12 * (1 + a[0] + a[1]), "n = 2 equal weights");
  }
  return c.outcome(printf_string("%d instances, worst scaled margin %.2e", n, worst));
}

struct InstanceResult {
  bool mult = true;
  bool add = true;
  bool classic = true;
};

Outcome operator_suite() {
  Checks c;
  const std::size_t n = 1000;
  auto separated = parallel_map(n, 0, [](std::size_t i) {
    Rng rng = substream(501, i);
    const std::size_t dim = 2 + i % 5;
    const SpdMatrix a = random_spd_with_spectrum(dim, 1, 2, rng());
    const SpdMatrix b = random_spd_with_spectrum(dim, 3, 6, rng());
    return verify_mult_chain(a, b, uniform01(rng), default_loewner_tol).passed();
  });
  std::size_t mult_pass = 0;
  for (bool b : separated) {
    mult_pass += b;
  }
  c.expect(mult_pass == n, std::to_string(mult_pass) + " mult chains pass");

  auto free_pairs = parallel_map(n, 0, [](std::size_t i) {
    Rng rng = substream(502, i);
    const std::size_t dim = 2 + i % 5;
    auto draw = [&] {
      const double lo = log_uniform(rng, 1e-2, 1.0);
      return random_spd_with_spectrum(dim, lo, lo * log_uniform(rng, 1.0, 1e3), rng());
    };
    const SpdMatrix a = draw();
    const SpdMatrix b = draw();
    const double nu = uniform01(rng);
    InstanceResult r;
    r.add = verify_add_chain(a, b, nu, default_loewner_tol).passed();
    r.classic = verify_classic_chain(a, b, nu, default_loewner_tol).passed();
    return r;
  });
  std::size_t add_pass = 0;
  std::size_t classic_pass = 0;
  for (const auto& r : free_pairs) {
    add_pass += r.add;
    classic_pass += r.classic;
  }
  c.expect(add_pass == n, std::to_string(add_pass) + " add chains pass");
  c.expect(classic_pass == n, std::to_string(classic_pass) + " classic chains pass");

  Rng rng = seeded_rng(503);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 5);
    std::vector<double> da(dim), db(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      da[k] = log_uniform(rng, 0.1, 10);
      db[k] = log_uniform(rng, 0.1, 10);
    }
    const double nu = uniform01(rng);
    const SpdMatrix a = SpdMatrix::diagonal(da);
    const SpdMatrix b = SpdMatrix::diagonal(db);
    const Matrix g = power_mean(a, b, nu).matrix();
    const Matrix ar = weighted_arith(a, b, nu).matrix();
    const Matrix hm = weighted_harm(a, b, nu).matrix();
    for (std::size_t k = 0; k < dim; ++k) {
      const WeightedPair p(da[k], db[k], nu);
      worst = std::max({worst, rel(g(k, k), geometric_mean(p)), rel(ar(k, k), arithmetic_mean(p)),
                        rel(hm(k, k), harmonic_mean(p))});
    }
  }
  c.expect(worst <= 1e-12, printf_string("commuting oracle %.2e", worst));
  return c.outcome(printf_string("mult %zu/%zu, add %zu/%zu, classic %zu/%zu, diagonal oracle "
                                 "max rel %.2e",
                                 mult_pass, n, add_pass, n, classic_pass, n, worst));
}

Outcome linalg_suite() {
  Checks c;
  Rng rng = seeded_rng(601);
  double worst_recon = 0.0;
  double worst_orth = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 7);
    const SymMatrix a = random_symmetric(dim, rng);
    const auto d = sym_eigen(a);
    const double scale = 1.0 + a.matrix().max_abs();
    worst_recon = std::max(worst_recon, max_abs_diff(d.reconstruct(), a.matrix()) / scale);
    worst_orth = std::max(worst_orth, max_abs_diff(d.q.transposed() * d.q, Matrix::identity(dim)));
  }
  c.expect(worst_recon <= 1e-11, printf_string("reconstruction %.2e", worst_recon));
  c.expect(worst_orth <= 1e-11, printf_string("orthogonality %.2e", worst_orth));

  double worst_end = 0.0;
  double worst_sym = 0.0;
  double worst_cong = 0.0;
  for (int i = 0; i < 300; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 5);
    const SpdMatrix a = random_spd_with_spectrum(dim, 0.2, 5.0, rng());
    const SpdMatrix b = random_spd_with_spectrum(dim, 0.2, 5.0, rng());
    const double nu = uniform01(rng);
    auto reldiff = [](const Matrix& x, const Matrix& y) {
      return max_abs_diff(x, y) / std::max(x.max_abs(), y.max_abs());
    };
    worst_end = std::max({worst_end, reldiff(power_mean(a, b, 0.0).matrix(), a.matrix()),
                          reldiff(power_mean(a, b, 1.0).matrix(), b.matrix()),
                          reldiff(power_mean(a, b, 1e-14).matrix(), a.matrix()),
                          reldiff(power_mean(a, b, 1 - 1e-14).matrix(), b.matrix())});
    worst_sym = std::max(worst_sym, reldiff(power_mean(a, b, nu).matrix(),
                                            power_mean(b, a, 1 - nu).matrix()));
    Matrix t = random_orthogonal(dim, rng);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t k = 0; k < dim; ++k) {
        t(r, k) *= 0.5 + static_cast<double>(k) / static_cast<double>(dim);
      }
    }
    const Matrix lhs = t * power_mean(a, b, 0.5).matrix() * t.transposed();
    const Matrix rhs = power_mean(SpdMatrix(t * a.matrix() * t.transposed()),
                                  SpdMatrix(t * b.matrix() * t.transposed()), 0.5)
                           .matrix();
    worst_cong = std::max(worst_cong, reldiff(lhs, rhs));
  }
  c.expect(worst_end <= 1e-9, printf_string("endpoints %.2e", worst_end));
  c.expect(worst_sym <= 1e-9, printf_string("reflection %.2e", worst_sym));
  c.expect(worst_cong <= 1e-9, printf_string("congruence %.2e", worst_cong));
  return c.outcome(printf_string("recon %.1e, orth %.1e, endpoints %.1e, reflection %.1e, "
                                 "congruence %.1e",
                                 worst_recon, worst_orth, worst_end, worst_sym, worst_cong));
}

Outcome conjecture_suite() {
  Checks c;
  SearchConfig cfg;
  cfg.n = 3;
  cfg.box_lo = 0.1;
  cfg.box_hi = 10.0;
  cfg.samples = 1000000;
  cfg.restarts = 100;
  cfg.descent_iters = 200;
  cfg.seed = 42;
  const Certification cert = certify(cfg);
  const auto& r = cert.result;
  const int exit_code = cert.candidate ? 1 : 0;
  c.expect(r.negatives_found == 0, std::to_string(r.negatives_found) + " negatives");
  c.expect(r.min_gap >= -search_defaults::negative_rel * r.argmin.scale(), "min_gap");
  c.expect(exit_code == 0, "CANDIDATE COUNTEREXAMPLE (exit 1)");

  Rng rng = seeded_rng(77);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double a = log_uniform(rng, 0.1, 10);
    const double b = log_uniform(rng, 0.1, 10);
    const double nu = uniform(rng, 1e-9, 1 - 1e-9);
    const WeightedPair p(a, b, nu);
    const auto s = gap({a, b}, SimplexWeights({1 - nu, nu}));
    const double ref = arithmetic_mean(p) - mult_refined_lower_bound(p);
    worst = std::max(worst, std::abs(s.gap - ref) / (1 + arithmetic_mean(p)));
  }
  c.expect(worst <= 1e-12, printf_string("n = 2 reduction %.2e", worst));
  return c.outcome(printf_string("%zu evaluated, min_gap %.6e at h = %.4g, r = %.4g; "
                                 "negatives 0; n = 2 agreement %.1e",
                                 r.total_evaluated, r.min_gap, r.argmin.h, r.argmin.r, worst));
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(YOUNGREF_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) {
    return {-1, ""};
  }
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) {
    out.append(buf, n);
  }
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string(YOUNGREF_FIXTURES) + "/" + name; }

Outcome cli_suite() {
  Checks c;
  const std::string pair = " --a " + fixture("diag_1_2.json") + " --b " + fixture("diag_4_8.json");
  const std::string same = " --a " + fixture("sym_2_1.json") + " --b " + fixture("sym_2_1.json");
  struct Case {
    std::string args;
    int expected;
  };
  const std::vector<Case> cases = {
      {"specht 2", 0},
      {"specht -1", 2},
      {"bounds --a 1 --b 4 --nu 0.25", 0},
      {"bounds --a 5 --b 5 --nu 0.5", 0},
      {"bounds --a 0 --b 1 --nu 0.5", 2},
      {"verify-op" + pair + " --nu 0.5 --mode mult", 0},
      {"verify-op" + same + " --nu 0.3 --mode add", 0},
      {"verify-op --a " + fixture("diag_1_5.json") + " --b " + fixture("diag_4_8.json") +
           " --nu 0.5 --mode mult",
       2},
      {"verify-op --a " + fixture("asymmetric.json") + " --b " + fixture("diag_4_8.json") +
           " --nu 0.5 --mode add",
       2},
      // Zero slack on an instance whose first link is an exact identity:
      // the rounding residue is reported as a violation.
      {"verify-op" + same + " --nu 0.3 --mode classic --tol 1e-300", 1},
      {"search --n 2 --samples 100000 --seed 1 --box 0.1,10", 0},
      {"search --n 1", 2},
      {"scan-lemmas --grid 100000 --max 100", 0},
      {"scan-lemmas --grid 2 --max 1.000001", 0},
      {"scan-lemmas --grid 1 --max 10", 2},
  };
  bool seen[3] = {false, false, false};
  for (const auto& k : cases) {
    const int code = run_cli(k.args).code;
    c.expect(code == k.expected, k.args + " -> " + std::to_string(code));
    if (code >= 0 && code <= 2) {
      seen[code] = true;
    }
  }
  c.expect(seen[0] && seen[1] && seen[2], "all three exit codes exercised");

  for (const char* name : {"canonical_3.json", "diag_1_2.json", "sym_2_1.json"}) {
    const std::string text = read_text_file(fixture(name));
    c.expect(write_matrix_document(parse_matrix_document(text)) == text,
             std::string("round trip ") + name);
  }

  for (const std::string& args :
       {std::string("search --n 3 --samples 50000 --restarts 5 --seed 7 --format machine"),
        std::string("bounds --a 3 --b 0.2 --nu 0.7 --format machine"),
        "verify-op" + pair + " --nu 0.3 --mode mult --format machine",
        std::string("scan-lemmas --grid 1000 --max 50 --format machine")}) {
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    c.expect(a.code == 0 && !a.out.empty() && a.out == b.out, "byte-identical: " + args);
  }
  return c.outcome(printf_string("%zu exit-code cases, 3 round trips, 4 stable machine reports",
                                 cases.size()));
}

} // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Specht function suite", 1.0, specht_suite},
      {2, "Scalar chain suite", 10.0, scalar_chain_suite},
      {3, "Lemma scans", 2.0, lemma_suite},
      {4, "n-variable additive refinement", 5.0, jensen_suite},
      {5, "Operator chain suites", 60.0, operator_suite},
      {6, "Linear-algebra core", 10.0, linalg_suite},
      {7, "Conjecture experiment", 30.0, conjecture_suite},
      {8, "CLI contract", 60.0, cli_suite},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_budget = secs < cr.budget_seconds;
    const bool pass = o.pass && in_budget;
    failed += !pass;
    std::printf("[%s] %d. %s (%.2f s / budget %.0f s): %s%s\n", pass ? "PASS" : "FAIL", cr.id,
                cr.name, secs, cr.budget_seconds, o.detail.c_str(),
                in_budget ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
              criteria.size());
  return failed == 0 ? 0 : 1;
}
