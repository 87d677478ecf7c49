// youngref: command-line front end.
//
// Exit codes: 0 every inequality holds / no counterexample,
//             1 an inequality is violated / a counterexample candidate survived,
//             2 bad input, unreadable file, or unmet hypotheses.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <youngref/report.hpp>
#include <youngref/youngref.hpp>

namespace {

using namespace youngref;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;

enum class Format { Text, Machine };

void emit(Format f, const report::ordered_json& j, const std::string& text) {
  if (f == Format::Machine) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
  }
}

std::vector<double> parse_number_list(const std::string& s, std::size_t expected,
                                      const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": '" + item + "' is not a number");
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw InputError(std::string(what) + ": '" + item + "' is not a finite number");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw InputError(std::string(what) + ": expected " + std::to_string(expected) +
                     " comma-separated numbers");
  }
  return out;
}

struct SpechtArgs {
  double h = 0.0;
};

struct BoundsArgs {
  double a = 0.0;
  double b = 0.0;
  double nu = 0.0;
  double tol = tolerance::inequality;
};

struct VerifyArgs {
  std::string a_path;
  std::string b_path;
  double nu = 0.5;
  std::string mode = "mult";
  double tol = default_loewner_tol;
  std::string bounds;
};

struct SearchArgs {
  long long n = 3;
  long long samples = 100000;
  long long restarts = 10;
  long long descent_iters = 200;
  unsigned long long seed = 42;
  std::string box = "0.1,10";
  unsigned threads = 0;
};

struct ScanArgs {
  long long grid = 100000;
  double max = 100.0;
};

int run_specht(const SpechtArgs& args) {
  std::printf("%.15g\n", specht_ratio(args.h));
  return exit_ok;
}

int run_bounds(const BoundsArgs& args, Format f) {
  const WeightedPair p(args.a, args.b, args.nu);
  const ScalarBounds s = compute_scalar_bounds(p);
  const auto cs = evaluate_scalar_chain(p, args.tol);
  emit(f, report::bounds_json(p, s, cs), report::bounds_text(p, s, cs));
  return all_hold(cs) ? exit_ok : exit_violation;
}

int run_verify(const VerifyArgs& args, Format f) {
  const SpdMatrix a(to_sym_matrix(read_matrix_file(args.a_path)));
  const SpdMatrix b(to_sym_matrix(read_matrix_file(args.b_path)));
  ChainReport rep;
  if (args.mode == "mult") {
    std::optional<SpectralBounds> user;
    if (!args.bounds.empty()) {
      const auto v = parse_number_list(args.bounds, 4, "--bounds");
      user = validate_bounds(a, b, v[0], v[1], v[2], v[3]);
    }
    rep = verify_mult_chain(a, b, args.nu, args.tol, user);
  } else if (args.mode == "add") {
    rep = verify_add_chain(a, b, args.nu, args.tol);
  } else {
    rep = verify_classic_chain(a, b, args.nu, args.tol);
  }
  emit(f, report::to_json(rep), report::chain_text(rep));
  return rep.passed() ? exit_ok : exit_violation;
}

int run_search(const SearchArgs& args, Format f) {
  if (args.n < 2 || args.samples < 0 || args.restarts < 0 || args.descent_iters < 1) {
    throw InputError("search: require n >= 2, samples >= 0, restarts >= 0, descent-iters >= 1");
  }
  const auto box = parse_number_list(args.box, 2, "--box");
  SearchConfig c;
  c.n = static_cast<std::size_t>(args.n);
  c.box_lo = box[0];
  c.box_hi = box[1];
  c.samples = static_cast<std::size_t>(args.samples);
  c.restarts = static_cast<std::size_t>(args.restarts);
  c.descent_iters = static_cast<std::size_t>(args.descent_iters);
  c.seed = args.seed;
  c.threads = args.threads;
  const Certification cert = certify(c);
  emit(f, report::to_json(cert), report::certification_text(cert));
  return cert.candidate ? exit_violation : exit_ok;
}

int run_scan(const ScanArgs& args, Format f) {
  if (args.grid < 2) {
    throw InputError("scan-lemmas: --grid must be at least 2");
  }
  if (!(args.max > 1.0) || !std::isfinite(args.max)) {
    throw InputError("scan-lemmas: --max must be a finite number greater than 1");
  }
  const auto n = static_cast<std::size_t>(args.grid);
  const std::vector<LemmaScanReport> reps = {
      scan_lemma(LemmaId::LogBounds, 1.0, args.max, n),
      scan_lemma(LemmaId::ThreeMeans, 1.0, args.max, n),
      scan_lemma(LemmaId::ExpTLemma, args.max / static_cast<double>(n), args.max, n),
  };
  report::ordered_json j = report::ordered_json::array();
  bool ok = true;
  for (const auto& r : reps) {
    j.push_back(report::to_json(r));
    ok = ok && r.holds;
  }
  emit(f, j, report::lemma_text(reps));
  return ok ? exit_ok : exit_violation;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specht-ratio refinements of the Young inequality: bounds, operator chains, "
               "lemma scans and counterexample search"};
  app.require_subcommand(1);

  Format format = Format::Text;
  const std::map<std::string, Format> formats{{"text", Format::Text},
                                              {"machine", Format::Machine}};
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: text or machine")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->option_text("text|machine");
  };

  SpechtArgs specht_args;
  auto* specht = app.add_subcommand("specht", "Print Specht's ratio S(h)");
  specht->add_option("ratio", specht_args.h, "Positive ratio h")->required();

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "Scalar means, refined bounds and their chain");
  bounds->add_option("--a", bounds_args.a, "First positive scalar")->required();
  bounds->add_option("--b", bounds_args.b, "Second positive scalar")->required();
  bounds->add_option("--nu", bounds_args.nu, "Weight in [0, 1]")->required();
  bounds->add_option("--tol", bounds_args.tol, "Relative slack")->capture_default_str();
  add_format(bounds);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify-op", "Verify an operator chain in the Loewner order");
  verify->add_option("--a", verify_args.a_path, "Matrix document for A")->required();
  verify->add_option("--b", verify_args.b_path, "Matrix document for B")->required();
  verify->add_option("--nu", verify_args.nu, "Weight in [0, 1]")->required();
  verify->add_option("--mode", verify_args.mode, "Chain: mult, add or classic")
      ->check(CLI::IsMember({"mult", "add", "classic"}))
      ->capture_default_str();
  verify->add_option("--tol", verify_args.tol, "Loewner tolerance")->capture_default_str();
  verify->add_option("--bounds", verify_args.bounds,
                     "Spectral bounds m',m,M,M' (mult mode; default: derived from spectra)");
  add_format(verify);

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Search for counterexamples to the n-variable "
                                              "multiplicative refinement");
  search->add_option("--n", search_args.n, "Number of variables")->capture_default_str();
  search->add_option("--samples", search_args.samples, "Random samples")->capture_default_str();
  search->add_option("--restarts", search_args.restarts, "Descent runs")->capture_default_str();
  search->add_option("--descent-iters", search_args.descent_iters, "Sweeps per descent")
      ->capture_default_str();
  search->add_option("--seed", search_args.seed, "Seed")->capture_default_str();
  search->add_option("--box", search_args.box, "Box lo,hi")->capture_default_str();
  search->add_option("--threads", search_args.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  add_format(search);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan-lemmas", "Grid-check the supporting lemmas");
  scan->add_option("--grid", scan_args.grid, "Grid points per lemma")->capture_default_str();
  scan->add_option("--max", scan_args.max, "Upper end of the scanned domains")
      ->capture_default_str();
  add_format(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }

  try {
    if (specht->parsed()) {
      return run_specht(specht_args);
    }
    if (bounds->parsed()) {
      return run_bounds(bounds_args, format);
    }
    if (verify->parsed()) {
      return run_verify(verify_args, format);
    }
    if (search->parsed()) {
      return run_search(search_args, format);
    }
    return run_scan(scan_args, format);
  } catch (const youngref::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
}
