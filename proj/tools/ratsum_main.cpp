#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratsum/counting.hpp"
#include "ratsum/core.hpp"
#include "ratsum/envelopes.hpp"
#include "ratsum/expsum.hpp"
#include "ratsum/moments.hpp"
#include "ratsum/report.hpp"

namespace {

using namespace ratsum;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

std::vector<i64> parse_i64_list(const std::string& text, const std::string& what) {
  std::vector<i64> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      i64 value = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(value);
    } catch (const std::exception&) {
      raise(errc::schema_error, what + " entry \"" + item + "\" is not an integer");
    }
  }
  if (out.empty()) raise(errc::schema_error, what + " must not be empty");
  return out;
}

std::vector<u64> parse_u64_list(const std::string& text, const std::string& what) {
  std::vector<u64> out;
  for (i64 v : parse_i64_list(text, what)) {
    if (v < 0) raise(errc::schema_error, what + " entries must be nonnegative");
    out.push_back(static_cast<u64>(v));
  }
  return out;
}

std::vector<std::vector<i64>> parse_vector_list(const std::string& text, const std::string& what) {
  std::vector<std::vector<i64>> out;
  std::stringstream stream(text);
  std::string group;
  while (std::getline(stream, group, ';')) out.push_back(parse_i64_list(group, what));
  if (out.empty()) raise(errc::schema_error, what + " must not be empty");
  return out;
}

WeightSequence read_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open weights file " + path);
  WeightSequence weights;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double re = 0.0;
    double im = 0.0;
    int fields = std::sscanf(line.c_str(), "%lf,%lf", &re, &im);
    if (fields < 1)
      raise(errc::schema_error, "weights file line \"" + line + "\" is not \"re\" or \"re,im\"");
    weights.gamma.emplace_back(re, fields >= 2 ? im : 0.0);
  }
  return weights;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open output file " + out_path);
  out << text;
  if (!out) raise(errc::io_error, "failed to write " + out_path);
}

std::string format_complex(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi, |S|=%.12g", z.real(), z.imag(), std::abs(z));
  return buf;
}

int exit_code_for(errc code) {
  switch (code) {
    case errc::capacity_exceeded:
    case errc::work_budget_exceeded:
      return kExitBudget;
    case errc::io_error:
      return kExitIo;
    default:
      return kExitDomain;
  }
}

ShiftVector residue_shift_or_zero(const std::vector<i64>& raw, const FieldContext& ctx) {
  if (raw.empty()) {
    std::vector<i64> zero(static_cast<std::size_t>(ctx.d), 0);
    return make_shift_residue(zero, ctx);
  }
  return make_shift_residue(raw, ctx);
}

// ---- subcommand options ----

struct SumOptions {
  u64 p = 0;
  int d = 0;
  std::string coeffs;
  u64 N = 0;
  std::string weights_file;
};

struct CountOptions {
  std::string kind;
  u64 p = 0;
  int d = 0;
  int s = 1;
  u64 N = 0;
  std::string shift;
  std::string window;
  bool naive = false;
  std::string strategy = "auto";
  std::string cache_path;
};

struct MomentOptions {
  u64 p = 0;
  int d = 0;
  int s = 0;
  int rho = 0;
  u64 N = 0;
  std::string method = "count";
  u64 samples = 0;
  u64 seed = 0;
  bool seed_given = false;
  std::string format = "csv";
  std::string out_path;
};

struct RestrictedOptions {
  u64 p = 0;
  int d = 0;
  std::string kind;
  int exponent = 2;
  u64 N = 0;
  std::string offsets;
  u64 side = 0;
  std::string curve;
  std::string points;
  std::string method = "auto";
  u64 samples = 0;
  u64 seed = 0;
  std::string format = "csv";
  std::string out_path;
};

struct MaximalOptions {
  u64 p = 0;
  int d = 0;
  int k = 0;
  std::string perm;
  std::string fixed;
  u64 N = 0;
  u64 samples = 0;
  u64 seed = 0;
};

struct VerifyOptions {
  std::string grid_path;
  std::string format = "csv";
  std::string out_path;
};

int run_sum(const SumOptions& opt) {
  auto ctx = validate_context(opt.p, opt.d);
  auto coeffs = make_coefficients(parse_i64_list(opt.coeffs, "--coeffs"), ctx);
  Complex value;
  if (opt.weights_file.empty()) {
    value = exp_sum(coeffs, opt.N, ctx);
  } else {
    value = exp_sum_weighted(coeffs, read_weights_file(opt.weights_file), opt.N, ctx);
  }
  std::cout << format_complex(value) << '\n';
  return kExitOk;
}

// Loads a compatible cached distribution, or builds and stores one. The
// context carries (p, d); p is 0 for integer-domain caches.
PowerSumDistribution cached_distribution(const std::string& path, int s, u64 N, u64 p, int d,
                                         Domain domain, const FieldContext& ctx,
                                         const Budget& budget) {
  if (std::ifstream in(path, std::ios::binary); in) {
    PowerSumDistribution dist = PowerSumDistribution::load(in);
    if (dist.fold() != s || dist.range() != N || dist.context().p != p ||
        dist.context().d != d || dist.domain() != domain)
      raise(errc::schema_error, "cached distribution in " + path +
                                    " does not match the requested parameters");
    std::cerr << "loaded distribution cache " << path << '\n';
    return dist;
  }
  PowerSumDistribution dist = PowerSumDistribution::build(s, N, ctx, domain, budget);
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open cache file " + path);
  dist.save(out);
  std::cerr << "saved distribution cache " << path << '\n';
  return dist;
}

int run_count(const CountOptions& opt, const Budget& budget) {
  CountStrategy strategy = CountStrategy::automatic;
  if (opt.strategy == "direct") {
    strategy = CountStrategy::direct;
  } else if (opt.strategy == "halves") {
    strategy = CountStrategy::halves;
  } else if (opt.strategy != "auto") {
    raise(errc::schema_error, "--strategy must be auto, direct or halves");
  }
  if (opt.naive && opt.kind == "T")
    raise(errc::schema_error, "--naive applies to kinds R and J only");
  if (opt.naive && !opt.cache_path.empty())
    raise(errc::schema_error, "--naive and --dist-cache are mutually exclusive");

  u128 value = 0;
  if (opt.kind == "J") {
    std::vector<i64> raw = opt.shift.empty() ? std::vector<i64>(static_cast<std::size_t>(opt.d), 0)
                                             : parse_i64_list(opt.shift, "--shift");
    ShiftVector shift = make_shift_integer(raw, opt.d);
    if (!opt.cache_path.empty()) {
      FieldContext dummy{0, opt.d};
      auto dist = cached_distribution(opt.cache_path, opt.s, opt.N, 0, opt.d, Domain::integer,
                                      dummy, budget);
      value = count_from_distribution(dist, shift);
    } else {
      value = opt.naive ? count_integer_solutions_naive(opt.s, opt.N, shift, budget)
                        : count_integer_solutions(opt.s, opt.N, shift, budget, strategy);
    }
  } else if (opt.kind == "R" || opt.kind == "T") {
    auto ctx = validate_context(opt.p, opt.d);
    std::optional<PowerSumDistribution> cached;
    if (!opt.cache_path.empty())
      cached = cached_distribution(opt.cache_path, opt.s, opt.N, ctx.p, ctx.d, Domain::residue,
                                   ctx, budget);
    if (opt.kind == "R") {
      ShiftVector shift = residue_shift_or_zero(
          opt.shift.empty() ? std::vector<i64>{} : parse_i64_list(opt.shift, "--shift"), ctx);
      if (cached) {
        value = count_from_distribution(*cached, shift);
      } else {
        value = opt.naive ? count_mod_solutions_naive(opt.s, opt.N, shift, ctx, budget)
                          : count_mod_solutions(opt.s, opt.N, shift, ctx, budget, strategy);
      }
    } else {
      if (opt.window.empty()) raise(errc::schema_error, "count T requires --H side lengths");
      auto window = make_window(parse_u64_list(opt.window, "--H"), ctx);
      value = cached ? count_window_solutions(*cached, window, budget)
                     : count_window_solutions(opt.s, opt.N, window, ctx, budget);
    }
  } else {
    raise(errc::schema_error, "count kind must be R, J or T");
  }
  std::cout << u128_to_string(value) << '\n';
  return kExitOk;
}

int run_moment(const MomentOptions& opt, const Budget& budget) {
  auto ctx = validate_context(opt.p, opt.d);
  if ((opt.s == 0) == (opt.rho == 0))
    raise(errc::schema_error, "specify exactly one of --s or --rho");
  MomentMethod method;
  if (opt.method == "count") {
    method = MomentMethod::count;
  } else if (opt.method == "dft") {
    method = MomentMethod::dft;
  } else if (opt.method == "sample") {
    method = MomentMethod::sample;
  } else {
    raise(errc::schema_error, "--method must be count, dft or sample");
  }
  SampleSpec sample{opt.samples, opt.seed};
  if (method == MomentMethod::sample && (sample.samples == 0 || !opt.seed_given))
    raise(errc::schema_error, "--method sample requires --samples and --seed");
  MomentRecord rec = opt.s != 0
                         ? moment_full(opt.s, opt.N, ctx, method, sample, budget)
                         : moment_full_exponent(opt.rho, opt.N, ctx, method, sample, budget);
  if (opt.format == "json") {
    write_output(report::moment_json_string(rec) + "\n", opt.out_path);
  } else if (opt.format == "csv") {
    write_output(report::moment_csv_header() + "\n" + report::moment_csv_row(rec) + "\n",
                 opt.out_path);
  } else {
    raise(errc::schema_error, "--format must be csv or json");
  }
  return kExitOk;
}

int run_restricted(const RestrictedOptions& opt, const Budget& budget) {
  auto ctx = validate_context(opt.p, opt.d);
  SetGenerator gen;
  if (opt.kind == "box") {
    BoxSet box;
    box.offsets = opt.offsets.empty() ? std::vector<i64>(static_cast<std::size_t>(opt.d), 0)
                                      : parse_i64_list(opt.offsets, "--offsets");
    box.side = opt.side;
    gen = box;
  } else if (opt.kind == "moment_curve") {
    gen = MomentCurve{};
  } else if (opt.kind == "poly_curve") {
    if (opt.curve.empty()) raise(errc::schema_error, "poly_curve requires --curve");
    gen = PolyCurve{parse_vector_list(opt.curve, "--curve")};
  } else if (opt.kind == "explicit") {
    if (opt.points.empty()) raise(errc::schema_error, "explicit requires --points");
    gen = ExplicitSet{parse_vector_list(opt.points, "--points")};
  } else {
    raise(errc::schema_error, "--kind must be box, moment_curve, poly_curve or explicit");
  }

  RestrictedMethod method = RestrictedMethod::automatic;
  if (opt.method == "enumerate") {
    method = RestrictedMethod::enumerate;
  } else if (opt.method == "sample") {
    method = RestrictedMethod::sample;
  } else if (opt.method != "auto") {
    raise(errc::schema_error, "--method must be auto, enumerate or sample");
  }
  MomentRecord rec = moment_restricted(gen, opt.exponent, opt.N, ctx, method,
                                       SampleSpec{opt.samples, opt.seed}, budget);
  if (opt.format == "json") {
    write_output(report::moment_json_string(rec) + "\n", opt.out_path);
  } else {
    write_output(report::moment_csv_header() + "\n" + report::moment_csv_row(rec) + "\n",
                 opt.out_path);
  }
  return kExitOk;
}

int run_maximal(const MaximalOptions& opt, const Budget& budget) {
  auto ctx = validate_context(opt.p, opt.d);
  PermutedSplit split;
  split.k = opt.k;
  if (opt.perm.empty()) {
    for (int i = 1; i <= ctx.d; ++i) split.perm.push_back(i);
  } else {
    for (i64 v : parse_i64_list(opt.perm, "--perm")) split.perm.push_back(static_cast<int>(v));
  }
  if (!opt.fixed.empty()) split.fixed = parse_i64_list(opt.fixed, "--b");

  SampleSpec sample{opt.samples, opt.seed};
  MaximalResult result =
      maximal_operator(split, opt.N, ctx, budget, sample.samples > 0 ? &sample : nullptr);
  if (!result.exhaustive)
    std::cerr << "note: sampled over " << result.samples << " vectors (seed " << result.seed
              << "); the value is a lower bound\n";
  std::cout << report::format_real(result.value) << '\n';
  return kExitOk;
}

int run_verify(const VerifyOptions& opt, const Budget& budget) {
  report::GridFile grid = report::parse_grid(read_text_file(opt.grid_path));
  std::vector<FamilyReport> reports;
  reports.reserve(grid.families.size());
  for (const auto& family : grid.families)
    reports.push_back(
        verify_family(family.name, family.kind, family.rows, grid.trend_factor, budget));
  if (opt.format == "json") {
    write_output(report::render_verify_json(reports), opt.out_path);
  } else if (opt.format == "csv") {
    write_output(report::render_verify_csv(reports), opt.out_path);
  } else {
    raise(errc::schema_error, "--format must be csv or json");
  }
  return kExitOk;
}

int run_bench(const Budget& budget) {
  Budget bench_budget = budget;
  bench_budget.max_table_entries = std::max<u64>(bench_budget.max_table_entries, 50'000'000);
  auto ctx = validate_context(499, 3);
  std::vector<i64> zero(3, 0);
  auto shift = make_shift_residue(zero, ctx);
  auto start = std::chrono::steady_clock::now();
  u128 value = count_mod_solutions(3, 200, shift, ctx, bench_budget);
  std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::printf("bench count R p=499 d=3 s=3 N=200: value=%s seconds=%.3f\n",
              u128_to_string(value).c_str(), elapsed.count());
  return kExitOk;
}

int run_selftest(const Budget& budget) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << '\n';
    if (!ok) ++failures;
  };

  {
    auto ctx = validate_context(7, 2);
    auto dft = moment_full(2, 5, ctx, MomentMethod::dft, {}, budget);
    auto cnt = moment_full(2, 5, ctx, MomentMethod::count, {}, budget);
    check("orthogonality p=7 d=2 s=2 N=5",
          std::abs(dft.value - cnt.value) / cnt.value < 1e-6);
  }
  {
    auto ctx = validate_context(7, 3);
    bool ok = true;
    for (i64 a1 = 0; a1 < 7 && ok; ++a1)
      for (i64 a2 = 0; a2 < 7 && ok; ++a2)
        for (i64 a3 = 0; a3 < 7 && ok; ++a3) {
          if (a1 == 0 && a2 == 0 && a3 == 0) continue;
          std::vector<i64> raw{a1, a2, a3};
          ok = weil_margin(make_coefficients(raw, ctx), ctx) >= -1e-6;
        }
    check("complete-sum bound p=7 d=3", ok);
  }
  {
    auto ctx = validate_context(5, 2);
    u128 total = 0;
    for (i64 h1 = 0; h1 < 5; ++h1)
      for (i64 h2 = 0; h2 < 5; ++h2) {
        std::vector<i64> raw{h1, h2};
        total += count_mod_solutions(1, 4, make_shift_residue(raw, ctx), ctx, budget);
      }
    check("shift mass conservation p=5 d=2 s=1 N=4", total == 16);
  }
  {
    auto ctx = validate_context(13, 3);
    std::vector<i64> raw{1, 0, 2};
    auto shift = make_shift_residue(raw, ctx);
    bool ok = count_mod_solutions(2, 6, shift, ctx, budget) ==
              count_mod_solutions_naive(2, 6, shift, ctx, budget);
    check("fast counter equals oracle p=13 d=3 s=2 N=6", ok);
  }
  {
    auto ctx = validate_context(11, 2);
    auto decomposition = decompose_mod_count(2, 4, ctx, budget);
    std::vector<i64> zero(2, 0);
    bool ok = decomposition.reconstructed ==
              count_mod_solutions(2, 4, make_shift_residue(zero, ctx), ctx, budget);
    check("integer decomposition reconstructs p=11 d=2 s=2 N=4", ok);
  }
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counts, moments and bound verification for rational exponential sums"};
  app.require_subcommand(1);
  app.fallthrough(true);  // global flags may follow the subcommand

  Budget budget;
  try {
    budget = report::budget_from_env(budget);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  app.add_option("--budget-evals", budget.max_sum_evals, "Max exponential-sum evaluations");
  app.add_option("--budget-entries", budget.max_table_entries, "Max distribution entries");
  app.add_option("--budget-naive", budget.max_naive_ops, "Max oracle tuple enumerations");
  app.add_option("--threads", budget.parallelism, "Worker count for grid verification");

  SumOptions sum_opt;
  auto* sum_cmd = app.add_subcommand("sum", "Evaluate one exponential sum");
  sum_cmd->add_option("--p", sum_opt.p, "Prime modulus")->required();
  sum_cmd->add_option("--d", sum_opt.d, "Polynomial degree")->required();
  sum_cmd->add_option("--coeffs", sum_opt.coeffs, "Comma-separated coefficients a_1..a_d")
      ->required();
  sum_cmd->add_option("--N", sum_opt.N, "Summation length")->required();
  sum_cmd->add_option("--weights-file", sum_opt.weights_file,
                      "Per-term weights, one \"re\" or \"re,im\" per line");

  CountOptions count_opt;
  auto* count_cmd = app.add_subcommand("count", "Exact solution counts");
  count_cmd->add_option("kind", count_opt.kind, "R (congruences), J (equations) or T (windowed)")
      ->required();
  count_cmd->add_option("--p", count_opt.p, "Prime modulus (R and T)");
  count_cmd->add_option("--d", count_opt.d, "System dimension")->required();
  count_cmd->add_option("--s", count_opt.s, "Fold count")->required();
  count_cmd->add_option("--N", count_opt.N, "Variable range")->required();
  count_cmd->add_option("--shift", count_opt.shift, "Comma-separated shift vector");
  count_cmd->add_option("--H", count_opt.window, "Comma-separated window sides (T only)");
  count_cmd->add_flag("--naive", count_opt.naive, "Use the enumeration oracle");
  count_cmd->add_option("--strategy", count_opt.strategy, "auto, direct or halves");
  count_cmd->add_option("--dist-cache", count_opt.cache_path,
                        "Load the distribution from this file, or build and store it");

  MomentOptions moment_opt;
  auto* moment_cmd = app.add_subcommand("moment", "Full moment over all coefficient vectors");
  moment_cmd->add_option("--p", moment_opt.p, "Prime modulus")->required();
  moment_cmd->add_option("--d", moment_opt.d, "Polynomial degree")->required();
  moment_cmd->add_option("--s", moment_opt.s, "Half exponent (moment of order 2s)");
  moment_cmd->add_option("--rho", moment_opt.rho, "Raw exponent");
  moment_cmd->add_option("--N", moment_opt.N, "Summation length")->required();
  moment_cmd->add_option("--method", moment_opt.method, "count, dft or sample");
  moment_cmd->add_option("--samples", moment_opt.samples, "Sample count");
  moment_cmd->add_option("--seed", moment_opt.seed, "Sampling seed");
  moment_cmd->add_option("--format", moment_opt.format, "csv or json");
  moment_cmd->add_option("--out", moment_opt.out_path, "Output file (default stdout)");

  RestrictedOptions restricted_opt;
  auto* restricted_cmd = app.add_subcommand("restricted", "Moment over a coefficient subset");
  restricted_cmd->add_option("--p", restricted_opt.p, "Prime modulus")->required();
  restricted_cmd->add_option("--d", restricted_opt.d, "Polynomial degree")->required();
  restricted_cmd
      ->add_option("--kind", restricted_opt.kind, "box, moment_curve, poly_curve or explicit")
      ->required();
  restricted_cmd->add_option("--exponent", restricted_opt.exponent, "Moment exponent")
      ->required();
  restricted_cmd->add_option("--N", restricted_opt.N, "Summation length")->required();
  restricted_cmd->add_option("--offsets", restricted_opt.offsets, "Box offsets A_1..A_d");
  restricted_cmd->add_option("--H", restricted_opt.side, "Box side length");
  restricted_cmd->add_option("--curve", restricted_opt.curve,
                             "Curve polynomials, ascending coefficients, \";\"-separated");
  restricted_cmd->add_option("--points", restricted_opt.points,
                             "Explicit points, \";\"-separated coordinate lists");
  restricted_cmd->add_option("--method", restricted_opt.method, "auto, enumerate or sample");
  restricted_cmd->add_option("--samples", restricted_opt.samples, "Sample count");
  restricted_cmd->add_option("--seed", restricted_opt.seed, "Sampling seed");
  restricted_cmd->add_option("--format", restricted_opt.format, "csv or json");
  restricted_cmd->add_option("--out", restricted_opt.out_path, "Output file (default stdout)");

  MaximalOptions maximal_opt;
  auto* maximal_cmd =
      app.add_subcommand("maximal", "Maximum of |S| over the free coefficient block");
  maximal_cmd->add_option("--p", maximal_opt.p, "Prime modulus")->required();
  maximal_cmd->add_option("--d", maximal_opt.d, "Polynomial degree")->required();
  maximal_cmd->add_option("--k", maximal_opt.k, "Fixed block size")->required();
  maximal_cmd->add_option("--perm", maximal_opt.perm, "Permutation of 1..d (default identity)");
  maximal_cmd->add_option("--b", maximal_opt.fixed, "Fixed coefficients b_1..b_k");
  maximal_cmd->add_option("--N", maximal_opt.N, "Summation length")->required();
  maximal_cmd->add_option("--samples", maximal_opt.samples, "Sample count (lower bound mode)");
  maximal_cmd->add_option("--seed", maximal_opt.seed, "Sampling seed");

  VerifyOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification grid file");
  verify_cmd->add_option("--grid", verify_opt.grid_path, "Grid file (JSON)")->required();
  verify_cmd->add_option("--format", verify_opt.format, "csv or json");
  verify_cmd->add_option("--out", verify_opt.out_path, "Output file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Time the convolution counter");
  auto* selftest_cmd = app.add_subcommand("selftest", "Run a quick identity battery");

  CLI11_PARSE(app, argc, argv);

  moment_opt.seed_given = moment_cmd->count("--seed") > 0;

  try {
    if (sum_cmd->parsed()) return run_sum(sum_opt);
    if (count_cmd->parsed()) return run_count(count_opt, budget);
    if (moment_cmd->parsed()) return run_moment(moment_opt, budget);
    if (restricted_cmd->parsed()) return run_restricted(restricted_opt, budget);
    if (maximal_cmd->parsed()) return run_maximal(maximal_opt, budget);
    if (verify_cmd->parsed()) return run_verify(verify_opt, budget);
    if (bench_cmd->parsed()) return run_bench(budget);
    if (selftest_cmd->parsed()) return run_selftest(budget);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
