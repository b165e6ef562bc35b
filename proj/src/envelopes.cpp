#include "ratsum/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "ratsum/moments.hpp"

namespace ratsum {

std::string to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::weil_1_1: return "weil_1_1";
    case EnvelopeKind::incomplete_1_2: return "incomplete_1_2";
    case EnvelopeKind::mordell_1_3: return "mordell_1_3";
    case EnvelopeKind::hoelder_1_4: return "hoelder_1_4";
    case EnvelopeKind::thm_1_1: return "thm_1_1";
    case EnvelopeKind::thm_1_2: return "thm_1_2";
    case EnvelopeKind::thm_1_3: return "thm_1_3";
    case EnvelopeKind::lemma_2_1_vmvt: return "lemma_2_1_vmvt";
    case EnvelopeKind::lemma_2_2_inhom: return "lemma_2_2_inhom";
    case EnvelopeKind::lemma_2_4_su: return "lemma_2_4_su";
    case EnvelopeKind::lemma_2_5_subconvex: return "lemma_2_5_subconvex";
    case EnvelopeKind::bound_2_4_trivial: return "bound_2_4_trivial";
    case EnvelopeKind::lemma_2_6_box: return "lemma_2_6_box";
  }
  return "unknown";
}

std::optional<EnvelopeKind> envelope_kind_from_string(const std::string& name) {
  for (EnvelopeKind kind :
       {EnvelopeKind::weil_1_1, EnvelopeKind::incomplete_1_2, EnvelopeKind::mordell_1_3,
        EnvelopeKind::hoelder_1_4, EnvelopeKind::thm_1_1, EnvelopeKind::thm_1_2,
        EnvelopeKind::thm_1_3, EnvelopeKind::lemma_2_1_vmvt, EnvelopeKind::lemma_2_2_inhom,
        EnvelopeKind::lemma_2_4_su, EnvelopeKind::lemma_2_5_subconvex,
        EnvelopeKind::bound_2_4_trivial, EnvelopeKind::lemma_2_6_box}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<int> determine_k(int s, u64 N, u64 p) {
  if (s < 1 || N < 1) raise(errc::range_error, "requires s >= 1 and N >= 1");
  if (!is_prime_u64(p)) raise(errc::not_prime, std::to_string(p) + " is not prime");
  if (N == 1) return std::nullopt;  // s*N^k is constant in k
  u128 bound = static_cast<u128>(s);
  int e = 0;
  while (bound < p) {
    bound *= N;
    ++e;
  }
  if (e <= 1) return std::nullopt;  // p <= s*N, the discarded regime
  int k = e - 1;
  // Re-substitute: s*N^k < p <= s*N^{k+1} must hold for every emitted k.
  u128 low = static_cast<u128>(s);
  for (int i = 0; i < k; ++i) low *= N;
  if (!(low < p && p <= low * N)) throw std::logic_error("threshold index re-substitution failed");
  return k;
}

u128 factorial_u128(int n) {
  if (n < 0) raise(errc::range_error, "factorial of a negative number");
  if (n > 33) raise(errc::capacity_exceeded, "factorial exceeds 128 bits");
  u128 acc = 1;
  for (int i = 2; i <= n; ++i) acc *= static_cast<unsigned>(i);
  return acc;
}

namespace {

[[noreturn]] void domain_violation(EnvelopeKind kind, const std::string& hypothesis) {
  raise(errc::parameter_domain, to_string(kind) + " " + hypothesis);
}

template <typename T>
T need(EnvelopeKind kind, const std::optional<T>& field, const char* name) {
  if (!field) domain_violation(kind, std::string("requires parameter ") + name);
  return *field;
}

std::optional<int> leading_index_of(std::span<const i64> shift) {
  for (std::size_t i = 0; i < shift.size(); ++i)
    if (shift[i] != 0) return static_cast<int>(i) + 1;
  return std::nullopt;
}

double dpow(double base, double exp) { return std::pow(base, exp); }

// The two-minima box bound, with the active branch of each minimum recorded
// (ties go to the left argument).
struct BoxEnvelope {
  double value = 0.0;
  bool first_left = true;
  bool second_left = true;
};

BoxEnvelope box_envelope(const EnvelopeParams& params) {
  constexpr EnvelopeKind kind = EnvelopeKind::thm_1_3;
  auto p = need(kind, params.p, "p");
  auto d = need(kind, params.d, "d");
  auto s = need(kind, params.s, "s");
  auto N = need(kind, params.N, "N");
  auto H = need(kind, params.H, "H");
  if (s >= d) domain_violation(kind, "requires s < d");
  if (H < 1 || H > p) domain_violation(kind, "requires 1 <= H <= p");
  if (N > p) domain_violation(kind, "requires N <= p");
  double n = static_cast<double>(N);
  double ph = static_cast<double>(p) / static_cast<double>(H);
  double mid = dpow(n, s) + dpow(n, 2.0 * s - 0.5 * d);
  BoxEnvelope env;
  double first_left = ph * dpow(n, s);
  double first_right = std::sqrt(ph) * mid;
  double second_left = dpow(ph, d) * dpow(n, s - 0.5);
  double second_right = dpow(ph, 0.5 * d) * mid;
  env.first_left = first_left <= first_right;
  env.second_left = second_left <= second_right;
  env.value = std::min(first_left, first_right) + std::min(second_left, second_right);
  return env;
}

}  // namespace

double envelope_value(EnvelopeKind kind, const EnvelopeParams& params) {
  switch (kind) {
    case EnvelopeKind::weil_1_1: {
      auto p = need(kind, params.p, "p");
      auto d = need(kind, params.d, "d");
      if (d < 2) domain_violation(kind, "requires d >= 2");
      return static_cast<double>(d - 1) * std::sqrt(static_cast<double>(p));
    }
    case EnvelopeKind::incomplete_1_2: {
      auto p = need(kind, params.p, "p");
      return std::sqrt(static_cast<double>(p)) * std::log(static_cast<double>(p));
    }
    case EnvelopeKind::mordell_1_3: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      if (s < 1 || s > d) domain_violation(kind, "requires 1 <= s <= d");
      return static_cast<double>(factorial_u128(s)) * dpow(static_cast<double>(N), s);
    }
    case EnvelopeKind::hoelder_1_4: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      if (s < 1) domain_violation(kind, "requires s >= 1");
      double n = static_cast<double>(N);
      return dpow(n, s) + dpow(n, 2.0 * s - d);
    }
    case EnvelopeKind::thm_1_1: {
      auto p = need(kind, params.p, "p");
      auto d = need(kind, params.d, "d");
      auto s = need(kind, params.s, "s");
      auto N = need(kind, params.N, "N");
      auto k = need(kind, params.k, "k");
      if (!(d >= k && k >= 1)) domain_violation(kind, "requires d >= k >= 1");
      if (s < d * (d + 1) / 2) domain_violation(kind, "requires s >= d(d+1)/2");
      return dpow(static_cast<double>(N), 2.0 * s - 0.5 * k * (k + 1)) *
             dpow(static_cast<double>(p), static_cast<double>(k - d));
    }
    case EnvelopeKind::thm_1_2: {
      auto p = need(kind, params.p, "p");
      auto d = need(kind, params.d, "d");
      auto s = need(kind, params.s, "s");
      auto N = need(kind, params.N, "N");
      auto k = need(kind, params.k, "k");
      if (!(d - 2 >= k && k >= 1)) domain_violation(kind, "requires d-2 >= k >= 1");
      if (s > (k + 1) * (k + 2) / 2 - 1)
        domain_violation(kind, "requires s <= (k+1)(k+2)/2 - 1");
      double n = static_cast<double>(N);
      double pp = static_cast<double>(p);
      return dpow(n, static_cast<double>(d + s)) / pp +
             dpow(n, s + 0.5 * d * (d + 1) - 0.5 * k * (k + 1) - 1.0) *
                 dpow(pp, static_cast<double>(k - d));
    }
    case EnvelopeKind::thm_1_3:
      return box_envelope(params).value;
    case EnvelopeKind::lemma_2_1_vmvt: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      if (s < 1) domain_violation(kind, "requires s >= 1");
      double n = static_cast<double>(N);
      return dpow(n, s) + dpow(n, 2.0 * s - 0.5 * d * (d + 1));
    }
    case EnvelopeKind::lemma_2_2_inhom: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      auto ell = leading_index_of(params.shift);
      if (d < 3) domain_violation(kind, "requires d >= 3");
      if (!ell) domain_violation(kind, "requires a nonzero shift");
      if (*ell >= d) domain_violation(kind, "requires ell < d");
      if (s < 1 || s > *ell * (*ell + 1) / 2)
        domain_violation(kind, "requires s <= ell(ell+1)/2");
      return dpow(static_cast<double>(N), s - 1.0);
    }
    case EnvelopeKind::lemma_2_4_su: {
      auto p = need(kind, params.p, "p");
      auto d = need(kind, params.d, "d");
      auto s = need(kind, params.s, "s");
      auto N = need(kind, params.N, "N");
      auto t = need(kind, params.t, "t");
      auto ell = leading_index_of(params.shift);
      if (d < 3) domain_violation(kind, "requires d >= 3");
      if (!ell) domain_violation(kind, "requires a nonzero shift");
      if (*ell >= d) domain_violation(kind, "requires ell < d");
      if (s < 1 || s > *ell) domain_violation(kind, "requires s <= ell");
      if (t < 1) domain_violation(kind, "requires t >= 1");
      double n = static_cast<double>(N);
      return dpow(static_cast<double>(p), d) * dpow(n, s) *
             (dpow(n, t) + dpow(n, 2.0 * t - d + *ell));
    }
    case EnvelopeKind::lemma_2_5_subconvex: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      auto ell = leading_index_of(params.shift);
      if (d < 3) domain_violation(kind, "requires d >= 3");
      if (!ell) domain_violation(kind, "requires a nonzero shift");
      if (*ell >= d) domain_violation(kind, "requires ell < d");
      if (s < 1 || s >= d) domain_violation(kind, "requires s < d");
      return dpow(static_cast<double>(N), s - 0.5);
    }
    case EnvelopeKind::bound_2_4_trivial: {
      auto s = need(kind, params.s, "s");
      auto d = need(kind, params.d, "d");
      auto N = need(kind, params.N, "N");
      if (s < 1 || s >= d) domain_violation(kind, "requires s < d");
      return dpow(static_cast<double>(N), s);
    }
    case EnvelopeKind::lemma_2_6_box:
      domain_violation(kind,
                       "has no closed form; the windowed count is computed empirically by the "
                       "verifier");
  }
  raise(errc::range_error, "unknown envelope kind");
}

namespace {

WeightSequence weights_from_tag(const std::string& gamma, u64 N) {
  if (gamma == "ones" || gamma.empty()) return unit_weights(N);
  if (gamma == "alternating") return alternating_weights(N);
  raise(errc::schema_error, "gamma must be \"ones\" or \"alternating\", got \"" + gamma + "\"");
}

ShiftVector zero_residue_shift(const FieldContext& ctx) {
  ShiftVector z;
  z.h.assign(static_cast<std::size_t>(ctx.d), 0);
  z.flavor = Domain::residue;
  return z;
}

// Largest |S(a;N)| over nonzero a, by full enumeration.
double max_abs_sum(u64 N, const FieldContext& ctx, const Budget& budget) {
  u128 space = 1;
  for (int i = 0; i < ctx.d; ++i) space *= ctx.p;
  if (space > budget.max_sum_evals)
    raise(errc::work_budget_exceeded, "enumeration over " + u128_to_string(space) +
                                          " vectors exceeds evaluation budget " +
                                          std::to_string(budget.max_sum_evals));
  CharacterTable table(ctx.p);
  std::vector<u64> a(static_cast<std::size_t>(ctx.d));
  double best = 0.0;
  for (u64 index = 1; index < static_cast<u64>(space); ++index) {
    u64 rest = index;
    for (auto& coord : a) {
      coord = rest % ctx.p;
      rest /= ctx.p;
    }
    CoefficientVector coeffs{a};
    KahanComplex sum;
    for (u64 n = 1; n <= N; ++n) sum.add(table(phase_at(coeffs, n, ctx)));
    best = std::max(best, std::abs(sum.value()));
  }
  return best;
}

void append_flags(EnvelopeKind kind, std::vector<std::string>& flags) {
  switch (kind) {
    case EnvelopeKind::weil_1_1:
      break;
    case EnvelopeKind::mordell_1_3:
      flags.push_back("error_term_dropped");
      break;
    case EnvelopeKind::thm_1_1:
    case EnvelopeKind::thm_1_2:
    case EnvelopeKind::lemma_2_1_vmvt:
    case EnvelopeKind::lemma_2_2_inhom:
      flags.push_back("o1_dropped");
      flags.push_back("implied_const_1");
      break;
    case EnvelopeKind::lemma_2_6_box:
      flags.push_back("measured_constant");
      break;
    default:
      flags.push_back("implied_const_1");
      break;
  }
}

}  // namespace

VerificationRow verify_point(EnvelopeKind kind, const EnvelopeParams& params,
                             const Budget& budget) {
  VerificationRow row;
  row.kind = kind;
  row.params = params;
  row.ell = leading_index_of(params.shift);
  append_flags(kind, row.flags);
  if ((kind == EnvelopeKind::thm_1_3 || kind == EnvelopeKind::lemma_2_6_box) &&
      params.gamma == "alternating")
    row.flags.push_back("alternating_weights");

  auto set_exact = [&](u128 count) {
    row.empirical_exact = count;
    row.empirical = static_cast<double>(count);
  };

  switch (kind) {
    case EnvelopeKind::weil_1_1: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      row.empirical = max_abs_sum(ctx.p, ctx, budget);
      break;
    }
    case EnvelopeKind::incomplete_1_2: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      row.empirical = max_abs_sum(need(kind, params.N, "N"), ctx, budget);
      break;
    }
    case EnvelopeKind::mordell_1_3:
    case EnvelopeKind::hoelder_1_4: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      set_exact(count_mod_solutions(need(kind, params.s, "s"), need(kind, params.N, "N"),
                                    zero_residue_shift(ctx), ctx, budget));
      break;
    }
    case EnvelopeKind::thm_1_1:
    case EnvelopeKind::thm_1_2: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      int s = need(kind, params.s, "s");
      u64 N = need(kind, params.N, "N");
      auto derived = determine_k(s, N, ctx.p);
      if (params.k) {
        if (!derived || *derived != *params.k)
          domain_violation(kind, "requires s N^k < p <= s N^{k+1} for the given k");
        row.k_used = *params.k;
      } else {
        if (!derived)
          domain_violation(kind, "requires s N^k < p <= s N^{k+1} for some k >= 1");
        row.k_used = *derived;
      }
      set_exact(count_mod_solutions(s, N, zero_residue_shift(ctx), ctx, budget));
      break;
    }
    case EnvelopeKind::thm_1_3: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      u64 N = need(kind, params.N, "N");
      BoxSet box;
      box.offsets.assign(static_cast<std::size_t>(ctx.d), 0);
      box.side = need(kind, params.H, "H");
      row.empirical = moment_weighted_box(box, weights_from_tag(params.gamma, N),
                                          need(kind, params.s, "s"), N, ctx, budget)
                          .value;
      auto env = box_envelope(params);
      row.flags.push_back(env.first_left ? "min1_left" : "min1_right");
      row.flags.push_back(env.second_left ? "min2_left" : "min2_right");
      break;
    }
    case EnvelopeKind::lemma_2_1_vmvt: {
      int d = need(kind, params.d, "d");
      ShiftVector zero;
      zero.h.assign(static_cast<std::size_t>(d), 0);
      zero.flavor = Domain::integer;
      set_exact(count_integer_solutions(need(kind, params.s, "s"), need(kind, params.N, "N"),
                                        zero, budget));
      break;
    }
    case EnvelopeKind::lemma_2_2_inhom: {
      int d = need(kind, params.d, "d");
      if (params.shift.size() != static_cast<std::size_t>(d))
        domain_violation(kind, "requires a shift with d components");
      ShiftVector shift = make_shift_integer(params.shift, d);
      set_exact(count_integer_solutions(need(kind, params.s, "s"), need(kind, params.N, "N"),
                                        shift, budget));
      break;
    }
    case EnvelopeKind::lemma_2_4_su: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      int s = need(kind, params.s, "s");
      int t = need(kind, params.t, "t");
      u64 N = need(kind, params.N, "N");
      if (2 * N > ctx.p) domain_violation(kind, "requires 2N <= p");
      if (params.shift.size() != static_cast<std::size_t>(ctx.d))
        domain_violation(kind, "requires a shift with d components");
      ShiftVector shift = make_shift_residue(params.shift, ctx);
      u128 space = 1;
      for (int i = 0; i < ctx.d; ++i) space *= ctx.p;
      if (space > budget.max_sum_evals)
        raise(errc::work_budget_exceeded, "enumeration over " + u128_to_string(space) +
                                              " vectors exceeds evaluation budget " +
                                              std::to_string(budget.max_sum_evals));
      ShiftPolynomialSet psis = build_shift_polynomials(shift, ctx);
      CharacterTable table(ctx.p);
      std::vector<u64> a(static_cast<std::size_t>(ctx.d));
      KahanSum acc;
      for (u64 index = 0; index < static_cast<u64>(space); ++index) {
        u64 rest = index;
        for (auto& coord : a) {
          coord = rest % ctx.p;
          rest /= ctx.p;
        }
        CoefficientVector coeffs{a};
        KahanComplex outer;
        for (u64 n = 1; n <= 2 * N; ++n) outer.add(table(phase_at(coeffs, n, ctx)));
        Complex aux = shifted_exp_sum(coeffs, shift, N, ctx);
        double s_norm = std::norm(outer.value());
        double u_norm = std::norm(aux);
        double term = 1.0;
        for (int i = 0; i < s; ++i) term *= s_norm;
        for (int i = 0; i < t; ++i) term *= u_norm;
        acc.add(term);
      }
      row.empirical = acc.value();
      break;
    }
    case EnvelopeKind::lemma_2_5_subconvex:
    case EnvelopeKind::bound_2_4_trivial: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      ShiftVector shift = params.shift.empty() ? zero_residue_shift(ctx)
                                               : make_shift_residue(params.shift, ctx);
      set_exact(count_mod_solutions(need(kind, params.s, "s"), need(kind, params.N, "N"), shift,
                                    ctx, budget));
      break;
    }
    case EnvelopeKind::lemma_2_6_box: {
      auto ctx = validate_context(need(kind, params.p, "p"), need(kind, params.d, "d"));
      u64 N = need(kind, params.N, "N");
      auto check = verify_box_window(need(kind, params.H, "H"),
                                     weights_from_tag(params.gamma, N),
                                     need(kind, params.s, "s"), N, ctx, budget);
      row.empirical = check.box_moment;
      row.envelope = static_cast<double>(check.window_count);
      row.ratio = check.measured_constant;
      return row;
    }
  }

  row.envelope = envelope_value(kind, [&] {
    EnvelopeParams filled = params;
    if (row.k_used) filled.k = row.k_used;
    return filled;
  }());
  row.ratio = row.envelope > 0.0 ? row.empirical / row.envelope : 0.0;
  return row;
}

FamilyReport verify_family(const std::string& name, EnvelopeKind kind,
                           std::span<const EnvelopeParams> grid, double trend_factor,
                           const Budget& budget) {
  FamilyReport report;
  report.name = name;
  report.kind = kind;
  report.trend_factor = trend_factor;
  report.rows.resize(grid.size());

  // Rows are independent; run them on a small worker pool and keep the
  // output in grid order.
  unsigned workers = std::max(1u, budget.parallelism);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      report.rows[i] = verify_point(kind, grid[i], budget);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t i = w; i < grid.size(); i += workers)
            report.rows[i] = verify_point(kind, grid[i], budget);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  // Ratio growth across exact N-doublings, rows ordered by N.
  std::vector<std::size_t> order(report.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.rows[a].params.N.value_or(0) < report.rows[b].params.N.value_or(0);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& prev = report.rows[order[i - 1]];
    const auto& next = report.rows[order[i]];
    u64 n_prev = prev.params.N.value_or(0);
    u64 n_next = next.params.N.value_or(0);
    if (n_prev == 0 || n_next != 2 * n_prev) continue;
    report.trend_applicable = true;
    double growth;
    if (prev.ratio > 0.0) {
      growth = next.ratio / prev.ratio;
    } else {
      growth = next.ratio == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    report.max_growth = std::max(report.max_growth, growth);
    if (growth > trend_factor) report.trend_pass = false;
  }
  return report;
}

ShiftTransferCheck verify_shift_transfer(int s, u64 N, const ShiftVector& shift,
                                         const FieldContext& ctx, const Budget& budget) {
  if (s < 1) raise(errc::range_error, "requires s >= 1");
  if (2 * N > ctx.p) raise(errc::range_error, "requires 2N <= p");
  ShiftVector hs = shift.flavor == Domain::residue ? shift : reduce_shift(shift, ctx);

  u128 space = 1;
  for (int i = 0; i < ctx.d; ++i) space *= ctx.p;
  if (space > budget.max_sum_evals)
    raise(errc::work_budget_exceeded, "enumeration over " + u128_to_string(space) +
                                          " vectors exceeds evaluation budget " +
                                          std::to_string(budget.max_sum_evals));

  ShiftTransferCheck check;
  check.lhs = count_mod_solutions(s, N, hs, ctx, budget);

  CharacterTable table(ctx.p);
  std::vector<u64> a(static_cast<std::size_t>(ctx.d));
  std::vector<i64> neg(static_cast<std::size_t>(ctx.d));
  KahanSum acc;
  for (u64 index = 0; index < static_cast<u64>(space); ++index) {
    u64 rest = index;
    for (auto& coord : a) {
      coord = rest % ctx.p;
      rest /= ctx.p;
    }
    CoefficientVector coeffs{a};
    KahanComplex outer;
    for (u64 n = 1; n <= 2 * N; ++n) outer.add(table(phase_at(coeffs, n, ctx)));
    for (int i = 0; i < ctx.d; ++i)
      neg[static_cast<std::size_t>(i)] =
          a[static_cast<std::size_t>(i)] == 0
              ? 0
              : static_cast<i64>(ctx.p - a[static_cast<std::size_t>(i)]);
    CoefficientVector negated = make_coefficients(neg, ctx);
    Complex aux = shifted_exp_sum(negated, hs, N, ctx);
    double s_norm = std::norm(outer.value());
    double term = 1.0;
    for (int i = 0; i < s; ++i) term *= s_norm;
    acc.add(term * aux.real());
  }
  double denom = static_cast<double>(N);
  for (int i = 0; i < ctx.d; ++i) denom *= static_cast<double>(ctx.p);
  check.rhs = acc.value() / denom;
  check.ratio = check.rhs != 0.0 ? static_cast<double>(check.lhs) / check.rhs : 0.0;
  return check;
}

BoxWindowCheck verify_box_window(u64 H, const WeightSequence& weights, int s, u64 N,
                                 const FieldContext& ctx, const Budget& budget) {
  BoxWindowCheck check;
  BoxSet box;
  box.offsets.assign(static_cast<std::size_t>(ctx.d), 0);
  box.side = H;
  check.box_moment = moment_weighted_box(box, weights, s, N, ctx, budget).value;
  std::vector<u64> sides(static_cast<std::size_t>(ctx.d), H);
  check.window_count = count_window_solutions(s, N, make_window(sides, ctx), ctx, budget);
  check.measured_constant = check.window_count == 0
                                ? 0.0
                                : check.box_moment / static_cast<double>(check.window_count);
  return check;
}

}  // namespace ratsum
