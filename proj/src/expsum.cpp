#include "ratsum/expsum.hpp"

#include <cmath>

namespace ratsum {

WeightSequence unit_weights(u64 n) {
  WeightSequence w;
  w.gamma.assign(n, Complex{1.0, 0.0});
  return w;
}

WeightSequence alternating_weights(u64 n) {
  WeightSequence w;
  w.gamma.reserve(n);
  for (u64 i = 1; i <= n; ++i) w.gamma.push_back(Complex{(i & 1) ? -1.0 : 1.0, 0.0});
  return w;
}

void check_weights(const WeightSequence& weights) {
  for (std::size_t i = 0; i < weights.gamma.size(); ++i) {
    if (std::abs(weights.gamma[i]) > 1.0 + 1e-12)
      raise(errc::weight_out_of_range,
            "|gamma_" + std::to_string(i + 1) + "| = " + std::to_string(std::abs(weights.gamma[i])) +
                " exceeds 1");
  }
}

u64 phase_at(const CoefficientVector& a, u64 n, const FieldContext& ctx) {
  // Horner: n*(a_1 + n*(a_2 + ... + n*a_d)).
  u64 nm = n % ctx.p;
  u64 acc = 0;
  for (int nu = ctx.d; nu >= 1; --nu) {
    acc = mul_mod(acc, nm, ctx.p);
    acc += a.a[static_cast<std::size_t>(nu - 1)];
    if (acc >= ctx.p) acc -= ctx.p;
  }
  return mul_mod(acc, nm, ctx.p);
}

namespace {

void check_sum_range(u64 N, const FieldContext& ctx) {
  if (N < 1) raise(errc::range_error, "N must be >= 1");
  if (N > ctx.p)
    raise(errc::range_error,
          "N = " + std::to_string(N) + " exceeds p = " + std::to_string(ctx.p));
}

// Ascending n with compensated accumulation; a character table pays off
// once the loop touches a decent fraction of the residues.
template <typename PhaseFn, typename WeightFn>
Complex accumulate_sum(u64 N, u64 p, PhaseFn&& phase, WeightFn&& weight) {
  KahanComplex acc;
  if (N >= p / 4) {
    CharacterTable table(p);
    for (u64 n = 1; n <= N; ++n) acc.add(weight(n) * table(phase(n)));
  } else {
    for (u64 n = 1; n <= N; ++n)
      acc.add(weight(n) * additive_character(static_cast<i64>(phase(n)), p));
  }
  return acc.value();
}

}  // namespace

Complex exp_sum(const CoefficientVector& a, u64 N, const FieldContext& ctx) {
  check_sum_range(N, ctx);
  return accumulate_sum(
      N, ctx.p, [&](u64 n) { return phase_at(a, n, ctx); },
      [](u64) { return Complex{1.0, 0.0}; });
}

Complex exp_sum_weighted(const CoefficientVector& a, const WeightSequence& weights, u64 N,
                         const FieldContext& ctx) {
  check_sum_range(N, ctx);
  if (weights.gamma.size() < N)
    raise(errc::range_error, "weight sequence shorter than N = " + std::to_string(N));
  check_weights(weights);
  return accumulate_sum(
      N, ctx.p, [&](u64 n) { return phase_at(a, n, ctx); },
      [&](u64 n) { return weights.gamma[n - 1]; });
}

std::vector<std::vector<u64>> binomial_table_mod(int d, u64 p) {
  // Pascal rows in 128-bit, reduced at the end; rows up to nu = 33 stay exact.
  if (d > 33) raise(errc::capacity_exceeded, "binomial table limited to degree 33");
  std::vector<std::vector<u128>> rows(static_cast<std::size_t>(d) + 1);
  rows[0] = {1};
  for (int nu = 1; nu <= d; ++nu) {
    auto& row = rows[static_cast<std::size_t>(nu)];
    const auto& prev = rows[static_cast<std::size_t>(nu - 1)];
    row.assign(static_cast<std::size_t>(nu) + 1, 1);
    for (int i = 1; i < nu; ++i)
      row[static_cast<std::size_t>(i)] =
          prev[static_cast<std::size_t>(i - 1)] + prev[static_cast<std::size_t>(i)];
  }
  std::vector<std::vector<u64>> out(rows.size());
  for (std::size_t nu = 0; nu < rows.size(); ++nu) {
    out[nu].reserve(rows[nu].size());
    for (u128 v : rows[nu]) out[nu].push_back(static_cast<u64>(v % p));
  }
  return out;
}

ShiftPolynomialSet build_shift_polynomials(const ShiftVector& shift, const FieldContext& ctx) {
  ShiftVector residue = shift.flavor == Domain::residue ? shift : reduce_shift(shift, ctx);
  if (residue.h.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "shift vector needs d components");
  auto binom = binomial_table_mod(ctx.d, ctx.p);
  ShiftPolynomialSet set;
  set.psi.resize(static_cast<std::size_t>(ctx.d));
  for (int nu = 1; nu <= ctx.d; ++nu) {
    auto& poly = set.psi[static_cast<std::size_t>(nu - 1)];
    poly.assign(static_cast<std::size_t>(nu), 0);
    for (int i = 0; i <= nu - 1; ++i) {
      u64 h_term = static_cast<u64>(residue.h[static_cast<std::size_t>(nu - i - 1)]);
      poly[static_cast<std::size_t>(i)] =
          mul_mod(binom[static_cast<std::size_t>(nu)][static_cast<std::size_t>(i)], h_term, ctx.p);
    }
  }
  return set;
}

namespace {

u64 eval_poly_mod(std::span<const u64> coeffs, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = mul_mod(acc, x, p);
    acc += coeffs[i];
    if (acc >= p) acc -= p;
  }
  return acc;
}

}  // namespace

Complex shifted_exp_sum(const CoefficientVector& a, const ShiftVector& shift, u64 N,
                        const FieldContext& ctx) {
  check_sum_range(N, ctx);
  ShiftPolynomialSet set = build_shift_polynomials(shift, ctx);
  auto phase = [&](u64 u) {
    u64 um = u % ctx.p;
    u64 acc = 0;
    for (int nu = 1; nu <= ctx.d; ++nu) {
      u64 term = mul_mod(a.a[static_cast<std::size_t>(nu - 1)],
                         eval_poly_mod(set.psi[static_cast<std::size_t>(nu - 1)], um, ctx.p), ctx.p);
      acc += term;
      if (acc >= ctx.p) acc -= ctx.p;
    }
    return acc;
  };
  return accumulate_sum(N, ctx.p, phase, [](u64) { return Complex{1.0, 0.0}; });
}

double weil_margin(const CoefficientVector& a, const FieldContext& ctx) {
  if (a.is_zero()) raise(errc::zero_vector, "complete-sum bound requires a nonzero vector");
  double bound = static_cast<double>(ctx.d - 1) * std::sqrt(static_cast<double>(ctx.p));
  return bound - std::abs(exp_sum(a, ctx.p, ctx));
}

}  // namespace ratsum
