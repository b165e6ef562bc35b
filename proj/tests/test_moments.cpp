#include <doctest.h>

#include <cmath>

#include "ratsum/moments.hpp"

using namespace ratsum;

namespace {

ShiftVector rzero(const FieldContext& ctx) {
  std::vector<i64> raw(static_cast<std::size_t>(ctx.d), 0);
  return make_shift_residue(raw, ctx);
}

double abs_sum(const std::vector<i64>& raw, u64 N, const FieldContext& ctx) {
  return std::abs(exp_sum(make_coefficients(raw, ctx), N, ctx));
}

u128 pow_u128(u64 base, int exp) {
  u128 acc = 1;
  for (int i = 0; i < exp; ++i) acc *= base;
  return acc;
}

}  // namespace

TEST_CASE("full moments") {
  SUBCASE("second moment is the diagonal count") {
    for (u64 p : {5ull, 11ull}) {
      auto ctx = validate_context(p, 2);
      for (u64 N = 1; N <= p; N += 2) {
        auto rec = moment_full(1, N, ctx, MomentMethod::count);
        CHECK(rec.exact == static_cast<u128>(N));
        CHECK(rec.value == doctest::Approx(static_cast<double>(N)));
        auto dft = moment_full(1, N, ctx, MomentMethod::dft);
        CHECK(dft.value == doctest::Approx(static_cast<double>(N)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("dft equals the exact count") {
    auto ctx = validate_context(5, 2);
    auto cnt = moment_full(2, 3, ctx, MomentMethod::count);
    auto dft = moment_full(2, 3, ctx, MomentMethod::dft);
    CHECK(std::abs(dft.value - cnt.value) / cnt.value < 1e-6);
  }

  SUBCASE("equation regime instance") {
    auto ctx = validate_context(20011, 2);
    auto rec = moment_full(2, 10, ctx, MomentMethod::count);
    CHECK(rec.exact == static_cast<u128>(190));
  }

  SUBCASE("record invariants") {
    auto ctx = validate_context(7, 2);
    auto rec = moment_full(2, 4, ctx, MomentMethod::count);
    CHECK(rec.set_kind == "full");
    CHECK(rec.method == "count");
    CHECK(rec.value >= 0.0);
    CHECK(rec.stderr_value == 0.0);
  }

  SUBCASE("odd raw exponent rejects the count method") {
    auto ctx = validate_context(7, 2);
    try {
      moment_full_exponent(3, 4, ctx, MomentMethod::count);
      FAIL("expected OddExponentWithCountMethod");
    } catch (const error& e) {
      CHECK(e.code() == errc::odd_exponent_with_count_method);
    }
    auto rec = moment_full_exponent(3, 4, ctx, MomentMethod::dft);
    CHECK(rec.value > 0.0);
  }

  SUBCASE("dft budget is estimated up front") {
    auto ctx = validate_context(101, 3);
    Budget tiny;
    tiny.max_sum_evals = 1000;
    try {
      moment_full(1, 5, ctx, MomentMethod::dft, {}, tiny);
      FAIL("expected WorkBudgetExceeded");
    } catch (const error& e) {
      CHECK(e.code() == errc::work_budget_exceeded);
    }
  }
}

TEST_CASE("counts match the spectral representation at nonzero shifts") {
  // count = (1/p^d) sum_a |S(a;N)|^{2s} e_p(-<a,h>), checked for real h != 0
  auto ctx = validate_context(7, 2);
  CharacterTable table(7);
  for (int s : {1, 2}) {
    for (auto raw : {std::vector<i64>{1, 0}, std::vector<i64>{3, 5}, std::vector<i64>{0, 2}}) {
      auto shift = make_shift_residue(raw, ctx);
      KahanSum real_part;
      for (i64 a1 = 0; a1 < 7; ++a1)
        for (i64 a2 = 0; a2 < 7; ++a2) {
          std::vector<i64> avec{a1, a2};
          auto coeffs = make_coefficients(avec, ctx);
          double norm = std::norm(exp_sum(coeffs, 5, ctx));
          double power = 1.0;
          for (int i = 0; i < s; ++i) power *= norm;
          Complex twist = std::conj(table(reduce_mod(a1 * raw[0] + a2 * raw[1], 7)));
          real_part.add(power * twist.real());
        }
      double expected = real_part.value() / 49.0;
      u128 count = count_mod_solutions(s, 5, shift, ctx);
      CHECK(std::abs(expected - static_cast<double>(count)) < 1e-6);
    }
  }
}

TEST_CASE("mean-square lower bound") {
  for (u64 p : {5ull, 7ull}) {
    auto ctx = validate_context(p, 2);
    for (int s : {1, 2, 3}) {
      for (u64 N = 1; N <= p; ++N) {
        u128 count = count_mod_solutions(s, N, rzero(ctx), ctx);
        CHECK(count >= pow_u128(N, 2 * s) / pow_u128(p, ctx.d));
      }
    }
  }
}

TEST_CASE("restricted moments") {
  SUBCASE("the full box reproduces the full moment") {
    auto ctx = validate_context(7, 2);
    BoxSet box;
    box.offsets = {0, 0};
    box.side = 7;
    auto restricted = moment_restricted(box, 4, ctx.p - 2, ctx);
    auto full = moment_full(2, ctx.p - 2, ctx, MomentMethod::dft);
    CHECK(std::abs(restricted.value - full.value) < 1e-9);
  }

  SUBCASE("the zero singleton gives N^k") {
    auto ctx = validate_context(7, 2);
    ExplicitSet zero;
    zero.points = {{0, 0}};
    auto rec = moment_restricted(zero, 4, 5, ctx);
    CHECK(rec.value == doctest::Approx(std::pow(5.0, 4)).epsilon(1e-12));
  }

  SUBCASE("moment curve average matches direct enumeration") {
    auto ctx = validate_context(7, 2);
    auto rec = moment_restricted(MomentCurve{}, 2, 3, ctx);
    double expected = 0.0;
    for (i64 t = 0; t < 7; ++t) {
      double v = abs_sum({t, (t * t) % 7}, 3, ctx);
      expected += v * v;
    }
    expected /= 7.0;
    CHECK(rec.value == doctest::Approx(expected).epsilon(1e-9));
    CHECK(rec.set_kind == "moment_curve");
  }

  SUBCASE("parametric curves collapse duplicate points") {
    auto ctx = validate_context(7, 2);
    PolyCurve constant;
    constant.coeffs = {{1}, {2}};  // f_1 = 1, f_2 = 2: one point
    auto rec = moment_restricted(constant, 2, 4, ctx);
    double v = abs_sum({1, 2}, 4, ctx);
    CHECK(rec.value == doctest::Approx(v * v).epsilon(1e-9));
  }

  SUBCASE("duplicate explicit points are rejected") {
    auto ctx = validate_context(7, 2);
    ExplicitSet dup;
    dup.points = {{1, 2}, {8, 2}};  // 8 = 1 mod 7
    CHECK_THROWS_AS(moment_restricted(dup, 2, 4, ctx), error);
  }

  SUBCASE("empty set") {
    auto ctx = validate_context(7, 2);
    ExplicitSet empty;
    try {
      moment_restricted(empty, 2, 4, ctx);
      FAIL("expected EmptySet");
    } catch (const error& e) {
      CHECK(e.code() == errc::empty_set);
    }
  }

  SUBCASE("odd exponents are fine by direct evaluation") {
    auto ctx = validate_context(7, 2);
    auto rec = moment_restricted(MomentCurve{}, 3, 4, ctx);
    CHECK(rec.value > 0.0);
  }

  SUBCASE("auto switches to sampling when enumeration is too large") {
    auto ctx = validate_context(13, 3);
    Budget tiny;
    tiny.max_sum_evals = 100;  // p^d = 2197 points
    BoxSet box;
    box.offsets = {0, 0, 0};
    box.side = 13;
    SampleSpec sample{200, 99};
    auto rec = moment_restricted(box, 2, 6, ctx, RestrictedMethod::automatic, sample, tiny);
    CHECK(rec.method == "sample");
    CHECK(rec.seed == 99);
    CHECK(rec.stderr_value > 0.0);
    try {
      moment_restricted(box, 2, 6, ctx, RestrictedMethod::enumerate, sample, tiny);
      FAIL("expected WorkBudgetExceeded");
    } catch (const error& e) {
      CHECK(e.code() == errc::work_budget_exceeded);
    }
  }
}

TEST_CASE("sampling is unbiased and replayable") {
  auto ctx = validate_context(7, 2);
  auto exact = moment_full(1, 5, ctx, MomentMethod::dft);
  for (u64 seed : {1ull, 7ull, 123ull}) {
    SampleSpec sample{600, seed};
    auto rec = moment_full(1, 5, ctx, MomentMethod::sample, sample);
    CHECK(rec.stderr_value > 0.0);
    CHECK(std::abs(rec.value - exact.value) <= 3.0 * rec.stderr_value + 1e-9);
    auto again = moment_full(1, 5, ctx, MomentMethod::sample, sample);
    CHECK(rec.value == again.value);
    CHECK(rec.stderr_value == again.stderr_value);
  }
}

TEST_CASE("weighted box moments") {
  auto ctx = validate_context(11, 2);

  SUBCASE("unit weights over the full box equal the full moment") {
    BoxSet box;
    box.offsets = {0, 0};
    box.side = 11;
    auto weighted = moment_weighted_box(box, unit_weights(4), 1, 4, ctx);
    auto full = moment_full(1, 4, ctx, MomentMethod::dft);
    CHECK(std::abs(weighted.value - full.value) < 1e-9);
  }

  SUBCASE("zero weights vanish") {
    BoxSet box;
    box.offsets = {0, 0};
    box.side = 3;
    WeightSequence zeros;
    zeros.gamma.assign(4, Complex{0, 0});
    auto rec = moment_weighted_box(box, zeros, 1, 4, ctx);
    CHECK(rec.value == 0.0);
  }

  SUBCASE("small box matches a direct nine-term average") {
    BoxSet box;
    box.offsets = {0, 0};
    box.side = 3;
    auto rec = moment_weighted_box(box, unit_weights(4), 1, 4, ctx);
    double expected = 0.0;
    for (i64 a1 = 1; a1 <= 3; ++a1)
      for (i64 a2 = 1; a2 <= 3; ++a2) {
        double v = abs_sum({a1, a2}, 4, ctx);
        expected += v * v;
      }
    expected /= 9.0;
    CHECK(rec.value == doctest::Approx(expected).epsilon(1e-9));
  }

  SUBCASE("wrap-around boxes are flagged") {
    BoxSet box;
    box.offsets = {9, 0};
    box.side = 4;  // points 10, 11=0, 1, 2 in the first axis
    auto rec = moment_weighted_box(box, unit_weights(4), 1, 4, ctx);
    bool wrapped = false;
    for (const auto& flag : rec.flags) wrapped = wrapped || flag == "wrapped";
    CHECK(wrapped);
  }
}

TEST_CASE("maximal operator") {
  SUBCASE("zero fixed block attains N") {
    auto ctx = validate_context(7, 2);
    PermutedSplit split;
    split.perm = {1, 2};
    split.k = 1;
    split.fixed = {0};
    auto result = maximal_operator(split, 5, ctx);
    CHECK(result.exhaustive);
    CHECK(result.value == doctest::Approx(5.0).epsilon(1e-9));
  }

  SUBCASE("k = d reduces to a single sum") {
    auto ctx = validate_context(7, 2);
    PermutedSplit split;
    split.perm = {2, 1};  // fixed values attach to slots 2 then 1
    split.k = 2;
    split.fixed = {3, 4};
    auto result = maximal_operator(split, 6, ctx);
    CHECK(result.value == doctest::Approx(abs_sum({4, 3}, 6, ctx)).epsilon(1e-12));
  }

  SUBCASE("full scan matches direct enumeration") {
    auto ctx = validate_context(7, 2);
    PermutedSplit split;
    split.perm = {1, 2};
    split.k = 1;
    split.fixed = {1};
    auto result = maximal_operator(split, 4, ctx);
    double expected = 0.0;
    for (i64 c = 0; c < 7; ++c) expected = std::max(expected, abs_sum({1, c}, 4, ctx));
    CHECK(result.value == doctest::Approx(expected).epsilon(1e-12));
    // dominates every spot check
    for (i64 c : {0, 2, 5}) CHECK(result.value >= abs_sum({1, c}, 4, ctx) - 1e-12);
  }

  SUBCASE("sampled mode is a lower bound") {
    auto ctx = validate_context(101, 3);
    PermutedSplit split;
    split.perm = {1, 2, 3};
    split.k = 1;
    split.fixed = {5};
    Budget tiny;
    tiny.max_sum_evals = 100;  // p^2 = 10201 exceeds it
    SampleSpec sample{50, 3};
    auto result = maximal_operator(split, 20, ctx, tiny, &sample);
    CHECK_FALSE(result.exhaustive);
    CHECK(result.value <= 20.0 + 1e-9);
    std::vector<i64> probe{5, 1, 1};
    // exhaustive would dominate; sampled only promises a lower bound
    CHECK(result.value >= 0.0);
    try {
      maximal_operator(split, 20, ctx, tiny, nullptr);
      FAIL("expected WorkBudgetExceeded");
    } catch (const error& e) {
      CHECK(e.code() == errc::work_budget_exceeded);
    }
  }

  SUBCASE("bad permutations are rejected") {
    auto ctx = validate_context(7, 2);
    PermutedSplit split;
    split.perm = {1, 1};
    split.k = 0;
    CHECK_THROWS_AS(maximal_operator(split, 4, ctx), error);
  }
}
