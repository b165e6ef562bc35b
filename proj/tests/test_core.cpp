#include <doctest.h>

#include <cmath>
#include <functional>

#include "ratsum/core.hpp"

using namespace ratsum;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return errc::io_error;
}

}  // namespace

TEST_CASE("context validation") {
  auto ctx = validate_context(7, 3);
  CHECK(ctx.p == 7);
  CHECK(ctx.d == 3);
  CHECK(code_of([] { validate_context(9, 2); }) == errc::not_prime);
  CHECK(code_of([] { validate_context(5, 5); }) == errc::degree_out_of_range);
  CHECK(code_of([] { validate_context(5, 1); }) == errc::degree_out_of_range);
  CHECK(code_of([] { validate_context(2, 2); }) == errc::degree_out_of_range);
}

TEST_CASE("primality battery") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(20011));
  CHECK(is_prime_u64(499));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(9));
  CHECK_FALSE(is_prime_u64(561));          // Carmichael
  CHECK_FALSE(is_prime_u64(3215031751ull));  // strong pseudoprime to bases 2,3,5,7
  CHECK(is_prime_u64(18446744073709551557ull));
}

TEST_CASE("power sum vectors") {
  auto ctx = validate_context(5, 3);
  auto v = power_sum_vector(2, ctx, Domain::residue);
  CHECK(v.components == std::vector<i64>{2, 4, 3});

  auto ones = power_sum_vector(1, validate_context(11, 4), Domain::residue);
  CHECK(ones.components == std::vector<i64>{1, 1, 1, 1});

  auto plain = power_sum_vector(3, validate_context(7, 2), Domain::integer);
  CHECK(plain.components == std::vector<i64>{3, 9});
}

TEST_CASE("residue components match integer components mod p") {
  auto ctx = validate_context(13, 3);
  for (u64 n = 1; n <= 13; ++n) {
    auto residue = power_sum_vector(n, ctx, Domain::residue);
    auto integer = power_sum_vector(n, ctx, Domain::integer);
    for (int nu = 0; nu < ctx.d; ++nu)
      CHECK(residue.components[nu] == static_cast<i64>(reduce_mod(integer.components[nu], ctx.p)));
  }
}

TEST_CASE("additive character") {
  auto one = additive_character(0, 7);
  CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.imag() == doctest::Approx(0.0).epsilon(1e-12));

  // complete geometric sum vanishes
  Complex total{0, 0};
  for (i64 z = 0; z < 11; ++z) total += additive_character(z, 11);
  CHECK(std::abs(total) < 1e-9);

  // group law on a sampled set
  for (i64 z1 : {0, 1, 3, 9, 10}) {
    for (i64 z2 : {0, 2, 5, 7}) {
      Complex lhs = additive_character(z1, 11) * additive_character(z2, 11);
      Complex rhs = additive_character((z1 + z2) % 11, 11);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }

  // unit modulus
  for (i64 z = 0; z < 13; ++z) {
    Complex c = additive_character(z, 13);
    CHECK(std::abs(c.real() * c.real() + c.imag() * c.imag() - 1.0) <= 1e-12);
  }

  CharacterTable table(11);
  for (u64 z = 0; z < 11; ++z)
    CHECK(std::abs(table(z) - additive_character(static_cast<i64>(z), 11)) == 0.0);
}

TEST_CASE("signed reduction and coefficient boundary") {
  CHECK(reduce_mod(-1, 7) == 6);
  CHECK(reduce_mod(-14, 7) == 0);
  CHECK(reduce_mod(20, 7) == 6);

  auto ctx = validate_context(7, 2);
  std::vector<i64> raw{-3, 15};
  auto coeffs = make_coefficients(raw, ctx);
  CHECK(coeffs.a == std::vector<u64>{4, 1});
  CHECK_FALSE(coeffs.is_zero());
}

TEST_CASE("shift vectors derive the leading index") {
  auto ctx = validate_context(7, 3);
  std::vector<i64> raw{0, 0, 2};
  auto shift = make_shift_residue(raw, ctx);
  CHECK(shift.ell == 3);
  CHECK_FALSE(shift.is_zero());

  std::vector<i64> zero{0, 0, 0};
  auto z = make_shift_residue(zero, ctx);
  CHECK_FALSE(z.ell.has_value());
  CHECK(z.is_zero());

  std::vector<i64> neg{-1, 0, 0};
  auto reduced = make_shift_residue(neg, ctx);
  CHECK(reduced.h == std::vector<i64>{6, 0, 0});
  CHECK(reduced.ell == 1);

  auto negated = negate_shift(reduced, ctx);
  CHECK(negated.h == std::vector<i64>{1, 0, 0});

  std::vector<i64> wide{9, -2, 0};
  auto integer = make_shift_integer(wide, 3);
  CHECK(integer.flavor == Domain::integer);
  CHECK(integer.ell == 1);
  auto wrapped = reduce_shift(integer, ctx);
  CHECK(wrapped.h == std::vector<i64>{2, 5, 0});
}

TEST_CASE("wide integer strings") {
  CHECK(u128_to_string(0) == "0");
  CHECK(u128_to_string(190) == "190");
  u128 big = static_cast<u128>(UINT64_MAX) * 3 + 7;
  CHECK(u128_from_string(u128_to_string(big)) == big);
  CHECK_FALSE(u128_from_string("12x").has_value());
  CHECK_FALSE(u128_from_string("").has_value());
}

TEST_CASE("counter rng replays and respects bounds") {
  CounterRng a(42);
  CounterRng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  CounterRng c(7);
  for (int i = 0; i < 1000; ++i) CHECK(c.next_below(13) < 13);

  CounterRng d(7);
  CounterRng e(8);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i)
    if (d.next() != e.next()) all_equal = false;
  CHECK_FALSE(all_equal);
}

TEST_CASE("compensated accumulation") {
  KahanSum acc;
  for (int i = 0; i < 10'000'000; ++i) acc.add(0.1);
  CHECK(acc.value() == doctest::Approx(1'000'000.0).epsilon(1e-12));
}
