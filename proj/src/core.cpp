#include "ratsum/core.hpp"

#include <cmath>
#include <numbers>

namespace ratsum {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::not_prime: return "NotPrime";
    case errc::degree_out_of_range: return "DegreeOutOfRange";
    case errc::range_error: return "RangeError";
    case errc::weight_out_of_range: return "WeightOutOfRange";
    case errc::zero_vector: return "ZeroVector";
    case errc::capacity_exceeded: return "CapacityExceeded";
    case errc::work_budget_exceeded: return "WorkBudgetExceeded";
    case errc::odd_exponent_with_count_method: return "OddExponentWithCountMethod";
    case errc::empty_set: return "EmptySet";
    case errc::parameter_domain: return "ParameterDomainViolation";
    case errc::schema_error: return "SchemaError";
    case errc::io_error: return "IoError";
  }
  return "Error";
}

void raise(errc code, const std::string& detail) {
  throw error(code, std::string(errc_name(code)) + ": " + detail);
}

std::string u128_to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<unsigned>(value % 10)));
    value /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

std::optional<u128> u128_from_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  u128 value = 0;
  constexpr u128 max = ~static_cast<u128>(0);
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    unsigned digit = static_cast<unsigned>(c - '0');
    if (value > (max - digit) / 10) return std::nullopt;
    value = value * 10 + digit;
  }
  return value;
}

u64 mul_mod(u64 a, u64 b, u64 p) {
  return static_cast<u64>((static_cast<u128>(a) * b) % p);
}

u64 pow_mod(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1;
  }
  return result;
}

u64 reduce_mod(i64 value, u64 p) {
  i64 r = value % static_cast<i64>(p);
  if (r < 0) r += static_cast<i64>(p);
  return static_cast<u64>(r);
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // composite witness found
}

}  // namespace

// Deterministic Miller-Rabin; this base set decides primality for all
// 64-bit inputs.
bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == small) return true;
    if (n % small == 0) return false;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

FieldContext validate_context(u64 p, int d) {
  if (!is_prime_u64(p)) raise(errc::not_prime, std::to_string(p) + " is not prime");
  if (d < 2) raise(errc::degree_out_of_range, "degree " + std::to_string(d) + " < 2");
  if (static_cast<u64>(d) >= p)
    raise(errc::degree_out_of_range,
          "degree " + std::to_string(d) + " requires d < p = " + std::to_string(p));
  return FieldContext{p, d};
}

PowerSumVector power_sum_vector(u64 n, const FieldContext& ctx, Domain domain) {
  if (n == 0) raise(errc::range_error, "n must be >= 1");
  PowerSumVector v;
  v.domain = domain;
  v.components.reserve(static_cast<std::size_t>(ctx.d));
  if (domain == Domain::residue) {
    u64 acc = n % ctx.p;
    u64 base = acc;
    for (int nu = 1; nu <= ctx.d; ++nu) {
      v.components.push_back(static_cast<i64>(acc));
      acc = mul_mod(acc, base, ctx.p);
    }
  } else {
    u128 acc = n;
    for (int nu = 1; nu <= ctx.d; ++nu) {
      if (acc > static_cast<u128>(INT64_MAX))
        raise(errc::capacity_exceeded, "integer power exceeds 63 bits");
      v.components.push_back(static_cast<i64>(acc));
      acc *= n;
    }
  }
  return v;
}

bool CoefficientVector::is_zero() const {
  for (u64 c : a)
    if (c != 0) return false;
  return true;
}

CoefficientVector make_coefficients(std::span<const i64> raw, const FieldContext& ctx) {
  if (raw.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "coefficient vector needs exactly d = " + std::to_string(ctx.d) +
                                 " entries, got " + std::to_string(raw.size()));
  CoefficientVector out;
  out.a.reserve(raw.size());
  for (i64 c : raw) out.a.push_back(reduce_mod(c, ctx.p));
  return out;
}

Complex additive_character(i64 z, u64 p) {
  u64 r = reduce_mod(z, p);
  double arg = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
  return {std::cos(arg), std::sin(arg)};
}

CharacterTable::CharacterTable(u64 p) : p_(p) {
  values_.reserve(p);
  for (u64 z = 0; z < p; ++z) values_.push_back(additive_character(static_cast<i64>(z), p));
}

namespace {

std::optional<int> leading_index(std::span<const i64> h) {
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0) return static_cast<int>(i) + 1;
  return std::nullopt;
}

}  // namespace

ShiftVector make_shift_residue(std::span<const i64> raw, const FieldContext& ctx) {
  if (raw.size() != static_cast<std::size_t>(ctx.d))
    raise(errc::range_error, "shift vector needs exactly d = " + std::to_string(ctx.d) +
                                 " entries, got " + std::to_string(raw.size()));
  ShiftVector s;
  s.flavor = Domain::residue;
  s.h.reserve(raw.size());
  for (i64 v : raw) s.h.push_back(static_cast<i64>(reduce_mod(v, ctx.p)));
  s.ell = leading_index(s.h);
  return s;
}

ShiftVector make_shift_integer(std::span<const i64> raw, int d) {
  if (raw.size() != static_cast<std::size_t>(d))
    raise(errc::range_error, "shift vector needs exactly d = " + std::to_string(d) +
                                 " entries, got " + std::to_string(raw.size()));
  ShiftVector s;
  s.flavor = Domain::integer;
  s.h.assign(raw.begin(), raw.end());
  s.ell = leading_index(s.h);
  return s;
}

ShiftVector negate_shift(const ShiftVector& shift, const FieldContext& ctx) {
  ShiftVector out = shift;
  for (i64& v : out.h) {
    if (shift.flavor == Domain::residue) {
      v = v == 0 ? 0 : static_cast<i64>(ctx.p) - v;
    } else {
      v = -v;
    }
  }
  return out;
}

ShiftVector reduce_shift(const ShiftVector& integer_shift, const FieldContext& ctx) {
  std::vector<i64> reduced;
  reduced.reserve(integer_shift.h.size());
  for (i64 v : integer_shift.h) reduced.push_back(static_cast<i64>(reduce_mod(v, ctx.p)));
  return make_shift_residue(reduced, ctx);
}

namespace {

u64 splitmix64(u64 x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

u64 CounterRng::next() {
  return splitmix64(seed_ ^ splitmix64(counter_++));
}

u64 CounterRng::next_below(u64 bound) {
  if (bound == 0) raise(errc::range_error, "sampling bound must be positive");
  u64 limit = UINT64_MAX - UINT64_MAX % bound;
  u64 x = next();
  while (x >= limit) x = next();
  return x % bound;
}

}  // namespace ratsum
