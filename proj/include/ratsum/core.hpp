#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratsum {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using Complex = std::complex<double>;

enum class errc {
  not_prime,
  degree_out_of_range,
  range_error,
  weight_out_of_range,
  zero_vector,
  capacity_exceeded,
  work_budget_exceeded,
  odd_exponent_with_count_method,
  empty_set,
  parameter_domain,
  schema_error,
  io_error,
};

/// Typed error; the message starts with the error name so CLI output and
/// tests can match on it (e.g. "NotPrime: 9 = 3*3").
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

const char* errc_name(errc code) noexcept;
[[noreturn]] void raise(errc code, const std::string& detail);

// Resource limits shared by all expensive operations. Costs are estimated
// up front; an operation that would exceed its limit throws before
// allocating anything.
struct Budget {
  u64 max_sum_evals = 10'000'000;     // exponential-sum evaluations per call
  u64 max_table_entries = 50'000'000; // distribution entries incl. pre-merge buffers
  u64 max_naive_ops = 100'000'000;    // tuple enumerations for oracle counters
  unsigned parallelism = 1;           // worker count for independent grid rows
};

std::string u128_to_string(u128 value);
std::optional<u128> u128_from_string(const std::string& text);

bool is_prime_u64(u64 n);

u64 mul_mod(u64 a, u64 b, u64 p);
u64 pow_mod(u64 base, u64 exp, u64 p);
/// Reduce a signed integer into [0, p-1].
u64 reduce_mod(i64 value, u64 p);

/// Prime modulus plus polynomial degree; every other module works relative
/// to one of these.
struct FieldContext {
  u64 p = 0;
  int d = 0;
};

/// Checks p prime and 2 <= d < p. Throws NotPrime / DegreeOutOfRange.
FieldContext validate_context(u64 p, int d);

enum class Domain { residue, integer };

/// (n, n^2, ..., n^d), reduced mod p in the residue domain.
struct PowerSumVector {
  std::vector<i64> components;
  Domain domain = Domain::residue;
};

PowerSumVector power_sum_vector(u64 n, const FieldContext& ctx, Domain domain);

/// Coefficient vector a in F_p^d. Accepts arbitrary signed integers and
/// reduces them at the boundary.
struct CoefficientVector {
  std::vector<u64> a;

  bool is_zero() const;
};

CoefficientVector make_coefficients(std::span<const i64> raw, const FieldContext& ctx);

/// exp(2*pi*i*z/p). z may be any signed integer.
Complex additive_character(i64 z, u64 p);

/// Table of the p character values; worth building when a loop touches a
/// sizable fraction of the residues.
class CharacterTable {
public:
  explicit CharacterTable(u64 p);
  const Complex& operator()(u64 residue) const { return values_[residue]; }
  u64 p() const { return p_; }

private:
  u64 p_;
  std::vector<Complex> values_;
};

/// d-dimensional shift with derived leading index (smallest nu with
/// h_nu != 0; absent for the zero shift).
struct ShiftVector {
  std::vector<i64> h;
  Domain flavor = Domain::residue;
  std::optional<int> ell;

  bool is_zero() const { return !ell.has_value(); }
};

ShiftVector make_shift_residue(std::span<const i64> raw, const FieldContext& ctx);
ShiftVector make_shift_integer(std::span<const i64> raw, int d);
/// Componentwise negation (mod p for the residue flavor).
ShiftVector negate_shift(const ShiftVector& shift, const FieldContext& ctx);
ShiftVector reduce_shift(const ShiftVector& integer_shift, const FieldContext& ctx);

/// Compensated (Kahan) accumulator; keeps grid sweeps deterministic.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanComplex {
public:
  void add(const Complex& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

private:
  KahanSum re_;
  KahanSum im_;
};

/// Counter-based deterministic generator: value(i) depends only on
/// (seed, i), so streams can be replayed and split freely.
class CounterRng {
public:
  explicit CounterRng(u64 seed) : seed_(seed) {}

  u64 next();
  /// Uniform in [0, bound) by rejection; exact, no modulo bias.
  u64 next_below(u64 bound);

private:
  u64 seed_;
  u64 counter_ = 0;
};

}  // namespace ratsum
