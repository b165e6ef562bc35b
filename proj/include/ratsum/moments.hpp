#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ratsum/counting.hpp"
#include "ratsum/core.hpp"
#include "ratsum/expsum.hpp"

namespace ratsum {

enum class MomentMethod { count, dft, sample };
enum class RestrictedMethod { automatic, enumerate, sample };

struct SampleSpec {
  u64 samples = 0;
  u64 seed = 0;
};

/// One measurement row. `value` is the normalized mean (1/U) sum |S|^rho;
/// exact integer counts additionally land in `exact`.
struct MomentRecord {
  u64 p = 0;
  int d = 0;
  int s_or_k = 0;
  u64 N = 0;
  std::string set_kind;
  std::string method;
  double value = 0.0;
  double stderr_value = 0.0;
  u64 seed = 0;
  std::optional<u128> exact;
  std::vector<std::string> flags;
};

/// Full 2s-th moment over all of F_p^d. The count method returns the exact
/// solution count of the zero-shift system (orthogonality makes the two
/// equal); dft enumerates every coefficient vector; sample draws them.
MomentRecord moment_full(int s, u64 N, const FieldContext& ctx, MomentMethod method,
                         const SampleSpec& sample = {}, const Budget& budget = {});

/// General exponent rho >= 1; the count method requires rho even.
MomentRecord moment_full_exponent(int rho, u64 N, const FieldContext& ctx, MomentMethod method,
                                  const SampleSpec& sample = {}, const Budget& budget = {});

/// Coefficient sets to average over: a wrapped box [A_i+1, A_i+H]^d, the
/// curve (t, t^2, ..., t^d), a parametric polynomial curve, or an explicit
/// duplicate-free list.
struct BoxSet {
  std::vector<i64> offsets;  // A_i, reduced mod p
  u64 side = 0;              // H, 1 <= H <= p
};
struct MomentCurve {};
struct PolyCurve {
  std::vector<std::vector<i64>> coeffs;  // coeffs[i] = f_{i+1}, ascending powers
};
struct ExplicitSet {
  std::vector<std::vector<i64>> points;
};
using SetGenerator = std::variant<BoxSet, MomentCurve, PolyCurve, ExplicitSet>;

u64 set_cardinality(const SetGenerator& gen, const FieldContext& ctx);

/// (1/U) sum over the set of |S(a;N)|^exponent. Falls back to sampling when
/// enumeration exceeds the budget and the method allows it.
MomentRecord moment_restricted(const SetGenerator& gen, int exponent, u64 N,
                               const FieldContext& ctx,
                               RestrictedMethod method = RestrictedMethod::automatic,
                               const SampleSpec& sample = {}, const Budget& budget = {});

/// (1/H^d) sum over the box of |S(a, gamma; N)|^{2s}.
MomentRecord moment_weighted_box(const BoxSet& box, const WeightSequence& weights, int s, u64 N,
                                 const FieldContext& ctx, const Budget& budget = {});

/// Coefficient split for the maximal operator: slots perm(1..k) carry the
/// fixed values, the remaining slots range over all of F_p^{d-k}.
struct PermutedSplit {
  std::vector<int> perm;  // permutation of 1..d
  int k = 0;
  std::vector<i64> fixed;  // k values
};

struct MaximalResult {
  double value = 0.0;
  bool exhaustive = true;  // sampled runs only certify a lower bound
  u64 samples = 0;
  u64 seed = 0;
};

MaximalResult maximal_operator(const PermutedSplit& split, u64 N, const FieldContext& ctx,
                               const Budget& budget = {}, const SampleSpec* sample = nullptr);

}  // namespace ratsum
