#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "ratsum/core.hpp"

namespace ratsum {

namespace detail {

/// Sparse multiset over a d-dimensional integer box, stored as parallel
/// sorted (packed key, count) vectors. Packing is mixed-radix over the
/// per-axis ranges; the whole key space must fit in 64 bits.
struct SparseTable {
  std::vector<i64> lo;
  std::vector<i64> hi;
  std::vector<u64> stride;
  std::vector<u64> keys;    // sorted ascending
  std::vector<u64> counts;  // parallel to keys

  static std::vector<u64> make_strides(std::span<const i64> lo, std::span<const i64> hi);

  bool in_box(std::span<const i64> v) const;
  u64 pack(std::span<const i64> v) const;
  void unpack(u64 key, std::span<i64> out) const;
  u64 lookup(u64 key) const;
  u128 total() const;

  /// Sorts and merges duplicate keys of (key, count) pairs into this table.
  void assign_sorted(std::vector<std::pair<u64, u64>>&& buffer);
};

}  // namespace detail

/// Multiplicity table of s-fold sums of power-sum vectors over n in [1,N]:
/// table[v] = #{(n_1..n_s) : sum_i (n_i, n_i^2, ..., n_i^d) = v}, with the
/// component arithmetic mod p in the residue domain and exact over Z in the
/// integer domain. Total mass is N^s exactly.
class PowerSumDistribution {
public:
  static PowerSumDistribution build(int s, u64 N, const FieldContext& ctx, Domain domain,
                                    const Budget& budget = {});

  int fold() const { return s_; }
  u64 range() const { return N_; }
  Domain domain() const { return domain_; }
  const FieldContext& context() const { return ctx_; }
  std::size_t support_size() const { return table_.keys.size(); }
  u128 total_mass() const { return table_.total(); }

  /// Multiplicity of one power-sum vector (0 outside the support).
  u64 count_at(std::span<const i64> components) const;

  /// sum_v this(v) * other(v - shift); componentwise mod p in the residue
  /// domain, exact in the integer domain.
  u128 correlate(const PowerSumDistribution& other, std::span<const i64> shift) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    std::vector<i64> comps(table_.lo.size());
    for (std::size_t i = 0; i < table_.keys.size(); ++i) {
      table_.unpack(table_.keys[i], comps);
      fn(std::span<const i64>(comps), table_.counts[i]);
    }
  }

  void save(std::ostream& out) const;
  static PowerSumDistribution load(std::istream& in);

  const detail::SparseTable& table() const { return table_; }

private:
  PowerSumDistribution() = default;

  FieldContext ctx_;
  int s_ = 0;
  u64 N_ = 0;
  Domain domain_ = Domain::residue;
  detail::SparseTable table_;

  friend PowerSumDistribution build_folds(int s, u64 N, int d, u64 p, Domain domain,
                                          const Budget& budget);
};

enum class CountStrategy { automatic, direct, halves };

/// Solutions of the mod-p system sum_{i<=s} n_i^nu = sum_{i<=s} n_{s+i}^nu + h_nu
/// (nu = 1..d) with all n_i in [1, N]. Shift taken mod p.
u128 count_mod_solutions(int s, u64 N, const ShiftVector& shift, const FieldContext& ctx,
                         const Budget& budget = {},
                         CountStrategy strategy = CountStrategy::automatic);

/// Same count from a prebuilt (possibly cached) distribution.
u128 count_from_distribution(const PowerSumDistribution& dist, const ShiftVector& shift);

/// Same system over the integers, with an integer shift; d is the shift length.
u128 count_integer_solutions(int s, u64 N, const ShiftVector& shift, const Budget& budget = {},
                             CountStrategy strategy = CountStrategy::automatic);

/// Oracle counters by direct enumeration of all 2s-tuples.
u128 count_mod_solutions_naive(int s, u64 N, const ShiftVector& shift, const FieldContext& ctx,
                               const Budget& budget = {});
u128 count_integer_solutions_naive(int s, u64 N, const ShiftVector& shift,
                                   const Budget& budget = {});

/// Box side lengths H_i in [1, p]; the derived windows are the integer
/// intervals [-floor(p/H_i), floor(p/H_i)].
struct WindowSpec {
  std::vector<u64> H;
};

WindowSpec make_window(std::span<const u64> sides, const FieldContext& ctx);
i64 window_halfwidth(const WindowSpec& window, std::size_t axis, const FieldContext& ctx);

/// Solutions of sum_{j<=2s} (-1)^j n_j^i = u_i (mod p), i = 1..d, with
/// n_j in [1,N] and integer u_i in the i-th window. Power maps only.
u128 count_window_solutions(int s, u64 N, const WindowSpec& window, const FieldContext& ctx,
                            const Budget& budget = {});
u128 count_window_solutions(const PowerSumDistribution& dist, const WindowSpec& window,
                            const Budget& budget = {});

/// Exact rewrite of the zero-shift mod-p count as a sum of integer counts
/// taken at shifts p*m: terms carry only the m with a nonzero contribution.
struct CongruenceDecomposition {
  int threshold_k = 0;  // leading coordinates whose m_j is forced to zero
  std::vector<std::pair<std::vector<i64>, u128>> terms;
  u128 reconstructed = 0;
};

CongruenceDecomposition decompose_mod_count(int s, u64 N, const FieldContext& ctx,
                                            const Budget& budget = {});

}  // namespace ratsum
