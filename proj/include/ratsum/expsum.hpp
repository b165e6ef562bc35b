#pragma once

#include <span>
#include <vector>

#include "ratsum/core.hpp"

namespace ratsum {

/// Per-term complex weights gamma_n with |gamma_n| <= 1.
struct WeightSequence {
  std::vector<Complex> gamma;
};

WeightSequence unit_weights(u64 n);
WeightSequence alternating_weights(u64 n);
/// Validates |gamma_n| <= 1 + 1e-12 for every term.
void check_weights(const WeightSequence& weights);

/// Sum of e_p(a_1 n + ... + a_d n^d) over n = 1..N. Requires 1 <= N <= p.
Complex exp_sum(const CoefficientVector& a, u64 N, const FieldContext& ctx);

/// Weighted variant: sum of gamma_n e_p(a_1 n + ... + a_d n^d).
Complex exp_sum_weighted(const CoefficientVector& a, const WeightSequence& weights, u64 N,
                         const FieldContext& ctx);

/// The polynomials transporting a shift into the phase of the auxiliary
/// sum: psi_nu(h;X) = sum_{i=0}^{nu-1} binom(nu,i) h_{nu-i} X^i, one per
/// nu = 1..d, coefficients mod p (index i holds the X^i coefficient).
struct ShiftPolynomialSet {
  std::vector<std::vector<u64>> psi;
};

ShiftPolynomialSet build_shift_polynomials(const ShiftVector& shift, const FieldContext& ctx);

/// Auxiliary sum over u = 1..N of e_p(a_1 psi_1(h;u) + ... + a_d psi_d(h;u)).
Complex shifted_exp_sum(const CoefficientVector& a, const ShiftVector& shift, u64 N,
                        const FieldContext& ctx);

/// Slack of the complete-sum bound: (d-1) sqrt(p) - |S(a;p)| for a != 0.
double weil_margin(const CoefficientVector& a, const FieldContext& ctx);

/// Phase-polynomial evaluation for one n, reduced mod p; shared by the sum
/// evaluators and by the enumeration loops in the moments module.
u64 phase_at(const CoefficientVector& a, u64 n, const FieldContext& ctx);

/// binom(nu, i) mod p for nu <= d < p (Pascal over the integers, reduced).
std::vector<std::vector<u64>> binomial_table_mod(int d, u64 p);

}  // namespace ratsum
