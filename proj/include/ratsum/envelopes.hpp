#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratsum/counting.hpp"
#include "ratsum/core.hpp"
#include "ratsum/expsum.hpp"

namespace ratsum {

/// One tag per bound formula the verifier can evaluate. The tag strings are
/// part of the report format.
enum class EnvelopeKind {
  weil_1_1,
  incomplete_1_2,
  mordell_1_3,
  hoelder_1_4,
  thm_1_1,
  thm_1_2,
  thm_1_3,
  lemma_2_1_vmvt,
  lemma_2_2_inhom,
  lemma_2_4_su,
  lemma_2_5_subconvex,
  bound_2_4_trivial,
  lemma_2_6_box,
};

std::string to_string(EnvelopeKind kind);
std::optional<EnvelopeKind> envelope_kind_from_string(const std::string& name);

/// Parameter bag for envelope evaluation and verification rows; a kind reads
/// only the fields its statement mentions and rejects anything missing or
/// outside its hypotheses.
struct EnvelopeParams {
  std::optional<u64> p;
  std::optional<int> d;
  std::optional<int> s;
  std::optional<u64> N;
  std::optional<u64> H;
  std::optional<int> k;
  std::optional<int> t;
  std::vector<i64> shift;       // empty = no shift given
  std::string gamma = "ones";   // "ones" | "alternating", box kinds only
};

/// The threshold index: the unique k >= 1 with s N^k < p <= s N^{k+1}, or
/// absent when p <= s N.
std::optional<int> determine_k(int s, u64 N, u64 p);

/// Closed-form bound value with o(1) exponents dropped and implied
/// constants set to 1. Throws ParameterDomainViolation quoting the violated
/// hypothesis.
double envelope_value(EnvelopeKind kind, const EnvelopeParams& params);

u128 factorial_u128(int n);

struct VerificationRow {
  EnvelopeKind kind = EnvelopeKind::mordell_1_3;
  EnvelopeParams params;
  std::optional<int> k_used;
  std::optional<int> ell;
  double empirical = 0.0;
  std::optional<u128> empirical_exact;
  double envelope = 0.0;
  double ratio = 0.0;
  std::vector<std::string> flags;
};

/// Computes the empirical side of one grid point and pairs it with the
/// envelope value.
VerificationRow verify_point(EnvelopeKind kind, const EnvelopeParams& params,
                             const Budget& budget = {});

struct FamilyReport {
  std::string name;
  EnvelopeKind kind = EnvelopeKind::mordell_1_3;
  std::vector<VerificationRow> rows;
  double trend_factor = 2.0;
  bool trend_applicable = false;  // needs at least one exact N-doubling
  bool trend_pass = true;
  double max_growth = 0.0;  // worst ratio growth across N-doublings
};

FamilyReport verify_family(const std::string& name, EnvelopeKind kind,
                           std::span<const EnvelopeParams> grid, double trend_factor = 2.0,
                           const Budget& budget = {});

/// Both sides of the count-transfer inequality: the exact shifted count on
/// the left, (1/(N p^d)) Re sum_a |S(a;2N)|^{2s} U(-a,h;N) on the right.
struct ShiftTransferCheck {
  u128 lhs = 0;
  double rhs = 0.0;
  double ratio = 0.0;
};

ShiftTransferCheck verify_shift_transfer(int s, u64 N, const ShiftVector& shift,
                                         const FieldContext& ctx, const Budget& budget = {});

/// Weighted box moment against the windowed count, with the measured
/// proportionality constant.
struct BoxWindowCheck {
  double box_moment = 0.0;
  u128 window_count = 0;
  double measured_constant = 0.0;
};

BoxWindowCheck verify_box_window(u64 H, const WeightSequence& weights, int s, u64 N,
                                 const FieldContext& ctx, const Budget& budget = {});

}  // namespace ratsum
