#pragma once

#include <string>
#include <vector>

#include "ratsum/envelopes.hpp"
#include "ratsum/moments.hpp"

namespace ratsum::report {

/// Fixed real formatting for all emitted tables ("%.12g").
std::string format_real(double value);

// Moment rows. Column order is frozen:
//   p,d,s_or_k,N,set_kind,method,value,stderr,seed
std::string moment_csv_header();
std::string moment_csv_row(const MomentRecord& rec);
std::string moment_json_string(const MomentRecord& rec);

// Verification rows. Column order is frozen:
//   kind,p,d,s,N,H,k,ell,t,empirical,envelope,ratio,flags
std::string verification_csv_header();
std::string verification_csv_row(const VerificationRow& row);

struct GridFamily {
  std::string name;
  EnvelopeKind kind = EnvelopeKind::mordell_1_3;
  std::vector<EnvelopeParams> rows;
};

struct GridFile {
  double trend_factor = 2.0;
  std::vector<GridFamily> families;
};

/// Parses a declarative grid file (JSON). Families list their rows either
/// explicitly under "rows" or as an explicit cross product under "cross".
/// Schema errors name the offending family and field.
GridFile parse_grid(const std::string& text);

std::string render_verify_csv(const std::vector<FamilyReport>& families);
std::string render_verify_json(const std::vector<FamilyReport>& families);

/// Applies the RATSUM_BUDGET override (a single evaluation/entry cap) on
/// top of the given defaults.
Budget budget_from_env(Budget base);

}  // namespace ratsum::report
