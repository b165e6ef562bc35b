#include "ratsum/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace ratsum::report {

using ordered_json = nlohmann::ordered_json;

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

constexpr u128 kJsonExactMax = static_cast<u128>(1) << 53;

// Integers above 2^53 go out as strings so downstream JSON consumers keep
// them exact.
ordered_json json_integer(u128 value) {
  if (value <= kJsonExactMax) return static_cast<std::uint64_t>(value);
  return u128_to_string(value);
}

ordered_json json_integer(u64 value) { return json_integer(static_cast<u128>(value)); }

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& flag : flags) {
    if (!out.empty()) out.push_back(';');
    out += flag;
  }
  return out;
}

template <typename T>
std::string opt_str(const std::optional<T>& value) {
  return value ? std::to_string(*value) : std::string();
}

}  // namespace

std::string moment_csv_header() { return "p,d,s_or_k,N,set_kind,method,value,stderr,seed"; }

std::string moment_csv_row(const MomentRecord& rec) {
  std::ostringstream out;
  out << rec.p << ',' << rec.d << ',' << rec.s_or_k << ',' << rec.N << ',' << rec.set_kind << ','
      << rec.method << ',';
  if (rec.exact) {
    out << u128_to_string(*rec.exact);
  } else {
    out << format_real(rec.value);
  }
  out << ',' << format_real(rec.stderr_value) << ',' << rec.seed;
  return out.str();
}

std::string moment_json_string(const MomentRecord& rec) {
  ordered_json j;
  j["p"] = json_integer(rec.p);
  j["d"] = rec.d;
  j["s_or_k"] = rec.s_or_k;
  j["N"] = json_integer(rec.N);
  j["set_kind"] = rec.set_kind;
  j["method"] = rec.method;
  if (rec.exact) {
    j["value"] = json_integer(*rec.exact);
  } else {
    j["value"] = rec.value;
  }
  j["stderr"] = rec.stderr_value;
  j["seed"] = json_integer(rec.seed);
  if (!rec.flags.empty()) j["flags"] = rec.flags;
  return j.dump();
}

std::string verification_csv_header() {
  return "kind,p,d,s,N,H,k,ell,t,empirical,envelope,ratio,flags";
}

std::string verification_csv_row(const VerificationRow& row) {
  std::ostringstream out;
  out << to_string(row.kind) << ',' << opt_str(row.params.p) << ',' << opt_str(row.params.d)
      << ',' << opt_str(row.params.s) << ',' << opt_str(row.params.N) << ','
      << opt_str(row.params.H) << ',' << opt_str(row.k_used) << ',' << opt_str(row.ell) << ','
      << opt_str(row.params.t) << ',';
  if (row.empirical_exact) {
    out << u128_to_string(*row.empirical_exact);
  } else {
    out << format_real(row.empirical);
  }
  out << ',' << format_real(row.envelope) << ',' << format_real(row.ratio) << ','
      << join_flags(row.flags);
  return out.str();
}

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  raise(errc::schema_error, where + " " + what);
}

u64 get_u64(const nlohmann::json& value, const std::string& where) {
  if (!value.is_number_unsigned()) schema(where, "must be an unsigned integer");
  return value.get<u64>();
}

int get_int(const nlohmann::json& value, const std::string& where) {
  if (!value.is_number_integer()) schema(where, "must be an integer");
  return value.get<int>();
}

EnvelopeParams parse_params(const nlohmann::json& obj, const std::string& where) {
  if (!obj.is_object()) schema(where, "must be an object");
  EnvelopeParams params;
  for (const auto& [key, value] : obj.items()) {
    std::string field = where + "." + key;
    if (key == "p") {
      params.p = get_u64(value, field);
    } else if (key == "d") {
      params.d = get_int(value, field);
    } else if (key == "s") {
      params.s = get_int(value, field);
    } else if (key == "N") {
      params.N = get_u64(value, field);
    } else if (key == "H") {
      params.H = get_u64(value, field);
    } else if (key == "k") {
      params.k = get_int(value, field);
    } else if (key == "t") {
      params.t = get_int(value, field);
    } else if (key == "shift") {
      if (!value.is_array()) schema(field, "must be an array of integers");
      for (const auto& entry : value) {
        if (!entry.is_number_integer()) schema(field, "must be an array of integers");
        params.shift.push_back(entry.get<i64>());
      }
    } else if (key == "gamma") {
      if (!value.is_string()) schema(field, "must be a string");
      params.gamma = value.get<std::string>();
    } else {
      schema(field, "is not a recognized parameter");
    }
  }
  return params;
}

// Expands {"field": [v1, v2, ...], ...} into the full cross product, fields
// combined in a fixed order.
std::vector<EnvelopeParams> expand_cross(const nlohmann::json& obj, const std::string& where) {
  if (!obj.is_object()) schema(where, "must be an object of arrays");
  std::vector<EnvelopeParams> rows;
  rows.emplace_back();
  static const char* kOrder[] = {"p", "d", "s", "N", "H", "k", "t", "shift", "gamma"};
  for (const char* key : kOrder) {
    if (!obj.contains(key)) continue;
    const auto& values = obj.at(key);
    std::string field = where + "." + key;
    if (!values.is_array() || values.empty()) schema(field, "must be a non-empty array");
    std::vector<EnvelopeParams> expanded;
    expanded.reserve(rows.size() * values.size());
    for (const auto& base : rows) {
      for (const auto& value : values) {
        nlohmann::json one;
        one[key] = value;
        EnvelopeParams delta = parse_params(one, where);
        EnvelopeParams merged = base;
        if (delta.p) merged.p = delta.p;
        if (delta.d) merged.d = delta.d;
        if (delta.s) merged.s = delta.s;
        if (delta.N) merged.N = delta.N;
        if (delta.H) merged.H = delta.H;
        if (delta.k) merged.k = delta.k;
        if (delta.t) merged.t = delta.t;
        if (!delta.shift.empty()) merged.shift = delta.shift;
        if (std::string(key) == "gamma") merged.gamma = delta.gamma;
        expanded.push_back(std::move(merged));
      }
    }
    rows = std::move(expanded);
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : kOrder)
      if (key == k) known = true;
    if (!known) schema(where + "." + key, "is not a recognized parameter");
  }
  return rows;
}

}  // namespace

GridFile parse_grid(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    raise(errc::schema_error, std::string("grid file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) raise(errc::schema_error, "grid root must be an object");

  GridFile grid;
  if (root.contains("trend_factor")) {
    if (!root["trend_factor"].is_number()) schema("trend_factor", "must be a number");
    grid.trend_factor = root["trend_factor"].get<double>();
    if (grid.trend_factor <= 0) schema("trend_factor", "must be positive");
  }
  if (!root.contains("families") || !root["families"].is_array())
    raise(errc::schema_error, "families must be an array");

  std::size_t index = 0;
  for (const auto& fam : root["families"]) {
    std::string where = "families[" + std::to_string(index) + "]";
    if (!fam.is_object()) schema(where, "must be an object");
    GridFamily family;
    if (!fam.contains("name") || !fam["name"].is_string())
      schema(where + ".name", "must be a string");
    family.name = fam["name"].get<std::string>();
    if (!fam.contains("kind") || !fam["kind"].is_string())
      schema(where + ".kind", "must be a string");
    auto kind = envelope_kind_from_string(fam["kind"].get<std::string>());
    if (!kind) schema(where + ".kind", "is not a known bound tag");
    family.kind = *kind;

    bool has_rows = fam.contains("rows");
    bool has_cross = fam.contains("cross");
    if (has_rows == has_cross)
      schema(where, "must contain exactly one of \"rows\" or \"cross\"");
    if (has_rows) {
      if (!fam["rows"].is_array() || fam["rows"].empty())
        schema(where + ".rows", "must be a non-empty array");
      std::size_t row_index = 0;
      for (const auto& row : fam["rows"]) {
        family.rows.push_back(
            parse_params(row, where + ".rows[" + std::to_string(row_index) + "]"));
        ++row_index;
      }
    } else {
      family.rows = expand_cross(fam["cross"], where + ".cross");
    }
    for (const auto& [key, value] : fam.items()) {
      if (key != "name" && key != "kind" && key != "rows" && key != "cross")
        schema(where + "." + key, "is not a recognized field");
    }
    grid.families.push_back(std::move(family));
    ++index;
  }
  return grid;
}

std::string render_verify_csv(const std::vector<FamilyReport>& families) {
  std::ostringstream out;
  out << "# verification table: envelope values drop o(1) factors and set implied constants to 1\n";
  out << "# ratios and trend verdicts are consistency measurements, not proofs\n";
  out << verification_csv_header() << '\n';
  for (const auto& family : families)
    for (const auto& row : family.rows) out << verification_csv_row(row) << '\n';
  for (const auto& family : families) {
    out << "# family " << family.name << ": kind=" << to_string(family.kind)
        << " rows=" << family.rows.size() << " trend=";
    if (!family.trend_applicable) {
      out << "n/a";
    } else {
      out << (family.trend_pass ? "pass" : "fail");
    }
    out << " max_growth=" << format_real(family.max_growth)
        << " factor=" << format_real(family.trend_factor) << '\n';
  }
  return out.str();
}

std::string render_verify_json(const std::vector<FamilyReport>& families) {
  ordered_json root;
  root["note"] =
      "envelope values drop o(1) factors and set implied constants to 1; ratios and trend "
      "verdicts are consistency measurements, not proofs";
  root["families"] = ordered_json::array();
  for (const auto& family : families) {
    ordered_json f;
    f["name"] = family.name;
    f["kind"] = to_string(family.kind);
    f["trend"] =
        !family.trend_applicable ? "n/a" : (family.trend_pass ? "pass" : "fail");
    f["max_growth"] = family.max_growth;
    f["factor"] = family.trend_factor;
    f["rows"] = ordered_json::array();
    for (const auto& row : family.rows) {
      ordered_json r;
      r["kind"] = to_string(row.kind);
      if (row.params.p) r["p"] = json_integer(*row.params.p);
      if (row.params.d) r["d"] = *row.params.d;
      if (row.params.s) r["s"] = *row.params.s;
      if (row.params.N) r["N"] = json_integer(*row.params.N);
      if (row.params.H) r["H"] = json_integer(*row.params.H);
      if (row.k_used) r["k"] = *row.k_used;
      if (row.ell) r["ell"] = *row.ell;
      if (row.params.t) r["t"] = *row.params.t;
      if (!row.params.shift.empty()) r["shift"] = row.params.shift;
      if (row.empirical_exact) {
        r["empirical"] = json_integer(*row.empirical_exact);
      } else {
        r["empirical"] = row.empirical;
      }
      r["envelope"] = row.envelope;
      r["ratio"] = row.ratio;
      r["flags"] = row.flags;
      f["rows"].push_back(std::move(r));
    }
    root["families"].push_back(std::move(f));
  }
  return root.dump(2) + "\n";
}

Budget budget_from_env(Budget base) {
  const char* raw = std::getenv("RATSUM_BUDGET");
  if (raw == nullptr || *raw == '\0') return base;
  auto parsed = u128_from_string(raw);
  if (!parsed || *parsed == 0 || *parsed > UINT64_MAX)
    raise(errc::schema_error, "RATSUM_BUDGET must be a positive 64-bit integer");
  u64 value = static_cast<u64>(*parsed);
  base.max_sum_evals = value;
  base.max_table_entries = value;
  base.max_naive_ops = value;
  return base;
}

}  // namespace ratsum::report
