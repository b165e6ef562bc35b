#include <doctest.h>

#include <cstdlib>

#include <json.hpp>

#include "ratsum/report.hpp"

using namespace ratsum;

TEST_CASE("frozen column headers") {
  CHECK(report::moment_csv_header() == "p,d,s_or_k,N,set_kind,method,value,stderr,seed");
  CHECK(report::verification_csv_header() ==
        "kind,p,d,s,N,H,k,ell,t,empirical,envelope,ratio,flags");
}

TEST_CASE("moment rows serialize deterministically") {
  MomentRecord rec;
  rec.p = 20011;
  rec.d = 2;
  rec.s_or_k = 2;
  rec.N = 10;
  rec.set_kind = "full";
  rec.method = "count";
  rec.exact = static_cast<u128>(190);
  rec.value = 190.0;
  CHECK(report::moment_csv_row(rec) == "20011,2,2,10,full,count,190,0,0");
  CHECK(report::moment_csv_row(rec) == report::moment_csv_row(rec));

  auto parsed = nlohmann::json::parse(report::moment_json_string(rec));
  CHECK(parsed["value"] == 190);
  CHECK(parsed["set_kind"] == "full");
}

TEST_CASE("large integers become strings in json") {
  MomentRecord rec;
  rec.p = 499;
  rec.d = 3;
  rec.s_or_k = 3;
  rec.N = 200;
  rec.set_kind = "full";
  rec.method = "count";
  rec.exact = static_cast<u128>(1) << 60;
  auto parsed = nlohmann::json::parse(report::moment_json_string(rec));
  CHECK(parsed["value"].is_string());
  CHECK(parsed["value"] == u128_to_string(static_cast<u128>(1) << 60));

  rec.exact = static_cast<u128>(190);
  auto small = nlohmann::json::parse(report::moment_json_string(rec));
  CHECK(small["value"].is_number());
}

TEST_CASE("verification rows fill only the applicable columns") {
  VerificationRow row;
  row.kind = EnvelopeKind::mordell_1_3;
  row.params.p = 29;
  row.params.d = 3;
  row.params.s = 2;
  row.params.N = 25;
  row.empirical_exact = static_cast<u128>(1331);
  row.empirical = 1331.0;
  row.envelope = 1250.0;
  row.ratio = 1331.0 / 1250.0;
  row.flags = {"error_term_dropped"};
  CHECK(report::verification_csv_row(row) ==
        "mordell_1_3,29,3,2,25,,,,,1331,1250,1.0648,error_term_dropped");
}

TEST_CASE("grid parsing") {
  SUBCASE("explicit rows") {
    auto grid = report::parse_grid(R"({
      "trend_factor": 2.0,
      "families": [
        {"name": "diag", "kind": "mordell_1_3",
         "rows": [{"p": 29, "d": 3, "s": 2, "N": 25}, {"p": 53, "d": 3, "s": 2, "N": 50}]}
      ]
    })");
    CHECK(grid.trend_factor == 2.0);
    REQUIRE(grid.families.size() == 1);
    CHECK(grid.families[0].kind == EnvelopeKind::mordell_1_3);
    REQUIRE(grid.families[0].rows.size() == 2);
    CHECK(grid.families[0].rows[1].p == 53);
    CHECK(grid.families[0].rows[1].N == 50);
  }

  SUBCASE("explicit cross products expand fully") {
    auto grid = report::parse_grid(R"({
      "families": [
        {"name": "sweep", "kind": "hoelder_1_4",
         "cross": {"p": [11, 13], "d": [2], "s": [1, 2, 3], "N": [4, 8]}}
      ]
    })");
    REQUIRE(grid.families.size() == 1);
    CHECK(grid.families[0].rows.size() == 2 * 1 * 3 * 2);
    CHECK(grid.families[0].rows[0].p == 11);
    CHECK(grid.families[0].rows.back().p == 13);
  }

  SUBCASE("schema errors name the offending field") {
    auto expect_message = [](const std::string& text, const std::string& needle) {
      try {
        report::parse_grid(text);
        FAIL("expected SchemaError");
      } catch (const error& e) {
        CHECK(e.code() == errc::schema_error);
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    expect_message(R"({"families": [{"name": "x", "kind": "nope", "rows": [{}]}]})",
                   "families[0].kind");
    expect_message(
        R"({"families": [{"name": "x", "kind": "mordell_1_3", "rows": [{"p": -1}]}]})",
        "families[0].rows[0].p");
    expect_message(
        R"({"families": [{"name": "x", "kind": "mordell_1_3", "rows": [{"q": 5}]}]})",
        "families[0].rows[0].q");
    expect_message(R"({"families": [{"name": "x", "kind": "mordell_1_3"}]})",
                   "exactly one of");
    expect_message("{not json", "not valid JSON");
  }
}

TEST_CASE("verify rendering is byte-stable") {
  VerificationRow row;
  row.kind = EnvelopeKind::hoelder_1_4;
  row.params.p = 11;
  row.params.d = 2;
  row.params.s = 1;
  row.params.N = 4;
  row.empirical_exact = static_cast<u128>(4);
  row.empirical = 4.0;
  row.envelope = 5.5;
  row.ratio = 4.0 / 5.5;
  row.flags = {"implied_const_1"};

  FamilyReport family;
  family.name = "demo";
  family.kind = EnvelopeKind::hoelder_1_4;
  family.rows = {row};
  family.trend_factor = 2.0;

  std::vector<FamilyReport> reports{family};
  std::string csv = report::render_verify_csv(reports);
  CHECK(csv == report::render_verify_csv(reports));
  CHECK(csv.find("# verification table") == 0);
  CHECK(csv.find("hoelder_1_4,11,2,1,4,,,,,4,5.5,0.727272727273,implied_const_1\n") !=
        std::string::npos);
  CHECK(csv.find("# family demo: kind=hoelder_1_4 rows=1 trend=n/a") != std::string::npos);

  std::string json_text = report::render_verify_json(reports);
  CHECK(json_text == report::render_verify_json(reports));
  auto parsed = nlohmann::json::parse(json_text);
  CHECK(parsed["families"][0]["rows"][0]["empirical"] == 4);
  CHECK(parsed["families"][0]["trend"] == "n/a");
}

TEST_CASE("environment budget override") {
  unsetenv("RATSUM_BUDGET");
  Budget base;
  Budget untouched = report::budget_from_env(base);
  CHECK(untouched.max_sum_evals == base.max_sum_evals);

  setenv("RATSUM_BUDGET", "12345", 1);
  Budget overridden = report::budget_from_env(base);
  CHECK(overridden.max_sum_evals == 12345);
  CHECK(overridden.max_table_entries == 12345);
  CHECK(overridden.max_naive_ops == 12345);

  setenv("RATSUM_BUDGET", "zero", 1);
  CHECK_THROWS_AS(report::budget_from_env(base), error);
  unsetenv("RATSUM_BUDGET");
}
