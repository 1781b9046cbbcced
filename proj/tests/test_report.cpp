#include <catch2/catch.hpp>

#include <cstdio>
#include <fstream>

#include "onofri/report.hpp"

using namespace onofri;

namespace {

Report sample_report() {
  Report r;
  r.check_abs("alpha", 0.0795774715459477, 0.0795774715459477, RefSource::closed_form, 1e-14,
              1e-12, 0.0);
  r.check_rel("mass", 6.28318, 6.2831853, RefSource::closed_form, 1e-4, 1e-9, 0.0);
  r.info("fitted_constant", 3.25);
  CheckRow fx;
  fx.check_id = "pinned";
  fx.value = 0.0478787936;
  fx.reference = 0.0478787937;
  fx.ref_source = RefSource::fixture;
  fx.tol = 1e-8;
  fx.pass = true;
  r.add(fx);
  return r;
}

}  // namespace

TEST_CASE("report rows and verdicts", "[report]") {
  Report r = sample_report();
  CHECK(r.all_pass());
  r.check_abs("broken", 1.0, 2.0, RefSource::closed_form, 1e-6);
  CHECK_FALSE(r.all_pass());
  CHECK(r.rows.back().pass == false);

  Report flags;
  flags.check_flag("ok", true);
  flags.check_flag("bad", false);
  CHECK(flags.rows[0].pass);
  CHECK_FALSE(flags.rows[1].pass);

  // non-finite values never pass a checked row
  Report nn;
  nn.check_abs("nan", std::nan(""), 0.0, RefSource::closed_form, 1e300);
  CHECK_FALSE(nn.all_pass());
}

TEST_CASE("JSON output is byte-stable and carries every column", "[report]") {
  Report r = sample_report();
  const std::string a = to_json(r);
  const std::string b = to_json(r);
  REQUIRE(a == b);
  for (const char* key : {"check_id", "value", "reference", "ref_source", "tol", "pass",
                          "quad_error", "seconds", "all_pass"})
    CHECK(a.find(key) != std::string::npos);
  CHECK(a.find("closed-form") != std::string::npos);
  CHECK(a.find("fixture") != std::string::npos);
  // info rows serialize a null reference
  CHECK(a.find("null") != std::string::npos);
}

TEST_CASE("CSV output has the same columns", "[report]") {
  const std::string csv = to_csv(sample_report());
  CHECK(csv.rfind("check_id,value,reference,ref_source,tol,pass,quad_error,seconds\n", 0) ==
        0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
  // info rows leave the reference column empty
  CHECK(csv.find("fitted_constant,3.25,,none") != std::string::npos);
}

TEST_CASE("fixtures parsing", "[report]") {
  const char* path = "/tmp/onofri_fixture_test.txt";
  {
    std::ofstream f(path);
    f << "# comment line\n";
    f << "a.b = 1.25   # trailing note\n";
    f << "\n";
    f << "  c = -3e-2\n";
  }
  auto m = load_fixtures(path);
  REQUIRE(m.size() == 2);
  CHECK(m.at("a.b") == Approx(1.25));
  CHECK(m.at("c") == Approx(-0.03));
  std::remove(path);
  CHECK_THROWS_AS(load_fixtures("/nonexistent/nope.txt"), std::invalid_argument);

  // the repository fixtures file parses and carries the pinned keys
  auto pinned = load_fixtures("fixtures/pinned.txt");
  CHECK(pinned.count("deficit.gauss.n2") == 1);
  CHECK(pinned.count("deficit.gauss.n3") == 1);
}
