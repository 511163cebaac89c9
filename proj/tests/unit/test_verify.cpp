#include "helpers.hpp"
#include "su11/verify.hpp"

using namespace su11;

TEST_CASE("quick verification passes") {
  VerifyOptions o;
  o.quick = true;
  const std::vector<CheckResult> results = run_verification(o);
  CHECK(results.size() >= 20);
  for (const CheckResult& r : results) {
    INFO(format_check(r));
    CHECK(r.pass);
  }
}

TEST_CASE("check filter and report format") {
  VerifyOptions o;
  o.quick = true;
  o.only = "eq26";
  const std::vector<CheckResult> results = run_verification(o);
  CHECK(results.size() == 4);
  const std::string line = format_check(results.front());
  CHECK(line.rfind("check=eq26_eta0.3 status=PASS residual=", 0) == 0);
  CHECK(line.find("C_printed=") != std::string::npos);
  o.only = "no-such-check";
  CHECK(run_verification(o).empty());
}

TEST_CASE("relative error floor") {
  CHECK(rel_error(1.0, 1.0) == 0.0);
  CHECK(rel_error(1.1, 1.0) == doctest::Approx(0.1));
  CHECK(rel_error(1e-9, 0.0) == doctest::Approx(1e-3));
}
