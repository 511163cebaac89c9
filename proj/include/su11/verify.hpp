#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace su11 {

/// One oracle-equivalence check. `config` echoes the parameters so failures are reproducible.
struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tol = 0.0;
  std::string config;
  std::string note;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 20240611;
  std::string only;  // run checks whose name starts with this prefix; empty: all
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

/// check=<name> status=PASS|FAIL residual=<r> tol=<t> config="..." [note="..."]
std::string format_check(const CheckResult& r);

/// Relative difference with the denominator floored at `floor`.
double rel_error(double value, double reference, double floor = 1e-6);

}  // namespace su11
