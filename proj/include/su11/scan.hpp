#pragma once

#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "su11/loss.hpp"

namespace su11 {

enum class Family { kCat, kSqueezed };

/// One interferometer configuration in figure parameters. Port b is always a coherent state
/// with phase theta_G (theta_g = 0). For the squeezed family r defaults to the value that
/// matches the photon number of the cat (alpha, theta).
struct PointConfig {
  Family family = Family::kCat;
  double alpha = 2.0;
  double theta = std::numbers::pi;
  double r = std::numeric_limits<double>::quiet_NaN();       // NaN: match_squeezing(nbar_alpha)
  double eta_sq = std::numeric_limits<double>::quiet_NaN();  // NaN: phase-matched
  double beta = 0.0;
  double theta_G = 0.0;
  double g = 1.2;
  double eta_a = 1.0;
  double eta_b = 1.0;
  int m = 1;

  bool lossy() const { return eta_a < 1.0 || eta_b < 1.0; }
};

InputStateSpec input_a(const PointConfig& p);
InputStateSpec input_b(const PointConfig& p);
GainConfig gain_of(const PointConfig& p);
/// Squeezing strength actually used (resolves the NaN default).
double resolved_r(const PointConfig& p);

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PointResult {
  double qfi_closed = kNaN;
  double qfi_pipeline = kNaN;
  double qfi_lossless = kNaN;
  double qfi = kNaN;  // lossy value when any eta < 1
  double qcrb = kNaN;
  double sql = kNaN;
  double n_total = kNaN;
  double n_input_a = kNaN;
  double mandel_q_a = kNaN;  // NaN when undefined (vacuum)
  double mandel_q_b = kNaN;
  double gamma_a_opt = kNaN;
  double gamma_b_opt = kNaN;
  bool converged = true;
  std::string error;

  bool ok() const { return error.empty(); }
};

/// Never throws for physics errors: they are reported in `error`. Invalid parameters still throw.
PointResult evaluate_point(const PointConfig& p);

struct ScanAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  double value(int i) const;
};

/// Axis names accepted by set_parameter / ScanAxis.
const std::vector<std::string>& parameter_names();

/// alpha2 sets alpha = sqrt(value), beta2 sets beta = sqrt(value). Throws InvalidParameter on unknown names.
void set_parameter(PointConfig& p, const std::string& name, double value);
double get_parameter(const PointConfig& p, const std::string& name);

struct ScanSpec {
  PointConfig base;
  std::vector<ScanAxis> axes;  // 1 or 2, the last one varies fastest
};

void validate(const ScanSpec& spec);

struct ScanRow {
  std::vector<double> x;
  PointConfig config;
  PointResult result;
};

/// Evaluates the grid on `threads` workers (0: hardware concurrency); rows come back in grid order.
std::vector<ScanRow> run_scan(const ScanSpec& spec, unsigned threads = 0);

/// Generic parallel map in index order, used by the scan and figure drivers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace su11
