#include "su11/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "su11/errors.hpp"

namespace su11 {

InputStateSpec input_a(const PointConfig& p) {
  if (p.family == Family::kCat) return CatParams{p.alpha, p.theta};
  const double eta = std::isnan(p.eta_sq) ? matched_squeezing_phase(p.theta_G) : p.eta_sq;
  return SqueezedVacuumParams{resolved_r(p), eta};
}

InputStateSpec input_b(const PointConfig& p) { return CoherentParams{p.beta, p.theta_G}; }

GainConfig gain_of(const PointConfig& p) { return GainConfig{p.g, 0.0}; }

double resolved_r(const PointConfig& p) {
  if (!std::isnan(p.r)) return p.r;
  return match_squeezing(cat_mean_photon(CatParams{p.alpha, p.theta}));
}

PointResult evaluate_point(const PointConfig& p) {
  if (p.m < 1) throw InvalidParameter("repetitions m must be >= 1");
  const InputStateSpec a = input_a(p);
  const InputStateSpec b = input_b(p);
  const GainConfig gain = gain_of(p);
  validate(a);
  validate(b);
  validate(gain);
  validate(LossConfig{p.eta_a, p.eta_b, 0.0, 0.0});

  PointResult out;
  const PhotonStatistics sa = photon_statistics(a);
  out.n_input_a = sa.mean;
  try {
    out.mandel_q_a = mandel_q(a);
  } catch (const UndefinedQ&) {
  }
  try {
    out.mandel_q_b = mandel_q(b);
  } catch (const UndefinedQ&) {
  }
  out.n_total = total_photons(a, b, gain);
  out.sql = out.n_total > 0.0 ? sql(out.n_total) : std::numeric_limits<double>::infinity();

  try {
    const ArmMoments mom = arm_moments(a, b, gain);
    const CheckedQfi checked = checked_qfi(a, b, gain);
    out.qfi_closed = checked.closed;
    out.qfi_pipeline = checked.pipeline;
    out.qfi_lossless = checked.value;
    if (!checked.consistent) out.error = "closed form and moment pipeline disagree";
    if (!p.lossy()) {
      out.qfi = out.qfi_lossless;
    } else {
      const LossyBound bound = minimize_over_gammas(mom, p.eta_a, p.eta_b);
      out.gamma_a_opt = bound.gamma_a_opt;
      out.gamma_b_opt = bound.gamma_b_opt;
      out.converged = bound.converged;
      out.qfi = bound.c_value;
      if (p.eta_b == 1.0) {
        try {
          out.qfi = single_arm_optimal(mom, p.eta_a);
        } catch (const DegenerateQfim&) {
        }
      }
    }
    out.qcrb = qcrb(out.qfi, p.m).delta_phi;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

double ScanAxis::value(int i) const {
  if (points == 1) return start;
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / (points - 1);
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names{"alpha", "alpha2", "theta", "r",     "eta_sq", "beta",
                                              "beta2", "theta_G", "g",    "eta_a", "eta_b"};
  return names;
}

void set_parameter(PointConfig& p, const std::string& name, double v) {
  if (name == "alpha") p.alpha = v;
  else if (name == "alpha2") p.alpha = std::sqrt(v);
  else if (name == "theta") p.theta = v;
  else if (name == "r") p.r = v;
  else if (name == "eta_sq") p.eta_sq = v;
  else if (name == "beta") p.beta = v;
  else if (name == "beta2") p.beta = std::sqrt(v);
  else if (name == "theta_G") p.theta_G = v;
  else if (name == "g") p.g = v;
  else if (name == "eta_a") p.eta_a = v;
  else if (name == "eta_b") p.eta_b = v;
  else throw InvalidParameter("unknown scan parameter '" + name + "'");
  if (name == "alpha2" && v < 0.0) throw InvalidParameter("alpha2 must be >= 0");
  if (name == "beta2" && v < 0.0) throw InvalidParameter("beta2 must be >= 0");
}

double get_parameter(const PointConfig& p, const std::string& name) {
  if (name == "alpha") return p.alpha;
  if (name == "alpha2") return p.alpha * p.alpha;
  if (name == "theta") return p.theta;
  if (name == "r") return p.r;
  if (name == "eta_sq") return p.eta_sq;
  if (name == "beta") return p.beta;
  if (name == "beta2") return p.beta * p.beta;
  if (name == "theta_G") return p.theta_G;
  if (name == "g") return p.g;
  if (name == "eta_a") return p.eta_a;
  if (name == "eta_b") return p.eta_b;
  throw InvalidParameter("unknown scan parameter '" + name + "'");
}

namespace {

std::string base_name(const std::string& n) {
  if (n == "alpha2") return "alpha";
  if (n == "beta2") return "beta";
  return n;
}

}  // namespace

void validate(const ScanSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw InvalidParameter("a scan needs one or two axes");
  std::set<std::string> seen;
  for (const ScanAxis& ax : spec.axes) {
    get_parameter(spec.base, ax.name);
    if (ax.points < 1 || ax.points > 1'000'000) throw InvalidParameter("axis points must lie in [1, 1e6]");
    if (!std::isfinite(ax.start) || !std::isfinite(ax.stop)) throw InvalidParameter("axis bounds must be finite");
    if (!seen.insert(base_name(ax.name)).second) throw InvalidParameter("axis '" + ax.name + "' swept twice");
  }
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<ScanRow> run_scan(const ScanSpec& spec, unsigned threads) {
  validate(spec);
  const std::size_t n0 = spec.axes[0].points;
  const std::size_t n1 = spec.axes.size() > 1 ? spec.axes[1].points : 1;
  std::vector<ScanRow> rows(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      ScanRow& row = rows[i * n1 + j];
      row.config = spec.base;
      row.x.push_back(spec.axes[0].value(static_cast<int>(i)));
      set_parameter(row.config, spec.axes[0].name, row.x.back());
      if (spec.axes.size() > 1) {
        row.x.push_back(spec.axes[1].value(static_cast<int>(j)));
        set_parameter(row.config, spec.axes[1].name, row.x.back());
      }
    }
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    try {
      rows[k].result = evaluate_point(rows[k].config);
    } catch (const Error& e) {
      rows[k].result.error = e.what();
    }
  });
  return rows;
}

}  // namespace su11
