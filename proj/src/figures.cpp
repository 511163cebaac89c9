#include "su11/figures.hpp"

#include <array>
#include <cmath>

#include "su11/errors.hpp"

namespace su11 {

namespace {

constexpr double kPi = std::numbers::pi;

std::string status_of(const PointResult& r) { return r.ok() ? "ok" : csv_safe(r.error); }

void check_points(int n, const char* what) {
  if (n < 1 || n > 1'000'000) throw InvalidParameter(std::string(what) + " points must lie in [1, 1e6]");
}

}  // namespace

std::vector<HeatmapCell> fig2_grid(const Fig2Options& opts, unsigned threads) {
  check_points(opts.points, "fig2");
  const ScanAxis ax{"theta", 0.0, 2.0 * kPi, opts.points};
  const std::size_t n = opts.points;
  std::vector<HeatmapCell> cells(n * n);
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    HeatmapCell& c = cells[k];
    c.theta = ax.value(static_cast<int>(k / n));
    c.theta_G = ax.value(static_cast<int>(k % n));
    const CatParams cat{opts.alpha, c.theta};
    const CoherentParams beta{opts.beta, c.theta_G};
    const GainConfig gain{opts.g, 0.0};
    c.f_cat = effective_phase_sum_qfi(qfim_from_moments(arm_moments_cat(cat, beta, gain)));
    c.n_cat = total_photons(cat, beta, gain);
  });
  return cells;
}

Table fig2_table(const Fig2Options& opts, const std::vector<HeatmapCell>& cells) {
  Table t;
  t.header = {"theta", "theta_G", "alpha", "beta", "g", "m", "F_cat", "N_cat"};
  for (const HeatmapCell& c : cells)
    t.add_row({format_number(c.theta), format_number(c.theta_G), format_number(opts.alpha), format_number(opts.beta),
               format_number(opts.g), std::to_string(opts.m), format_number(c.f_cat), format_number(c.n_cat)});
  return t;
}

Table curve_table(const std::vector<CurveRow>& rows) {
  Table t;
  t.header = {"x",     "series", "family", "alpha", "theta", "r",   "eta_sq", "beta",        "theta_G",     "g",
              "eta_a", "eta_b",  "m",      "n_alpha", "N",   "qfi", "qcrb",   "sql", "gamma_a_opt", "gamma_b_opt",
              "status"};
  for (const CurveRow& row : rows) {
    const PointConfig& p = row.config;
    const bool sv = p.family == Family::kSqueezed;
    const double eta_sq = sv ? (std::isnan(p.eta_sq) ? matched_squeezing_phase(p.theta_G) : p.eta_sq) : kNaN;
    t.add_row({format_number(row.x), row.series, sv ? "sv" : "cat", format_number(p.alpha), format_number(p.theta),
               format_number(sv ? resolved_r(p) : kNaN), format_number(eta_sq), format_number(p.beta),
               format_number(p.theta_G), format_number(p.g), format_number(p.eta_a), format_number(p.eta_b),
               std::to_string(p.m), format_number(row.result.n_input_a), format_number(row.result.n_total),
               format_number(row.result.qfi), format_number(row.result.qcrb), format_number(row.result.sql),
               format_number(row.result.gamma_a_opt), format_number(row.result.gamma_b_opt),
               status_of(row.result)});
  }
  return t;
}

Table scan_table(const ScanSpec& spec, const std::vector<ScanRow>& rows) {
  Table t;
  for (const ScanAxis& ax : spec.axes) t.header.push_back(ax.name);
  for (const char* h : {"family", "alpha", "theta", "r", "eta_sq", "beta", "theta_G", "g", "eta_a", "eta_b", "m",
                        "n_alpha", "N", "qfi_closed", "qfi_pipeline", "qfi", "qcrb", "sql", "gamma_a_opt",
                        "gamma_b_opt", "status"})
    t.header.push_back(h);
  for (const ScanRow& row : rows) {
    const PointConfig& p = row.config;
    const PointResult& r = row.result;
    const bool sv = p.family == Family::kSqueezed;
    std::vector<std::string> f;
    for (double x : row.x) f.push_back(format_number(x));
    double r_used = kNaN, eta_sq = kNaN;
    if (sv) {
      try {
        r_used = resolved_r(p);
      } catch (const Error&) {
      }
      eta_sq = std::isnan(p.eta_sq) ? matched_squeezing_phase(p.theta_G) : p.eta_sq;
    }
    for (const std::string& v :
         {std::string(sv ? "sv" : "cat"), format_number(p.alpha), format_number(p.theta), format_number(r_used),
          format_number(eta_sq), format_number(p.beta), format_number(p.theta_G), format_number(p.g),
          format_number(p.eta_a), format_number(p.eta_b), std::to_string(p.m), format_number(r.n_input_a),
          format_number(r.n_total), format_number(r.qfi_closed), format_number(r.qfi_pipeline), format_number(r.qfi),
          format_number(r.qcrb), format_number(r.sql), format_number(r.gamma_a_opt), format_number(r.gamma_b_opt),
          status_of(r)})
      f.push_back(v);
    t.add_row(std::move(f));
  }
  return t;
}

namespace {

struct Series {
  std::string name;
  PointConfig config;
};

std::vector<CurveRow> run_series(const std::vector<Series>& series, const ScanAxis& axis, unsigned threads) {
  std::vector<CurveRow> rows;
  rows.reserve(series.size() * axis.points);
  for (int i = 0; i < axis.points; ++i)
    for (const Series& s : series) {
      CurveRow row;
      row.x = axis.value(i);
      row.series = s.name;
      row.config = s.config;
      set_parameter(row.config, axis.name, row.x);
      rows.push_back(std::move(row));
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

}  // namespace

std::vector<CurveRow> fig3_rows(const Fig3Options& o, unsigned threads) {
  check_points(o.points, "fig3");
  PointConfig cat;
  cat.family = Family::kCat;
  cat.alpha = o.alpha;
  cat.theta = o.theta;
  cat.theta_G = o.theta_G;
  cat.g = o.g;
  cat.m = o.m;
  PointConfig sv = cat;
  sv.family = Family::kSqueezed;
  PointConfig cat_l = cat, sv_l = sv;
  cat_l.eta_a = sv_l.eta_a = o.eta_a;
  cat_l.eta_b = sv_l.eta_b = o.eta_b;
  return run_series({{"cat_nl", cat}, {"cat_sl", cat_l}, {"sv_nl", sv}, {"sv_sl", sv_l}},
                    ScanAxis{"beta2", o.x_start, o.x_stop, o.points}, threads);
}

std::vector<CurveRow> fig4_rows(const Fig4Options& o, unsigned threads) {
  check_points(o.points, "fig4");
  std::vector<Series> series;
  const std::array<std::pair<const char*, double>, 3> kinds{{{"e", 0.0}, {"ys", 0.5 * kPi}, {"o", kPi}}};
  for (const auto& [label, theta] : kinds) {
    PointConfig p;
    p.theta = theta;
    p.beta = o.beta;
    p.theta_G = o.theta_G;
    p.g = o.g;
    p.m = o.m;
    series.push_back({std::string(label) + "_nl", p});
    p.eta_a = o.eta;
    series.push_back({std::string(label) + "_sl", p});
    p.eta_b = o.eta;
    series.push_back({std::string(label) + "_tl", p});
  }
  return run_series(series, ScanAxis{"alpha2", o.x_start, o.x_stop, o.points}, threads);
}

std::vector<Fig5Cell> fig5_grid(const Fig5Options& o, unsigned threads) {
  check_points(o.eta_points, "fig5 eta");
  check_points(o.beta_points, "fig5 beta");
  const ScanAxis eta_ax{"eta_a", o.eta_start, o.eta_stop, o.eta_points};
  const ScanAxis beta_ax{"beta", o.beta_start, o.beta_stop, o.beta_points};
  const std::size_t ne = o.eta_points;
  std::vector<Fig5Cell> cells(ne * o.beta_points);
  parallel_for(cells.size(), threads, [&](std::size_t k) {
    Fig5Cell& c = cells[k];
    c.beta = beta_ax.value(static_cast<int>(k / ne));
    c.eta_a = eta_ax.value(static_cast<int>(k % ne));
    PointConfig p;
    p.alpha = o.alpha;
    p.theta = o.theta;
    p.theta_G = o.theta_G;
    p.g = o.g;
    p.m = o.m;
    p.beta = c.beta;
    p.eta_a = c.eta_a;
    const PointResult cat = evaluate_point(p);
    p.family = Family::kSqueezed;
    c.r = resolved_r(p);
    const PointResult sv = evaluate_point(p);
    c.qcrb_cat = cat.qcrb;
    c.qcrb_sv = sv.qcrb;
    if (!cat.ok()) c.error = cat.error;
    else if (!sv.ok()) c.error = sv.error;
  });
  return cells;
}

Table fig5_table(const Fig5Options& o, const std::vector<Fig5Cell>& cells) {
  Table t;
  t.header = {"eta_a", "beta", "alpha", "theta", "r", "theta_G", "g", "eta_b", "m",
              "qcrb_cat", "qcrb_sv", "delta_phi_cat_sv", "status"};
  for (const Fig5Cell& c : cells)
    t.add_row({format_number(c.eta_a), format_number(c.beta), format_number(o.alpha), format_number(o.theta),
               format_number(c.r), format_number(o.theta_G), format_number(o.g), "1", std::to_string(o.m),
               format_number(c.qcrb_cat), format_number(c.qcrb_sv), format_number(c.delta()),
               c.error.empty() ? "ok" : csv_safe(c.error)});
  return t;
}

}  // namespace su11
