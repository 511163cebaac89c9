#pragma once

#include <numbers>
#include <string>
#include <vector>

#include "su11/csv.hpp"
#include "su11/scan.hpp"

namespace su11 {

/// F_cat and N_cat over (theta, theta_G) in [0, 2pi]^2.
struct Fig2Options {
  double alpha = 1.2;
  double beta = 1.8;
  double g = 1.2;
  int m = 1;
  int points = 101;
};

struct HeatmapCell {
  double theta = 0.0;
  double theta_G = 0.0;
  double f_cat = 0.0;
  double n_cat = 0.0;
};

/// Row-major in theta (outer) and theta_G (inner).
std::vector<HeatmapCell> fig2_grid(const Fig2Options& opts, unsigned threads = 0);
Table fig2_table(const Fig2Options& opts, const std::vector<HeatmapCell>& cells);

/// One point of a labelled curve family.
struct CurveRow {
  double x = 0.0;
  std::string series;
  PointConfig config;
  PointResult result;
};

/// Columns x,series,<all fixed parameters>,n_alpha,N,qfi,qcrb,sql,gamma_a_opt,gamma_b_opt,status.
Table curve_table(const std::vector<CurveRow>& rows);

/// Generic scan output: swept axes first, then every fixed parameter and the point results.
Table scan_table(const ScanSpec& spec, const std::vector<ScanRow>& rows);

/// QCRB against |beta|^2 for cat and photon-matched squeezed vacuum, lossless (nl) and single-arm loss (sl).
struct Fig3Options {
  double alpha = 2.0;
  double theta = std::numbers::pi;
  double theta_G = std::numbers::pi;
  double g = 1.2;
  double eta_a = 0.5;
  double eta_b = 1.0;
  int m = 1;
  double x_start = 0.0;
  double x_stop = 9.0;
  int points = 201;
};

std::vector<CurveRow> fig3_rows(const Fig3Options& opts, unsigned threads = 0);

/// QCRB against alpha^2 for even, Yurke-Stoler and odd cats in the nl, sl and tl loss cases.
struct Fig4Options {
  double beta = 0.5;
  double theta_G = std::numbers::pi;
  double g = 1.2;
  double eta = 0.5;  // lossy arm transmission in sl and tl
  int m = 1;
  double x_start = 1.0;
  double x_stop = 10.0;
  int points = 201;
};

std::vector<CurveRow> fig4_rows(const Fig4Options& opts, unsigned threads = 0);

/// QCRB_cat - QCRB_sv over (eta_a, |beta|), single-arm loss, photon-matched inputs.
struct Fig5Options {
  double alpha = 2.0;
  double theta = std::numbers::pi;
  double theta_G = std::numbers::pi;
  double g = 1.2;
  int m = 1;
  double eta_start = 0.01;
  double eta_stop = 1.0;
  int eta_points = 101;
  double beta_start = 0.0;
  double beta_stop = 3.0;
  int beta_points = 101;
};

struct Fig5Cell {
  double eta_a = 0.0;
  double beta = 0.0;
  double qcrb_cat = 0.0;
  double qcrb_sv = 0.0;
  double r = 0.0;
  std::string error;

  double delta() const { return qcrb_cat - qcrb_sv; }
};

/// Row-major in |beta| (outer) and eta_a (inner).
std::vector<Fig5Cell> fig5_grid(const Fig5Options& opts, unsigned threads = 0);
Table fig5_table(const Fig5Options& opts, const std::vector<Fig5Cell>& cells);

}  // namespace su11
