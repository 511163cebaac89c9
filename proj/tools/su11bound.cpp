#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "su11/errors.hpp"
#include "su11/figures.hpp"
#include "su11/verify.hpp"

namespace {

using namespace su11;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts plain numbers and multiples of pi: "pi", "-pi", "0.5pi", "2*pi", "pi/2", "3pi/4".
double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '*') s += c;
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("cannot parse angle '" + text + "'");
    }
    if (used != s.size()) throw UsageError("cannot parse angle '" + text + "'");
    return v;
  }
  const std::string head = s.substr(0, pos);
  const std::string tail = s.substr(pos + 2);
  double factor = 1.0;
  if (head == "-") factor = -1.0;
  else if (!head.empty() && head != "+") factor = parse_angle(head);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw UsageError("cannot parse angle '" + text + "'");
    divisor = parse_angle(tail.substr(1));
    if (divisor == 0.0) throw UsageError("division by zero in angle '" + text + "'");
  }
  return factor * std::numbers::pi / divisor;
}

// Point parameters shared by point and scan. Angles are kept as text until parsed.
struct PointFlags {
  std::string state_a = "cat";
  std::string state_b = "coherent";
  double alpha = 2.0;
  std::string theta = "pi";
  std::optional<double> r;
  std::optional<std::string> eta_sq;
  double beta = 0.0;
  std::string theta_G = "0";
  double g = 1.2;
  double eta_a = 1.0;
  double eta_b = 1.0;
  int m = 1;

  CLI::Option* r_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
  CLI::Option* beta_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--state-a", state_a, "input of port a")->check(CLI::IsMember({"cat", "sv", "vacuum"}));
    app->add_option("--state-b", state_b, "input of port b")->check(CLI::IsMember({"coherent", "vacuum"}));
    alpha_opt = app->add_option("--alpha", alpha, "cat amplitude");
    theta_opt = app->add_option("--theta", theta, "cat relative phase");
    r_opt = app->add_option("--r", r, "squeezing strength (default: photon-matched to the cat)");
    app->add_option("--eta-sq", eta_sq, "squeezing phase (default: pi - 2 theta_G)");
    beta_opt = app->add_option("--beta", beta, "coherent amplitude |beta|");
    app->add_option("--theta-G", theta_G, "theta_beta - theta_g");
    app->add_option("--g", g, "NBS gain");
    app->add_option("--eta-a", eta_a, "transmission of arm a");
    app->add_option("--eta-b", eta_b, "transmission of arm b");
    app->add_option("--m", m, "repetitions");
  }

  PointConfig resolve() const {
    PointConfig p;
    p.alpha = alpha;
    p.theta = parse_angle(theta);
    p.beta = beta;
    p.theta_G = parse_angle(theta_G);
    p.g = g;
    p.eta_a = eta_a;
    p.eta_b = eta_b;
    p.m = m;
    if (state_a == "cat") {
      if (r_opt->count() || eta_sq) throw UsageError("--r/--eta-sq need --state-a sv");
      p.family = Family::kCat;
    } else {
      p.family = Family::kSqueezed;
      if (state_a == "vacuum") {
        if (r_opt->count()) throw UsageError("--r contradicts --state-a vacuum");
        p.r = 0.0;
      } else if (r) {
        p.r = *r;
      }
      if (eta_sq) p.eta_sq = parse_angle(*eta_sq);
    }
    if (state_b == "vacuum") {
      if (beta_opt->count() && beta != 0.0) throw UsageError("--beta contradicts --state-b vacuum");
      p.beta = 0.0;
    }
    return p;
  }
};

std::string opt_number(double v) { return format_number(v); }

int cmd_point(const PointFlags& flags, const std::string& csv_path) {
  const PointConfig p = flags.resolve();
  const PointResult r = evaluate_point(p);
  const bool sv = p.family == Family::kSqueezed;
  std::printf("state_a=%s\n", flags.state_a.c_str());
  std::printf("state_b=%s\n", flags.state_b.c_str());
  if (!sv) {
    std::printf("alpha=%s\ntheta=%s\n", opt_number(p.alpha).c_str(), opt_number(p.theta).c_str());
  } else {
    std::printf("r=%s\n", opt_number(resolved_r(p)).c_str());
    std::printf("eta_sq=%s\n",
                opt_number(std::isnan(p.eta_sq) ? matched_squeezing_phase(p.theta_G) : p.eta_sq).c_str());
  }
  std::printf("beta=%s\ntheta_G=%s\ng=%s\n", opt_number(p.beta).c_str(), opt_number(p.theta_G).c_str(),
              opt_number(p.g).c_str());
  std::printf("eta_a=%s\neta_b=%s\nm=%d\n", opt_number(p.eta_a).c_str(), opt_number(p.eta_b).c_str(), p.m);
  std::printf("qfi_closed=%s\n", opt_number(r.qfi_closed).c_str());
  std::printf("qfi_pipeline=%s\n", opt_number(r.qfi_pipeline).c_str());
  std::printf("qfi_lossless=%s\n", opt_number(r.qfi_lossless).c_str());
  if (p.lossy()) {
    std::printf("qfi_lossy=%s\n", opt_number(r.qfi).c_str());
    std::printf("gamma_a_opt=%s\ngamma_b_opt=%s\n", opt_number(r.gamma_a_opt).c_str(),
                opt_number(r.gamma_b_opt).c_str());
    std::printf("minimizer_converged=%s\n", r.converged ? "true" : "false");
  }
  std::printf("qcrb=%s\n", opt_number(r.qcrb).c_str());
  std::printf("sql=%s\n", opt_number(r.sql).c_str());
  std::printf("n_total=%s\n", opt_number(r.n_total).c_str());
  std::printf("n_input_a=%s\n", opt_number(r.n_input_a).c_str());
  std::printf("mandel_q_a=%s\n", opt_number(r.mandel_q_a).c_str());
  std::printf("mandel_q_b=%s\n", opt_number(r.mandel_q_b).c_str());
  std::printf("status=%s\n", r.ok() ? "ok" : csv_safe(r.error).c_str());
  if (!csv_path.empty()) {
    ScanSpec spec;
    spec.base = p;
    spec.axes.push_back(ScanAxis{"g", p.g, p.g, 1});
    write_csv_file(csv_path, scan_table(spec, {ScanRow{{p.g}, p, r}}));
  }
  return r.ok() ? kExitOk : kExitNumerical;
}

ScanAxis parse_axis(const std::string& text) {
  // name:start:stop:points
  std::vector<std::string> parts;
  std::size_t from = 0;
  while (true) {
    const auto at = text.find(':', from);
    parts.push_back(text.substr(from, at == std::string::npos ? std::string::npos : at - from));
    if (at == std::string::npos) break;
    from = at + 1;
  }
  if (parts.size() != 4) throw UsageError("axis must look like name:start:stop:points, got '" + text + "'");
  ScanAxis ax;
  ax.name = parts[0];
  ax.start = parse_angle(parts[1]);
  ax.stop = parse_angle(parts[2]);
  try {
    ax.points = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw UsageError("bad point count in axis '" + text + "'");
  }
  return ax;
}

void emit(const Table& t, const std::string& out) {
  if (out == "-") {
    write_csv(std::cout, t);
    std::cout.flush();
  } else {
    write_csv_file(out, t);
    std::fprintf(stderr, "wrote %zu rows to %s\n", t.rows.size(), out.c_str());
  }
}

std::string flag_to_param(const std::string& flag) {
  if (flag == "--theta-G") return "theta_G";
  if (flag == "--eta-a") return "eta_a";
  if (flag == "--eta-b") return "eta_b";
  if (flag == "--eta-sq") return "eta_sq";
  return flag.substr(2);
}

std::string axis_family(const std::string& name) {
  if (name == "alpha2") return "alpha";
  if (name == "beta2") return "beta";
  return name;
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum Cramer-Rao bounds for SU(1,1) interferometers with cat, squeezed and coherent inputs"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads for grids (0: all cores)");
  app.set_config("--config", "", "INI/TOML file, one [subcommand] section holding flag names as keys");
  app.fallthrough();

  PointFlags point_flags;
  std::string point_csv;
  CLI::App* point = app.add_subcommand("point", "evaluate one configuration");
  point_flags.attach(point);
  point->add_option("--csv", point_csv, "also write a single-row CSV");

  PointFlags scan_flags;
  std::vector<std::string> axes_text;
  std::string scan_out = "-";
  CLI::App* scan = app.add_subcommand("scan", "sweep one or two parameters");
  scan_flags.attach(scan);
  scan->add_option("--axis", axes_text, "name:start:stop:points, names: alpha alpha2 theta r eta_sq beta beta2 "
                                        "theta_G g eta_a eta_b")
      ->required()
      ->expected(1, 2);
  scan->add_option("--out,-o", scan_out, "output CSV ('-' for stdout)");

  Fig2Options f2;
  std::string f2a_out = "fig2a.csv", f2b_out = "fig2b.csv";
  CLI::App* fig2a = app.add_subcommand("fig2a", "F_cat over (theta, theta_G)");
  CLI::App* fig2b = app.add_subcommand("fig2b", "N_cat over (theta, theta_G)");
  for (CLI::App* sub : {fig2a, fig2b}) {
    sub->add_option("--alpha", f2.alpha);
    sub->add_option("--beta", f2.beta);
    sub->add_option("--g", f2.g);
    sub->add_option("--m", f2.m);
    sub->add_option("--points", f2.points, "grid points per axis");
  }
  fig2a->add_option("--out,-o", f2a_out);
  fig2b->add_option("--out,-o", f2b_out);

  Fig3Options f3;
  std::string f3_out = "fig3.csv", f3_theta = "pi", f3_theta_G = "pi";
  CLI::App* fig3 = app.add_subcommand("fig3", "QCRB against |beta|^2, cat and squeezed vacuum");
  fig3->add_option("--alpha", f3.alpha);
  fig3->add_option("--theta", f3_theta);
  fig3->add_option("--theta-G", f3_theta_G);
  fig3->add_option("--g", f3.g);
  fig3->add_option("--eta-a", f3.eta_a);
  fig3->add_option("--eta-b", f3.eta_b);
  fig3->add_option("--m", f3.m);
  fig3->add_option("--x-start", f3.x_start, "first |beta|^2");
  fig3->add_option("--x-stop", f3.x_stop, "last |beta|^2");
  fig3->add_option("--points", f3.points);
  fig3->add_option("--out,-o", f3_out);

  Fig4Options f4;
  std::string f4_out = "fig4.csv", f4_theta_G = "pi";
  CLI::App* fig4 = app.add_subcommand("fig4", "QCRB against alpha^2 for even, Yurke-Stoler and odd cats");
  fig4->add_option("--beta", f4.beta);
  fig4->add_option("--theta-G", f4_theta_G);
  fig4->add_option("--g", f4.g);
  fig4->add_option("--eta", f4.eta, "transmission of the lossy arm(s)");
  fig4->add_option("--m", f4.m);
  fig4->add_option("--x-start", f4.x_start, "first alpha^2");
  fig4->add_option("--x-stop", f4.x_stop, "last alpha^2");
  fig4->add_option("--points", f4.points);
  fig4->add_option("--out,-o", f4_out);

  Fig5Options f5;
  std::string f5_out = "fig5.csv", f5_theta = "pi", f5_theta_G = "pi";
  CLI::App* fig5 = app.add_subcommand("fig5", "QCRB_cat - QCRB_sv over (eta_a, |beta|)");
  fig5->add_option("--alpha", f5.alpha);
  fig5->add_option("--theta", f5_theta);
  fig5->add_option("--theta-G", f5_theta_G);
  fig5->add_option("--g", f5.g);
  fig5->add_option("--m", f5.m);
  fig5->add_option("--eta-start", f5.eta_start);
  fig5->add_option("--eta-stop", f5.eta_stop);
  fig5->add_option("--eta-points", f5.eta_points);
  fig5->add_option("--beta-start", f5.beta_start);
  fig5->add_option("--beta-stop", f5.beta_stop);
  fig5->add_option("--beta-points", f5.beta_points);
  fig5->add_option("--out,-o", f5_out);

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand("verify", "closed forms against the Fock-space oracle");
  verify->add_flag("--quick", vopt.quick, "reduced subset at small parameters");
  verify->add_option("--check", vopt.only, "run only checks whose name starts with this");
  verify->add_option("--seed", vopt.seed, "seed of the random configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (point->parsed()) return cmd_point(point_flags, point_csv);

    if (scan->parsed()) {
      ScanSpec spec;
      spec.base = scan_flags.resolve();
      for (const std::string& a : axes_text) spec.axes.push_back(parse_axis(a));
      for (const ScanAxis& ax : spec.axes) {
        const std::string fam = axis_family(ax.name);
        for (const CLI::Option* opt : scan->get_options())
          if (opt->count() && opt->get_name().rfind("--", 0) == 0 &&
              axis_family(flag_to_param(opt->get_name())) == fam)
            throw UsageError("'" + ax.name + "' is both swept and fixed");
      }
      validate(spec);
      emit(scan_table(spec, run_scan(spec, threads)), scan_out);
      return kExitOk;
    }

    if (fig2a->parsed() || fig2b->parsed()) {
      emit(fig2_table(f2, fig2_grid(f2, threads)), fig2a->parsed() ? f2a_out : f2b_out);
      return kExitOk;
    }

    if (fig3->parsed()) {
      f3.theta = parse_angle(f3_theta);
      f3.theta_G = parse_angle(f3_theta_G);
      emit(curve_table(fig3_rows(f3, threads)), f3_out);
      return kExitOk;
    }

    if (fig4->parsed()) {
      f4.theta_G = parse_angle(f4_theta_G);
      emit(curve_table(fig4_rows(f4, threads)), f4_out);
      return kExitOk;
    }

    if (fig5->parsed()) {
      f5.theta = parse_angle(f5_theta);
      f5.theta_G = parse_angle(f5_theta_G);
      emit(fig5_table(f5, fig5_grid(f5, threads)), f5_out);
      return kExitOk;
    }

    if (verify->parsed()) {
      const std::vector<CheckResult> results = run_verification(vopt);
      if (results.empty()) throw UsageError("no check matches '" + vopt.only + "'");
      int failed = 0;
      for (const CheckResult& r : results) {
        std::printf("%s\n", format_check(r).c_str());
        std::fflush(stdout);
        failed += r.pass ? 0 : 1;
      }
      std::printf("summary checks=%zu passed=%zu failed=%d\n", results.size(), results.size() - failed, failed);
      return failed ? kExitVerify : kExitOk;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
