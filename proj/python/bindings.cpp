#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "su11/errors.hpp"
#include "su11/interferometer.hpp"
#include "su11/loss.hpp"
#include "su11/oracle.hpp"
#include "su11/qfi.hpp"
#include "su11/scan.hpp"
#include "su11/states.hpp"
#include "su11/verify.hpp"

namespace py = pybind11;
using namespace su11;

namespace {

std::string repr_fields(const char* name, std::initializer_list<std::pair<const char*, double>> fields) {
  std::string out = std::string(name) + "(";
  bool first = true;
  for (const auto& [k, v] : fields) {
    out += (first ? "" : ", ") + std::string(k) + "=" + py::repr(py::float_(v)).cast<std::string>();
    first = false;
  }
  return out + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QFI and QCRB of SU(1,1) interferometers with cat, squeezed-vacuum and coherent inputs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<UndefinedQ>(m, "UndefinedQ", base.ptr());
  py::register_exception<InconsistentMoments>(m, "InconsistentMoments", base.ptr());
  py::register_exception<DegenerateQfim>(m, "DegenerateQfim", base.ptr());
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", base.ptr());
  py::register_exception<InsufficientCutoff>(m, "InsufficientCutoff", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<Vacuum>(m, "Vacuum").def(py::init<>()).def("__repr__", [](const Vacuum&) { return "Vacuum()"; });
  py::class_<CoherentParams>(m, "Coherent")
      .def(py::init([](double beta_abs, double theta_beta) { return CoherentParams{beta_abs, theta_beta}; }),
           py::arg("beta_abs") = 0.0, py::arg("theta_beta") = 0.0)
      .def_readwrite("beta_abs", &CoherentParams::beta_abs)
      .def_readwrite("theta_beta", &CoherentParams::theta_beta)
      .def("__repr__", [](const CoherentParams& p) {
        return repr_fields("Coherent", {{"beta_abs", p.beta_abs}, {"theta_beta", p.theta_beta}});
      });
  py::class_<CatParams>(m, "Cat")
      .def(py::init([](double alpha, double theta) { return CatParams{alpha, theta}; }), py::arg("alpha"),
           py::arg("theta"))
      .def_readwrite("alpha", &CatParams::alpha)
      .def_readwrite("theta", &CatParams::theta)
      .def("norm", &CatParams::norm)
      .def("__repr__", [](const CatParams& p) {
        return repr_fields("Cat", {{"alpha", p.alpha}, {"theta", p.theta}});
      });
  py::class_<SqueezedVacuumParams>(m, "SqueezedVacuum")
      .def(py::init([](double r, double eta_sq) { return SqueezedVacuumParams{r, eta_sq}; }), py::arg("r"),
           py::arg("eta_sq") = 0.0)
      .def_readwrite("r", &SqueezedVacuumParams::r)
      .def_readwrite("eta_sq", &SqueezedVacuumParams::eta_sq)
      .def("__repr__", [](const SqueezedVacuumParams& p) {
        return repr_fields("SqueezedVacuum", {{"r", p.r}, {"eta_sq", p.eta_sq}});
      });
  py::class_<GainConfig>(m, "Gain")
      .def(py::init([](double g, double theta_g) { return GainConfig{g, theta_g}; }), py::arg("g"),
           py::arg("theta_g") = 0.0)
      .def_readwrite("g", &GainConfig::g)
      .def_readwrite("theta_g", &GainConfig::theta_g)
      .def("__repr__",
           [](const GainConfig& p) { return repr_fields("Gain", {{"g", p.g}, {"theta_g", p.theta_g}}); });

  py::class_<ArmMoments>(m, "ArmMoments")
      .def(py::init([](double n_a, double n_b, double var_a, double var_b, double cov) {
             return ArmMoments{n_a, n_b, var_a, var_b, cov};
           }),
           py::arg("n_a"), py::arg("n_b"), py::arg("var_a"), py::arg("var_b"), py::arg("cov"))
      .def_readwrite("n_a", &ArmMoments::n_a)
      .def_readwrite("n_b", &ArmMoments::n_b)
      .def_readwrite("var_a", &ArmMoments::var_a)
      .def_readwrite("var_b", &ArmMoments::var_b)
      .def_readwrite("cov", &ArmMoments::cov)
      .def("__repr__", [](const ArmMoments& a) {
        return repr_fields("ArmMoments", {{"n_a", a.n_a}, {"n_b", a.n_b}, {"var_a", a.var_a},
                                                      {"var_b", a.var_b}, {"cov", a.cov}});
      });
  py::class_<Qfim>(m, "Qfim")
      .def_readonly("f_ss", &Qfim::f_ss)
      .def_readonly("f_sd", &Qfim::f_sd)
      .def_readonly("f_ds", &Qfim::f_ds)
      .def_readonly("f_dd", &Qfim::f_dd);
  py::class_<LossyBound>(m, "LossyBound")
      .def_readonly("c_value", &LossyBound::c_value)
      .def_readonly("gamma_a_opt", &LossyBound::gamma_a_opt)
      .def_readonly("gamma_b_opt", &LossyBound::gamma_b_opt)
      .def_readonly("converged", &LossyBound::converged)
      .def_readonly("iterations", &LossyBound::iterations);

  m.def("cat_mean_photon", &cat_mean_photon, py::arg("cat"));
  m.def("cat_mandel_q", &cat_mandel_q, py::arg("cat"));
  m.def("sv_mean_photon", &sv_mean_photon, py::arg("sv"));
  m.def("match_squeezing", &match_squeezing, py::arg("n_target"));
  m.def("mandel_q", &mandel_q, py::arg("state"));
  m.def("matched_squeezing_phase", &matched_squeezing_phase, py::arg("theta_G"));
  m.def("arm_moments", &arm_moments, py::arg("a"), py::arg("b"), py::arg("gain"));
  m.def("total_photons", &total_photons, py::arg("a"), py::arg("b"), py::arg("gain"));
  m.def("qfim_from_moments", &qfim_from_moments, py::arg("moments"));
  m.def("phase_sum_qfi", py::overload_cast<const ArmMoments&>(&phase_sum_qfi), py::arg("moments"));
  m.def("qfi_cat_closed", &qfi_cat_closed, py::arg("cat"), py::arg("beta"), py::arg("gain"));
  m.def("qfi_sv_closed", &qfi_sv_closed, py::arg("sv"), py::arg("beta"), py::arg("gain"));
  m.def("qcrb", [](double qfi, int repeats) { return qcrb(qfi, repeats).delta_phi; }, py::arg("qfi"),
        py::arg("m") = 1);
  m.def("sql", &sql, py::arg("total_photons"));
  m.def("two_arm_qfi",
        [](const ArmMoments& mom, double eta_a, double eta_b, double gamma_a, double gamma_b) {
          return effective_phase_sum_qfi(two_arm_qfim(mom, LossConfig{eta_a, eta_b, gamma_a, gamma_b}));
        },
        py::arg("moments"), py::arg("eta_a"), py::arg("eta_b"), py::arg("gamma_a") = 0.0, py::arg("gamma_b") = 0.0);
  m.def("single_arm_optimal", &single_arm_optimal, py::arg("moments"), py::arg("eta_a"));
  m.def("minimize_over_gammas",
        [](const ArmMoments& mom, double eta_a, double eta_b) { return minimize_over_gammas(mom, eta_a, eta_b); },
        py::arg("moments"), py::arg("eta_a"), py::arg("eta_b"));

  m.def("oracle_statistics",
        [](const InputStateSpec& a, const InputStateSpec& b, const GainConfig& gain, int cap) {
          oracle::OracleOptions opts;
          opts.cap = cap;
          oracle::OracleResult r;
          {
            py::gil_scoped_release release;
            r = oracle::converged_statistics(a, b, gain, opts);
          }
          py::dict out;
          out["moments"] = r.moments;
          out["qfim"] = r.qfim;
          out["phase_sum_qfi"] = r.phase_sum_qfi;
          out["cutoff"] = r.cutoff;
          out["rel_change"] = r.rel_change;
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("gain"), py::arg("cap") = 1200);

  m.def("evaluate_point",
        [](const std::string& family, double alpha, double theta, double r, double eta_sq, double beta,
           double theta_G, double g, double eta_a, double eta_b, int repeats) {
          PointConfig p;
          if (family == "cat") p.family = Family::kCat;
          else if (family == "sv") p.family = Family::kSqueezed;
          else throw InvalidParameter("family must be 'cat' or 'sv'");
          p.alpha = alpha;
          p.theta = theta;
          p.r = r;
          p.eta_sq = eta_sq;
          p.beta = beta;
          p.theta_G = theta_G;
          p.g = g;
          p.eta_a = eta_a;
          p.eta_b = eta_b;
          p.m = repeats;
          const PointResult res = evaluate_point(p);
          py::dict out;
          out["qfi_closed"] = res.qfi_closed;
          out["qfi_pipeline"] = res.qfi_pipeline;
          out["qfi_lossless"] = res.qfi_lossless;
          out["qfi"] = res.qfi;
          out["qcrb"] = res.qcrb;
          out["sql"] = res.sql;
          out["n_total"] = res.n_total;
          out["n_input_a"] = res.n_input_a;
          out["mandel_q_a"] = res.mandel_q_a;
          out["mandel_q_b"] = res.mandel_q_b;
          out["gamma_a_opt"] = res.gamma_a_opt;
          out["gamma_b_opt"] = res.gamma_b_opt;
          out["converged"] = res.converged;
          out["error"] = res.error;
          return out;
        },
        py::kw_only(), py::arg("family") = "cat", py::arg("alpha") = 2.0, py::arg("theta") = 3.141592653589793,
        py::arg("r") = kNaN, py::arg("eta_sq") = kNaN, py::arg("beta") = 0.0, py::arg("theta_G") = 0.0,
        py::arg("g") = 1.2, py::arg("eta_a") = 1.0, py::arg("eta_b") = 1.0, py::arg("m") = 1);

  m.def("run_verification",
        [](bool quick, const std::string& only, unsigned long long seed) {
          VerifyOptions opts;
          opts.quick = quick;
          opts.only = only;
          opts.seed = seed;
          std::vector<CheckResult> results;
          {
            py::gil_scoped_release release;
            results = run_verification(opts);
          }
          py::list out;
          for (const CheckResult& c : results) {
            py::dict d;
            d["name"] = c.name;
            d["pass"] = c.pass;
            d["residual"] = c.residual;
            d["tol"] = c.tol;
            d["config"] = c.config;
            d["note"] = c.note;
            out.append(d);
          }
          return out;
        },
        py::arg("quick") = true, py::arg("only") = "", py::arg("seed") = VerifyOptions{}.seed);
}
