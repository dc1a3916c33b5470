#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specgeo/experiment.hpp"
#include "specgeo/metric_field.hpp"
#include "specgeo/rmap.hpp"
#include "specgeo/sampling.hpp"

namespace py = pybind11;
using namespace specgeo;

namespace {

Polynomial poly_from_terms(int n, const std::vector<std::pair<std::vector<int>, double>>& terms) {
  std::vector<PolyTerm> ts;
  for (const auto& [powers, coeff] : terms) ts.push_back({powers, coeff});
  return Polynomial(n, std::move(ts));
}

py::dict probe_to_dict(const ProbeReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["curve"] = r.curve;
  d["c"] = r.c;
  d["verdict"] = r.verdict;
  d["length"] = r.length;
  d["bound"] = r.bound;
  d["final_margin"] = r.final_margin;
  d["energy_drift"] = r.energy_drift;
  py::list cps;
  for (const auto& cp : r.checkpoints) {
    py::dict c;
    c["t"] = cp.t;
    c["length"] = cp.length;
    c["bound"] = cp.bound;
    c["margin"] = cp.margin;
    c["length_ge_bound"] = cp.length_ge_bound;
    cps.append(c);
  }
  d["checkpoints"] = cps;
  return d;
}

}  // namespace

PYBIND11_MODULE(specgeo, m) {
  m.doc() = "Numeric laboratory for special geometry: homogeneous Hessian metrics, "
            "their deformations, curvature, geodesics, and the extended affine "
            "symplectic group.";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<EvalError>(m, "EvalError");
  py::register_exception<ConfigError>(m, "ConfigError");

  py::class_<HomogeneousFunction>(m, "HomogeneousFunction")
      .def_static(
          "polynomial",
          [](int n, const std::vector<std::pair<std::vector<int>, double>>& terms,
             const Eigen::VectorXd& base_point) {
            return HomogeneousFunction::polynomial(poly_from_terms(n, terms), base_point);
          },
          py::arg("n"), py::arg("terms"), py::arg("base_point"),
          "Homogeneous polynomial from (powers, coeff) terms.")
      .def_property_readonly("dim", &HomogeneousFunction::dim)
      .def_property_readonly("degree", &HomogeneousFunction::degree)
      .def("value", &HomogeneousFunction::value)
      .def("gradient", &HomogeneousFunction::gradient)
      .def("hessian", &HomogeneousFunction::hessian)
      .def("contains", &HomogeneousFunction::contains)
      .def("uc_margin", &HomogeneousFunction::uc_margin, py::arg("x"), py::arg("c"));

  m.def("metric_gU", &metric_gU, py::arg("h"), py::arg("x"), "-Hess h at x.");
  m.def("metric_gprime_c", &metric_gprime_c, py::arg("h"), py::arg("c"), py::arg("x"),
        "-Hess log(h+c) at x.");
  m.def("domain_Uc_contains", &domain_Uc_contains, py::arg("h"), py::arg("c"), py::arg("x"));
  m.def(
      "cone_decomposition",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXd& x) {
        ConeDecomposition d = cone_decomposition(h, c, x);
        py::dict out;
        out["xi"] = d.xi;
        out["g_check"] = d.g_check;
        out["residual_gu"] = d.residual_gu;
        out["residual_gprime"] = d.residual_gprime;
        out["residual_gprime_c"] = d.residual_gprime_c;
        return out;
      },
      py::arg("h"), py::arg("c"), py::arg("x"));
  m.def("scaling_pullback_residual", &scaling_pullback_residual, py::arg("h"), py::arg("c"),
        py::arg("lam"), py::arg("x"));
  m.def(
      "signature",
      [](const Eigen::MatrixXd& mtx, double tol) {
        Signature s = signature(mtx, tol);
        return py::make_tuple(s.n_plus, s.n_minus, s.n_zero);
      },
      py::arg("m"), py::arg("tol") = 1e-10);

  m.def(
      "scalar_curvature_gprime_c",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXd& x) {
        return scalar_curvature(MetricField::gprime_c(h, c), x);
      },
      py::arg("h"), py::arg("c"), py::arg("x"),
      "Scalar curvature of -Hess log(h+c) at x.");
  m.def(
      "christoffel_gprime_c",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXd& x) {
        Christoffels G = christoffel(MetricField::gprime_c(h, c), x);
        const int n = G.n;
        py::array_t<double> out({n, n, n});
        std::copy(G.a.begin(), G.a.end(), out.mutable_data());
        return out;
      },
      py::arg("h"), py::arg("c"), py::arg("x"));

  m.def(
      "integrate_geodesic_gprime_c",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXd& x0,
         const Eigen::VectorXd& v0, double t_max) {
        Path p = integrate_geodesic(MetricField::gprime_c(h, c), x0, v0, t_max);
        py::dict out;
        out["length"] = p.length;
        out["t_end"] = p.samples.back().t;
        out["x_end"] = p.samples.back().x;
        out["v_end"] = p.samples.back().v;
        out["termination"] = p.termination == Termination::time_exhausted
                                 ? "time_exhausted"
                                 : (p.termination == Termination::boundary_proximity
                                        ? "boundary_proximity"
                                        : "step_underflow");
        return out;
      },
      py::arg("h"), py::arg("c"), py::arg("x0"), py::arg("v0"), py::arg("t_max") = 10.0);
  m.def(
      "completeness_probe",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXd& start,
         std::optional<Eigen::VectorXd> direction, double t_max, double boundary_factor,
         double bound_cap) {
        ProbeSpec spec;
        spec.name = "probe";
        spec.start = start;
        spec.direction = std::move(direction);
        spec.c = c;
        spec.t_max = t_max;
        spec.thresholds.boundary_factor = boundary_factor;
        spec.thresholds.bound_cap = bound_cap;
        return probe_to_dict(completeness_probe(h, c, spec));
      },
      py::arg("h"), py::arg("c"), py::arg("start"), py::arg("direction") = std::nullopt,
      py::arg("t_max") = 10.0, py::arg("boundary_factor") = 1e-8,
      py::arg("bound_cap") = 20.0,
      "Length-versus-bound witness along a scaling ray (direction=None) or a geodesic.");

  py::enum_<Subgroup>(m, "Subgroup")
      .value("REAL", Subgroup::RealG)
      .value("SPECIAL_KAHLER", Subgroup::SpecialKahler)
      .value("COMPLEX", Subgroup::ComplexG);

  py::class_<GroupElement>(m, "GroupElement")
      .def(py::init<Eigen::MatrixXcd, Complex, Eigen::VectorXcd, double>(), py::arg("X"),
           py::arg("s"), py::arg("v"), py::arg("symplectic_tol") = 1e-9)
      .def_static("identity", &GroupElement::identity)
      .def_property_readonly("n", &GroupElement::n)
      .def_property_readonly("X", &GroupElement::X)
      .def_property_readonly("s", &GroupElement::s)
      .def_property_readonly("v", &GroupElement::v)
      .def_property_readonly("subgroup", &GroupElement::subgroup)
      .def("apply", &GroupElement::apply);

  m.def("group_mul", &group_mul);
  m.def("group_inv", &group_inv);
  m.def("rho", &rho);
  m.def("omega0", &omega0);
  m.def("omega_hat", &omega_hat);
  m.def(
      "random_element",
      [](int n, uint64_t seed, Subgroup flavor, double scale) {
        Rng rng(seed);
        return random_element(n, rng, flavor, scale);
      },
      py::arg("n"), py::arg("seed"), py::arg("flavor") = Subgroup::RealG,
      py::arg("scale") = 0.5);

  py::class_<Prepotential>(m, "Prepotential")
      .def_static(
          "cubic",
          [](int n, const std::vector<std::pair<std::vector<int>, double>>& terms) {
            return Prepotential::cubic(poly_from_terms(n, terms));
          },
          py::arg("n"), py::arg("terms"),
          "F = -h for the homogeneous cubic h given by (powers, coeff) terms.")
      .def_static("quadratic", &Prepotential::quadratic, py::arg("a"), py::arg("C"))
      .def("with_shift", &Prepotential::with_shift)
      .def("conified", &Prepotential::conified)
      .def_property_readonly("dim", &Prepotential::dim)
      .def_property_readonly("shift", &Prepotential::shift)
      .def("value", &Prepotential::value)
      .def("gradient", &Prepotential::gradient)
      .def("hessian", &Prepotential::hessian);

  m.def(
      "ask_data",
      [](const Prepotential& F, const Eigen::VectorXcd& z) {
        AskData d = ask_data(F, z);
        py::dict out;
        out["z"] = d.z;
        out["w"] = d.w;
        out["F"] = d.F;
        out["K"] = d.K;
        out["f"] = d.f;
        out["g"] = d.g;
        out["g_degenerate"] = d.g_degenerate;
        return out;
      },
      py::arg("F"), py::arg("z"));
  m.def(
      "conical_potential",
      [](const Prepotential& Fhat, const Eigen::VectorXcd& Z) {
        ConicalPotential cp = conical_potential(Fhat, Z);
        return py::make_tuple(cp.khat, cp.factorization_residual);
      },
      py::arg("Fhat"), py::arg("Z"));
  m.def(
      "nondegeneracy",
      [](const Prepotential& F, const Eigen::VectorXcd& z) {
        Nondegeneracy nd = nondegeneracy(F, z);
        py::dict out;
        out["kahlerian"] = nd.kahlerian;
        out["khat_nonzero"] = nd.khat_nonzero;
        out["omega_bar_nondeg"] = nd.omega_bar_nondeg;
        out["khat"] = nd.khat;
        return out;
      },
      py::arg("F"), py::arg("z"));
  m.def("psk_metric", &psk_metric, py::arg("F"), py::arg("z"));
  m.def("totally_complex_rank", &totally_complex_rank, py::arg("F"), py::arg("z"),
        py::arg("tol") = 1e-10);
  m.def("normalize_pair", &normalize_pair, py::arg("F"), py::arg("z0"));
  m.def("hermitian_to_real_form", &hermitian_to_real_form);

  m.def("rigid_rmap_metric", &rigid_rmap_metric, py::arg("h"), py::arg("z"));
  m.def("rigid_rmap_cross_residual", &rigid_rmap_cross_residual, py::arg("h"), py::arg("z"));
  m.def("deformed_rmap_metric", &deformed_rmap_metric, py::arg("h"), py::arg("c"),
        py::arg("z"));
  m.def(
      "deformed_rmap_metric_detail",
      [](const HomogeneousFunction& h, double c, const Eigen::VectorXcd& z) {
        DeformedRmapMetric d = deformed_rmap_metric_detail(h, c, z);
        return py::make_tuple(d.path_a, d.path_b, d.residual);
      },
      py::arg("h"), py::arg("c"), py::arg("z"));
  m.def("imh_identity_residual", &imh_identity_residual, py::arg("h"), py::arg("z"));
  m.def("elementary_deformation_residual", &elementary_deformation_residual, py::arg("h"),
        py::arg("c"), py::arg("z"));

  m.def(
      "run_experiment",
      [](const std::string& command, const std::string& config_json, uint64_t seed,
         const std::string& out_dir, double tol) {
        ExperimentConfig cfg;
        cfg.command = command;
        cfg.config = json::parse(config_json);
        cfg.seed = seed;
        cfg.out_dir = out_dir;
        cfg.tol = tol;
        ExperimentResult res = run_experiment(cfg);
        return py::make_tuple(res.exit_code, res.summary.dump(2), res.files);
      },
      py::arg("command"), py::arg("config_json"), py::arg("seed"), py::arg("out_dir"),
      py::arg("tol") = 0.0,
      "Run a report-producing command (same surface as the CLI).");
}
