#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dunklfp/analytic.hpp"
#include "dunklfp/errors.hpp"
#include "dunklfp/numeric.hpp"
#include "dunklfp/opalg.hpp"
#include "dunklfp/specfun.hpp"

namespace py = pybind11;
using namespace dunklfp;

namespace {

opalg::LaurentPolynomial to_laurent(const std::map<int, double>& terms) {
  opalg::LaurentPolynomial p;
  for (const auto& [k, c] : terms) p.add_term(k, c);
  return p;
}

std::map<int, double> from_laurent(const opalg::LaurentPolynomial& p) {
  std::map<int, double> out;
  for (const auto& [k, c] : p.terms()) out[k] = static_cast<double>(c);
  return out;
}

py::array_t<double> as_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ParityFunction to_parity_function(Parity parity, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  ParityFunction f{parity, {}};
  f.samples.assign(a.data(), a.data() + a.size());
  return f;
}

}  // namespace

PYBIND11_MODULE(_dunklfp, m) {
  m.doc() = "Dunkl-type Fokker-Planck operators, closed-form solutions and sector solvers";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<KindError>(m, "KindError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<FamilyError>(m, "FamilyError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<AlphaError>(m, "AlphaError", base.ptr());
  py::register_exception<ParityMismatch>(m, "ParityMismatch", base.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<SpectrumError>(m, "SpectrumError", base.ptr());
  py::register_exception<SolveError>(m, "SolveError", base.ptr());
  py::register_exception<SignalError>(m, "SignalError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::enum_<DerivativeKind>(m, "DerivativeKind")
      .value("Yang", DerivativeKind::Yang)
      .value("Dunkl", DerivativeKind::Dunkl)
      .value("CH", DerivativeKind::CH)
      .value("TP", DerivativeKind::TP);
  py::enum_<Parity>(m, "Parity").value("Even", Parity::Even).value("Odd", Parity::Odd);

  py::class_<DunklParams>(m, "DunklParams")
      .def_property_readonly("kind", &DunklParams::kind)
      .def_property_readonly("sigma", &DunklParams::sigma)
      .def_property_readonly("mu", &DunklParams::mu)
      .def_property_readonly("gamma", &DunklParams::gamma)
      .def_property_readonly("eta", &DunklParams::eta)
      .def_property_readonly("warnings", &DunklParams::warnings);
  m.def("make_params", &make_params, py::arg("kind"), py::arg("sigma"), py::arg("mu"), py::arg("gamma") = 0.0);

  py::class_<Superpotential>(m, "Superpotential")
      .def_static("centrifugal", &Superpotential::centrifugal, py::arg("a"))
      .def_static("oscillator_centrifugal", &Superpotential::oscillator_centrifugal, py::arg("a"))
      .def_property_readonly("a", &Superpotential::a)
      .def("w", &Superpotential::w);
  m.def("superpotential_eval", [](const Superpotential& s, double x) {
    const auto v = superpotential_eval(s, x);
    return py::make_tuple(v.w, v.w_prime, v.reflected, v.potential);
  });

  // Laurent polynomials cross the boundary as {exponent: coefficient}.
  m.def("apply_derivative", [](const DunklParams& p, const std::map<int, double>& terms) {
    return from_laurent(opalg::apply_derivative(p, to_laurent(terms)));
  });
  m.def("apply_reflection",
        [](const std::map<int, double>& terms) { return from_laurent(opalg::apply_reflection(to_laurent(terms))); });

  py::class_<opalg::Report>(m, "Report")
      .def_readonly("check", &opalg::Report::check)
      .def_readonly("passed", &opalg::Report::passed)
      .def_property_readonly("worst_residual", [](const opalg::Report& r) { return static_cast<double>(r.worst_residual); })
      .def_property_readonly("violating_degrees", [](const opalg::Report& r) {
        std::vector<int> k;
        for (const auto& v : r.violations) k.push_back(v.degree);
        return k;
      });
  m.def("verify_anticommutation", py::overload_cast<const DunklParams&, int>(&opalg::verify_anticommutation));
  m.def("verify_square_closed_form", py::overload_cast<const DunklParams&, int>(&opalg::verify_square_closed_form));
  m.def("verify_tp_rewrite", &opalg::verify_tp_rewrite);

  m.def("gamma_fn", &specfun::gamma_fn);
  m.def("bessel_j", &specfun::bessel_j, py::arg("nu"), py::arg("x"));
  m.def("laguerre", &specfun::laguerre, py::arg("n"), py::arg("alpha"), py::arg("u"));

  py::class_<analytic::BesselDescriptor>(m, "BesselDescriptor")
      .def_readonly("parity", &analytic::BesselDescriptor::parity)
      .def_readonly("power", &analytic::BesselDescriptor::power)
      .def_readonly("order", &analytic::BesselDescriptor::order)
      .def_readonly("lambda_", &analytic::BesselDescriptor::lambda)
      .def_readonly("admissible", &analytic::BesselDescriptor::admissible)
      .def("__call__", [](const analytic::BesselDescriptor& d, double x) { return analytic::eval_descriptor(d, x); })
      .def("__str__", [](const analytic::BesselDescriptor& d) { return analytic::render(d); });
  py::class_<analytic::LaguerreDescriptor>(m, "LaguerreDescriptor")
      .def_readonly("parity", &analytic::LaguerreDescriptor::parity)
      .def_readonly("beta", &analytic::LaguerreDescriptor::beta)
      .def_readonly("power", &analytic::LaguerreDescriptor::power)
      .def_readonly("alpha", &analytic::LaguerreDescriptor::alpha)
      .def_readonly("n", &analytic::LaguerreDescriptor::n)
      .def_readonly("lambda_", &analytic::LaguerreDescriptor::lambda)
      .def_readonly("amplitude", &analytic::LaguerreDescriptor::amplitude)
      .def_readonly("admissible", &analytic::LaguerreDescriptor::admissible)
      .def("__call__", [](const analytic::LaguerreDescriptor& d, double x) { return analytic::eval_descriptor(d, x); })
      .def("__str__", [](const analytic::LaguerreDescriptor& d) { return analytic::render(d); });

  m.def("centrifugal_solution", &analytic::centrifugal_solution, py::arg("parity"), py::arg("a"), py::arg("sigma"),
        py::arg("mu"), py::arg("lambda_"));
  m.def("centrifugal_admissible_mu", &analytic::centrifugal_admissible_mu);
  m.def("centrifugal_admissible_sigma", &analytic::centrifugal_admissible_sigma);
  m.def("oscillator_solution", &analytic::oscillator_solution, py::arg("parity"), py::arg("a"), py::arg("params"),
        py::arg("n"));
  m.def("oscillator_gamma_for_parity", &analytic::oscillator_gamma_for_parity);
  m.def("normalize", &analytic::normalize);
  m.def("generate_table1", [] {
    py::list rows;
    for (const auto& r : analytic::generate_table1())
      rows.append(py::make_tuple(r.mu, r.sigma, analytic::render(r.even), analytic::render(r.odd)));
    return rows;
  });

  py::class_<numeric::SectorOperator>(m, "SectorOperator")
      .def_property_readonly("parity", &numeric::SectorOperator::parity)
      .def_property_readonly("nodes", [](const numeric::SectorOperator& op) { return as_array(op.grid().nodes()); })
      .def("apply", [](const numeric::SectorOperator& op,
                       const py::array_t<double, py::array::c_style | py::array::forcecast>& psi) {
        return as_array(op.apply(std::span<const double>(psi.data(), static_cast<std::size_t>(psi.size()))));
      });
  m.def(
      "build_sector_operator",
      [](const DunklParams& p, const Superpotential& s, Parity parity, std::size_t n, double xmax) {
        return numeric::build_sector_operator(p, s, parity, HalfLineGrid::with_extent(n, xmax));
      },
      py::arg("params"), py::arg("superpotential"), py::arg("parity"), py::arg("n"), py::arg("xmax"));
  m.def("relative_residual", [](const numeric::SectorOperator& op,
                                const py::array_t<double, py::array::c_style | py::array::forcecast>& psi,
                                double lambda) {
    return numeric::relative_residual(op, to_parity_function(op.parity(), psi), lambda);
  });
  m.def(
      "lowest_eigenpairs",
      [](const numeric::SectorOperator& op, std::size_t k) {
        py::list out;
        for (const auto& e : numeric::lowest_eigenpairs(op, k)) out.append(py::make_tuple(e.lambda, as_array(e.psi.samples)));
        return out;
      },
      py::arg("op"), py::arg("k"));
  m.def(
      "evolve_decay_rate",
      [](const numeric::SectorOperator& op, const py::array_t<double, py::array::c_style | py::array::forcecast>& p0,
         double dt, std::size_t steps, bool crank_nicolson) {
        const ParityFunction f = to_parity_function(op.parity(), p0);
        const auto traj = numeric::evolve(op, f, dt, steps,
                                          crank_nicolson ? numeric::TimeScheme::CrankNicolson
                                                         : numeric::TimeScheme::BackwardEuler);
        return numeric::decay_rate(traj, f);
      },
      py::arg("op"), py::arg("p0"), py::arg("dt"), py::arg("steps"), py::arg("crank_nicolson") = true);
}
