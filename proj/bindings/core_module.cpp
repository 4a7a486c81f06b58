#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "archvol/copula.hpp"
#include "archvol/cpower.hpp"
#include "archvol/errors.hpp"
#include "archvol/generator.hpp"
#include "archvol/io.hpp"
#include "archvol/margins.hpp"
#include "archvol/volume.hpp"

namespace py = pybind11;
using namespace archvol;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Archimedean copula numerics: generators, H-volumes, "
              "C-power iteration, axiom witnesses, discrete margins";

    py::register_exception<verification_error>(m, "VerificationError",
                                               PyExc_RuntimeError);
    py::register_exception<idempotent_error>(m, "IdempotentError",
                                             PyExc_ValueError);
    py::register_exception<exhaustion_error>(m, "ExhaustionError",
                                             PyExc_RuntimeError);

    py::class_<Generator>(m, "Generator")
        .def_static("clayton", &Generator::clayton, py::arg("theta"))
        .def_static("gumbel", &Generator::gumbel, py::arg("theta"))
        .def_static("frank", &Generator::frank, py::arg("theta"))
        .def_static("independence", &Generator::independence)
        .def_static("from_json", &generator_from_json, py::arg("text"))
        .def_property_readonly("theta", &Generator::theta)
        .def_property_readonly("phi_at_zero", &Generator::phi_at_zero)
        .def_property_readonly("strict", &Generator::strict)
        .def("phi", &Generator::phi, py::arg("t"))
        .def("phi_inverse", &Generator::phi_inverse, py::arg("y"))
        .def("phi_inverse_bisect", &Generator::phi_inverse_bisect,
             py::arg("y"))
        .def("pseudo_inverse", &Generator::pseudo_inverse, py::arg("x"))
        .def("__repr__", &Generator::describe);

    m.def(
        "cdf",
        [](const Generator& g, const std::vector<double>& u) {
            return cdf(g, u);
        },
        py::arg("generator"), py::arg("point"));
    m.def("cdf_bivariate", &cdf_bivariate, py::arg("generator"),
          py::arg("u"), py::arg("v"));

    py::class_<Box>(m, "Box")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("lower"), py::arg("upper"))
        .def_readonly("lower", &Box::lower)
        .def_readonly("upper", &Box::upper)
        .def_property_readonly("dim", &Box::dim);

    py::class_<VolumeViolation>(m, "VolumeViolation")
        .def_readonly("box", &VolumeViolation::box)
        .def_readonly("volume", &VolumeViolation::volume);

    m.def(
        "h_volume",
        [](const std::function<double(std::vector<double>)>& H,
           const Box& box) {
            return h_volume(
                [&H](std::span<const double> x) {
                    return H(std::vector<double>(x.begin(), x.end()));
                },
                box);
        },
        py::arg("H"), py::arg("box"),
        "Signed vertex sum of a python callable H over the box corners");
    m.def("copula_volume", &copula_volume, py::arg("generator"),
          py::arg("box"));
    m.def(
        "d_increasing_check",
        [](const Generator& g, const std::vector<Box>& boxes, double tol) {
            return d_increasing_check(g, boxes, tol);
        },
        py::arg("generator"), py::arg("boxes"), py::arg("tol") = 1e-12);
    m.def("recursive_volume", &recursive_volume, py::arg("generator"),
          py::arg("u"), py::arg("n"));

    py::class_<Partition2D>(m, "Partition2D")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("u_cuts"), py::arg("v_cuts"))
        .def_readonly("u_cuts", &Partition2D::u_cuts)
        .def_readonly("v_cuts", &Partition2D::v_cuts);
    m.def("partition_volume_sum", &partition_volume_sum,
          py::arg("generator"), py::arg("partition"));

    py::enum_<StopReason>(m, "StopReason")
        .value("below_epsilon", StopReason::below_epsilon)
        .value("fixed_point_interior", StopReason::fixed_point_interior)
        .value("max_iterations", StopReason::max_iterations)
        .value("idempotent", StopReason::idempotent);

    py::class_<CPowerTrace>(m, "CPowerTrace")
        .def_readonly("u", &CPowerTrace::u)
        .def_readonly("checkpoints", &CPowerTrace::checkpoints)
        .def_readonly("stop_reason", &CPowerTrace::stop_reason)
        .def_readonly("limit_estimate", &CPowerTrace::limit_estimate)
        .def_readonly("steps", &CPowerTrace::steps)
        .def("to_json", &trace_to_json);

    py::class_<AxiomWitness>(m, "AxiomWitness")
        .def_readonly("u", &AxiomWitness::u)
        .def_readonly("v", &AxiomWitness::v)
        .def_readonly("N", &AxiomWitness::N)
        .def_readonly("f_prev", &AxiomWitness::f_prev)
        .def_readonly("f_at", &AxiomWitness::f_at)
        .def("to_json", &witness_to_json);

    m.def("c_power", &c_power, py::arg("generator"), py::arg("u"),
          py::arg("n"));
    m.def("cpower_trace", &cpower_trace, py::arg("generator"), py::arg("u"),
          py::arg("epsilon"), py::arg("n_max") = kDefaultNMax);
    m.def("axiom_witness", &axiom_witness, py::arg("generator"),
          py::arg("u"), py::arg("v"), py::arg("n_max") = kDefaultNMax);
    m.def("limit_is_zero", &limit_is_zero, py::arg("generator"),
          py::arg("u"), py::arg("epsilon"), py::arg("n_max") = kDefaultNMax);

    py::class_<StepDistribution>(m, "StepDistribution")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("jump_points"), py::arg("cdf_values"))
        .def("cdf", &StepDistribution::cdf, py::arg("x"))
        .def("mass", &StepDistribution::mass, py::arg("i"))
        .def_property_readonly("jump_count", &StepDistribution::jump_count)
        .def_property_readonly("jump_points",
                               [](const StepDistribution& f) {
                                   const auto s = f.jump_points();
                                   return std::vector<double>(s.begin(),
                                                              s.end());
                               })
        .def_property_readonly("cdf_values", [](const StepDistribution& f) {
            const auto s = f.cdf_values();
            return std::vector<double>(s.begin(), s.end());
        });

    m.def(
        "joint_cdf",
        [](const Generator& g, const std::vector<StepDistribution>& margins,
           const std::vector<double>& x) { return joint_cdf(g, margins, x); },
        py::arg("generator"), py::arg("margins"), py::arg("x"));

    py::class_<JointGrid>(m, "JointGrid")
        .def_readonly("shape", &JointGrid::shape)
        .def_readonly("cells", &JointGrid::cells)
        .def_readonly("clamped_cells", &JointGrid::clamped_cells)
        .def("cell",
             [](const JointGrid& grid, const std::vector<std::size_t>& idx) {
                 return grid.cell(idx);
             })
        .def("total_mass", &JointGrid::total_mass)
        .def("min_cell", &JointGrid::min_cell);

    py::class_<CertReport>(m, "CertReport")
        .def_readonly("grounded_ok", &CertReport::grounded_ok)
        .def_readonly("right_continuous_ok", &CertReport::right_continuous_ok)
        .def_readonly("boxes_checked", &CertReport::boxes_checked)
        .def_readonly("box_violations", &CertReport::box_violations)
        .def_readonly("detail", &CertReport::detail)
        .def("pass_", &CertReport::pass);

    m.def("pmf_table", &pmf_table, py::arg("generator"), py::arg("margins"));
    m.def("certify_df_axioms", &certify_df_axioms, py::arg("grid"),
          py::arg("sample_boxes"), py::arg("seed") = 0);

    m.attr("DEFAULT_N_MAX") = kDefaultNMax;
    m.attr("__version__") = "0.1.0";
}
