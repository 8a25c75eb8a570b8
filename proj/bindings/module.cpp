#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "covmark/averages.hpp"
#include "covmark/io.hpp"

namespace py = pybind11;
using namespace covmark;

namespace {

py::int_ to_py_int(const BigInt& v) { return py::int_(py::str(v.str())); }

py::dict strong_markov_dict(const StrongMarkovReport& r) {
    py::dict d;
    d["radius"] = r.radius;
    d["geodesic"] = r.geodesic;
    d["injective"] = r.injective;
    d["surjective"] = r.surjective;
    d["ok"] = r.all();
    d["detail"] = r.detail;
    return d;
}

py::dict spectral_dict(const SpectralReport& r) {
    py::dict d;
    d["rho"] = r.rho;
    d["rho1"] = r.rho1;
    d["block_radius"] = r.block_radius;
    d["contributing"] = r.contributing;
    d["period"] = r.period;
    d["contributing_count"] = r.contributing_count;
    d["empirical_rate"] = r.empirical_rate;
    d["empirical_within_10pct"] = r.empirical_within_10pct;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Geodesic Markov coding, Perron-Frobenius analysis and "
              "non-commutative ergodic averages on matrix algebras";

    py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<io_error>(m, "IoError", PyExc_ValueError);

    py::class_<GeneratorTable>(m, "GeneratorTable")
        .def("__len__", &GeneratorTable::size)
        .def("name", &GeneratorTable::name)
        .def("inverse", &GeneratorTable::inverse)
        .def("id_of", &GeneratorTable::id_of);

    py::class_<GroupOracle>(m, "GroupOracle")
        .def_static("free_group", &GroupOracle::free_group, py::arg("rank"))
        .def_static("free_abelian", &GroupOracle::free_abelian, py::arg("rank"))
        .def_static("free_product_cyclic", &GroupOracle::free_product_cyclic, py::arg("orders"))
        .def_property_readonly("generators", &GroupOracle::generators,
                               py::return_value_policy::reference_internal)
        .def("describe", &GroupOracle::describe)
        .def("reduce", &GroupOracle::reduce)
        .def("multiply", &GroupOracle::multiply)
        .def("inverse_word", &GroupOracle::inverse_word)
        .def("word_length", &GroupOracle::word_length)
        .def("distance", &GroupOracle::distance)
        .def(
            "ball",
            [](const GroupOracle& g, int radius) {
                std::vector<Word> out;
                for (auto& w : g.enumerate_ball(radius)) out.push_back(w);
                return out;
            },
            py::arg("radius"))
        .def("sphere_count",
             [](const GroupOracle& g, int n) { return g.count_sphere_bruteforce(n); });

    py::class_<MarkovAutomaton>(m, "MarkovAutomaton")
        .def_property_readonly("vertex_count", &MarkovAutomaton::vertex_count)
        .def_property_readonly("origin", &MarkovAutomaton::origin)
        .def_property_readonly("generators", &MarkovAutomaton::generators,
                               py::return_value_policy::reference_internal)
        .def("vertex_name", &MarkovAutomaton::vertex_name)
        .def("transition_matrix", &MarkovAutomaton::transition_matrix)
        .def("__eq__", [](const MarkovAutomaton& a, const MarkovAutomaton& b) { return a == b; });

    m.def("build_free_group_automaton", &build_free_group_automaton, py::arg("k"));
    m.def("build_free_abelian_automaton", &build_free_abelian_automaton, py::arg("n"));
    m.def("build_free_product_automaton", &build_free_product_automaton, py::arg("orders"));
    m.def(
        "count_paths",
        [](const MarkovAutomaton& a, int n) { return to_py_int(count_paths(a, n)); },
        py::arg("automaton"), py::arg("n"));
    m.def("verify_strong_markov",
          [](const MarkovAutomaton& a, const GroupOracle& g, int radius) {
              return strong_markov_dict(verify_strong_markov(a, g, radius));
          });

    m.def("growth_rate", [](const MarkovAutomaton& a) {
        return spectral_dict(analyze_spectrum(a).report);
    });
    m.def("growth_constants", [](const MarkovAutomaton& a, double rho, int n_max) {
        auto gc = growth_constants(a, rho, n_max);
        return py::make_tuple(gc.c1, gc.c2);
    });
    m.def("perron_data", [](const Eigen::MatrixXi& block) {
        auto pd = perron_vector(block);
        py::dict d;
        d["rho"] = pd.rho;
        d["w"] = pd.w;
        d["R"] = pd.R;
        return d;
    });

    py::class_<AlgebraState>(m, "AlgebraState")
        .def(py::init<CMat, double>(), py::arg("density"), py::arg("tol") = 1e-12)
        .def_static("tracial", &AlgebraState::tracial, py::arg("dim"))
        .def_static("diagonal", &AlgebraState::diagonal, py::arg("probabilities"))
        .def_property_readonly("dim", &AlgebraState::dim)
        .def_property_readonly("density", &AlgebraState::density)
        .def("value", &AlgebraState::value)
        .def("gns_norm2", &AlgebraState::gns_norm2);

    py::class_<Automorphism>(m, "Automorphism")
        .def(py::init<CMat, double>(), py::arg("unitary"), py::arg("tol") = 1e-12)
        .def_static("identity", &Automorphism::identity, py::arg("dim"))
        .def_property_readonly("unitary", &Automorphism::unitary)
        .def("apply", &Automorphism::apply)
        .def("inverse", &Automorphism::inverse);

    m.def("random_state_preserving_unitary", &random_state_preserving_unitary, py::arg("state"),
          py::arg("seed"));
    m.def("check_state_invariance", &check_state_invariance, py::arg("state"),
          py::arg("automorphism"), py::arg("tol") = 1e-12);
    m.def("operator_order_leq", &operator_order_leq, py::arg("x"), py::arg("y"), py::arg("tol"));

    py::class_<ActionAssignment>(m, "ActionAssignment")
        .def(py::init<GeneratorTable, std::vector<Automorphism>, double>(), py::arg("generators"),
             py::arg("per_symbol"), py::arg("tol") = 1e-12)
        .def_static("trivial", &ActionAssignment::trivial, py::arg("generators"), py::arg("dim"))
        .def_static("seeded", &ActionAssignment::seeded, py::arg("oracle"), py::arg("state"),
                    py::arg("seed"))
        .def_property_readonly("generators", &ActionAssignment::generators,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("dim", &ActionAssignment::dim)
        .def("unitary_of", [](const ActionAssignment& a, int symbol) {
            return a.of(symbol).unitary();
        })
        .def("apply_word", &ActionAssignment::apply_word)
        .def("require_state_invariance", &ActionAssignment::require_state_invariance,
             py::arg("state"), py::arg("tol") = 1e-12)
        .def("require_relator_compatibility", &ActionAssignment::require_relator_compatibility,
             py::arg("oracle"), py::arg("radius"), py::arg("tol") = 1e-12);

    py::class_<CoveringOperator>(m, "CoveringOperator")
        .def(py::init<MarkovAutomaton, ActionAssignment>(), py::arg("automaton"),
             py::arg("action"))
        .def_property_readonly("dim", &CoveringOperator::dim)
        .def_property_readonly("slot_count", &CoveringOperator::slot_count)
        .def_property_readonly("rho",
                               [](const CoveringOperator& p) { return p.spectral_report().rho; })
        .def("spectral_report",
             [](const CoveringOperator& p) { return spectral_dict(p.spectral_report()); })
        .def("sphere_sum", &CoveringOperator::sphere_sum, py::arg("x"), py::arg("n"));

    m.def("sphere_sum_bruteforce",
          [](const ActionAssignment& a, const GroupOracle& g, const CMat& x, int n) {
              return sphere_sum_bruteforce(a, g, x, n);
          });

    m.def("spherical_sum", &spherical_sum);
    m.def("normalized_spherical", &normalized_spherical);
    m.def("cesaro_average", &cesaro_average, py::arg("operator"), py::arg("x"), py::arg("rho"),
          py::arg("n"));
    m.def("convergence_diagnostics",
          [](const CoveringOperator& p, const AlgebraState& s, const CMat& x, double rho,
             int n_max) {
              auto rep = convergence_diagnostics(p, s, x, rho, n_max);
              py::dict d;
              d["ladder"] = rep.ladder;
              d["delta_gns"] = rep.delta_gns;
              d["delta_op"] = rep.delta_op;
              d["limit_estimate"] = rep.limit_estimate;
              d["c_values"] = rep.c_values;
              d["cauchy"] = rep.cauchy;
              return d;
          });
    m.def("state_functional_check",
          [](const CoveringOperator& p, const AlgebraState& s, const CMat& x, double rho, int n) {
              auto rep = state_functional_check(p, s, x, rho, n);
              py::dict d;
              d["phi_sn"] = rep.phi_sn;
              d["c_n"] = rep.c_n;
              d["phi_x"] = rep.phi_x;
              d["rel_error"] = rep.rel_error;
              d["ok"] = rep.ok;
              return d;
          });
    m.def("majorant_bound",
          [](const CoveringOperator& p, const CMat& x, double rho, int n_max) {
              auto rep = majorant_bound(p, x, rho, n_max);
              py::dict d;
              d["c_star"] = rep.c_star;
              d["lambda_max_per_n"] = rep.lambda_max_per_n;
              d["ratio_to_norm"] = rep.ratio_to_norm;
              d["majorant_ok"] = rep.majorant_ok;
              return d;
          });
    m.def("squares_check",
          [](const CoveringOperator& p, const CMat& x, double rho, int n_max, int sigma_depth) {
              auto rep = squares_check(p, x, rho, n_max, sigma_depth);
              py::dict d;
              d["kappa"] = rep.kappa;
              d["kappa_max"] = rep.kappa_max;
              d["schwarz_ok"] = rep.schwarz_ok;
              d["worst_schwarz_eigenvalue"] = rep.worst_schwarz_eigenvalue;
              return d;
          },
          py::arg("operator"), py::arg("x"), py::arg("rho"), py::arg("n_max"),
          py::arg("sigma_depth") = 6);

    m.def("save_automaton", &save_automaton);
    m.def("load_automaton", &load_automaton);
    m.def("save_observable", &save_observable);
    m.def("load_observable", &load_observable);
    m.def(
        "load_action",
        [](const std::string& path, const GeneratorTable& expected, double tol) {
            auto loaded = load_action(path, expected, tol);
            return py::make_tuple(std::move(loaded.state), std::move(loaded.assignment));
        },
        py::arg("path"), py::arg("expected_generators"), py::arg("tol") = 1e-12);
    m.def("save_action", &save_action);
}
