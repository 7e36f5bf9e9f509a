#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalk/qwalk.hpp"
#include "qwalk/report.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

// Exact surds are handed to Python as (a, b, d) with a, b given as "p/q" strings;
// the package turns them into fractions.
py::tuple surd_parts(const QuadraticSurd& x) {
    auto rat = [](const Rational& r) {
        return r.numerator().str() + "/" + r.denominator().str();
    };
    return py::make_tuple(rat(x.rational_part()), rat(x.surd_coefficient()), x.radicand());
}

PairKind pair_kind(const std::string& name) {
    if (name == "centers") return PairKind::centers;
    if (name == "pendant") return PairKind::pendant_pair;
    throw InvalidArgument("pair must be 'centers' or 'pendant', got '" + name + "'");
}

} // namespace

PYBIND11_MODULE(_qwalk, m) {
    m.doc() = "Continuous-time quantum walks on graphs: spectra, equitable quotients, state transfer";
    m.attr("__version__") = QWALK_VERSION;

    auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", invalid.ptr());
    py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
    py::register_exception<NotPeriodic>(m, "NotPeriodic", PyExc_ValueError);
    py::register_exception<SearchExhausted>(m, "SearchExhausted", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def(py::init([](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                         std::vector<std::string> labels) {
                 std::vector<Edge> es;
                 for (const auto& [u, v] : edges) es.push_back({u, v});
                 return Graph(n, std::move(es), std::move(labels));
             }),
             py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_property_readonly("order", &Graph::order)
        .def_property_readonly("size", &Graph::size)
        .def_property_readonly("edges",
                               [](const Graph& g) {
                                   std::vector<std::pair<Vertex, Vertex>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("labels", &Graph::labels)
        .def("neighbors", &Graph::neighbors, py::arg("v"))
        .def("degree", &Graph::degree, py::arg("v"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("adjacency_matrix", [](const Graph& g) { return adjacency_matrix(g); })
        .def("__repr__", [](const Graph& g) {
            return "<Graph order=" + std::to_string(g.order()) + " size=" + std::to_string(g.size()) + ">";
        });

    m.def("parse_graph", [](const std::string& spec) { return parse_graph(spec); }, py::arg("spec"));
    m.def("path", &path, py::arg("n"));
    m.def("star", &star, py::arg("k"));
    m.def("double_star", &double_star, py::arg("k"), py::arg("l"));
    m.def("hypercube", &hypercube, py::arg("d"));

    py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
        .def_property_readonly("thetas", &SpectralDecomposition::thetas)
        .def_property_readonly("projectors", &SpectralDecomposition::projectors)
        .def_property_readonly("multiplicities", &SpectralDecomposition::multiplicities)
        .def_property_readonly("dimension", &SpectralDecomposition::dimension)
        .def_property_readonly("grouping_tol", &SpectralDecomposition::grouping_tol)
        .def_property_readonly("spectral_radius", &SpectralDecomposition::spectral_radius)
        .def("amplitude", &SpectralDecomposition::amplitude, py::arg("u"), py::arg("v"), py::arg("t"))
        .def("walk_matrix", [](const SpectralDecomposition& d, double t) { return walk_matrix(d, t).U; },
             py::arg("t"))
        .def("support", [](const SpectralDecomposition& d, Vertex u) { return eigenvalue_support(d, u); },
             py::arg("u"))
        .def("__len__", &SpectralDecomposition::size);

    m.def("decompose", [](const Eigen::MatrixXd& a, std::optional<double> tol) { return decompose(a, tol); },
          py::arg("matrix"), py::arg("grouping_tol") = py::none());
    m.def("spectrum", [](const Graph& g) { return decompose(adjacency_matrix(g)); }, py::arg("graph"),
          "Spectral decomposition of the adjacency matrix.");

    py::class_<EquitablePartition>(m, "EquitablePartition")
        .def(py::init<const Graph&, Partition>(), py::arg("graph"), py::arg("cells"))
        .def_property_readonly("cells", &EquitablePartition::cells)
        .def_property_readonly("counts", &EquitablePartition::counts)
        .def("cell_of", py::overload_cast<Vertex>(&EquitablePartition::cell_of, py::const_), py::arg("v"))
        .def("quotient_matrix", &EquitablePartition::quotient_matrix)
        .def("__len__", &EquitablePartition::cell_count);

    py::class_<SymmetrizedQuotient>(m, "SymmetrizedQuotient")
        .def_property_readonly("B", &SymmetrizedQuotient::B)
        .def_property_readonly("Q", &SymmetrizedQuotient::Q)
        .def_property_readonly("cell_of", py::overload_cast<>(&SymmetrizedQuotient::cell_of, py::const_))
        .def_property_readonly("cell_sizes", &SymmetrizedQuotient::cell_sizes);

    m.def("is_equitable", [](const Graph& g, const Partition& p) { return is_equitable(g, p).equitable; },
          py::arg("graph"), py::arg("cells"));
    m.def(
        "equitable_refinement",
        [](const Graph& g, const Partition& seed) {
            return coarsest_equitable_refinement(g, seed_with_rest(g.order(), seed));
        },
        py::arg("graph"), py::arg("seed") = Partition{},
        "Coarsest equitable partition refining the seed cells plus a cell of the remaining vertices.");
    m.def("symmetrized_quotient",
          py::overload_cast<const Graph&, const EquitablePartition&>(&symmetrized_quotient), py::arg("graph"),
          py::arg("partition"));
    m.def(
        "quotient_transfer_check",
        [](const Graph& g, const EquitablePartition& p, Vertex a, Vertex b, const std::vector<double>& times,
           bool negative) {
            return quotient_transfer_identity_check(g, p, a, b, times,
                                                    negative ? TimeSign::negative : TimeSign::positive);
        },
        py::arg("graph"), py::arg("partition"), py::arg("a"), py::arg("b"), py::arg("times"),
        py::arg("negative_time") = false);

    py::class_<CospectralityReport>(m, "CospectralityReport")
        .def_readonly("cospectral", &CospectralityReport::cospectral)
        .def_readonly("strongly_cospectral", &CospectralityReport::strongly_cospectral)
        .def_readonly("signs", &CospectralityReport::signs);

    m.def("are_cospectral", &are_cospectral, py::arg("decomposition"), py::arg("u"), py::arg("v"));
    m.def("strong_cospectrality", &are_strongly_cospectral, py::arg("decomposition"), py::arg("u"),
          py::arg("v"));
    m.def(
        "characteristic_polynomial",
        [](const Graph& g, std::optional<Vertex> removed) {
            std::vector<BigInt> coeffs;
            if (removed) {
                coeffs = vertex_deleted_characteristic_polynomial(g, *removed);
            } else {
                std::vector<std::vector<std::int64_t>> a(g.order(), std::vector<std::int64_t>(g.order(), 0));
                for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
                coeffs = characteristic_polynomial(a);
            }
            py::list out;
            for (const auto& c : coeffs) out.append(py::int_(py::str(c.str())));
            return out;
        },
        py::arg("graph"), py::arg("removed") = py::none(), "Exact coefficients, highest degree first.");

    m.def("is_perfect_square", &is_perfect_square, py::arg("m"));
    m.def("s2l_ratio_is_rational", &s2l_ratio_is_rational, py::arg("l"));
    m.def(
        "continued_fraction",
        [](double x, int count) {
            std::vector<std::pair<std::int64_t, std::int64_t>> out;
            for (const auto& c : continued_fraction_convergents(x, count)) out.emplace_back(c.p, c.q);
            return out;
        },
        py::arg("x"), py::arg("count"), "Convergents (p, q) of a positive float.");
    m.def(
        "skk_parameters",
        [](std::int64_t k) {
            const auto p = skk_parameters(k);
            return py::make_tuple(surd_parts(p.alpha), surd_parts(p.beta));
        },
        py::arg("k"), "alpha and beta as exact (a, b, d) triples meaning a + b sqrt(d).");

    py::class_<TimeCertificate>(m, "TimeCertificate")
        .def_readonly("t", &TimeCertificate::t)
        .def_readonly("fidelity", &TimeCertificate::fidelity)
        .def_readonly("phase", &TimeCertificate::phase)
        .def_readonly("epsilon", &TimeCertificate::epsilon);

    py::class_<ArithmeticWitness>(m, "ArithmeticWitness")
        .def_readonly("quantity", &ArithmeticWitness::quantity)
        .def_readonly("value", &ArithmeticWitness::value)
        .def_readonly("root", &ArithmeticWitness::root);

    py::class_<PeriodicMaximum>(m, "PeriodicMaximum")
        .def_readonly("max_fidelity", &PeriodicMaximum::max_fidelity)
        .def_readonly("argmax_t", &PeriodicMaximum::argmax_t);

    py::class_<TransferVerdict>(m, "TransferVerdict")
        .def_property_readonly("kind", [](const TransferVerdict& v) { return std::string(to_string(v.kind)); })
        .def_readonly("reason", &TransferVerdict::reason)
        .def_readonly("certificate", &TransferVerdict::certificate)
        .def_readonly("witness", &TransferVerdict::witness)
        .def_readonly("periodic_max", &TransferVerdict::periodic_max)
        .def("to_json", [](const TransferVerdict& v) {
            Json j;
            to_json(j, v);
            return j.dump();
        });

    py::class_<TransferSearch>(m, "TransferSearch")
        .def_readonly("certificate", &TransferSearch::certificate)
        .def_readonly("best_t", &TransferSearch::best_t)
        .def_readonly("best_fidelity", &TransferSearch::best_fidelity)
        .def_property_readonly("found", &TransferSearch::found);

    py::class_<RecurrenceSearch>(m, "RecurrenceSearch")
        .def_readonly("t", &RecurrenceSearch::t)
        .def_readonly("deviation", &RecurrenceSearch::deviation)
        .def_readonly("best_t", &RecurrenceSearch::best_t)
        .def_readonly("best_deviation", &RecurrenceSearch::best_deviation)
        .def_property_readonly("found", &RecurrenceSearch::found);

    m.def("fidelity", &fidelity, py::arg("decomposition"), py::arg("u"), py::arg("v"), py::arg("t"));
    m.def("skk_amplitude", &skk_amplitude, py::arg("k"), py::arg("t"));
    m.def(
        "double_star_pair", [](std::int64_t k, std::int64_t l, const std::string& pair) {
            return double_star_pair(k, l, pair_kind(pair));
        },
        py::arg("k"), py::arg("l"), py::arg("pair") = "centers");
    m.def(
        "pst_double_star", [](std::int64_t k, std::int64_t l, const std::string& pair) {
            return pst_double_star(k, l, pair_kind(pair));
        },
        py::arg("k"), py::arg("l"), py::arg("pair") = "centers");
    m.def("pgst_skk", &pgst_skk, py::arg("k"), py::arg("epsilon"), py::arg("t_max") = kDefaultTMax,
          py::call_guard<py::gil_scoped_release>());
    m.def("pgst_s2l", &pgst_s2l, py::arg("l"), py::arg("epsilon"), py::arg("t_max") = kDefaultTMax,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "find_transfer_time",
        [](const SpectralDecomposition& d, Vertex u, Vertex v, double epsilon, double t_max,
           std::optional<double> schedule_base) {
            std::optional<CandidateSchedule> schedule;
            if (schedule_base) schedule = CandidateSchedule{*schedule_base};
            return find_transfer_time(d, u, v, epsilon, t_max, schedule);
        },
        py::arg("decomposition"), py::arg("u"), py::arg("v"), py::arg("epsilon"),
        py::arg("t_max") = kDefaultTMax, py::arg("schedule_base") = py::none(),
        py::call_guard<py::gil_scoped_release>());
    m.def("max_fidelity_periodic", &max_fidelity_periodic, py::arg("decomposition"), py::arg("u"),
          py::arg("v"));
    m.def("phase_deviation", &phase_deviation, py::arg("decomposition"), py::arg("t"));
    m.def("recurrence_time", &recurrence_time, py::arg("decomposition"), py::arg("epsilon"),
          py::arg("window_start"), py::arg("window_len"), py::call_guard<py::gil_scoped_release>());
}
