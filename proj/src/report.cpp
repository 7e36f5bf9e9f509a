#include "qwalk/report.hpp"

#include <cstdio>

#include "qwalk/error.hpp"

namespace qwalk {

void to_json(Json& j, const ReportEnvelope& e) {
    j = Json{{"command", e.command},
             {"graph_spec", e.graph_spec},
             {"parameters", e.parameters},
             {"result", e.result},
             {"version", e.version}};
}

void from_json(const Json& j, ReportEnvelope& e) {
    auto text = [&j](const char* key) {
        if (!j.contains(key) || !j.at(key).is_string()) {
            throw InvalidArgument(std::string("report envelope: missing string field '") + key + "'");
        }
        return j.at(key).get<std::string>();
    };
    e.command = text("command");
    e.graph_spec = text("graph_spec");
    e.version = text("version");
    if (!j.contains("parameters") || !j.at("parameters").is_object()) {
        throw InvalidArgument("report envelope: 'parameters' must be an object");
    }
    if (!j.contains("result")) throw InvalidArgument("report envelope: missing 'result'");
    e.parameters = j.at("parameters");
    e.result = j.at("result");
}

void to_json(Json& j, const TimeCertificate& c) {
    j = Json{{"t", c.t},
             {"fidelity", c.fidelity},
             {"probability", c.probability()},
             {"phase", {{"re", c.phase.real()}, {"im", c.phase.imag()}}},
             {"phase_arg", std::arg(c.phase)},
             {"epsilon", c.epsilon}};
}

void to_json(Json& j, const ArithmeticWitness& w) {
    j = Json{{"quantity", w.quantity}, {"value", w.value}, {"perfect_square", w.root.has_value()}};
    if (w.root) j["root"] = *w.root;
}

void to_json(Json& j, const PeriodicMaximum& m) {
    j = Json{{"max_fidelity", m.max_fidelity}, {"argmax_t", m.argmax_t}};
}

void to_json(Json& j, const TransferVerdict& v) {
    j = Json{{"kind", std::string(to_string(v.kind))}, {"reason", v.reason}};
    j["certificate"] = v.certificate ? Json(*v.certificate) : Json(nullptr);
    j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
    if (v.periodic_max) j["periodic_max"] = *v.periodic_max;
}

void to_json(Json& j, const TransferSearch& s) {
    j = Json{{"found", s.found()},
             {"certificate", s.certificate ? Json(*s.certificate) : Json(nullptr)},
             {"best_t", s.best_t},
             {"best_fidelity", s.best_fidelity}};
}

void to_json(Json& j, const RecurrenceSearch& s) {
    j = Json{{"found", s.found()},
             {"t", s.t ? Json(*s.t) : Json(nullptr)},
             {"deviation", s.found() ? Json(s.deviation) : Json(nullptr)},
             {"best_t", s.best_t},
             {"best_deviation", s.best_deviation}};
}

void to_json(Json& j, const CospectralityReport& r) {
    j = Json{{"cospectral", r.cospectral},
             {"strongly_cospectral", r.strongly_cospectral},
             {"signs", r.signs}};
    if (r.witness) {
        j["witness"] = Json{{"index", r.witness->index},
                            {"uu", r.witness->uu},
                            {"vv", r.witness->vv},
                            {"uv", r.witness->uv}};
    } else {
        j["witness"] = nullptr;
    }
}

Json spectrum_json(const SpectralDecomposition& d) {
    return Json{{"thetas", d.thetas()},
                {"multiplicities", d.multiplicities()},
                {"grouping_tol", d.grouping_tol()}};
}

Json partition_json(const EquitablePartition& p) {
    return Json{{"cells", p.cells()}, {"counts", p.counts()}};
}

Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace qwalk
