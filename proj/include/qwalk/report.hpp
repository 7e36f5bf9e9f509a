#pragma once

#include <string>

#include "json.hpp"

#include "qwalk/cospectral.hpp"
#include "qwalk/quotient.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/transfer.hpp"

namespace qwalk {

using Json = nlohmann::ordered_json;

/// Top-level object printed by every `--json` CLI command:
/// {"command", "graph_spec", "parameters", "result", "version"}.
struct ReportEnvelope {
    std::string command;
    std::string graph_spec;
    Json parameters = Json::object();
    Json result = Json::object();
    std::string version = QWALK_VERSION;

    friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

void to_json(Json& j, const ReportEnvelope& e);
/// Throws InvalidArgument when a required key is missing or has the wrong type.
void from_json(const Json& j, ReportEnvelope& e);

void to_json(Json& j, const TimeCertificate& c);
void to_json(Json& j, const ArithmeticWitness& w);
void to_json(Json& j, const PeriodicMaximum& m);
void to_json(Json& j, const TransferVerdict& v);
void to_json(Json& j, const TransferSearch& s);
void to_json(Json& j, const RecurrenceSearch& s);
void to_json(Json& j, const CospectralityReport& r);

/// thetas, multiplicities and grouping tolerance (no projector entries).
Json spectrum_json(const SpectralDecomposition& d);
Json partition_json(const EquitablePartition& p);
/// Row-major nested arrays.
Json matrix_json(const Eigen::MatrixXd& m);

/// %.17g, the fixed formatting used for CSV output.
std::string format_double(double x);

} // namespace qwalk
