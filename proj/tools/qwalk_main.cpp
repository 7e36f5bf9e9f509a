// qwalk: command-line front end for the continuous-time quantum walk toolkit.
//
// Exit codes: 0 success, 2 invalid input, 3 not found / search exhausted,
// 4 numeric failure.

#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/qwalk.hpp"
#include "qwalk/report.hpp"

namespace {

using namespace qwalk;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitNumeric = 4;

enum class Format { text, json, csv };

struct Common {
    std::string graph_spec;
    bool json = false;
    bool csv = false;

    Format format() const { return json ? Format::json : (csv ? Format::csv : Format::text); }
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse " + what + " from '" + s + "'");
    }
}

Vertex parse_vertex(const std::string& s) {
    const double x = parse_number(s, "vertex");
    if (x < 0 || x != std::floor(x)) throw InvalidArgument("vertex must be a nonnegative integer: " + s);
    return static_cast<Vertex>(x);
}

// "0;1" -> {{0},{1}}; "0,1;2" -> {{0,1},{2}}
Partition parse_cells(const std::string& s) {
    Partition cells;
    for (const auto& cell : split(s, ';')) {
        if (cell.empty()) throw InvalidArgument("empty cell in seed '" + s + "'");
        std::vector<Vertex> members;
        for (const auto& v : split(cell, ',')) members.push_back(parse_vertex(v));
        cells.push_back(std::move(members));
    }
    return cells;
}

std::vector<double> parse_grid(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) throw InvalidArgument("time grid must be start:stop:step, got '" + s + "'");
    const double start = parse_number(parts[0], "grid start");
    const double stop = parse_number(parts[1], "grid stop");
    const double step = parse_number(parts[2], "grid step");
    if (!(step > 0.0) || stop < start) throw InvalidArgument("time grid needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw InvalidArgument("time grid has too many points");
    std::vector<double> times(count);
    for (std::size_t i = 0; i < count; ++i) times[i] = start + static_cast<double>(i) * step;
    return times;
}

struct DoubleStarShape {
    std::int64_t k;
    std::int64_t l;
};

std::optional<DoubleStarShape> double_star_shape(const std::string& spec) {
    if (spec.rfind("dstar:", 0) != 0) return std::nullopt;
    const auto parts = split(spec.substr(6), ',');
    return DoubleStarShape{std::stoll(parts.at(0)), std::stoll(parts.at(1))};
}

bool same_pair(Vertex a, Vertex b, std::pair<Vertex, Vertex> p) {
    return (a == p.first && b == p.second) || (a == p.second && b == p.first);
}

std::vector<std::pair<Vertex, Vertex>> pendant_pairs(const DoubleStarShape& s) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    const auto k = static_cast<Vertex>(s.k);
    if (s.k == 2) pairs.emplace_back(2, 3);
    if (s.l == 2) pairs.emplace_back(k + 2, k + 3);
    if (s.k == 1 && s.l == 1) pairs.emplace_back(2, 3);
    return pairs;
}

void emit(const ReportEnvelope& env) { std::cout << Json(env).dump(2) << '\n'; }

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
    Common common;
    std::optional<double> tol;
    std::vector<std::string> pairs;
};

int run_spectrum(const SpectrumArgs& args) {
    const Graph g = parse_graph(args.common.graph_spec);
    const auto d = decompose(adjacency_matrix(g), args.tol);

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (const auto& p : args.pairs) {
        const auto uv = split(p, ',');
        if (uv.size() != 2) throw InvalidArgument("--pair expects u,v");
        const Vertex u = parse_vertex(uv[0]);
        const Vertex v = parse_vertex(uv[1]);
        if (u >= g.order() || v >= g.order()) throw InvalidArgument("--pair vertex out of range");
        pairs.emplace_back(u, v);
    }
    auto entry = [&d](std::size_t r, Vertex u, Vertex v) {
        return d.projector(r)(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
    };

    switch (args.common.format()) {
    case Format::json: {
        ReportEnvelope env{"spectrum", args.common.graph_spec};
        env.parameters["tol"] = args.tol ? Json(*args.tol) : Json(nullptr);
        env.parameters["pairs"] = args.pairs;
        env.result = spectrum_json(d);
        env.result["n"] = g.order();
        Json entries = Json::array();
        for (const auto& [u, v] : pairs) {
            std::vector<double> values;
            for (std::size_t r = 0; r < d.size(); ++r) values.push_back(entry(r, u, v));
            entries.push_back(Json{{"u", u}, {"v", v}, {"entries", values}});
        }
        env.result["projector_entries"] = entries;
        emit(env);
        break;
    }
    case Format::csv: {
        std::cout << "theta,multiplicity";
        for (const auto& [u, v] : pairs) std::cout << ",E_" << u << '_' << v;
        std::cout << '\n';
        for (std::size_t r = 0; r < d.size(); ++r) {
            std::cout << format_double(d.theta(r)) << ',' << d.multiplicities()[r];
            for (const auto& [u, v] : pairs) std::cout << ',' << format_double(entry(r, u, v));
            std::cout << '\n';
        }
        break;
    }
    case Format::text:
        std::cout << "graph " << args.common.graph_spec << ": " << g.order() << " vertices, "
                  << g.size() << " edges\n";
        for (std::size_t r = 0; r < d.size(); ++r) {
            std::cout << "  theta = " << d.theta(r) << "  (multiplicity " << d.multiplicities()[r] << ")";
            for (const auto& [u, v] : pairs) std::cout << "  E[" << u << "," << v << "] = " << entry(r, u, v);
            std::cout << '\n';
        }
        break;
    }
    return kExitOk;
}

// ---------------------------------------------------------------- quotient

struct QuotientArgs {
    Common common;
    std::string seed_cells;
    std::vector<std::string> check_transfer;
    std::string t_grid = "0:50:0.01";
};

int run_quotient(const QuotientArgs& args) {
    const Graph g = parse_graph(args.common.graph_spec);
    const Partition seed = args.seed_cells.empty() ? discrete_partition(g.order())
                                                   : seed_with_rest(g.order(), parse_cells(args.seed_cells));
    const auto p = coarsest_equitable_refinement(g, seed);
    const auto q = symmetrized_quotient(g, p);

    std::optional<double> deviation;
    Vertex a = 0;
    Vertex b = 0;
    if (!args.check_transfer.empty()) {
        a = parse_vertex(args.check_transfer.at(0));
        b = parse_vertex(args.check_transfer.at(1));
        const auto times = parse_grid(args.t_grid);
        deviation = quotient_transfer_identity_check(g, p, a, b, times);
    }

    if (args.common.format() == Format::json) {
        ReportEnvelope env{"quotient", args.common.graph_spec};
        env.parameters["seed_cells"] = args.seed_cells;
        env.parameters["check_transfer"] = args.check_transfer;
        env.parameters["t_grid"] = args.t_grid;
        env.result = partition_json(p);
        env.result["B"] = matrix_json(q.B());
        if (deviation) {
            env.result["transfer_check"] = Json{{"a", a}, {"b", b}, {"max_deviation", *deviation}};
        }
        emit(env);
        return kExitOk;
    }
    std::cout << "equitable partition with " << p.cell_count() << " cells:\n";
    for (std::size_t i = 0; i < p.cell_count(); ++i) {
        std::cout << "  C" << i << " = {";
        for (std::size_t j = 0; j < p.cell(i).size(); ++j) std::cout << (j ? "," : "") << p.cell(i)[j];
        std::cout << "}\n";
    }
    std::cout << "symmetrized quotient B:\n" << q.B() << '\n';
    if (deviation) {
        std::cout << "max |U_A(t)[" << a << "," << b << "] - U_B(t)| over grid: " << *deviation << '\n';
    }
    return kExitOk;
}

// -------------------------------------------------------------- cospectral

struct CospectralArgs {
    Common common;
    Vertex u = 0;
    Vertex v = 1;
};

int run_cospectral(const CospectralArgs& args) {
    const Graph g = parse_graph(args.common.graph_spec);
    const auto d = decompose(adjacency_matrix(g));
    const auto report = are_strongly_cospectral(d, args.u, args.v);
    std::optional<bool> oracle;
    if (g.order() <= 64) oracle = cospectral_char_poly_oracle(g, args.u, args.v);

    if (args.common.format() == Format::json) {
        ReportEnvelope env{"cospectral", args.common.graph_spec};
        env.parameters = Json{{"u", args.u}, {"v", args.v}};
        env.result = report;
        env.result["thetas"] = d.thetas();
        env.result["char_poly_cospectral"] = oracle ? Json(*oracle) : Json(nullptr);
        emit(env);
        return kExitOk;
    }
    std::cout << "vertices " << args.u << " and " << args.v << ": cospectral "
              << (report.cospectral ? "yes" : "no") << ", strongly cospectral "
              << (report.strongly_cospectral ? "yes" : "no") << '\n';
    std::cout << "  signs:";
    for (int s : report.signs) std::cout << ' ' << s;
    std::cout << '\n';
    if (oracle) std::cout << "  characteristic-polynomial check: " << (*oracle ? "equal" : "different") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- transfer

struct TransferArgs {
    Common common;
    Vertex u = 0;
    Vertex v = 1;
    bool pst = false;
    bool pgst = false;
    double epsilon = 0.01;
    std::optional<double> t_max;
    bool trace = false;
    double step = 0.01;
};

int run_trace(const Graph& g, const SpectralDecomposition& d, const TransferArgs& args) {
    if (!(args.step > 0.0)) throw InvalidArgument("--step must be positive");
    if (args.u >= g.order() || args.v >= g.order()) throw InvalidArgument("vertex out of range");
    const double end = args.t_max.value_or(2.0 * std::numbers::pi);
    const auto count = static_cast<std::size_t>(std::floor(end / args.step + 1e-9)) + 1;
    if (count > 10'000'000) throw InvalidArgument("trace has too many rows; raise --step");
    std::cout << "t,re(U_uv),im(U_uv),fidelity\n";
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) * args.step;
        const auto z = d.amplitude(args.u, args.v, t);
        std::cout << format_double(t) << ',' << format_double(z.real()) << ','
                  << format_double(z.imag()) << ',' << format_double(std::abs(z)) << '\n';
    }
    return kExitOk;
}

int run_transfer(const TransferArgs& args) {
    const Graph g = parse_graph(args.common.graph_spec);
    const auto d = decompose(adjacency_matrix(g));
    if (args.trace) return run_trace(g, d, args);
    if (args.pst == args.pgst) throw InvalidArgument("choose exactly one of --pst or --pgst");
    if (args.u >= g.order() || args.v >= g.order() || args.u == args.v) {
        throw InvalidArgument("need two distinct vertices in range");
    }
    const double t_max = args.t_max.value_or(kDefaultTMax);

    std::optional<TransferVerdict> verdict;
    std::optional<TransferSearch> search;
    const auto shape = double_star_shape(args.common.graph_spec);
    const bool centers = shape && same_pair(args.u, args.v, {0, 1});
    bool pendant = false;
    if (shape) {
        for (const auto& p : pendant_pairs(*shape)) pendant = pendant || same_pair(args.u, args.v, p);
    }

    if (args.pst) {
        if (centers) {
            verdict = pst_double_star(shape->k, shape->l, PairKind::centers);
        } else if (pendant) {
            verdict = pst_double_star(shape->k, shape->l, PairKind::pendant_pair);
        }
    } else if (centers) {
        if (shape->k != shape->l) {
            verdict = TransferVerdict{VerdictKind::pgst_no, "not-cospectral", std::nullopt,
                                      ArithmeticWitness{"degree(v) - degree(u)", shape->l - shape->k, std::nullopt},
                                      std::nullopt};
        } else {
            verdict = pgst_skk(shape->k, args.epsilon, t_max);
        }
    } else if (pendant && !(shape->k == 1 && shape->l == 1)) {
        verdict = pgst_s2l(shape->k == 2 ? shape->l : shape->k, args.epsilon, t_max);
    }

    if (!verdict) {
        // No exact criterion for this pair: strong cospectrality is necessary,
        // beyond that only a numerical certificate can be offered.
        const auto sc = are_strongly_cospectral(d, args.u, args.v);
        if (!sc.strongly_cospectral) {
            verdict = TransferVerdict{args.pst ? VerdictKind::pst_no : VerdictKind::pgst_no,
                                      "not-strongly-cospectral", std::nullopt, std::nullopt, std::nullopt};
        } else {
            search = find_transfer_time(d, args.u, args.v, args.pst ? 1e-9 : args.epsilon, t_max);
            if (args.pst && search->found()) {
                verdict = TransferVerdict{VerdictKind::pst_yes, "numeric-certificate", search->certificate,
                                          std::nullopt, std::nullopt};
            }
        }
    }

    const bool not_found = search && !search->found();
    if (args.common.format() == Format::json) {
        ReportEnvelope env{"transfer", args.common.graph_spec};
        env.parameters = Json{{"u", args.u}, {"v", args.v}, {"mode", args.pst ? "pst" : "pgst"},
                              {"epsilon", args.pst ? 1e-9 : args.epsilon}, {"t_max", t_max}};
        env.result = Json{{"verdict", verdict ? Json(*verdict) : Json(nullptr)},
                          {"search", search ? Json(*search) : Json(nullptr)}};
        emit(env);
    } else {
        if (verdict) {
            std::cout << to_string(verdict->kind) << " (" << verdict->reason << ")\n";
            if (verdict->witness) {
                std::cout << "  witness: " << verdict->witness->quantity << " = " << verdict->witness->value;
                if (verdict->witness->root) std::cout << " = " << *verdict->witness->root << "^2";
                std::cout << '\n';
            }
            if (verdict->periodic_max) {
                std::cout << "  max fidelity over one period: " << verdict->periodic_max->max_fidelity
                          << " at t = " << verdict->periodic_max->argmax_t << '\n';
            }
        }
        const auto& cert = verdict && verdict->certificate ? verdict->certificate
                                                           : (search ? search->certificate : std::nullopt);
        if (cert) {
            std::cout << "  t = " << format_double(cert->t) << ", fidelity = " << format_double(cert->fidelity)
                      << ", phase arg = " << std::arg(cert->phase) << '\n';
        } else if (not_found) {
            std::cout << "no certificate up to t = " << t_max << "; best fidelity " << search->best_fidelity
                      << " at t = " << search->best_t << '\n';
        }
    }
    return not_found ? kExitNotFound : kExitOk;
}

// ------------------------------------------------------------------- recur

struct RecurArgs {
    Common common;
    double epsilon = 0.05;
    std::string window = "1,10000";
};

int run_recur(const RecurArgs& args) {
    const Graph g = parse_graph(args.common.graph_spec);
    const auto d = decompose(adjacency_matrix(g));
    const auto parts = split(args.window, ',');
    if (parts.size() != 2) throw InvalidArgument("--window expects start,length");
    const double start = parse_number(parts[0], "window start");
    const double len = parse_number(parts[1], "window length");
    const auto rec = recurrence_time(d, args.epsilon, start, len);

    if (args.common.format() == Format::json) {
        ReportEnvelope env{"recur", args.common.graph_spec};
        env.parameters = Json{{"epsilon", args.epsilon}, {"window_start", start}, {"window_len", len}};
        env.result = rec;
        emit(env);
    } else if (rec.found()) {
        std::cout << "t = " << format_double(*rec.t) << ", ||U(t) - I|| = " << rec.deviation << '\n';
    } else {
        std::cout << "no t in [" << start << ", " << start + len << "] with ||U(t) - I|| < "
                  << args.epsilon << "; best " << rec.best_deviation << " at t = " << rec.best_t << '\n';
    }
    return rec.found() ? kExitOk : kExitNotFound;
}

void add_common(CLI::App* cmd, Common& common, bool csv) {
    cmd->add_option("graph", common.graph_spec, "path:n | star:k | dstar:k,l | cube:d | file:<edge list>")
        ->required();
    auto* json = cmd->add_flag("--json", common.json, "Emit a JSON report");
    if (csv) cmd->add_flag("--csv", common.csv, "Emit CSV")->excludes(json);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time quantum walks exp(iAt) on graphs"};
    app.set_version_flag("--version", std::string(QWALK_VERSION));
    app.require_subcommand(1);

    SpectrumArgs spectrum;
    auto* cmd_spectrum = app.add_subcommand("spectrum", "Distinct eigenvalues and projectors");
    add_common(cmd_spectrum, spectrum.common, true);
    cmd_spectrum->add_option("--tol", spectrum.tol, "Eigenvalue grouping tolerance");
    cmd_spectrum->add_option("--pair", spectrum.pairs, "Report (E_r)_{uv} for the pair u,v");

    QuotientArgs quotient;
    auto* cmd_quotient = app.add_subcommand("quotient", "Coarsest equitable refinement and symmetrized quotient");
    add_common(cmd_quotient, quotient.common, false);
    cmd_quotient->add_option("--seed-cells", quotient.seed_cells,
                             "Seed cells, e.g. '0;1' (remaining vertices form one more cell)");
    cmd_quotient->add_option("--check-transfer", quotient.check_transfer,
                             "Compare U_A(t)[a,b] with the quotient walk")
        ->expected(2);
    cmd_quotient->add_option("--t-grid", quotient.t_grid, "start:stop:step for --check-transfer");

    CospectralArgs cospectral;
    auto* cmd_cospectral = app.add_subcommand("cospectral", "Cospectrality and strong cospectrality of u, v");
    add_common(cmd_cospectral, cospectral.common, false);
    cmd_cospectral->add_option("u", cospectral.u)->required();
    cmd_cospectral->add_option("v", cospectral.v)->required();

    TransferArgs transfer;
    auto* cmd_transfer = app.add_subcommand("transfer", "Perfect / pretty good state transfer between u and v");
    add_common(cmd_transfer, transfer.common, true);
    cmd_transfer->add_option("u", transfer.u)->required();
    cmd_transfer->add_option("v", transfer.v)->required();
    cmd_transfer->add_flag("--pst", transfer.pst, "Decide perfect state transfer");
    cmd_transfer->add_flag("--pgst", transfer.pgst, "Decide pretty good state transfer");
    cmd_transfer->add_option("--epsilon", transfer.epsilon, "Certificate tolerance (fidelity >= 1 - epsilon)");
    cmd_transfer->add_option("--t-max", transfer.t_max, "Search horizon (default 1e4*pi; trace end 2*pi)");
    cmd_transfer->add_flag("--trace", transfer.trace, "Print a CSV trace of U(t)_{uv}");
    cmd_transfer->add_option("--step", transfer.step, "Trace time step");

    RecurArgs recur;
    auto* cmd_recur = app.add_subcommand("recur", "Find t with ||U(t) - I|| < epsilon");
    add_common(cmd_recur, recur.common, false);
    cmd_recur->add_option("--epsilon", recur.epsilon, "Tolerance on max_r |exp(i theta_r t) - 1|");
    cmd_recur->add_option("--window", recur.window, "start,length of the search window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*cmd_spectrum) return run_spectrum(spectrum);
        if (*cmd_quotient) return run_quotient(quotient);
        if (*cmd_cospectral) return run_cospectral(cospectral);
        if (*cmd_transfer) return run_transfer(transfer);
        if (*cmd_recur) return run_recur(recur);
    } catch (const SearchExhausted& e) {
        std::cerr << "qwalk: " << e.what() << " (best fidelity " << e.best_fidelity() << " at t = "
                  << e.best_t() << ")\n";
        return kExitNotFound;
    } catch (const NumericFailure& e) {
        std::cerr << "qwalk: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qwalk: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "qwalk: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}
