#include "qwalk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), adjacency_(n), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n_) {
        throw InvalidArgument("label count " + std::to_string(labels_.size()) +
                              " does not match vertex count " + std::to_string(n_));
    }
    for (auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_) {
            throw InvalidArgument("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  "} has an endpoint outside 0.." + std::to_string(n_ - 1));
        }
        if (e.u == e.v) {
            throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw InvalidArgument("duplicate edge {" + std::to_string(dup->u) + "," +
                              std::to_string(dup->v) + "}");
    }
    for (const auto& e : edges_) {
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    const auto& nb = adjacency_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::string Graph::label(Vertex v) const {
    if (labels_.empty()) return {};
    return labels_.at(v);
}

Graph double_star(std::int64_t k, std::int64_t l) {
    if (k < 1 || l < 1) {
        throw InvalidArgument("double_star requires k >= 1 and l >= 1, got k=" + std::to_string(k) +
                              ", l=" + std::to_string(l));
    }
    const auto ku = static_cast<std::size_t>(k);
    const auto lu = static_cast<std::size_t>(l);
    const std::size_t n = ku + lu + 2;
    std::vector<Edge> edges{{0, 1}};
    std::vector<std::string> labels(n);
    labels[0] = "center-u";
    labels[1] = "center-v";
    for (std::size_t i = 0; i < ku; ++i) {
        edges.push_back({0, 2 + i});
        labels[2 + i] = "leaf-u:" + std::to_string(i);
    }
    for (std::size_t i = 0; i < lu; ++i) {
        edges.push_back({1, 2 + ku + i});
        labels[2 + ku + i] = "leaf-v:" + std::to_string(i);
    }
    return Graph(n, std::move(edges), std::move(labels));
}

Graph path(std::int64_t n) {
    if (n < 1) throw InvalidArgument("path requires n >= 1, got " + std::to_string(n));
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) edges.push_back({i, i + 1});
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Graph hypercube(std::int64_t d) {
    // 2^d vertices must index comfortably; anything beyond 2^30 is far outside desk scale.
    if (d < 1 || d > 30) {
        throw InvalidArgument("hypercube requires 1 <= d <= 30, got " + std::to_string(d));
    }
    const std::size_t n = std::size_t{1} << d;
    std::vector<Edge> edges;
    for (std::size_t x = 0; x < n; ++x) {
        for (int i = 0; i < d; ++i) {
            const std::size_t y = x ^ (std::size_t{1} << i);
            if (x < y) edges.push_back({x, y});
        }
    }
    return Graph(n, std::move(edges));
}

Graph star(std::int64_t k) {
    if (k < 1) throw InvalidArgument("star requires k >= 1, got " + std::to_string(k));
    std::vector<Edge> edges;
    std::vector<std::string> labels{"center"};
    for (std::size_t i = 1; i <= static_cast<std::size_t>(k); ++i) {
        edges.push_back({0, i});
        labels.push_back("leaf:" + std::to_string(i - 1));
    }
    return Graph(static_cast<std::size_t>(k) + 1, std::move(edges), std::move(labels));
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = 1.0;
        a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = 1.0;
    }
    return a;
}

namespace {

// Reads one non-negative integer from `text` starting at `pos`; advances `pos`.
std::int64_t parse_integer(std::string_view text, std::size_t& pos, std::size_t offset) {
    std::int64_t value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError("integer out of range", offset + pos);
    }
    if (ec != std::errc() || ptr == first) {
        throw ParseError("expected an integer", offset + pos);
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
}

std::vector<std::int64_t> parse_integer_list(std::string_view text, std::size_t offset,
                                             std::size_t expected) {
    std::vector<std::int64_t> values;
    std::size_t pos = 0;
    while (true) {
        values.push_back(parse_integer(text, pos, offset));
        if (pos == text.size()) break;
        if (text[pos] != ',') throw ParseError("expected ','", offset + pos);
        ++pos;
    }
    if (values.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " parameter(s), got " +
                             std::to_string(values.size()),
                         offset);
    }
    return values;
}

} // namespace

Graph read_edge_list(std::istream& in) {
    std::int64_t n = 0;
    if (!(in >> n)) throw ParseError("edge list: missing vertex count header", 0);
    if (n < 1) throw ParseError("edge list: vertex count must be positive", 0);
    std::vector<Edge> edges;
    std::int64_t a = 0;
    std::size_t index = 0;
    while (in >> a) {
        std::int64_t b = 0;
        if (!(in >> b)) {
            throw ParseError("edge list: odd number of endpoints", index + 1);
        }
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw ParseError("edge list: edge " + std::to_string(index) + " {" + std::to_string(a) +
                                 "," + std::to_string(b) + "} outside 0.." + std::to_string(n - 1),
                             index + 1);
        }
        edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
        ++index;
    }
    if (!in.eof()) throw ParseError("edge list: non-numeric token", index + 1);
    try {
        return Graph(static_cast<std::size_t>(n), std::move(edges));
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("edge list: ") + e.what(), 0);
    }
}

Graph parse_graph(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("graph spec must look like family:parameters", spec.size());
    }
    const auto family = spec.substr(0, colon);
    const auto args = spec.substr(colon + 1);
    const std::size_t offset = colon + 1;

    if (family == "file") {
        if (args.empty()) throw ParseError("file: needs a path", offset);
        std::ifstream in{std::string(args)};
        if (!in) throw ParseError("cannot open edge-list file '" + std::string(args) + "'", offset);
        return read_edge_list(in);
    }
    if (args.empty()) throw ParseError("missing parameters", offset);
    try {
        if (family == "path") return path(parse_integer_list(args, offset, 1)[0]);
        if (family == "star") return star(parse_integer_list(args, offset, 1)[0]);
        if (family == "cube") return hypercube(parse_integer_list(args, offset, 1)[0]);
        if (family == "dstar") {
            const auto kl = parse_integer_list(args, offset, 2);
            return double_star(kl[0], kl[1]);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what(), offset);
    }
    throw ParseError("unknown graph family '" + std::string(family) + "'", 0);
}

} // namespace qwalk
