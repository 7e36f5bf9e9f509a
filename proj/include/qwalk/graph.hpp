#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qwalk {

using Vertex = std::size_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1.
///
/// Edges are stored normalised (u < v) and sorted. Optional per-vertex role
/// labels are carried for the family constructors ("center-u", "leaf-v:3", ...).
/// Values are immutable once built.
class Graph {
public:
    /// Throws InvalidArgument on self-loops, duplicate edges, out-of-range endpoints,
    /// or a label vector whose size is neither 0 nor n.
    Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::string> labels = {});

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    bool has_edge(Vertex u, Vertex v) const;

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Empty string when the graph carries no labels.
    std::string label(Vertex v) const;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::string> labels_;
};

/// Double star S_{k,l}. Vertex 0 is the centre of degree k+1, vertex 1 the centre
/// of degree l+1, vertices 2..k+1 are the leaves of 0 and k+2..k+l+1 the leaves of 1.
Graph double_star(std::int64_t k, std::int64_t l);

/// Path on vertices 0..n-1.
Graph path(std::int64_t n);

/// The d-cube; vertex x is adjacent to x ^ (1 << i).
Graph hypercube(std::int64_t d);

/// Star K_{1,k} with centre 0.
Graph star(std::int64_t k);

Eigen::MatrixXd adjacency_matrix(const Graph& g);

/// Parse `path:n | star:k | dstar:k,l | cube:d | file:<path>`.
Graph parse_graph(std::string_view spec);

/// Edge-list reader: first token n, then whitespace-separated 0-indexed pairs.
Graph read_edge_list(std::istream& in);

} // namespace qwalk
