#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/numtheory.hpp"
#include "qwalk/quotient.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

struct CospectralityWitness {
    std::size_t index;  ///< eigenvalue index r where the criterion fails
    double uu;
    double vv;
    double uv;
};

struct CospectralityReport {
    bool cospectral = false;
    bool strongly_cospectral = false;
    /// Per eigenvalue: sign of (E_r)_{uv}, or 0 when r is outside both supports.
    std::vector<int> signs;
    std::optional<CospectralityWitness> witness;
};

inline constexpr double kCospectralTol = 1e-9;

/// |(E_r)_{uu} - (E_r)_{vv}| < 1e-9 for every r.
bool are_cospectral(const SpectralDecomposition& d, Vertex u, Vertex v);

/// Per-idempotent test (E_r)_{uu} = (E_r)_{vv} = +-(E_r)_{uv}.
CospectralityReport are_strongly_cospectral(const SpectralDecomposition& d, Vertex u, Vertex v);

/// Exact coefficients of det(xI - A), highest degree first, for an integer matrix
/// (Faddeev-LeVerrier over big integers).
std::vector<BigInt> characteristic_polynomial(const std::vector<std::vector<std::int64_t>>& a);

/// Characteristic polynomial of the graph with vertex `removed` deleted.
std::vector<BigInt> vertex_deleted_characteristic_polynomial(const Graph& g, Vertex removed);

/// phi(X \ u) == phi(X \ v) in exact arithmetic. n <= 64.
bool cospectral_char_poly_oracle(const Graph& g, Vertex u, Vertex v);

struct QuotientCospectrality {
    bool in_graph = false;
    bool in_quotient = false;
    bool agree() const noexcept { return in_graph == in_quotient; }
};

/// Strong cospectrality of u, v in X and of {u}, {v} in the symmetrized quotient.
/// Both must be singleton cells of `p`.
QuotientCospectrality strong_cospectrality_quotient_transfer(const Graph& g,
                                                             const EquitablePartition& p,
                                                             Vertex u, Vertex v);

} // namespace qwalk
