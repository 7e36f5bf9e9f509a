#include "qwalk/cospectral.hpp"

#include <cmath>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

void check_pair(std::size_t n, Vertex u, Vertex v) {
    if (u >= n || v >= n) {
        throw InvalidArgument("vertex pair (" + std::to_string(u) + "," + std::to_string(v) +
                              ") out of range for " + std::to_string(n) + " vertices");
    }
    if (u == v) throw InvalidArgument("cospectrality needs two distinct vertices");
}

} // namespace

bool are_cospectral(const SpectralDecomposition& d, Vertex u, Vertex v) {
    check_pair(d.dimension(), u, v);
    const auto iu = static_cast<Eigen::Index>(u);
    const auto iv = static_cast<Eigen::Index>(v);
    for (const auto& e : d.projectors()) {
        if (std::abs(e(iu, iu) - e(iv, iv)) >= kCospectralTol) return false;
    }
    return true;
}

CospectralityReport are_strongly_cospectral(const SpectralDecomposition& d, Vertex u, Vertex v) {
    check_pair(d.dimension(), u, v);
    const auto iu = static_cast<Eigen::Index>(u);
    const auto iv = static_cast<Eigen::Index>(v);

    CospectralityReport report;
    report.cospectral = true;
    report.strongly_cospectral = true;
    report.signs.assign(d.size(), 0);
    for (std::size_t r = 0; r < d.size(); ++r) {
        const auto& e = d.projector(r);
        const double uu = e(iu, iu);
        const double vv = e(iv, iv);
        const double uv = e(iu, iv);
        const bool supported = uu >= kCospectralTol || vv >= kCospectralTol;
        if (supported) report.signs[r] = uv > 0 ? 1 : (uv < 0 ? -1 : 0);

        if (std::abs(uu - vv) >= kCospectralTol) {
            report.cospectral = false;
            report.strongly_cospectral = false;
            if (!report.witness) report.witness = CospectralityWitness{r, uu, vv, uv};
        } else if (std::abs(std::abs(uv) - uu) >= kCospectralTol ||
                   std::abs(std::abs(uv) - vv) >= kCospectralTol) {
            report.strongly_cospectral = false;
            if (!report.witness) report.witness = CospectralityWitness{r, uu, vv, uv};
        }
    }
    return report;
}

std::vector<BigInt> characteristic_polynomial(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    for (const auto& row : a) {
        if (row.size() != n) throw InvalidArgument("characteristic_polynomial: matrix is not square");
    }
    using Matrix = std::vector<std::vector<BigInt>>;
    auto multiply_a = [&](const Matrix& m) {
        Matrix out(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i][k] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * m[k][j];
            }
        }
        return out;
    };

    // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I.
    std::vector<BigInt> coeffs(n + 1, 0);
    coeffs[0] = 1;
    Matrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix am = multiply_a(m);
        BigInt trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += am[i][i];
        coeffs[k] = -trace / BigInt(k);
        for (std::size_t i = 0; i < n; ++i) am[i][i] += coeffs[k];
        m = std::move(am);
    }
    return coeffs;
}

std::vector<BigInt> vertex_deleted_characteristic_polynomial(const Graph& g, Vertex removed) {
    if (removed >= g.order()) throw InvalidArgument("vertex out of range");
    const std::size_t n = g.order() - 1;
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
    auto index = [removed](Vertex x) { return x < removed ? x : x - 1; };
    for (const auto& e : g.edges()) {
        if (e.u == removed || e.v == removed) continue;
        a[index(e.u)][index(e.v)] = 1;
        a[index(e.v)][index(e.u)] = 1;
    }
    return characteristic_polynomial(a);
}

bool cospectral_char_poly_oracle(const Graph& g, Vertex u, Vertex v) {
    if (g.order() > 64) {
        throw InvalidArgument("cospectral_char_poly_oracle: n = " + std::to_string(g.order()) +
                              " exceeds the exact-arithmetic limit of 64");
    }
    check_pair(g.order(), u, v);
    return vertex_deleted_characteristic_polynomial(g, u) ==
           vertex_deleted_characteristic_polynomial(g, v);
}

QuotientCospectrality strong_cospectrality_quotient_transfer(const Graph& g,
                                                             const EquitablePartition& p,
                                                             Vertex u, Vertex v) {
    check_pair(g.order(), u, v);
    if (!p.is_singleton(u) || !p.is_singleton(v)) {
        throw InvalidArgument("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                              " must be singleton cells of the partition");
    }
    const auto q = symmetrized_quotient(g, p);
    QuotientCospectrality result;
    result.in_graph = are_strongly_cospectral(decompose(adjacency_matrix(g)), u, v).strongly_cospectral;
    result.in_quotient =
        are_strongly_cospectral(decompose(q.B()), q.cell_of(u), q.cell_of(v)).strongly_cospectral;
    return result;
}

} // namespace qwalk
