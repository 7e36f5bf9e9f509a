#include "doctest.h"

#include "oracles.hpp"
#include "qwalk/cospectral.hpp"
#include "qwalk/error.hpp"
#include "qwalk/quotient.hpp"

using namespace qwalk;

namespace {

std::vector<std::vector<std::int64_t>> integer_adjacency(const Graph& g) {
    std::vector<std::vector<std::int64_t>> a(g.order(), std::vector<std::int64_t>(g.order(), 0));
    for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = 1;
    return a;
}

std::vector<BigInt> big(std::initializer_list<std::int64_t> xs) {
    std::vector<BigInt> out;
    for (auto x : xs) out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("characteristic polynomials of small graphs") {
    // P_4: x^4 - 3x^2 + 1
    CHECK(characteristic_polynomial(integer_adjacency(path(4))) == big({1, 0, -3, 0, 1}));
    // K_{1,3}: x^4 - 3x^2
    CHECK(characteristic_polynomial(integer_adjacency(star(3))) == big({1, 0, -3, 0, 0}));
    // Q_2 = C_4: x^4 - 4x^2
    CHECK(characteristic_polynomial(integer_adjacency(hypercube(2))) == big({1, 0, -4, 0, 0}));
    CHECK(characteristic_polynomial({}) == big({1}));
}

TEST_CASE("path characteristic polynomials satisfy the three-term recurrence") {
    // phi(P_n) = x phi(P_{n-1}) - phi(P_{n-2})
    std::vector<BigInt> prev2 = big({1});
    std::vector<BigInt> prev1 = big({1, 0});
    for (std::int64_t n = 2; n <= 30; ++n) {
        std::vector<BigInt> expected = prev1;
        expected.emplace_back(0);
        for (std::size_t i = 0; i < prev2.size(); ++i) expected[i + 2] -= prev2[i];
        CHECK(characteristic_polynomial(integer_adjacency(path(n))) == expected);
        prev2 = prev1;
        prev1 = expected;
    }
}

TEST_CASE("vertex-deleted polynomials") {
    // Deleting an end of P_5 leaves P_4; deleting the middle leaves 2 P_2.
    CHECK(vertex_deleted_characteristic_polynomial(path(5), 0) ==
          characteristic_polynomial(integer_adjacency(path(4))));
    CHECK(vertex_deleted_characteristic_polynomial(path(5), 2) == big({1, 0, -2, 0, 1}));
}

TEST_CASE("centres of S_{k,k} are strongly cospectral") {
    for (std::int64_t k = 1; k <= 10; ++k) {
        const auto d = decompose(adjacency_matrix(double_star(k, k)));
        const auto r = are_strongly_cospectral(d, 0, 1);
        CHECK(r.cospectral);
        CHECK(r.strongly_cospectral);
        CHECK_FALSE(r.witness.has_value());
        REQUIRE(r.signs.size() == d.size());
        // Symmetric eigenvectors have theta^2 - theta - k = 0, antisymmetric ones
        // theta^2 + theta - k = 0; 0 is not in the support.
        const double kd = static_cast<double>(k);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double th = d.theta(i);
            if (std::abs(th) < 1e-9) CHECK(r.signs[i] == 0);
            else if (std::abs(th * th - th - kd) < 1e-9) CHECK(r.signs[i] == 1);
            else CHECK(r.signs[i] == -1);
        }
    }
}

TEST_CASE("centres of S_{k,l} with k != l are not cospectral") {
    for (std::int64_t k = 1; k <= 8; ++k) {
        for (std::int64_t l = 1; l <= 8; ++l) {
            if (k == l) continue;
            const Graph g = double_star(k, l);
            const auto d = decompose(adjacency_matrix(g));
            CHECK_FALSE(are_cospectral(d, 0, 1));
            const auto r = are_strongly_cospectral(d, 0, 1);
            CHECK_FALSE(r.strongly_cospectral);
            CHECK(r.witness.has_value());
            CHECK_FALSE(cospectral_char_poly_oracle(g, 0, 1));
        }
    }
}

TEST_CASE("pendant pair of S_{2,l} is strongly cospectral") {
    for (std::int64_t l = 1; l <= 8; ++l) {
        const auto d = decompose(adjacency_matrix(double_star(2, l)));
        CHECK(are_strongly_cospectral(d, 2, 3).strongly_cospectral);
    }
}

TEST_CASE("cospectral but not strongly cospectral") {
    // Two leaves of K_{1,3}: the eigenvalue 0 has a 2-dimensional eigenspace, so
    // E_0 e_u and E_0 e_v are not parallel.
    const auto d = decompose(adjacency_matrix(star(3)));
    const auto r = are_strongly_cospectral(d, 1, 2);
    CHECK(r.cospectral);
    CHECK_FALSE(r.strongly_cospectral);
    REQUIRE(r.witness.has_value());
    CHECK(std::abs(d.theta(r.witness->index)) < 1e-9);
}

TEST_CASE("numeric cospectrality agrees with the exact oracle") {
    for (const auto& [spec, g] : oracle::family_graphs(14)) {
        CAPTURE(spec);
        const auto d = decompose(adjacency_matrix(g));
        for (Vertex u = 0; u < g.order(); ++u) {
            for (Vertex v = u + 1; v < g.order(); ++v) {
                CAPTURE(u);
                CAPTURE(v);
                CHECK(are_cospectral(d, u, v) == cospectral_char_poly_oracle(g, u, v));
            }
        }
    }
}

TEST_CASE("full graph and quotient agree on strong cospectrality") {
    for (std::int64_t k = 1; k <= 8; ++k) {
        for (std::int64_t l = 1; l <= 8; ++l) {
            const Graph g = double_star(k, l);
            const auto centres = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{0}, {1}}));
            const auto c = strong_cospectrality_quotient_transfer(g, centres, 0, 1);
            CHECK(c.agree());
            CHECK(c.in_graph == (k == l));
            if (k == 2) {
                const auto pendant = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{2}, {3}}));
                const auto pc = strong_cospectrality_quotient_transfer(g, pendant, 2, 3);
                CHECK(pc.agree());
                CHECK(pc.in_graph);
            }
        }
    }
}

TEST_CASE("argument checks") {
    const auto d = decompose(adjacency_matrix(path(3)));
    CHECK_THROWS_AS(are_cospectral(d, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(are_strongly_cospectral(d, 0, 3), InvalidArgument);
    CHECK_THROWS_AS(cospectral_char_poly_oracle(path(65), 0, 64), InvalidArgument);
}
