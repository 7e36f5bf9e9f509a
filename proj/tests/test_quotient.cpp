#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/quotient.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

std::vector<double> grid(double stop, std::size_t points) {
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i) t[i] = stop * static_cast<double>(i) / static_cast<double>(points - 1);
    return t;
}

double intertwining_error(const Graph& g, const SymmetrizedQuotient& q) {
    return (adjacency_matrix(g) * q.Q() - q.Q() * q.B()).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("refinement of the double-star seeds") {
    const Graph g = double_star(3, 4);
    const auto p = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{0}, {1}}));
    const Partition expected = {{0}, {1}, {2, 3, 4}, {5, 6, 7, 8}};
    CHECK(p.cells() == expected);
    CHECK(p.count(0, 2) == 3);
    CHECK(p.count(1, 3) == 4);
    CHECK(p.count(2, 0) == 1);
    CHECK(p.count(2, 1) == 0);

    const auto q = symmetrized_quotient(g, p);
    Eigen::MatrixXd b(4, 4);
    b << 0, 1, std::sqrt(3.0), 0,
         1, 0, 0, 2,
         std::sqrt(3.0), 0, 0, 0,
         0, 2, 0, 0;
    CHECK((q.B() - b).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(q.is_singleton(0));
    CHECK_FALSE(q.is_singleton(5));
}

TEST_CASE("refinement of the pendant-pair seed of S_{2,l}") {
    const Graph g = double_star(2, 5);
    const auto p = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{2}, {3}}));
    const Partition expected = {{2}, {3}, {0}, {1}, {4, 5, 6, 7, 8}};
    CHECK(p.cells() == expected);
}

TEST_CASE("unseeded refinement finds the orbit partition of trees with symmetric shape") {
    const Graph g = double_star(4, 4);
    const auto p = coarsest_equitable_refinement(g, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
    CHECK(p.cell_count() == 2);
    const auto path6 = coarsest_equitable_refinement(path(6), {{0, 1, 2, 3, 4, 5}});
    CHECK(path6.cell_count() == 3);
}

TEST_CASE("refinement is idempotent and yields equitable partitions") {
    std::mt19937_64 rng(7);
    for (const auto& [spec, g] : oracle::family_graphs(60)) {
        CAPTURE(spec);
        const std::size_t n = g.order();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        const Vertex a = pick(rng);
        for (const Partition& seed : {Partition{discrete_partition(n)}, seed_with_rest(n, {{a}}),
                                      seed_with_rest(n, {})}) {
            const auto p = coarsest_equitable_refinement(g, seed);
            CHECK(is_equitable(g, p.cells()).equitable);
            CHECK(coarsest_equitable_refinement(g, p.cells()) == p);
            CHECK(intertwining_error(g, symmetrized_quotient(g, p)) < 1e-10);
        }
    }
}

TEST_CASE("non-equitable partitions are rejected with a witness") {
    const Graph g = path(4);
    const Partition bad = {{0, 1}, {2, 3}};
    const auto check = is_equitable(g, bad);
    CHECK_FALSE(check.equitable);
    REQUIRE(check.witness.has_value());
    CHECK(check.witness->count_u != check.witness->count_w);
    CHECK_THROWS_AS(EquitablePartition(g, bad), InvalidArgument);
    CHECK_THROWS_AS(symmetrized_quotient(g, bad), InvalidArgument);
    CHECK_THROWS_AS(validate_partition(g, {{0, 1}, {1, 2, 3}}), InvalidArgument);
    CHECK_THROWS_AS(validate_partition(g, {{0, 1}, {2}}), InvalidArgument);
    CHECK_THROWS_AS(validate_partition(g, {{0, 1}, {}, {2, 3}}), InvalidArgument);
    CHECK_THROWS_AS(seed_with_rest(4, {{0}, {0}}), InvalidArgument);
}

TEST_CASE("quotient idempotents are the idempotents of B") {
    for (std::int64_t k = 1; k <= 8; ++k) {
        for (std::int64_t l = 1; l <= 8; ++l) {
            const Graph g = double_star(k, l);
            const auto p = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{0}, {1}}));
            const auto q = symmetrized_quotient(g, p);
            const auto d = decompose(adjacency_matrix(g));
            const auto qi = quotient_idempotents(d, q);
            const auto db = decompose(q.B());
            REQUIRE(qi.size() == db.size());
            for (std::size_t r = 0; r < qi.size(); ++r) {
                CHECK(std::abs(qi[r].theta - db.theta(r)) < 1e-9);
                CHECK((qi[r].matrix - db.projector(r)).cwiseAbs().maxCoeff() < 1e-9);
            }
        }
    }
}

TEST_CASE("walk on singleton cells matches the quotient walk for both time signs") {
    const auto times = grid(50.0, 5001);
    for (std::int64_t k = 1; k <= 8; ++k) {
        for (std::int64_t l = 1; l <= 8; ++l) {
            CAPTURE(k);
            CAPTURE(l);
            const Graph g = double_star(k, l);
            const auto centres = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{0}, {1}}));
            CHECK(quotient_transfer_identity_check(g, centres, 0, 1, times) < 1e-9);
            CHECK(quotient_transfer_identity_check(g, centres, 0, 1, times, TimeSign::negative) < 1e-9);
            if (k == 2 || l == 2) {
                const Vertex a = k == 2 ? 2 : static_cast<Vertex>(k) + 2;
                const auto pendant = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{a}, {a + 1}}));
                CHECK(quotient_transfer_identity_check(g, pendant, a, a + 1, times) < 1e-9);
                CHECK(quotient_transfer_identity_check(g, pendant, a, a + 1, times, TimeSign::negative) < 1e-9);
            }
        }
    }
    const Graph g = double_star(3, 3);
    const auto p = coarsest_equitable_refinement(g, seed_with_rest(g.order(), {{0}, {1}}));
    CHECK_THROWS_AS(quotient_transfer_identity_check(g, p, 0, 2, times), InvalidArgument);
}
