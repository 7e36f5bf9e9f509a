#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"

using namespace qwalk;

namespace {

// Max deviation over the four projector identities: sum E_r = I, E_r^2 = E_r,
// E_r E_s = 0 (r != s) and sum theta_r E_r = M.
double algebra_error(const SpectralDecomposition& d, const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(n, n);
    double err = 0.0;
    for (std::size_t r = 0; r < d.size(); ++r) {
        const auto& e = d.projector(r);
        sum += e;
        recon += d.theta(r) * e;
        err = std::max(err, (e * e - e).cwiseAbs().maxCoeff());
        for (std::size_t s = r + 1; s < d.size(); ++s) {
            err = std::max(err, (e * d.projector(s)).cwiseAbs().maxCoeff());
        }
    }
    err = std::max(err, (sum - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    err = std::max(err, (recon - m).cwiseAbs().maxCoeff());
    return err;
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = gauss(rng);
    return m;
}

} // namespace

TEST_CASE("projector algebra on random symmetric matrices") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<Eigen::Index> size(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::MatrixXd m = random_symmetric(rng, size(rng));
        const auto d = decompose(m);
        CAPTURE(trial);
        CHECK(algebra_error(d, m) < 1e-9);
        int total = 0;
        for (int mult : d.multiplicities()) total += mult;
        CHECK(total == m.rows());
        for (std::size_t r = 1; r < d.size(); ++r) CHECK(d.theta(r - 1) > d.theta(r));
    }
}

TEST_CASE("projector algebra on family graphs") {
    for (const auto& [spec, g] : oracle::family_graphs(40)) {
        CAPTURE(spec);
        const auto a = adjacency_matrix(g);
        const auto d = decompose(a);
        CHECK(algebra_error(d, a) < 1e-9);
        for (std::size_t r = 0; r < d.size(); ++r) {
            CHECK(d.projector(r).trace() == doctest::Approx(d.multiplicities()[r]).epsilon(1e-9));
        }
    }
}

TEST_CASE("path eigenvalues match 2 cos(pi j / (n+1))") {
    for (std::size_t n = 1; n <= 30; ++n) {
        const auto d = decompose(adjacency_matrix(path(static_cast<std::int64_t>(n))));
        const auto expected = oracle::path_eigenvalues(n);
        REQUIRE(d.size() == n);
        for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(d.theta(j) - expected[j]) < 1e-12);
    }
}

TEST_CASE("integer spectra agree with exact Lagrange projectors") {
    struct Case {
        Graph g;
        std::vector<std::int64_t> eigs;
    };
    const std::vector<Case> cases = {
        {hypercube(3), {3, 1, -1, -3}},
        {hypercube(4), {4, 2, 0, -2, -4}},
        {double_star(2, 2), {2, 1, 0, -1, -2}},
        {double_star(6, 6), {3, 2, 0, -2, -3}},
        {star(4), {2, 0, -2}},
        {path(2), {1, -1}},
    };
    for (const auto& c : cases) {
        const auto a = adjacency_matrix(c.g);
        const auto d = decompose(a);
        const auto exact = oracle::lagrange_projectors(a, c.eigs);
        REQUIRE(d.size() == c.eigs.size());
        for (std::size_t r = 0; r < d.size(); ++r) {
            CHECK(d.theta(r) == doctest::Approx(static_cast<double>(c.eigs[r])).epsilon(1e-12));
            double err = 0.0;
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < a.cols(); ++j)
                    err = std::max(err, std::abs(d.projector(r)(i, j) -
                                                 oracle::to_double(exact[r][static_cast<std::size_t>(i)]
                                                                        [static_cast<std::size_t>(j)])));
            CHECK(err < 1e-12);
        }
    }
}

TEST_CASE("walk matrix against a Taylor-series exponential") {
    for (const char* spec : {"path:5", "dstar:3,4", "cube:3", "star:6"}) {
        const auto a = adjacency_matrix(parse_graph(spec));
        const auto d = decompose(a);
        for (double t : {0.0, 0.37, 1.0, 2.5, 17.25, 100.0}) {
            CAPTURE(spec);
            CAPTURE(t);
            const auto u = walk_matrix(d, t).U;
            CHECK((u - oracle::expm_i(a, t)).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("walk matrix is unitary, symmetric, and a one-parameter group") {
    const auto d = decompose(adjacency_matrix(double_star(3, 5)));
    const auto n = static_cast<Eigen::Index>(d.dimension());
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (double s : {0.0, 0.5, 3.0, 41.0}) {
        for (double t : {0.25, 1.75, 12.0}) {
            const auto us = walk_matrix(d, s).U;
            const auto ut = walk_matrix(d, t).U;
            const auto ust = walk_matrix(d, s + t).U;
            CHECK((us * ut - ust).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((us * us.adjoint() - id).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((us - us.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((walk_matrix(d, -t).U - ut.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    CHECK((walk_matrix(d, 0.0).U - id).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("amplitude matches the walk matrix entry") {
    const auto d = decompose(adjacency_matrix(path(6)));
    const auto u = walk_matrix(d, 3.3).U;
    for (Vertex a = 0; a < 6; ++a)
        for (Vertex b = 0; b < 6; ++b) CHECK(std::abs(d.amplitude(a, b, 3.3) - u(a, b)) < 1e-12);
    CHECK_THROWS_AS(d.amplitude(0, 6, 1.0), InvalidArgument);
}

TEST_CASE("eigenvalue support") {
    // End vertex of P_3: eigenvalue 0 has eigenvector (1, 0, -1), so all three are in the support.
    const auto d = decompose(adjacency_matrix(path(3)));
    CHECK(eigenvalue_support(d, 0).size() == 3);
    // Middle vertex: eigenvector for 0 vanishes there.
    CHECK(eigenvalue_support(d, 1).size() == 2);
}

TEST_CASE("grouping tolerance") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0 + 1e-11;
    m(2, 2) = 2.0;
    CHECK(decompose(m).size() == 2);
    CHECK(decompose(m, 0.0).size() == 3);
    CHECK(decompose(m, 0.5).size() == 2);
    CHECK(decompose(m, 2.0).size() == 1);
    CHECK(default_grouping_tol(3.0) == doctest::Approx(4e-9));
}

TEST_CASE("decompose rejects bad input") {
    Eigen::MatrixXd rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(decompose(rect), InvalidArgument);
    CHECK_THROWS_AS(decompose(Eigen::MatrixXd(0, 0)), InvalidArgument);
    Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(decompose(asym), InvalidArgument);
    Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
    nan(0, 0) = std::nan("");
    CHECK_THROWS_AS(decompose(nan), InvalidArgument);
    CHECK_THROWS_AS(decompose(Eigen::MatrixXd::Identity(2, 2), -1.0), InvalidArgument);
}
