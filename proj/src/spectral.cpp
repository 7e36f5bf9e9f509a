#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qwalk/error.hpp"

namespace qwalk {

double SpectralDecomposition::spectral_radius() const noexcept {
    double rho = 0.0;
    for (double th : thetas_) rho = std::max(rho, std::abs(th));
    return rho;
}

std::complex<double> SpectralDecomposition::amplitude(Vertex u, Vertex v, double t) const {
    if (u >= dimension_ || v >= dimension_) {
        throw InvalidArgument("vertex out of range for a decomposition of dimension " +
                              std::to_string(dimension_));
    }
    const auto iu = static_cast<Eigen::Index>(u);
    const auto iv = static_cast<Eigen::Index>(v);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t r = 0; r < thetas_.size(); ++r) {
        sum += std::polar(projectors_[r](iu, iv), thetas_[r] * t);
    }
    return sum;
}

double default_grouping_tol(double spectral_radius) { return 1e-9 * (1.0 + spectral_radius); }

SpectralDecomposition decompose(const Eigen::MatrixXd& m, std::optional<double> grouping_tol) {
    if (m.rows() != m.cols()) throw InvalidArgument("decompose: matrix is not square");
    if (m.rows() == 0) throw InvalidArgument("decompose: empty matrix");
    if (!m.allFinite()) throw InvalidArgument("decompose: matrix has non-finite entries");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw InvalidArgument("decompose: matrix is not symmetric (max |M - M^T| = " +
                              std::to_string(asym) + ")");
    }
    if (grouping_tol && !(*grouping_tol >= 0.0)) {
        throw InvalidArgument("decompose: grouping tolerance must be nonnegative");
    }

    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericFailure("decompose: eigensolver did not converge");
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    const auto n = values.size();

    // Eigen returns ascending order; walk it backwards for decreasing thetas.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::reverse(order.begin(), order.end());

    const double rho = values.cwiseAbs().maxCoeff();
    const double tol = grouping_tol.value_or(default_grouping_tol(rho));

    SpectralDecomposition d;
    d.dimension_ = static_cast<std::size_t>(n);
    d.grouping_tol_ = tol;

    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t stop = start + 1;
        while (stop < order.size() &&
               values(order[stop - 1]) - values(order[stop]) <= tol) {
            ++stop;
        }
        double theta = 0.0;
        Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = start; i < stop; ++i) {
            theta += values(order[i]);
            const auto col = vectors.col(order[i]);
            projector.noalias() += col * col.transpose();
        }
        theta /= static_cast<double>(stop - start);
        d.thetas_.push_back(theta);
        d.projectors_.push_back(0.5 * (projector + projector.transpose()));
        d.multiplicities_.push_back(static_cast<int>(stop - start));
        start = stop;
    }
    return d;
}

WalkMatrix walk_matrix(const SpectralDecomposition& d, double t) {
    const auto n = static_cast<Eigen::Index>(d.dimension());
    WalkMatrix w{t, Eigen::MatrixXcd::Zero(n, n)};
    for (std::size_t r = 0; r < d.size(); ++r) {
        w.U += std::polar(1.0, d.theta(r) * t) * d.projector(r).cast<std::complex<double>>();
    }
    return w;
}

std::vector<std::size_t> eigenvalue_support(const SpectralDecomposition& d, Vertex u) {
    if (u >= d.dimension()) throw InvalidArgument("eigenvalue_support: vertex out of range");
    std::vector<std::size_t> support;
    for (std::size_t r = 0; r < d.size(); ++r) {
        // ||E_r e_u||^2 = (E_r)_{uu} for an orthogonal projector.
        const double norm = d.projector(r).col(static_cast<Eigen::Index>(u)).norm();
        if (norm > kSupportThreshold) support.push_back(r);
    }
    return support;
}

} // namespace qwalk
