#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"

namespace qwalk {

/// Distinct eigenvalues of a real symmetric matrix with their orthogonal projectors,
/// M = sum_r theta_r E_r. Eigenvalues are strictly decreasing.
class SpectralDecomposition {
public:
    std::size_t size() const noexcept { return thetas_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }

    const std::vector<double>& thetas() const noexcept { return thetas_; }
    const std::vector<Eigen::MatrixXd>& projectors() const noexcept { return projectors_; }
    const std::vector<int>& multiplicities() const noexcept { return multiplicities_; }
    double theta(std::size_t r) const { return thetas_.at(r); }
    const Eigen::MatrixXd& projector(std::size_t r) const { return projectors_.at(r); }
    double grouping_tol() const noexcept { return grouping_tol_; }
    double spectral_radius() const noexcept;

    /// U(t)_{uv} = sum_r exp(i theta_r t) (E_r)_{uv}.
    std::complex<double> amplitude(Vertex u, Vertex v, double t) const;

private:
    friend SpectralDecomposition decompose(const Eigen::MatrixXd&, std::optional<double>);

    std::size_t dimension_ = 0;
    std::vector<double> thetas_;
    std::vector<Eigen::MatrixXd> projectors_;
    std::vector<int> multiplicities_;
    double grouping_tol_ = 0.0;
};

/// Default merge tolerance: 1e-9 * (1 + spectral radius).
double default_grouping_tol(double spectral_radius);

/// Groups eigenvalues closer than `grouping_tol` (chained, after sorting) into one
/// distinct eigenvalue; its projector is V V^T over the merged orthonormal eigenbasis.
/// Throws InvalidArgument for non-square or non-symmetric (1e-12) input and
/// NumericFailure if the eigensolver does not converge.
SpectralDecomposition decompose(const Eigen::MatrixXd& m,
                                std::optional<double> grouping_tol = std::nullopt);

struct WalkMatrix {
    double t = 0.0;
    Eigen::MatrixXcd U;
};

/// U(t) = exp(+iMt) assembled from the projectors.
WalkMatrix walk_matrix(const SpectralDecomposition& d, double t);

/// Indices r with ||E_r e_u|| > 1e-9.
std::vector<std::size_t> eigenvalue_support(const SpectralDecomposition& d, Vertex u);

inline constexpr double kSupportThreshold = 1e-9;

} // namespace qwalk
