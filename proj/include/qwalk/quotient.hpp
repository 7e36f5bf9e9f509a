#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Ordered list of disjoint, nonempty vertex cells covering V(X).
using Partition = std::vector<std::vector<Vertex>>;

/// A partition that has been verified equitable for a particular graph, with its
/// integer quotient counts b_ij (neighbours in cell j of any vertex in cell i).
class EquitablePartition {
public:
    /// Validates `cells` against `g`; throws InvalidArgument if it is malformed or
    /// not equitable. Cell order is preserved.
    EquitablePartition(const Graph& g, Partition cells);

    std::size_t cell_count() const noexcept { return cells_.size(); }
    std::size_t order() const noexcept { return cell_of_.size(); }
    const Partition& cells() const noexcept { return cells_; }
    const std::vector<Vertex>& cell(std::size_t i) const { return cells_.at(i); }
    std::size_t cell_of(Vertex v) const { return cell_of_.at(v); }
    bool is_singleton(Vertex v) const { return cells_[cell_of(v)].size() == 1; }

    /// b_ij as exact integers.
    std::int64_t count(std::size_t i, std::size_t j) const { return counts_.at(i).at(j); }
    const std::vector<std::vector<std::int64_t>>& counts() const noexcept { return counts_; }

    /// Directed quotient A(X/pi)_{ij} = b_ij.
    Eigen::MatrixXd quotient_matrix() const;

    friend bool operator==(const EquitablePartition& a, const EquitablePartition& b) {
        return a.cells_ == b.cells_;
    }

private:
    Partition cells_;
    std::vector<std::size_t> cell_of_;
    std::vector<std::vector<std::int64_t>> counts_;
};

struct EquitabilityWitness {
    Vertex u;          ///< first vertex of the offending cell
    Vertex w;          ///< vertex of the same cell with a different count
    std::size_t cell;  ///< target cell j where the counts differ
    std::int64_t count_u;
    std::int64_t count_w;
};

struct EquitabilityCheck {
    bool equitable = false;
    std::optional<EquitabilityWitness> witness;

    explicit operator bool() const noexcept { return equitable; }
};

/// Throws InvalidArgument if `p` is not a partition of {0..n-1}.
void validate_partition(const Graph& g, const Partition& p);

EquitabilityCheck is_equitable(const Graph& g, const Partition& p);

/// Coarsest equitable partition refining `seed`, by repeated splitting on
/// neighbour-count signatures. Output cells are ordered by (index of the seed
/// cell they came from, smallest vertex); vertices within a cell are sorted.
EquitablePartition coarsest_equitable_refinement(const Graph& g, const Partition& seed);

/// Partition with every vertex in its own cell, in vertex order.
Partition discrete_partition(std::size_t n);

/// Seed for the refinement: each listed cell in order, remaining vertices as a
/// final cell (omitted when empty).
Partition seed_with_rest(std::size_t n, const Partition& cells);

/// B_ij = sqrt(b_ij b_ji), normalised characteristic matrix Q and the cell map.
class SymmetrizedQuotient {
public:
    const Eigen::MatrixXd& B() const noexcept { return b_; }
    const Eigen::MatrixXd& Q() const noexcept { return q_; }
    const std::vector<std::size_t>& cell_of() const noexcept { return cell_of_; }
    std::size_t cell_of(Vertex v) const { return cell_of_.at(v); }
    const std::vector<std::size_t>& cell_sizes() const noexcept { return cell_sizes_; }
    bool is_singleton(Vertex v) const { return cell_sizes_[cell_of(v)] == 1; }

private:
    friend SymmetrizedQuotient symmetrized_quotient(const Graph&, const EquitablePartition&);

    Eigen::MatrixXd b_;
    Eigen::MatrixXd q_;
    std::vector<std::size_t> cell_of_;
    std::vector<std::size_t> cell_sizes_;
};

/// Throws InvalidArgument if `p` does not describe an equitable partition of `g`.
SymmetrizedQuotient symmetrized_quotient(const Graph& g, const EquitablePartition& p);
SymmetrizedQuotient symmetrized_quotient(const Graph& g, const Partition& p);

struct QuotientIdempotent {
    std::size_t source_index;  ///< index r in the decomposition of A
    double theta;
    Eigen::MatrixXd matrix;    ///< Q^T E_r Q
};

/// The nonzero Q^T E_r Q. Each one is checked against the spectral idempotent of B
/// with the same eigenvalue (1e-9); a mismatch raises NumericFailure.
std::vector<QuotientIdempotent> quotient_idempotents(const SpectralDecomposition& d,
                                                     const SymmetrizedQuotient& q);

enum class TimeSign { positive, negative };

/// max over `times` of |U_A(t)_{ab} - U_B(t)_{cell(a)cell(b)}| and the same for the
/// (a,a) entry, with U(t) = exp(+-iMt) according to `sign`. {a} and {b} must be
/// singleton cells.
double quotient_transfer_identity_check(const Graph& g, const EquitablePartition& p, Vertex a,
                                        Vertex b, std::span<const double> times,
                                        TimeSign sign = TimeSign::positive);

} // namespace qwalk
