#include "qwalk/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

std::vector<std::size_t> cell_index(std::size_t n, const Partition& p) {
    std::vector<std::size_t> cell_of(n);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (Vertex v : p[i]) cell_of[v] = i;
    }
    return cell_of;
}

// counts[v][j] = |N(v) ∩ C_j|
std::vector<std::vector<std::int64_t>> neighbour_counts(const Graph& g,
                                                        const std::vector<std::size_t>& cell_of,
                                                        std::size_t cells) {
    std::vector<std::vector<std::int64_t>> counts(g.order(), std::vector<std::int64_t>(cells, 0));
    for (Vertex v = 0; v < g.order(); ++v) {
        for (Vertex w : g.neighbors(v)) ++counts[v][cell_of[w]];
    }
    return counts;
}

} // namespace

void validate_partition(const Graph& g, const Partition& p) {
    std::vector<bool> seen(g.order(), false);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].empty()) throw InvalidArgument("partition cell " + std::to_string(i) + " is empty");
        for (Vertex v : p[i]) {
            if (v >= g.order()) {
                throw InvalidArgument("partition cell " + std::to_string(i) + " contains vertex " +
                                      std::to_string(v) + " outside the graph");
            }
            if (seen[v]) {
                throw InvalidArgument("vertex " + std::to_string(v) +
                                      " appears in more than one cell");
            }
            seen[v] = true;
            ++covered;
        }
    }
    if (covered != g.order()) {
        throw InvalidArgument("partition covers " + std::to_string(covered) + " of " +
                              std::to_string(g.order()) + " vertices");
    }
}

EquitabilityCheck is_equitable(const Graph& g, const Partition& p) {
    validate_partition(g, p);
    const auto cell_of = cell_index(g.order(), p);
    const auto counts = neighbour_counts(g, cell_of, p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vertex first = p[i].front();
        for (Vertex w : p[i]) {
            for (std::size_t j = 0; j < p.size(); ++j) {
                if (counts[w][j] != counts[first][j]) {
                    return {false, EquitabilityWitness{first, w, j, counts[first][j], counts[w][j]}};
                }
            }
        }
    }
    return {true, std::nullopt};
}

EquitablePartition::EquitablePartition(const Graph& g, Partition cells) : cells_(std::move(cells)) {
    const auto check = is_equitable(g, cells_);
    if (!check) {
        const auto& w = *check.witness;
        throw InvalidArgument("partition is not equitable: vertices " + std::to_string(w.u) +
                              " and " + std::to_string(w.w) + " have " +
                              std::to_string(w.count_u) + " and " + std::to_string(w.count_w) +
                              " neighbours in cell " + std::to_string(w.cell));
    }
    cell_of_ = cell_index(g.order(), cells_);
    const auto counts = neighbour_counts(g, cell_of_, cells_.size());
    counts_.reserve(cells_.size());
    for (const auto& c : cells_) counts_.push_back(counts[c.front()]);
}

Eigen::MatrixXd EquitablePartition::quotient_matrix() const {
    const auto r = static_cast<Eigen::Index>(cells_.size());
    Eigen::MatrixXd m(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
            m(i, j) = static_cast<double>(counts_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

Partition discrete_partition(std::size_t n) {
    Partition p(n);
    for (Vertex v = 0; v < n; ++v) p[v] = {v};
    return p;
}

Partition seed_with_rest(std::size_t n, const Partition& cells) {
    Partition p = cells;
    std::vector<bool> used(n, false);
    for (const auto& c : cells) {
        for (Vertex v : c) {
            if (v >= n) throw InvalidArgument("seed vertex " + std::to_string(v) + " out of range");
            if (used[v]) throw InvalidArgument("seed vertex " + std::to_string(v) + " listed twice");
            used[v] = true;
        }
    }
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v) {
        if (!used[v]) rest.push_back(v);
    }
    if (!rest.empty()) p.push_back(std::move(rest));
    return p;
}

EquitablePartition coarsest_equitable_refinement(const Graph& g, const Partition& seed) {
    validate_partition(g, seed);
    const std::size_t n = g.order();

    // origin[v] = index of the seed cell containing v; fixed for the whole run.
    const auto origin = cell_index(n, seed);
    auto cell_of = origin;
    std::size_t cell_count = seed.size();

    while (true) {
        const auto counts = neighbour_counts(g, cell_of, cell_count);
        // Signature: (current cell, neighbour counts into every current cell).
        std::map<std::pair<std::size_t, std::vector<std::int64_t>>, std::vector<Vertex>> groups;
        for (Vertex v = 0; v < n; ++v) groups[{cell_of[v], counts[v]}].push_back(v);

        Partition next;
        next.reserve(groups.size());
        for (auto& [key, members] : groups) next.push_back(std::move(members));
        std::sort(next.begin(), next.end(), [&](const auto& a, const auto& b) {
            return std::pair{origin[a.front()], a.front()} < std::pair{origin[b.front()], b.front()};
        });

        const bool stable = next.size() == cell_count;
        cell_of = cell_index(n, next);
        cell_count = next.size();
        if (stable) return EquitablePartition(g, std::move(next));
    }
}

SymmetrizedQuotient symmetrized_quotient(const Graph& g, const EquitablePartition& p) {
    if (p.order() != g.order()) {
        throw InvalidArgument("partition covers " + std::to_string(p.order()) +
                              " vertices but the graph has " + std::to_string(g.order()));
    }
    // Re-derive the counts against `g` in case `p` was built for another graph.
    const EquitablePartition checked(g, p.cells());
    const auto r = static_cast<Eigen::Index>(checked.cell_count());
    const auto n = static_cast<Eigen::Index>(g.order());

    SymmetrizedQuotient q;
    q.b_ = Eigen::MatrixXd::Zero(r, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) {
            const std::int64_t product = checked.count(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                                         checked.count(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
            q.b_(i, j) = std::sqrt(static_cast<double>(product));
        }
    }
    q.q_ = Eigen::MatrixXd::Zero(n, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        const auto& cell = checked.cell(static_cast<std::size_t>(i));
        const double w = 1.0 / std::sqrt(static_cast<double>(cell.size()));
        for (Vertex v : cell) q.q_(static_cast<Eigen::Index>(v), i) = w;
        q.cell_sizes_.push_back(cell.size());
    }
    q.cell_of_.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) q.cell_of_[v] = checked.cell_of(v);
    return q;
}

SymmetrizedQuotient symmetrized_quotient(const Graph& g, const Partition& p) {
    return symmetrized_quotient(g, EquitablePartition(g, p));
}

std::vector<QuotientIdempotent> quotient_idempotents(const SpectralDecomposition& d,
                                                     const SymmetrizedQuotient& q) {
    if (d.dimension() != static_cast<std::size_t>(q.Q().rows())) {
        throw InvalidArgument("quotient_idempotents: decomposition has dimension " +
                              std::to_string(d.dimension()) + " but Q has " +
                              std::to_string(q.Q().rows()) + " rows");
    }
    std::vector<QuotientIdempotent> result;
    for (std::size_t r = 0; r < d.size(); ++r) {
        Eigen::MatrixXd m = q.Q().transpose() * d.projector(r) * q.Q();
        if (m.cwiseAbs().maxCoeff() > kSupportThreshold) {
            result.push_back({r, d.theta(r), std::move(m)});
        }
    }

    const auto db = decompose(q.B());
    if (db.size() != result.size()) {
        throw NumericFailure("quotient_idempotents: B has " + std::to_string(db.size()) +
                             " distinct eigenvalues but " + std::to_string(result.size()) +
                             " nonzero Q^T E_r Q were found");
    }
    const double theta_tol = 1e-8 * (1.0 + db.spectral_radius());
    for (const auto& qi : result) {
        auto match = std::find_if(db.thetas().begin(), db.thetas().end(),
                                  [&](double th) { return std::abs(th - qi.theta) <= theta_tol; });
        if (match == db.thetas().end()) {
            throw NumericFailure("quotient_idempotents: eigenvalue " + std::to_string(qi.theta) +
                                 " of A has no counterpart in B");
        }
        const auto s = static_cast<std::size_t>(match - db.thetas().begin());
        const double diff = (db.projector(s) - qi.matrix).cwiseAbs().maxCoeff();
        if (diff > 1e-9) {
            throw NumericFailure("quotient_idempotents: Q^T E_r Q differs from B's idempotent by " +
                                 std::to_string(diff));
        }
    }
    return result;
}

double quotient_transfer_identity_check(const Graph& g, const EquitablePartition& p, Vertex a,
                                        Vertex b, std::span<const double> times, TimeSign sign) {
    if (a >= g.order() || b >= g.order()) {
        throw InvalidArgument("quotient_transfer_identity_check: vertex out of range");
    }
    if (!p.is_singleton(a) || !p.is_singleton(b)) {
        throw InvalidArgument("quotient_transfer_identity_check: vertices " + std::to_string(a) +
                              " and " + std::to_string(b) + " must be singleton cells");
    }
    const auto q = symmetrized_quotient(g, p);
    const auto da = decompose(adjacency_matrix(g));
    const auto db = decompose(q.B());
    const Vertex ca = q.cell_of(a);
    const Vertex cb = q.cell_of(b);
    const double s = sign == TimeSign::positive ? 1.0 : -1.0;

    double worst = 0.0;
    for (double t : times) {
        worst = std::max(worst, std::abs(da.amplitude(a, b, s * t) - db.amplitude(ca, cb, s * t)));
        worst = std::max(worst, std::abs(da.amplitude(a, a, s * t) - db.amplitude(ca, ca, s * t)));
    }
    return worst;
}

} // namespace qwalk
