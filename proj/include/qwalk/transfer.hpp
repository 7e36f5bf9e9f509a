#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/spectral.hpp"

namespace qwalk {

inline constexpr double kDefaultTMax = 1e4 * std::numbers::pi;

enum class VerdictKind { pst_yes, pst_no, pgst_yes, pgst_no };

std::string_view to_string(VerdictKind kind);

/// A concrete time at which |U(t)_{uv}| >= 1 - epsilon.
struct TimeCertificate {
    double t = 0.0;
    double fidelity = 0.0;          ///< |U(t)_{uv}|
    std::complex<double> phase;     ///< U(t)_{uv} / |U(t)_{uv}|
    double epsilon = 0.0;

    double probability() const noexcept { return fidelity * fidelity; }
};

/// Integer fact that decides a verdict, e.g. "1+4k" = 25 with root 5.
struct ArithmeticWitness {
    std::string quantity;
    std::int64_t value = 0;
    std::optional<std::int64_t> root;
};

struct PeriodicMaximum {
    double max_fidelity = 0.0;
    double argmax_t = 0.0;
};

struct TransferVerdict {
    VerdictKind kind = VerdictKind::pst_no;
    std::string reason;
    std::optional<TimeCertificate> certificate;
    std::optional<ArithmeticWitness> witness;
    /// Supremum of the fidelity over one period, reported for periodic no-verdicts.
    std::optional<PeriodicMaximum> periodic_max;
};

/// t -> U(t)_{uv} restricted to the eigenvalues with (E_r)_{uv} != 0.
class TransferAmplitude {
public:
    TransferAmplitude(const SpectralDecomposition& d, Vertex u, Vertex v);

    std::complex<double> operator()(double t) const;
    double fidelity(double t) const { return std::abs((*this)(t)); }

    const std::vector<double>& thetas() const noexcept { return thetas_; }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }
    /// max |theta_r| over the retained terms.
    double rate() const noexcept { return rate_; }
    /// sum |c_r theta_r|, a Lipschitz bound for t -> |U(t)_{uv}|.
    double lipschitz() const noexcept { return lipschitz_; }

private:
    std::vector<double> thetas_;
    std::vector<double> coefficients_;
    double rate_ = 0.0;
    double lipschitz_ = 0.0;
};

/// |U(t)_{uv}|. Throws InvalidArgument for u == v or out-of-range vertices.
double fidelity(const SpectralDecomposition& d, Vertex u, Vertex v, double t);

/// Closed-form U(t)_{uv} between the centres of S_{k,k}:
/// i((1 - 2 beta) sin(alpha t) + 2 beta sin((1 - alpha) t)).
std::complex<double> skk_amplitude(std::int64_t k, double t);

enum class PairKind { centers, pendant_pair };

/// Vertices of the requested pair in the canonical double-star labelling. The
/// pendant pair is the two leaves of a centre with exactly two leaves (the u-side
/// when k = 2), or the two end vertices when k = l = 1. Throws InvalidArgument
/// when the shape has no such pair.
std::pair<Vertex, Vertex> double_star_pair(std::int64_t k, std::int64_t l, PairKind pair);

/// Always PST-no; the reason code names the argument that rules transfer out.
TransferVerdict pst_double_star(std::int64_t k, std::int64_t l, PairKind pair);

/// Arithmetic part of pgst_skk: kind, reason and witness only, no search.
TransferVerdict pgst_skk_verdict(std::int64_t k);

/// PGST between the centres of S_{k,k}: decided by whether 1+4k is a perfect square.
/// A PGST-yes carries a certificate with fidelity >= 1 - epsilon found within
/// t_max; failing to find one throws SearchExhausted.
TransferVerdict pgst_skk(std::int64_t k, double epsilon, double t_max = kDefaultTMax);

/// Arithmetic part of pgst_s2l (l >= 1).
TransferVerdict pgst_s2l_verdict(std::int64_t l);

/// PGST between the two leaves of the degree-3 centre of S_{2,l}: yes iff l != 2.
TransferVerdict pgst_s2l(std::int64_t l, double epsilon, double t_max = kDefaultTMax);

/// Family-aware candidates: windows of half-width base/4 around (2j+1)*base.
struct CandidateSchedule {
    double base = 0.0;
};

struct TransferSearch {
    std::optional<TimeCertificate> certificate;
    double best_t = 0.0;
    double best_fidelity = 0.0;

    bool found() const noexcept { return certificate.has_value(); }
};

/// Smallest time in [0, t_max] found with |U(t)_{uv}| >= 1 - epsilon. Candidates come
/// from `schedule` first; a grid of step pi/(8 rho) with golden-section refinement
/// then covers [0, t_cert] (or [0, t_max] when the schedule found nothing).
TransferSearch find_transfer_time(const SpectralDecomposition& d, Vertex u, Vertex v,
                                  double epsilon, double t_max = kDefaultTMax,
                                  std::optional<CandidateSchedule> schedule = std::nullopt);

/// Maximum of |U(t)_{uv}| over one period [0, 2pi]. Throws NotPeriodic unless every
/// eigenvalue is within 1e-9 of an integer.
PeriodicMaximum max_fidelity_periodic(const SpectralDecomposition& d, Vertex u, Vertex v);

/// max_r |exp(i theta_r t) - 1|, which equals the operator norm ||U(t) - I||.
double phase_deviation(const SpectralDecomposition& d, double t);

struct RecurrenceSearch {
    std::optional<double> t;
    double deviation = 0.0;       ///< at t when found
    double best_t = 0.0;          ///< smallest deviation seen otherwise
    double best_deviation = 0.0;

    bool found() const noexcept { return t.has_value(); }
};

/// First t in [window_start, window_start + window_len] with phase deviation
/// strictly below epsilon.
RecurrenceSearch recurrence_time(const SpectralDecomposition& d, double epsilon,
                                 double window_start, double window_len);

} // namespace qwalk
