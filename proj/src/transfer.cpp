#include "qwalk/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "qwalk/error.hpp"
#include "qwalk/numtheory.hpp"

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
// Projector entries at rounding level; keeping them only pollutes the rate bound.
constexpr double kNegligibleCoefficient = 1e-12;
constexpr std::size_t kResyncEvery = 256;
constexpr std::size_t kBlockSamples = 4096;
constexpr std::size_t kIntervalsPerRound = 1024;
constexpr std::size_t kPeriodicSamples = std::size_t{1} << 17;

struct Peak {
    double t = 0.0;
    double f = -std::numeric_limits<double>::infinity();
};

// Higher fidelity wins; ties go to the earlier time.
bool better(const Peak& a, const Peak& b) { return a.f > b.f || (a.f == b.f && a.t < b.t); }

template <class F>
Peak golden_max(F&& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 200; ++it) {
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a))) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? Peak{c, fc} : Peak{d, fd};
}

// |amp| on t_i = lo + i*step, i = 0..count-1, by rotating phasors.
std::vector<double> sample_fidelity(const TransferAmplitude& amp, double lo, double step,
                                    std::size_t count) {
    const auto& thetas = amp.thetas();
    const auto& coeffs = amp.coefficients();
    const std::size_t m = thetas.size();
    std::vector<std::complex<double>> z(m), w(m);
    for (std::size_t r = 0; r < m; ++r) w[r] = std::polar(1.0, thetas[r] * step);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (i % kResyncEvery == 0) {
            const double t = lo + static_cast<double>(i) * step;
            for (std::size_t r = 0; r < m; ++r) z[r] = std::polar(coeffs[r], thetas[r] * t);
        }
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t r = 0; r < m; ++r) {
            sum += z[r];
            z[r] *= w[r];
        }
        out[i] = std::abs(sum);
    }
    return out;
}

struct ScanOutcome {
    std::optional<Peak> certified;
    Peak best;
};

// Scans [lo, hi] on a grid no coarser than `step` and refines local maxima that
// could reach `target` (or beat the best seen so far). Stops at the first peak
// with fidelity >= target. A peak is within +-h of its sample, so its value is at
// most f(sample) + L*h; samples below that bound are skipped.
ScanOutcome scan_interval(const TransferAmplitude& amp, double lo, double hi, double step,
                          std::optional<double> target) {
    ScanOutcome out;
    const double span = hi - lo;
    const std::size_t intervals =
        span <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(span / step));
    const double h = intervals == 0 ? 0.0 : span / static_cast<double>(intervals);
    const auto f = sample_fidelity(amp, lo, h, intervals + 1);
    const double slack = amp.lipschitz() * h;
    auto eval = [&amp](double t) { return amp.fidelity(t); };

    for (std::size_t i = 0; i <= intervals; ++i) {
        const double left = i > 0 ? f[i - 1] : -1.0;
        const double right = i < intervals ? f[i + 1] : -1.0;
        if (f[i] < left || f[i] < right) continue;
        const bool may_certify = target && f[i] >= *target - slack;
        const bool may_improve = f[i] >= out.best.f - slack;
        if (!may_certify && !may_improve) continue;

        const double t = lo + static_cast<double>(i) * h;
        Peak peak{t, f[i]};
        if (h > 0.0) {
            const Peak refined = golden_max(eval, std::max(lo, t - h), std::min(hi, t + h));
            if (refined.f > peak.f) peak = refined;
        }
        if (better(peak, out.best)) out.best = peak;
        if (target && peak.f >= *target) {
            out.certified = peak;
            return out;
        }
    }
    return out;
}

// Runs `scan(i)` for i = 0, 1, ... in rounds, each round split across hardware
// threads. Returns the lowest-index certified outcome, or the merged best.
template <class Scan>
ScanOutcome scan_many(std::size_t count, Scan&& scan) {
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    ScanOutcome total;
    for (std::size_t begin = 0; begin < count; begin += kIntervalsPerRound) {
        const std::size_t end = std::min(count, begin + kIntervalsPerRound);
        auto run_range = [&scan](std::size_t a, std::size_t b) {
            ScanOutcome part;
            for (std::size_t i = a; i < b; ++i) {
                ScanOutcome o = scan(i);
                if (better(o.best, part.best)) part.best = o.best;
                if (o.certified) {
                    part.certified = o.certified;
                    break;
                }
            }
            return part;
        };
        std::vector<ScanOutcome> parts;
        if (workers == 1) {
            parts.push_back(run_range(begin, end));
        } else {
            const std::size_t chunk = (end - begin + workers - 1) / workers;
            std::vector<std::future<ScanOutcome>> futures;
            for (std::size_t a = begin; a < end; a += chunk) {
                futures.push_back(std::async(std::launch::async, run_range, a, std::min(end, a + chunk)));
            }
            for (auto& fut : futures) parts.push_back(fut.get());
        }
        for (const auto& part : parts) {
            if (better(part.best, total.best)) total.best = part.best;
            if (part.certified) {
                total.certified = part.certified;
                return total;
            }
        }
    }
    return total;
}

double grid_step(const TransferAmplitude& amp) { return kPi / (8.0 * amp.rate()); }

ScanOutcome scan_range(const TransferAmplitude& amp, double lo, double hi,
                       std::optional<double> target) {
    const double step = grid_step(amp);
    const double block = step * static_cast<double>(kBlockSamples);
    const auto blocks = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / block)));
    return scan_many(blocks, [&](std::size_t b) {
        const double a = lo + static_cast<double>(b) * block;
        return scan_interval(amp, a, std::min(hi, a + block), step, target);
    });
}

TimeCertificate make_certificate(const TransferAmplitude& amp, double t, double epsilon) {
    const auto value = amp(t);
    const double f = std::abs(value);
    const std::complex<double> phase = f > 0.0 ? value / f : std::complex<double>{1.0, 0.0};
    return {t, f, phase, epsilon};
}

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidArgument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
    }
}

void check_t_max(double t_max) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw InvalidArgument("t_max must be positive and finite");
    }
}

} // namespace

std::string_view to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::pst_yes: return "PST-yes";
    case VerdictKind::pst_no: return "PST-no";
    case VerdictKind::pgst_yes: return "PGST-yes";
    case VerdictKind::pgst_no: return "PGST-no";
    }
    return "unknown";
}

TransferAmplitude::TransferAmplitude(const SpectralDecomposition& d, Vertex u, Vertex v) {
    if (u >= d.dimension() || v >= d.dimension()) {
        throw InvalidArgument("vertex out of range for a decomposition of dimension " +
                              std::to_string(d.dimension()));
    }
    const auto iu = static_cast<Eigen::Index>(u);
    const auto iv = static_cast<Eigen::Index>(v);
    for (std::size_t r = 0; r < d.size(); ++r) {
        const double c = d.projector(r)(iu, iv);
        if (std::abs(c) <= kNegligibleCoefficient) continue;
        thetas_.push_back(d.theta(r));
        coefficients_.push_back(c);
        rate_ = std::max(rate_, std::abs(d.theta(r)));
        lipschitz_ += std::abs(c * d.theta(r));
    }
}

std::complex<double> TransferAmplitude::operator()(double t) const {
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t r = 0; r < thetas_.size(); ++r) sum += std::polar(coefficients_[r], thetas_[r] * t);
    return sum;
}

double fidelity(const SpectralDecomposition& d, Vertex u, Vertex v, double t) {
    if (u == v) throw InvalidArgument("fidelity needs two distinct vertices");
    return std::abs(d.amplitude(u, v, t));
}

std::complex<double> skk_amplitude(std::int64_t k, double t) {
    const auto params = skk_parameters(k);
    const double alpha = params.alpha.to_double();
    const double beta = params.beta.to_double();
    return {0.0, (1.0 - 2.0 * beta) * std::sin(alpha * t) + 2.0 * beta * std::sin((1.0 - alpha) * t)};
}

std::pair<Vertex, Vertex> double_star_pair(std::int64_t k, std::int64_t l, PairKind pair) {
    if (k < 1 || l < 1) throw InvalidArgument("double star requires k, l >= 1");
    if (pair == PairKind::centers) return {0, 1};
    const auto ku = static_cast<Vertex>(k);
    if (k == 2) return {2, 3};
    if (l == 2) return {ku + 2, ku + 3};
    if (k == 1 && l == 1) return {2, 3};
    throw InvalidArgument("S_{" + std::to_string(k) + "," + std::to_string(l) +
                          "} has no pendant pair (needs min(k,l) = 2 or k = l = 1)");
}

TransferVerdict pst_double_star(std::int64_t k, std::int64_t l, PairKind pair) {
    double_star_pair(k, l, pair);  // validates the shape
    TransferVerdict verdict;
    verdict.kind = VerdictKind::pst_no;

    if (pair == PairKind::centers) {
        if (k != l) {
            // Cospectral vertices have equal degree; the centres have degrees k+1 and l+1.
            verdict.reason = "not-cospectral";
            verdict.witness = ArithmeticWitness{"degree(v) - degree(u)", l - k, std::nullopt};
            return verdict;
        }
        const std::int64_t delta = 1 + 4 * k;
        verdict.reason = "alpha-integer-contradiction";
        verdict.witness = ArithmeticWitness{"1+4k", delta, perfect_square_root(delta)};
        return verdict;
    }

    if (k == 1 && l == 1) {
        // End vertices of P_4: eigenvalues +-alpha, +-(alpha-1) with alpha = (1+sqrt 5)/2.
        verdict.reason = "ratio-irrational";
        verdict.witness = ArithmeticWitness{"1+4k", 5, std::nullopt};
        return verdict;
    }
    const std::int64_t other = k == 2 ? l : k;
    const std::int64_t disc = s2l_discriminant(other);
    const auto root = perfect_square_root(disc);
    if (!root) {
        verdict.reason = "ratio-irrational";
        verdict.witness = ArithmeticWitness{"l^2-2l+9", disc, std::nullopt};
    } else {
        // l = 2: theta_2/theta_4 = 2 cannot be a ratio of odd integers.
        verdict.reason = "odd-ratio-2-impossible";
        verdict.witness = ArithmeticWitness{"l^2-2l+9", disc, root};
    }
    return verdict;
}

TransferVerdict pgst_skk_verdict(std::int64_t k) {
    if (k < 1) throw InvalidArgument("S_{k,k} requires k >= 1");
    const std::int64_t delta = 1 + 4 * k;
    const auto root = perfect_square_root(delta);
    TransferVerdict verdict;
    verdict.witness = ArithmeticWitness{"1+4k", delta, root};
    verdict.kind = root ? VerdictKind::pgst_no : VerdictKind::pgst_yes;
    verdict.reason = root ? "delta-square" : "delta-nonsquare";
    return verdict;
}

TransferVerdict pgst_skk(std::int64_t k, double epsilon, double t_max) {
    check_epsilon(epsilon);
    check_t_max(t_max);
    auto verdict = pgst_skk_verdict(k);
    const auto d = decompose(adjacency_matrix(double_star(k, k)));
    if (verdict.kind == VerdictKind::pgst_no) {
        verdict.periodic_max = max_fidelity_periodic(d, 0, 1);
        return verdict;
    }
    auto search = find_transfer_time(d, 0, 1, epsilon, t_max, CandidateSchedule{kPi});
    if (!search.found()) {
        throw SearchExhausted("no certificate with fidelity >= " + std::to_string(1.0 - epsilon) +
                                  " up to t = " + std::to_string(t_max) + " for S_{" +
                                  std::to_string(k) + "," + std::to_string(k) + "}",
                              search.best_t, search.best_fidelity);
    }
    verdict.certificate = search.certificate;
    return verdict;
}

TransferVerdict pgst_s2l_verdict(std::int64_t l) {
    const std::int64_t disc = s2l_discriminant(l);
    const auto root = perfect_square_root(disc);
    TransferVerdict verdict;
    verdict.witness = ArithmeticWitness{"l^2-2l+9", disc, root};
    verdict.kind = root ? VerdictKind::pgst_no : VerdictKind::pgst_yes;
    verdict.reason = root ? "integer-spectrum-periodic" : "ratio-irrational";
    return verdict;
}

TransferVerdict pgst_s2l(std::int64_t l, double epsilon, double t_max) {
    check_epsilon(epsilon);
    check_t_max(t_max);
    auto verdict = pgst_s2l_verdict(l);
    const auto d = decompose(adjacency_matrix(double_star(2, l)));
    if (verdict.kind == VerdictKind::pgst_no) {
        verdict.periodic_max = max_fidelity_periodic(d, 2, 3);
        return verdict;
    }
    const double lf = static_cast<double>(l);
    const double disc = static_cast<double>(verdict.witness->value);
    const double theta4 = 0.5 * std::sqrt(2.0 * lf + 6.0 - 2.0 * std::sqrt(disc));
    auto search = find_transfer_time(d, 2, 3, epsilon, t_max, CandidateSchedule{kPi / theta4});
    if (!search.found()) {
        throw SearchExhausted("no certificate with fidelity >= " + std::to_string(1.0 - epsilon) +
                                  " up to t = " + std::to_string(t_max) + " for S_{2," +
                                  std::to_string(l) + "}",
                              search.best_t, search.best_fidelity);
    }
    verdict.certificate = search.certificate;
    return verdict;
}

TransferSearch find_transfer_time(const SpectralDecomposition& d, Vertex u, Vertex v,
                                  double epsilon, double t_max,
                                  std::optional<CandidateSchedule> schedule) {
    check_epsilon(epsilon);
    check_t_max(t_max);
    if (u == v) throw InvalidArgument("find_transfer_time needs two distinct vertices");
    const TransferAmplitude amp(d, u, v);
    const double target = 1.0 - epsilon;

    TransferSearch result;
    if (amp.rate() == 0.0) {
        // Constant amplitude (only theta = 0 contributes).
        const double f = amp.fidelity(0.0);
        result.best_fidelity = f;
        if (f >= target) result.certificate = make_certificate(amp, 0.0, epsilon);
        return result;
    }

    Peak best;
    double horizon = t_max;
    std::optional<Peak> certified;
    if (schedule) {
        if (!(schedule->base > 0.0)) throw InvalidArgument("candidate schedule base must be positive");
        const double base = schedule->base;
        const double half = base / 4.0;
        const double step = std::min(grid_step(amp), half / 4.0);
        // Window j is centred on (2j+1)*base; keep those that start before t_max.
        const double last = std::floor(((t_max + half) / base - 1.0) / 2.0);
        const auto windows = last < 0.0 ? std::size_t{0} : static_cast<std::size_t>(last) + 1;
        const ScanOutcome o = scan_many(windows, [&](std::size_t j) {
            const double centre = (2.0 * static_cast<double>(j) + 1.0) * base;
            return scan_interval(amp, std::max(0.0, centre - half), std::min(t_max, centre + half),
                                 step, target);
        });
        best = o.best;
        if (o.certified) {
            certified = o.certified;
            horizon = o.certified->t;
        }
    }
    // The grid backstop looks for anything earlier than the schedule's answer.
    const ScanOutcome g = scan_range(amp, 0.0, horizon, target);
    if (better(g.best, best)) best = g.best;
    if (g.certified) certified = g.certified;

    if (certified) result.certificate = make_certificate(amp, certified->t, epsilon);
    result.best_t = best.t;
    result.best_fidelity = std::max(0.0, best.f);
    if (result.certificate) {
        result.best_t = result.certificate->t;
        result.best_fidelity = std::max(result.best_fidelity, result.certificate->fidelity);
    }
    return result;
}

PeriodicMaximum max_fidelity_periodic(const SpectralDecomposition& d, Vertex u, Vertex v) {
    if (u == v) throw InvalidArgument("max_fidelity_periodic needs two distinct vertices");
    for (double th : d.thetas()) {
        if (std::abs(th - std::round(th)) > 1e-9) {
            throw NotPeriodic("spectrum is not integral (eigenvalue " + std::to_string(th) + ")");
        }
    }
    const TransferAmplitude amp(d, u, v);
    if (amp.rate() == 0.0) return {amp.fidelity(0.0), 0.0};
    const double step = std::min(grid_step(amp), 2.0 * kPi / static_cast<double>(kPeriodicSamples));
    const ScanOutcome o = scan_interval(amp, 0.0, 2.0 * kPi, step, std::nullopt);
    return {o.best.f, o.best.t};
}

double phase_deviation(const SpectralDecomposition& d, double t) {
    double worst = 0.0;
    for (double th : d.thetas()) worst = std::max(worst, std::abs(std::polar(1.0, th * t) - 1.0));
    return worst;
}

RecurrenceSearch recurrence_time(const SpectralDecomposition& d, double epsilon,
                                 double window_start, double window_len) {
    if (!(epsilon >= 0.0)) throw InvalidArgument("recurrence epsilon must be nonnegative");
    if (!(window_len >= 0.0) || !std::isfinite(window_start) || !std::isfinite(window_len)) {
        throw InvalidArgument("recurrence window must be finite with nonnegative length");
    }
    const double lo = window_start;
    const double hi = window_start + window_len;

    // |exp(i theta t) - 1| depends only on |theta|; drop zero and duplicates.
    std::vector<double> rates;
    for (double th : d.thetas()) {
        const double a = std::abs(th);
        if (a <= d.grouping_tol()) continue;
        if (std::none_of(rates.begin(), rates.end(),
                         [&](double r) { return std::abs(r - a) <= d.grouping_tol(); })) {
            rates.push_back(a);
        }
    }
    std::sort(rates.begin(), rates.end(), std::greater<>());
    auto deviation = [&rates](double t) {
        double worst = 0.0;
        for (double r : rates) worst = std::max(worst, std::abs(std::polar(1.0, r * t) - 1.0));
        return worst;
    };

    RecurrenceSearch out;
    out.best_t = lo;
    out.best_deviation = deviation(lo);
    if (rates.empty() || window_len == 0.0) {
        if (out.best_deviation < epsilon) {
            out.t = lo;
            out.deviation = out.best_deviation;
        }
        return out;
    }

    const double rho = rates.front();
    const auto intervals = static_cast<std::size_t>(std::ceil(window_len / (kPi / (8.0 * rho))));
    const double h = window_len / static_cast<double>(intervals);
    // A point with deviation below epsilon has a sample within h/2 whose deviation is
    // below epsilon + rho*h/2.
    const double screen = epsilon + rho * h / 2.0;
    const std::size_t m = rates.size();
    std::vector<std::complex<double>> z(m), w(m);
    for (std::size_t r = 0; r < m; ++r) w[r] = std::polar(1.0, rates[r] * h);

    auto minimise = [&](double a, double b) {
        auto neg = [&](double t) { return -deviation(t); };
        const Peak p = golden_max(neg, a, b);
        return std::pair{p.t, -p.f};
    };

    for (std::size_t i = 0; i <= intervals; ++i) {
        if (i % kResyncEvery == 0) {
            const double t = lo + static_cast<double>(i) * h;
            for (std::size_t r = 0; r < m; ++r) z[r] = std::polar(1.0, rates[r] * t);
        }
        bool pass = true;
        for (std::size_t r = 0; r < m && pass; ++r) pass = std::abs(z[r] - 1.0) <= screen;
        for (std::size_t r = 0; r < m; ++r) z[r] *= w[r];
        if (!pass) continue;

        const double t = lo + static_cast<double>(i) * h;
        auto [tr, dev] = minimise(std::max(lo, t - h), std::min(hi, t + h));
        const double at_sample = deviation(t);
        if (at_sample < dev) {
            tr = t;
            dev = at_sample;
        }
        if (dev < out.best_deviation) {
            out.best_deviation = dev;
            out.best_t = tr;
        }
        if (dev < epsilon) {
            out.t = tr;
            out.deviation = dev;
            return out;
        }
    }
    return out;
}

} // namespace qwalk
