#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwalk {

/// Bad input: violated precondition, out-of-range vertex, malformed partition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Graph spec or edge-list file could not be parsed.
class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& what, std::size_t position)
        : InvalidArgument(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Eigensolver failure or an internal consistency check that did not hold.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Periodic maximisation requested on a spectrum that is not integral.
class NotPeriodic : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bounded time search ended without a certificate. Carries the best point seen.
class SearchExhausted : public std::runtime_error {
public:
    SearchExhausted(const std::string& what, double best_t, double best_fidelity)
        : std::runtime_error(what), best_t_(best_t), best_fidelity_(best_fidelity) {}

    double best_t() const noexcept { return best_t_; }
    double best_fidelity() const noexcept { return best_fidelity_; }

private:
    double best_t_;
    double best_fidelity_;
};

} // namespace qwalk
