#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace qwalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

/// Integer square root of m if m is a perfect square. Exact for the whole int64
/// range; throws InvalidArgument for m < 0.
std::optional<std::int64_t> perfect_square_root(std::int64_t m);
bool is_perfect_square(std::int64_t m);

/// floor(sqrt(m)) for m >= 0.
std::int64_t isqrt(std::int64_t m);

/// Exact value a + b*sqrt(d) with rational a, b and d either 0 or a squarefree
/// integer > 1. Mixing surds with different radicands in + or * throws
/// InvalidArgument unless one side is rational.
class QuadraticSurd {
public:
    QuadraticSurd() = default;
    QuadraticSurd(Rational a);  // NOLINT(google-explicit-constructor)
    QuadraticSurd(std::int64_t a);  // NOLINT(google-explicit-constructor)
    /// Normalises: square factors of d move into b; perfect squares collapse to rationals.
    QuadraticSurd(Rational a, Rational b, std::int64_t d);

    /// sqrt(m) for m >= 0.
    static QuadraticSurd sqrt_of(std::int64_t m);

    const Rational& rational_part() const noexcept { return a_; }
    const Rational& surd_coefficient() const noexcept { return b_; }
    std::int64_t radicand() const noexcept { return d_; }
    bool is_rational() const noexcept { return d_ == 0 || b_.numerator() == 0; }

    QuadraticSurd conjugate() const;
    /// (a + b sqrt d)(a - b sqrt d) = a^2 - b^2 d.
    Rational norm() const;
    int sign() const;
    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const;

    QuadraticSurd operator-() const;
    friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
    friend QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y);
    /// Throws InvalidArgument on division by zero.
    friend QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y);

    friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y);
    friend std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y);

    /// floor of the exact value.
    BigInt floor() const;

private:
    Rational a_{0};
    Rational b_{0};
    std::int64_t d_ = 0;
};

/// l^2 - 2l + 9, the discriminant inside the eigenvalues of the symmetrized
/// quotient of S_{2,l}.
std::int64_t s2l_discriminant(std::int64_t l);

/// Whether theta_2 / theta_4 is rational for S_{2,l}; decided by the square test on
/// l^2 - 2l + 9 (true only for l = 2). Throws InvalidArgument for l < 1.
bool s2l_ratio_is_rational(std::int64_t l);

struct Convergent {
    std::int64_t p;
    std::int64_t q;

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// First `count` (<= 64) convergents of the regular continued fraction of x > 0.
/// Stops early when the expansion terminates (rational x) or a convergent would
/// overflow int64.
std::vector<Convergent> continued_fraction_convergents(const QuadraticSurd& x, int count);
std::vector<Convergent> continued_fraction_convergents(const Rational& x, int count);
/// Floating-point expansion; terminates when the remainder vanishes to rounding.
std::vector<Convergent> continued_fraction_convergents(double x, int count);

/// Partial quotients a_0, a_1, ... of an exact surd.
std::vector<BigInt> continued_fraction_terms(const QuadraticSurd& x, int count);

struct SkkParameters {
    QuadraticSurd alpha;  ///< (1 + sqrt(1+4k)) / 2
    QuadraticSurd beta;   ///< k / (1 + 4k + sqrt(1+4k))
};

SkkParameters skk_parameters(std::int64_t k);

} // namespace qwalk
