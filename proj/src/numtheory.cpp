#include "qwalk/numtheory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr std::int64_t kTrialDivisionLimit = 1'000'000;

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;  // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int sign_of(const Rational& r) {
    if (r.numerator() > 0) return 1;
    if (r.numerator() < 0) return -1;
    return 0;
}

long double to_ld(const Rational& r) {
    return r.numerator().convert_to<long double>() / r.denominator().convert_to<long double>();
}

bool fits_int64(const BigInt& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

std::vector<Convergent> convergents_from_terms(const std::vector<BigInt>& terms) {
    std::vector<Convergent> out;
    BigInt p_prev = 1, p_prev2 = 0;
    BigInt q_prev = 0, q_prev2 = 1;
    for (const auto& a : terms) {
        BigInt p = a * p_prev + p_prev2;
        BigInt q = a * q_prev + q_prev2;
        if (!fits_int64(p) || !fits_int64(q)) break;
        out.push_back({p.convert_to<std::int64_t>(), q.convert_to<std::int64_t>()});
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return out;
}

void check_count(int count) {
    if (count < 1 || count > 64) {
        throw InvalidArgument("convergent count must lie in 1..64, got " + std::to_string(count));
    }
}

} // namespace

std::int64_t isqrt(std::int64_t m) {
    if (m < 0) throw InvalidArgument("isqrt of negative number " + std::to_string(m));
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(m)));
    // Correct the floating estimate with exact 128-bit arithmetic.
    while (r > 0 && static_cast<__int128>(r) * r > m) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= m) ++r;
    return r;
}

std::optional<std::int64_t> perfect_square_root(std::int64_t m) {
    if (m < 0) throw InvalidArgument("perfect-square test on negative number " + std::to_string(m));
    const std::int64_t r = isqrt(m);
    if (static_cast<__int128>(r) * r == m) return r;
    return std::nullopt;
}

bool is_perfect_square(std::int64_t m) { return perfect_square_root(m).has_value(); }

QuadraticSurd::QuadraticSurd(Rational a) : a_(std::move(a)) {}

QuadraticSurd::QuadraticSurd(std::int64_t a) : a_(BigInt(a)) {}

QuadraticSurd::QuadraticSurd(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ < 0) throw InvalidArgument("QuadraticSurd: negative radicand " + std::to_string(d_));
    if (d_ == 0 || b_.numerator() == 0) {
        b_ = 0;
        d_ = 0;
        return;
    }
    // Pull square factors out of d.
    std::int64_t rest = d_;
    std::int64_t outside = 1;
    for (std::int64_t p = 2; p <= kTrialDivisionLimit && p * p <= rest; ++p) {
        while (rest % (p * p) == 0) {
            rest /= p * p;
            outside *= p;
        }
    }
    if (auto root = perfect_square_root(rest)) {
        outside *= *root;
        rest = 1;
    }
    b_ *= Rational(BigInt(outside));
    if (rest == 1) {
        a_ += b_;
        b_ = 0;
        d_ = 0;
    } else {
        d_ = rest;
    }
}

QuadraticSurd QuadraticSurd::sqrt_of(std::int64_t m) { return {Rational(0), Rational(1), m}; }

QuadraticSurd QuadraticSurd::conjugate() const { return {a_, -b_, d_}; }

Rational QuadraticSurd::norm() const { return a_ * a_ - b_ * b_ * Rational(BigInt(d_)); }

int QuadraticSurd::sign() const {
    const int sa = sign_of(a_);
    const int sb = is_rational() ? 0 : sign_of(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 against b^2 d; never equal since sqrt(d) is irrational.
    const Rational diff = a_ * a_ - b_ * b_ * Rational(BigInt(d_));
    return sign_of(diff) > 0 ? sa : sb;
}

long double QuadraticSurd::to_long_double() const {
    return to_ld(a_) + to_ld(b_) * std::sqrt(static_cast<long double>(d_));
}

double QuadraticSurd::to_double() const { return static_cast<double>(to_long_double()); }

std::string QuadraticSurd::to_string() const {
    std::ostringstream out;
    out << a_;
    if (!is_rational()) out << (sign_of(b_) < 0 ? " - " : " + ") << boost::abs(b_) << "*sqrt(" << d_ << ")";
    return out.str();
}

QuadraticSurd QuadraticSurd::operator-() const { return {-a_, -b_, d_}; }

namespace {

std::int64_t common_radicand(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.is_rational()) return y.radicand();
    if (y.is_rational() || x.radicand() == y.radicand()) return x.radicand();
    throw InvalidArgument("QuadraticSurd: incompatible radicands " + std::to_string(x.radicand()) +
                          " and " + std::to_string(y.radicand()));
}

} // namespace

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    const std::int64_t d = common_radicand(x, y);
    return {x.a_ + y.a_, x.b_ + y.b_, d};
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator*(const QuadraticSurd& x, const QuadraticSurd& y) {
    const std::int64_t d = common_radicand(x, y);
    const Rational dr{BigInt(d)};
    return {x.a_ * y.a_ + x.b_ * y.b_ * dr, x.a_ * y.b_ + x.b_ * y.a_, d};
}

QuadraticSurd operator/(const QuadraticSurd& x, const QuadraticSurd& y) {
    const Rational n = y.norm();
    if (n.numerator() == 0) throw InvalidArgument("QuadraticSurd: division by zero");
    const QuadraticSurd num = x * y.conjugate();
    return {num.a_ / n, num.b_ / n, num.d_};
}

bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
}

std::strong_ordering operator<=>(const QuadraticSurd& x, const QuadraticSurd& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt QuadraticSurd::floor() const {
    BigInt f(std::floor(to_long_double()));
    while (QuadraticSurd(Rational(f)) > *this) --f;
    while (QuadraticSurd(Rational(f + 1)) <= *this) ++f;
    return f;
}

std::int64_t s2l_discriminant(std::int64_t l) {
    if (l < 1) throw InvalidArgument("S_{2,l} requires l >= 1, got " + std::to_string(l));
    if (l > 3'000'000'000LL) throw InvalidArgument("l too large for exact int64 discriminant");
    return l * l - 2 * l + 9;
}

bool s2l_ratio_is_rational(std::int64_t l) { return is_perfect_square(s2l_discriminant(l)); }

std::vector<BigInt> continued_fraction_terms(const QuadraticSurd& x, int count) {
    check_count(count);
    if (x.sign() <= 0) throw InvalidArgument("continued fraction requires x > 0");
    std::vector<BigInt> terms;
    if (x.is_rational()) {
        BigInt num = x.rational_part().numerator();
        BigInt den = x.rational_part().denominator();
        while (den != 0 && static_cast<int>(terms.size()) < count) {
            const BigInt a = floor_div(num, den);
            terms.push_back(a);
            BigInt rem = num - a * den;
            num = den;
            den = rem;
        }
        return terms;
    }

    // x = (P + sqrt(D)) / Q with Q | (D - P^2); the expansion then stays integral.
    const auto& a = x.rational_part();
    const auto& b = x.surd_coefficient();
    const BigInt s = b.numerator() < 0 ? -1 : 1;
    BigInt p = s * a.numerator() * b.denominator();
    BigInt d = b.numerator() * b.numerator() * a.denominator() * a.denominator() * BigInt(x.radicand());
    BigInt q = s * a.denominator() * b.denominator();
    if ((d - p * p) % q != 0) {
        const BigInt aq = boost::multiprecision::abs(q);
        p *= aq;
        d *= q * q;
        q *= aq;
    }
    const BigInt root = boost::multiprecision::sqrt(d);
    while (static_cast<int>(terms.size()) < count) {
        BigInt term;
        if (q > 0) {
            term = floor_div(p + root, q);
        } else {
            term = -floor_div(p + root, -q) - 1;
        }
        terms.push_back(term);
        p = term * q - p;
        q = (d - p * p) / q;
    }
    return terms;
}

std::vector<Convergent> continued_fraction_convergents(const QuadraticSurd& x, int count) {
    return convergents_from_terms(continued_fraction_terms(x, count));
}

std::vector<Convergent> continued_fraction_convergents(const Rational& x, int count) {
    return continued_fraction_convergents(QuadraticSurd(x), count);
}

std::vector<Convergent> continued_fraction_convergents(double x, int count) {
    check_count(count);
    if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("continued fraction requires finite x > 0");
    std::vector<BigInt> terms;
    long double r = x;
    BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    while (static_cast<int>(terms.size()) < count) {
        const long double a = std::floor(r);
        if (a > static_cast<long double>(std::numeric_limits<std::int64_t>::max())) break;
        const BigInt term(static_cast<std::int64_t>(a));
        terms.push_back(term);
        const BigInt p = term * p_prev + p_prev2;
        const BigInt q = term * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        if (!fits_int64(p) || !fits_int64(q)) break;
        const long double approx = p.convert_to<long double>() / q.convert_to<long double>();
        // The expansion of a double is finite; stop once p/q reproduces it.
        if (std::abs(approx - static_cast<long double>(x)) <=
            4.0L * std::numeric_limits<double>::epsilon() * x) {
            break;
        }
        const long double frac = r - a;
        if (frac <= 0.0L) break;
        r = 1.0L / frac;
    }
    return convergents_from_terms(terms);
}

SkkParameters skk_parameters(std::int64_t k) {
    if (k < 1) throw InvalidArgument("S_{k,k} requires k >= 1, got " + std::to_string(k));
    if (k > (std::numeric_limits<std::int64_t>::max() - 1) / 4) {
        throw InvalidArgument("k too large for exact int64 arithmetic");
    }
    const std::int64_t delta = 1 + 4 * k;
    const QuadraticSurd root = QuadraticSurd::sqrt_of(delta);
    const QuadraticSurd half{Rational(1, 2)};
    return {half + half * root, QuadraticSurd(k) / (QuadraticSurd(delta) + root)};
}

} // namespace qwalk
