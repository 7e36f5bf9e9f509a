#include "doctest.h"

#include <limits>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qwalk/error.hpp"
#include "qwalk/numtheory.hpp"

using namespace qwalk;
using Float50 = boost::multiprecision::cpp_bin_float_50;

namespace {

Float50 value_of(const QuadraticSurd& x) {
    auto rat = [](const Rational& r) { return Float50(r.numerator()) / Float50(r.denominator()); };
    return rat(x.rational_part()) + rat(x.surd_coefficient()) * sqrt(Float50(x.radicand()));
}

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

} // namespace

TEST_CASE("perfect squares against a big-integer square root") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> any(0, std::numeric_limits<std::int64_t>::max());
    std::uniform_int_distribution<std::int64_t> root(0, 3'037'000'499);
    for (int i = 0; i < 1'000'000; ++i) {
        // Half the samples are squares or squares +-1, where mistakes would show.
        std::int64_t m;
        if (i % 2 == 0) {
            m = any(rng);
        } else {
            const std::int64_t r = root(rng);
            m = r * r + (i % 3) - 1;
            if (m < 0) m = 0;
        }
        const BigInt s = boost::multiprecision::sqrt(BigInt(m));
        const bool expected = s * s == BigInt(m);
        REQUIRE(is_perfect_square(m) == expected);
        REQUIRE(BigInt(isqrt(m)) == s);
    }
    CHECK(perfect_square_root(std::numeric_limits<std::int64_t>::max()) == std::nullopt);
    CHECK(perfect_square_root(3'037'000'499LL * 3'037'000'499LL) == 3'037'000'499LL);
    CHECK(perfect_square_root(0) == 0);
    CHECK_THROWS_AS(is_perfect_square(-4), InvalidArgument);
}

TEST_CASE("surd normalisation") {
    const auto s = QuadraticSurd::sqrt_of(12);
    CHECK(s.radicand() == 3);
    CHECK(s.surd_coefficient() == q(2));
    CHECK(QuadraticSurd::sqrt_of(49).is_rational());
    CHECK(QuadraticSurd::sqrt_of(49) == QuadraticSurd(7));
    CHECK(QuadraticSurd(q(1), q(1), 1) == QuadraticSurd(2));
    CHECK(QuadraticSurd(q(3), q(0), 5).is_rational());
    CHECK_THROWS_AS(QuadraticSurd::sqrt_of(-2), InvalidArgument);
}

TEST_CASE("surd arithmetic against 50-digit floats") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> num(-40, 40);
    std::uniform_int_distribution<std::int64_t> den(1, 12);
    std::uniform_int_distribution<std::int64_t> rad(2, 60);
    const Float50 tol("1e-40");
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t d = rad(rng);
        const QuadraticSurd x(q(num(rng), den(rng)), q(num(rng), den(rng)), d);
        const QuadraticSurd y(q(num(rng), den(rng)), q(num(rng), den(rng)), d);
        const Float50 vx = value_of(x);
        const Float50 vy = value_of(y);
        CHECK(abs(value_of(x + y) - (vx + vy)) < tol);
        CHECK(abs(value_of(x - y) - (vx - vy)) < tol);
        CHECK(abs(value_of(x * y) - vx * vy) < tol);
        if (y.sign() != 0) CHECK(abs(value_of(x / y) - vx / vy) < tol * (1 + abs(vx / vy)));
        CHECK((x < y) == (vx < vy));
        CHECK(x.sign() == (vx > 0 ? 1 : (vx < 0 ? -1 : 0)));
        CHECK(BigInt(x.floor()) == BigInt(floor(vx)));
        const Float50 norm = vx * value_of(x.conjugate());
        const Rational n = x.norm();
        CHECK(abs(norm - Float50(n.numerator()) / Float50(n.denominator())) < tol * 100);
        CHECK(std::abs(x.to_double() - static_cast<double>(vx)) <= 4e-15 * (1.0 + std::abs(static_cast<double>(vx))));
    }
    CHECK_THROWS_AS(QuadraticSurd::sqrt_of(2) + QuadraticSurd::sqrt_of(3), InvalidArgument);
    CHECK_THROWS_AS(QuadraticSurd(1) / QuadraticSurd(0), InvalidArgument);
    CHECK(QuadraticSurd::sqrt_of(2) * QuadraticSurd::sqrt_of(2) == QuadraticSurd(2));
}

TEST_CASE("continued fraction of the golden ratio gives Fibonacci ratios") {
    const QuadraticSurd phi(q(1, 2), q(1, 2), 5);
    const auto cf = continued_fraction_convergents(phi, 40);
    REQUIRE(cf.size() == 40);
    std::int64_t a = 1, b = 1;  // F_2, F_1
    for (const auto& c : cf) {
        CHECK(c.p == a);
        CHECK(c.q == b);
        const std::int64_t next = a + b;
        b = a;
        a = next;
    }
    for (const auto& t : continued_fraction_terms(phi, 20)) CHECK(t == 1);
}

TEST_CASE("continued fraction of sqrt 2 and sqrt 13") {
    const auto terms = continued_fraction_terms(QuadraticSurd::sqrt_of(2), 10);
    CHECK(terms.front() == 1);
    for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i] == 2);
    // sqrt 13 = [3; 1, 1, 1, 1, 6, ...]
    const auto t13 = continued_fraction_terms(QuadraticSurd::sqrt_of(13), 11);
    const std::vector<BigInt> expected = {3, 1, 1, 1, 1, 6, 1, 1, 1, 1, 6};
    CHECK(t13 == expected);
}

TEST_CASE("convergent properties for quadratic irrationals") {
    for (std::int64_t m : {2, 3, 5, 7, 13, 21, 24, 41, 97}) {
        const auto x = QuadraticSurd::sqrt_of(m);
        const auto cf = continued_fraction_convergents(x, 64);
        REQUIRE(cf.size() >= 10);
        const Float50 vx = value_of(x);
        for (std::size_t i = 0; i < cf.size(); ++i) {
            const Float50 err = abs(vx - Float50(cf[i].p) / Float50(cf[i].q));
            CHECK(err < 1 / (Float50(cf[i].q) * Float50(cf[i].q)));
            if (i > 0) {
                const BigInt det = BigInt(cf[i].p) * cf[i - 1].q - BigInt(cf[i - 1].p) * cf[i].q;
                CHECK(abs(det) == 1);
                // q_1 = a_1 may equal q_0 = 1; afterwards denominators grow strictly.
                CHECK(cf[i].q >= cf[i - 1].q);
                if (i > 1) CHECK(cf[i].q > cf[i - 1].q);
            }
        }
        // The double overload agrees on the leading convergents.
        const auto fl = continued_fraction_convergents(x.to_double(), 12);
        for (std::size_t i = 0; i < std::min<std::size_t>(fl.size(), 10); ++i) CHECK(fl[i] == cf[i]);
    }
}

TEST_CASE("rational continued fractions terminate") {
    const auto cf = continued_fraction_convergents(q(415, 93), 64);
    // 415/93 = [4; 2, 6, 7]
    REQUIRE(cf.size() == 4);
    CHECK(cf.back() == Convergent{415, 93});
    CHECK(cf[1] == Convergent{9, 2});
    CHECK(continued_fraction_convergents(0.75, 10).back() == Convergent{3, 4});
    CHECK_THROWS_AS(continued_fraction_convergents(q(1, 2), 0), InvalidArgument);
    CHECK_THROWS_AS(continued_fraction_convergents(q(1, 2), 65), InvalidArgument);
}

TEST_CASE("S_{k,k} parameters") {
    for (std::int64_t k = 1; k <= 10'000; ++k) {
        const auto [alpha, beta] = skk_parameters(k);
        // beta in (0, 1/2)
        REQUIRE(beta.sign() > 0);
        REQUIRE((beta < QuadraticSurd(q(1, 2))));
        if (k % 97 == 1) {
            // alpha^2 - alpha - k = 0 and beta = 1/4 - sqrt(delta) / (4 delta)
            CHECK(alpha * alpha - alpha == QuadraticSurd(k));
            const std::int64_t delta = 1 + 4 * k;
            const auto expected = QuadraticSurd(q(1, 4)) - QuadraticSurd::sqrt_of(delta) / QuadraticSurd(4 * delta);
            CHECK(beta == expected);
        }
    }
    CHECK(skk_parameters(2).alpha == QuadraticSurd(2));
    CHECK(skk_parameters(6).alpha == QuadraticSurd(3));
    CHECK_FALSE(skk_parameters(3).alpha.is_rational());
}

TEST_CASE("S_{2,l} discriminant") {
    CHECK(s2l_discriminant(2) == 9);
    CHECK(s2l_discriminant(5) == 24);
    CHECK(s2l_ratio_is_rational(2));
    for (std::int64_t l = 1; l <= 100'000; ++l) {
        if (l != 2) REQUIRE_FALSE(s2l_ratio_is_rational(l));
    }
    CHECK_THROWS_AS(s2l_discriminant(0), InvalidArgument);
}
