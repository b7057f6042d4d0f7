// SPDX-License-Identifier: Apache-2.0
#include "ctrade/error.hpp"
#include "ctrade/money.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace ctrade;
using fixtures::centavos;
using fixtures::php;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an engine error");
    return ErrorCode::Argument;
}

// Divisor search, independent of the engine's gcd.
std::int64_t brute_gcd(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    if (a == 0) return b == 0 ? 1 : b;
    if (b == 0) return a;
    for (std::int64_t d = std::min(a, b); d > 1; --d) {
        if (a % d == 0 && b % d == 0) return d;
    }
    return 1;
}

} // namespace

TEST_CASE("money arithmetic is exact and currency checked") {
    CHECK(php(105) - php(100) == php(5));
    CHECK(php(100).times(1'000'000) == php(100'000'000));
    CHECK((-php(45)).is_negative());
    CHECK(max(php(-3), Money::zero("PHP")) == Money::zero("PHP"));
    CHECK(abs(php(-7)) == php(7));
    CHECK(code_of([] { (void)(php(1) + Money::major(1, "USD")); }) == ErrorCode::CurrencyMismatch);
    CHECK(code_of([] { (void)(php(1) < Money::major(1, "USD")); }) == ErrorCode::CurrencyMismatch);
}

TEST_CASE("overflow is reported, never wrapped") {
    const Money big(std::numeric_limits<std::int64_t>::max(), "PHP");
    CHECK(code_of([&] { (void)(big + centavos(1)); }) == ErrorCode::Overflow);
    CHECK(code_of([&] { (void)big.times(2); }) == ErrorCode::Overflow);
    CHECK(code_of([] { (void)Money::major(std::numeric_limits<std::int64_t>::max() / 10, "PHP"); }) ==
          ErrorCode::Overflow);
}

TEST_CASE("decimal parsing is exact") {
    CHECK(parse_money("100000000.00", "PHP") == php(100'000'000));
    CHECK(parse_money("52.5", "PHP") == centavos(5250));
    CHECK(parse_money("-45", "PHP") == php(-45));
    CHECK(parse_money("0.070", "PHP") == centavos(7));
    CHECK(code_of([] { (void)parse_money("100.005", "PHP"); }) == ErrorCode::Exactness);
    for (const char* bad : {"", "-", "1.2.3", "1,000.00", "abc", " 1", "1e5", "."}) {
        CAPTURE(bad);
        CHECK(code_of([&] { (void)parse_money(bad, "PHP"); }) == ErrorCode::Parse);
    }
}

TEST_CASE("money formatting") {
    CHECK(format_money(php(150'000'000)) == "150,000,000.00");
    CHECK(format_money(php(-45'000'000), NegativeStyle::Parentheses) == "(45,000,000.00)");
    CHECK(format_money(php(-45'000'000)) == "-45,000,000.00");
    CHECK(format_money(centavos(5)) == "0.05");
    CHECK(format_money(centavos(-5)) == "-0.05");
    CHECK(format_money(php(999)) == "999.00");
    CHECK(format_money(php(1000)) == "1,000.00");
    CHECK(to_decimal_string(php(-45'000'000)) == "-45000000.00");
    CHECK(format_minor(std::numeric_limits<std::int64_t>::min()) == "-92,233,720,368,547,758.08");
}

TEST_CASE("formatting round-trips through the parser") {
    fixtures::Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Money m = centavos(fixtures::uniform(rng, -10'000'000'000'000LL, 10'000'000'000'000LL));
        CHECK(parse_money(to_decimal_string(m), "PHP") == m);
    }
}

TEST_CASE("rates normalize to lowest terms") {
    for (std::int64_t n = -30; n <= 30; ++n) {
        for (std::int64_t d = -30; d <= 30; ++d) {
            if (d == 0) continue;
            const Rate r = make_rate(n, d);
            const std::int64_t g = brute_gcd(n, d);
            const std::int64_t sign = d < 0 ? -1 : 1;
            CHECK(r.numerator() == sign * n / g);
            CHECK(r.denominator() == sign * d / g);
        }
    }
    CHECK(code_of([] { (void)make_rate(1, 0); }) == ErrorCode::Argument);
}

TEST_CASE("rate parsing") {
    CHECK(parse_rate("1/20") == make_rate(1, 20));
    CHECK(parse_rate("5%") == make_rate(1, 20));
    CHECK(parse_rate("0.05") == make_rate(1, 20));
    CHECK(parse_rate("2.5%") == make_rate(1, 40));
    CHECK(parse_rate("0") == make_rate(0, 1));
    CHECK(to_string(make_rate(10, 200)) == "1/20");
    CHECK(code_of([] { (void)parse_rate("1/0"); }) != ErrorCode::Validation);
    CHECK(code_of([] { (void)parse_rate("five"); }) == ErrorCode::Parse);
}

TEST_CASE("mul_exact matches a rational oracle") {
    CHECK(mul_exact(make_rate(1, 20), php(100'000'000)) == php(5'000'000));
    CHECK(code_of([] { (void)mul_exact(make_rate(1, 3), centavos(100)); }) == ErrorCode::Exactness);
    fixtures::Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        const std::int64_t p = fixtures::uniform(rng, -1'000'000'000, 1'000'000'000);
        const std::int64_t d = fixtures::uniform(rng, 1, 100);
        const std::int64_t n = fixtures::uniform(rng, -d, d);
        bool whole = true;
        const __int128 expected = fixtures::oracle_interest(p, n, d, whole);
        if (whole) {
            CHECK(mul_exact(make_rate(n, d), centavos(p)).minor_units() == fixtures::to_i64(expected));
        } else {
            CHECK(code_of([&] { (void)mul_exact(make_rate(n, d), centavos(p)); }) == ErrorCode::Exactness);
        }
    }
}

TEST_CASE("addition is associative and commutative") {
    fixtures::Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Money a = centavos(fixtures::uniform(rng, -1'000'000'000'000, 1'000'000'000'000));
        const Money b = centavos(fixtures::uniform(rng, -1'000'000'000'000, 1'000'000'000'000));
        const Money c = centavos(fixtures::uniform(rng, -1'000'000'000'000, 1'000'000'000'000));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a - a == Money::zero("PHP"));
    }
}

TEST_CASE("dates") {
    CHECK(to_string(parse_date("2016-01-04")) == "2016-01-04");
    CHECK(Date(2015, 1, 4) < Date(2016, 1, 4));
    CHECK(to_string(parse_date("2016-02-29")) == "2016-02-29");
    for (const char* bad : {"2015-02-29", "2016-13-01", "2016-1-4", "20160104", "", "2016-01-04T00"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)parse_date(bad), Error);
    }
}
