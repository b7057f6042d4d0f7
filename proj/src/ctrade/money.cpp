// SPDX-License-Identifier: Apache-2.0
#include "ctrade/money.hpp"

#include "ctrade/error.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <numeric>

namespace ctrade {

namespace {

void require_same_currency(const Money& a, const Money& b) {
    if (a.currency() != b.currency()) {
        throw Error(ErrorCode::CurrencyMismatch,
                    "cannot combine " + a.currency() + " with " + b.currency());
    }
}

std::int64_t checked(__int128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::Overflow, std::string(what) + " overflows 64-bit minor units");
    }
    return static_cast<std::int64_t>(v);
}

// Parses an unsigned decimal with an optional fraction into value * 10^scale.
// Returns false if the fraction has more nonzero digits than `scale`.
// On failure `kind` is Exactness for surplus nonzero decimals, else Parse or Overflow.
bool parse_scaled(std::string_view text, int scale, __int128& out, std::string& why, ErrorCode& kind) {
    kind = ErrorCode::Parse;
    if (text.empty()) {
        why = "empty number";
        return false;
    }
    __int128 value = 0;
    int frac_digits = -1;
    bool any_digit = false;
    for (char c : text) {
        if (c == '.') {
            if (frac_digits >= 0) {
                why = "more than one decimal point";
                return false;
            }
            frac_digits = 0;
            continue;
        }
        if (c < '0' || c > '9') {
            why = std::string("unexpected character '") + c + "'";
            return false;
        }
        any_digit = true;
        int digit = c - '0';
        if (frac_digits >= 0) {
            if (frac_digits >= scale) {
                if (digit != 0) {
                    why = "more than " + std::to_string(scale) + " decimal places";
                    kind = ErrorCode::Exactness;
                    return false;
                }
                continue;
            }
            ++frac_digits;
        }
        value = value * 10 + digit;
        if (value > (static_cast<__int128>(1) << 100)) {
            why = "number too large";
            kind = ErrorCode::Overflow;
            return false;
        }
    }
    if (!any_digit) {
        why = "no digits";
        return false;
    }
    for (int i = frac_digits < 0 ? 0 : frac_digits; i < scale; ++i) value *= 10;
    out = value;
    return true;
}

} // namespace

Money Money::major(std::int64_t whole_units, std::string currency) {
    return Money(checked(static_cast<__int128>(whole_units) * kMinorPerMajor, "amount"),
                 std::move(currency));
}

Money Money::operator-() const {
    return Money(checked(-static_cast<__int128>(minor_), "negation"), currency_);
}

Money& Money::operator+=(const Money& other) {
    require_same_currency(*this, other);
    minor_ = checked(static_cast<__int128>(minor_) + other.minor_, "addition");
    return *this;
}

Money& Money::operator-=(const Money& other) {
    require_same_currency(*this, other);
    minor_ = checked(static_cast<__int128>(minor_) - other.minor_, "subtraction");
    return *this;
}

Money Money::times(std::int64_t count) const {
    return Money(checked(static_cast<__int128>(minor_) * count, "multiplication"), currency_);
}

std::strong_ordering operator<=>(const Money& a, const Money& b) {
    require_same_currency(a, b);
    return a.minor_ <=> b.minor_;
}

Money max(const Money& a, const Money& b) { return a < b ? b : a; }

Money abs(const Money& m) { return m.is_negative() ? -m : m; }

Money parse_money(std::string_view text, const std::string& currency) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    __int128 value = 0;
    std::string why;
    ErrorCode kind = ErrorCode::Parse;
    if (!parse_scaled(body, Money::kMinorDigits, value, why, kind)) {
        throw Error(kind, "amount \"" + std::string(text) + "\" is not " +
                              (kind == ErrorCode::Exactness ? "an exact " : "a valid ") + currency +
                              " amount: " + why);
    }
    return Money(checked(negative ? -value : value, "amount"), currency);
}

std::string format_minor(std::int64_t minor, NegativeStyle style) {
    const bool negative = minor < 0;
    const unsigned __int128 magnitude =
        negative ? static_cast<unsigned __int128>(-static_cast<__int128>(minor))
                 : static_cast<unsigned __int128>(minor);
    const auto whole = static_cast<unsigned long long>(magnitude / Money::kMinorPerMajor);
    const auto frac = static_cast<unsigned>(magnitude % Money::kMinorPerMajor);

    std::string digits = std::to_string(whole);
    std::string grouped;
    grouped.reserve(digits.size() + digits.size() / 3);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (digits.size() - i) % 3 == 0) grouped += ',';
        grouped += digits[i];
    }
    char tail[8];
    std::snprintf(tail, sizeof tail, ".%02u", frac);
    grouped += tail;
    if (!negative) return grouped;
    return style == NegativeStyle::Parentheses ? "(" + grouped + ")" : "-" + grouped;
}

std::string format_money(const Money& m, NegativeStyle style) {
    return format_minor(m.minor_units(), style);
}

std::string to_decimal_string(const Money& m) {
    std::string s = format_money(m);
    std::erase(s, ',');
    return s;
}

Rate make_rate(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) throw Error(ErrorCode::Argument, "rate denominator must not be zero");
    if (denominator < 0) {
        numerator = checked(-static_cast<__int128>(numerator), "rate");
        denominator = checked(-static_cast<__int128>(denominator), "rate");
    }
    Rate r;
    if (numerator == 0) return r;
    const std::int64_t g = std::gcd(numerator, denominator);
    r.num_ = numerator / g;
    r.den_ = denominator / g;
    return r;
}

Money mul_exact(const Rate& rate, const Money& amount) {
    const __int128 product = static_cast<__int128>(rate.numerator()) * amount.minor_units();
    if (product % rate.denominator() != 0) {
        throw Error(ErrorCode::Exactness,
                    to_string(rate) + " of " + to_decimal_string(amount) + " " +
                        amount.currency() + " is not a whole number of minor units");
    }
    return Money(checked(product / rate.denominator(), "rate product"), amount.currency());
}

Rate parse_rate(std::string_view text) {
    auto fail = [&](const std::string& why) -> Rate {
        throw Error(ErrorCode::Parse, "invalid rate \"" + std::string(text) + "\": " + why);
    };
    if (text.empty()) return fail("empty");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t n = 0;
        std::int64_t d = 0;
        auto a = text.substr(0, slash);
        auto b = text.substr(slash + 1);
        auto ra = std::from_chars(a.data(), a.data() + a.size(), n);
        auto rb = std::from_chars(b.data(), b.data() + b.size(), d);
        if (ra.ec != std::errc{} || ra.ptr != a.data() + a.size() || rb.ec != std::errc{} ||
            rb.ptr != b.data() + b.size()) {
            return fail("expected n/d");
        }
        if (d == 0) return fail("zero denominator");
        return make_rate(n, d);
    }
    std::string_view body = text;
    std::int64_t extra_den = 1;
    if (body.back() == '%') {
        body.remove_suffix(1);
        extra_den = 100;
    }
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    constexpr int kScale = 12;
    __int128 value = 0;
    std::string why;
    ErrorCode kind = ErrorCode::Parse;
    if (!parse_scaled(body, kScale, value, why, kind)) return fail(why);
    __int128 den = extra_den;
    for (int i = 0; i < kScale; ++i) den *= 10;
    __int128 a = value;
    __int128 b = den;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) return make_rate(0, 1);
    const std::int64_t n = checked(value / a, "rate");
    const std::int64_t d = checked(den / a, "rate");
    return make_rate(negative ? -n : n, d);
}

std::string to_string(const Rate& rate) {
    return std::to_string(rate.numerator()) + "/" + std::to_string(rate.denominator());
}

Date::Date(int year, unsigned month, unsigned day)
    : ymd_(std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}) {
    if (!ymd_.ok()) {
        throw Error(ErrorCode::Parse, "invalid calendar date " + std::to_string(year) + "-" +
                                          std::to_string(month) + "-" + std::to_string(day));
    }
}

Date parse_date(std::string_view text) {
    auto bad = [&]() -> Date {
        throw Error(ErrorCode::Parse, "invalid date \"" + std::string(text) + "\", expected YYYY-MM-DD");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return bad();
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto num = [&](std::size_t pos, std::size_t len, auto& out) {
        auto r = std::from_chars(text.data() + pos, text.data() + pos + len, out);
        return r.ec == std::errc{} && r.ptr == text.data() + pos + len;
    };
    if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return bad();
    return Date(y, m, d);
}

std::string to_string(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", date.year(), date.month(), date.day());
    return buf;
}

} // namespace ctrade
