// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ctrade {

/// Signed count of minor currency units (centavos for PHP). Arithmetic is
/// exact: mixing currencies or overflowing int64 throws, nothing rounds.
class Money {
public:
    static constexpr int kMinorDigits = 2;
    static constexpr std::int64_t kMinorPerMajor = 100;

    Money() = default;
    Money(std::int64_t minor_units, std::string currency)
        : minor_(minor_units), currency_(std::move(currency)) {}

    static Money zero(std::string currency) { return Money(0, std::move(currency)); }
    static Money major(std::int64_t whole_units, std::string currency);

    std::int64_t minor_units() const noexcept { return minor_; }
    const std::string& currency() const noexcept { return currency_; }

    bool is_zero() const noexcept { return minor_ == 0; }
    bool is_negative() const noexcept { return minor_ < 0; }
    bool is_positive() const noexcept { return minor_ > 0; }

    Money operator-() const;
    Money& operator+=(const Money& other);
    Money& operator-=(const Money& other);
    friend Money operator+(Money a, const Money& b) { return a += b; }
    friend Money operator-(Money a, const Money& b) { return a -= b; }

    /// Multiply by an integer count (shares). Price per share * quantity.
    Money times(std::int64_t count) const;

    friend bool operator==(const Money& a, const Money& b) = default;
    /// Ordering is only defined within one currency; throws otherwise.
    friend std::strong_ordering operator<=>(const Money& a, const Money& b);

private:
    std::int64_t minor_ = 0;
    std::string currency_;
};

Money max(const Money& a, const Money& b);
Money abs(const Money& m);

/// Exact parse of a plain decimal string ("100000000.00", "-45", "52.5").
/// Digits beyond the minor unit must be zero, so "100.005" is rejected.
Money parse_money(std::string_view text, const std::string& currency);

/// "-45000000.00": no separators. Used in structured output and files.
std::string to_decimal_string(const Money& m);

enum class NegativeStyle { Minus, Parentheses };

/// "150,000,000.00"; negatives as "-45,000,000.00" or "(45,000,000.00)".
std::string format_money(const Money& m, NegativeStyle style = NegativeStyle::Minus);
std::string format_minor(std::int64_t minor, NegativeStyle style = NegativeStyle::Minus);

/// Rational rate kept in lowest terms with a positive denominator.
class Rate {
public:
    Rate() = default;

    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_ == 0; }

    friend bool operator==(const Rate&, const Rate&) = default;

private:
    friend Rate make_rate(std::int64_t numerator, std::int64_t denominator);
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rate make_rate(std::int64_t numerator, std::int64_t denominator);

/// rate * amount with no rounding; throws ErrorCode::Exactness when the
/// product is not a whole number of minor units.
Money mul_exact(const Rate& rate, const Money& amount);

/// Accepts "1/20", "5%", "0.05", "2.5%".
Rate parse_rate(std::string_view text);
/// Canonical "n/d" form.
std::string to_string(const Rate& rate);

/// Calendar day. Opaque and ordered; no day counts are ever taken.
class Date {
public:
    Date() = default;
    Date(int year, unsigned month, unsigned day);

    int year() const noexcept { return static_cast<int>(ymd_.year()); }
    unsigned month() const noexcept { return static_cast<unsigned>(ymd_.month()); }
    unsigned day() const noexcept { return static_cast<unsigned>(ymd_.day()); }

    friend bool operator==(const Date&, const Date&) = default;
    friend auto operator<=>(const Date& a, const Date& b) { return a.ymd_ <=> b.ymd_; }

private:
    std::chrono::year_month_day ymd_{std::chrono::year{1970}, std::chrono::month{1},
                                     std::chrono::day{1}};
};

/// ISO "YYYY-MM-DD".
Date parse_date(std::string_view text);
std::string to_string(const Date& date);

} // namespace ctrade
