// SPDX-License-Identifier: Apache-2.0
#include "ctrade/parity.hpp"

#include "ctrade/error.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace ctrade {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string money_text(const Money& m) { return format_money(m); }

std::string share_count_text(std::int64_t n) {
    std::string s = format_minor(n * Money::kMinorPerMajor);
    return s.substr(0, s.size() - 3);
}

std::int64_t narrow(__int128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorCode::Overflow, "payoff profile value overflows 64-bit minor units");
    }
    return static_cast<std::int64_t>(v);
}

// Accumulates one portfolio's hinge functions before they are folded into
// segment slopes.
struct ProfileBuilder {
    std::string currency;
    std::string issuer;
    __int128 intercept = 0;
    std::int64_t initial_slope = 0;
    std::map<std::int64_t, std::int64_t> kinks;  // price -> slope change

    void uses_issuer(const std::string& name) {
        if (issuer.empty()) {
            issuer = name;
        } else if (issuer != name) {
            throw Error(ErrorCode::Unsupported, "payoff profile needs a single underlying, found '" +
                                                    issuer + "' and '" + name + "'");
        }
    }

    void add(const Position& p, PayoffMode mode) {
        const int sign = p.side == Side::Long ? 1 : -1;
        const Instrument& inst = p.instrument;
        std::visit(
            overloaded{
                [&](const Stock& s) {
                    uses_issuer(s.issuer);
                    initial_slope += sign * s.quantity;
                },
                [&](const Loan& l) { intercept += sign * static_cast<__int128>(loan_maturity_value(l).minor_units()); },
                [&](const Option& o) {
                    if (o.style != ExerciseStyle::European) {
                        throw Error(ErrorCode::Unsupported, "American option '" + inst.id + "' has no terminal profile");
                    }
                    if (o.settlement == Settlement::Physical && mode == PayoffMode::CashSettledOnly) {
                        throw Error(ErrorCode::Unsupported, "physically settled option '" + inst.id +
                                                                "' has no cash payoff profile");
                    }
                    uses_issuer(o.issuer);
                    const std::int64_t k = o.strike_per_share.minor_units();
                    kinks[k] += sign * o.quantity;
                    if (o.kind == OptionKind::Put) {
                        intercept += sign * static_cast<__int128>(k) * o.quantity;
                        initial_slope -= sign * o.quantity;
                    }
                },
                [&](const Forward& f) {
                    if (f.settlement == Settlement::Physical && mode == PayoffMode::CashSettledOnly) {
                        throw Error(ErrorCode::Unsupported, "physically settled forward '" + inst.id +
                                                                "' has no cash payoff profile");
                    }
                    uses_issuer(f.issuer);
                    const std::int64_t price = f.delivery_price_per_share.minor_units();
                    kinks.try_emplace(price, 0);
                    intercept -= sign * static_cast<__int128>(price) * f.quantity;
                    initial_slope += sign * f.quantity;
                },
                [&](const Swap& s) {
                    uses_issuer(s.issuer);
                    const Money fixed = mul_exact(s.fixed_rate, s.notional);
                    intercept -= sign * (static_cast<__int128>(s.reference_price_per_share.minor_units()) * s.quantity +
                                         fixed.minor_units());
                    initial_slope += sign * s.quantity;
                },
            },
            inst.terms);
    }

    PayoffProfile finish() const {
        PayoffProfile out;
        out.currency = currency;
        out.issuer = issuer;
        out.intercept = Money(narrow(intercept), currency);
        std::int64_t slope = initial_slope;
        out.slopes.push_back(slope);
        for (const auto& [price, delta] : kinks) {
            out.breakpoints.push_back(price);
            slope += delta;
            out.slopes.push_back(slope);
        }
        return out;
    }
};

Option make_option(OptionKind kind, const Party& holder, const Party& writer, const SynthesisParams& p,
                   const Money& strike) {
    Option o;
    o.kind = kind;
    o.style = ExerciseStyle::European;
    o.holder = holder;
    o.writer = writer;
    o.issuer = p.issuer;
    o.quantity = p.quantity;
    o.strike_per_share = strike;
    o.exercise_date = p.maturity;
    o.premium = Money::zero(strike.currency());
    o.settlement = Settlement::CashNet;
    return o;
}

} // namespace

bool ConditionReport::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
}

ConditionReport check_parity_conditions(const Option& call, const Option& put, const Loan& loan,
                                        const Reference& reference) {
    ConditionReport r;
    auto set = [&](int n, const char* name, bool pass, std::string detail) {
        r.conditions[n - 1] = Condition{n, name, pass, pass ? std::string{} : std::move(detail)};
    };

    const bool kinds_ok = call.kind == OptionKind::Call && put.kind == OptionKind::Put;
    const bool currencies_ok = call.strike_per_share.currency() == put.strike_per_share.currency() &&
                               call.strike_per_share.currency() == loan.principal.currency() &&
                               reference.initial_price.currency() == loan.principal.currency();
    if (!currencies_ok) {
        for (int n = 1; n <= 6; ++n) set(n, "currency", false, "instruments use different currencies");
        r.conditions[0].name = "strike_call_equals_strike_put";
        r.conditions[1].name = "strike_equals_principal_plus_interest";
        r.conditions[2].name = "principal_equals_initial_value";
        r.conditions[3].name = "same_underlying_and_quantity";
        r.conditions[4].name = "both_european";
        r.conditions[5].name = "exercise_dates_equal_maturity";
        return r;
    }

    set(1, "strike_call_equals_strike_put", kinds_ok && call.strike_per_share == put.strike_per_share,
        kinds_ok ? "call strike " + money_text(call.strike_per_share) + " vs put strike " +
                       money_text(put.strike_per_share)
                 : "expected one call and one put");

    std::string interest_detail;
    bool strike_matches_loan = false;
    try {
        const Money due = loan_maturity_value(loan);
        strike_matches_loan = call.total_strike() == due && put.total_strike() == due;
        interest_detail = "call total " + money_text(call.total_strike()) + ", put total " +
                          money_text(put.total_strike()) + " vs principal + interest " + money_text(due);
    } catch (const Error& e) {
        interest_detail = e.what();
    }
    set(2, "strike_equals_principal_plus_interest", strike_matches_loan, interest_detail);

    std::string initial_detail;
    bool principal_ok = false;
    try {
        const Money value = reference.initial_price.times(reference.quantity);
        principal_ok = loan.principal == value;
        initial_detail = "principal " + money_text(loan.principal) + " vs S0 x qty " + money_text(value);
    } catch (const Error& e) {
        initial_detail = e.what();
    }
    set(3, "principal_equals_initial_value", principal_ok, initial_detail);

    const bool same_asset = call.issuer == reference.issuer && put.issuer == reference.issuer &&
                            call.quantity == reference.quantity && put.quantity == reference.quantity;
    set(4, "same_underlying_and_quantity", same_asset,
        "call " + std::to_string(call.quantity) + " " + call.issuer + ", put " + std::to_string(put.quantity) +
            " " + put.issuer + ", reference " + std::to_string(reference.quantity) + " " + reference.issuer);

    set(5, "both_european",
        call.style == ExerciseStyle::European && put.style == ExerciseStyle::European,
        std::string("call ") + to_string(call.style) + ", put " + to_string(put.style));

    set(6, "exercise_dates_equal_maturity",
        call.exercise_date == loan.maturity && put.exercise_date == loan.maturity,
        "call " + to_string(call.exercise_date) + ", put " + to_string(put.exercise_date) + ", maturity " +
            to_string(loan.maturity));
    return r;
}

Construction build_construction(const SynthesisParams& p) {
    if (p.quantity <= 0) {
        throw Error(ErrorCode::Argument, "quantity must be positive, got " + std::to_string(p.quantity));
    }
    const std::string& cur = p.initial_price.currency();
    Loan loan{p.investor, p.dealer, p.initial_price.times(p.quantity), p.rate, p.maturity};
    const Money due = loan_maturity_value(loan);
    if (due.minor_units() % p.quantity != 0) {
        throw Error(ErrorCode::Exactness, "strike " + money_text(due) + " over " + std::to_string(p.quantity) +
                                              " shares is not a whole number of minor units per share");
    }
    const Money strike(due.minor_units() / p.quantity, cur);
    const std::string prefix = p.id_prefix.empty() ? "" : p.id_prefix + "-";
    Construction c{
        Instrument{prefix + "loan", p.trade_date, loan},
        Instrument{prefix + "call", p.trade_date, make_option(OptionKind::Call, p.investor, p.dealer, p, strike)},
        Instrument{prefix + "put", p.trade_date, make_option(OptionKind::Put, p.dealer, p.investor, p, strike)},
    };
    validate_contract(c.loan);
    validate_contract(c.call);
    validate_contract(c.put);
    return c;
}

Portfolio synthesize_long_stock(const SynthesisParams& params) {
    const Construction c = build_construction(params);
    Portfolio out(params.investor);
    out.add(c.loan);
    out.add(c.call);
    out.add(c.put);
    return out;
}

Portfolio synthesize_loan(const SynthesisParams& params) {
    const Construction c = build_construction(params);
    const std::string prefix = params.id_prefix.empty() ? "" : params.id_prefix + "-";
    Instrument shares{prefix + "shares", params.trade_date, Stock{params.issuer, params.quantity}};
    Portfolio out(params.dealer);
    out.add(make_stock_position(params.dealer, shares));
    out.add(c.put);
    out.add(c.call);
    return out;
}

Money PayoffProfile::value_at(const Money& price) const {
    if (!currency.empty() && price.currency() != currency) {
        throw Error(ErrorCode::CurrencyMismatch, "price in " + price.currency() + ", profile in " + currency);
    }
    const std::int64_t s = price.minor_units();
    __int128 v = intercept.minor_units();
    std::int64_t prev = 0;
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (s <= breakpoints[i]) return Money(narrow(v + static_cast<__int128>(slopes[i]) * (s - prev)), price.currency());
        v += static_cast<__int128>(slopes[i]) * (breakpoints[i] - prev);
        prev = breakpoints[i];
    }
    return Money(narrow(v + static_cast<__int128>(slopes.back()) * (s - prev)), price.currency());
}

bool PayoffProfile::uniform_slope() const {
    return std::adjacent_find(slopes.begin(), slopes.end(), std::not_equal_to<>()) == slopes.end();
}

PayoffProfile payoff_profile(const Portfolio& portfolio, PayoffMode mode) {
    ProfileBuilder b;
    b.currency = "";
    for (const auto& p : portfolio.positions()) {
        if (b.currency.empty()) {
            std::visit(overloaded{
                           [&](const Stock&) {},
                           [&](const Loan& l) { b.currency = l.principal.currency(); },
                           [&](const Option& o) { b.currency = o.strike_per_share.currency(); },
                           [&](const Forward& f) { b.currency = f.delivery_price_per_share.currency(); },
                           [&](const Swap& s) { b.currency = s.notional.currency(); },
                       },
                       p.instrument.terms);
        }
        b.add(p, mode);
    }
    // A stock-only profile has no currency of its own; it adopts the price's.
    return b.finish();
}

PayoffProfile payoff_profile(const Portfolio& portfolio, const std::string& issuer, PayoffMode mode) {
    Portfolio relevant(portfolio.owner());
    for (const auto& p : portfolio.positions()) {
        const auto underlying = p.instrument.issuer();
        if (!underlying || *underlying == issuer) relevant.add(p);
    }
    PayoffProfile out = payoff_profile(relevant, mode);
    out.issuer = issuer;
    return out;
}

PayoffProfile share_profile(const std::string& issuer, std::int64_t quantity, const std::string& currency) {
    PayoffProfile out;
    out.currency = currency;
    out.issuer = issuer;
    out.slopes = {quantity};
    out.intercept = Money::zero(currency);
    return out;
}

Equivalence compare_profiles(const PayoffProfile& a, const PayoffProfile& b) {
    if (!a.issuer.empty() && !b.issuer.empty() && a.issuer != b.issuer) {
        throw Error(ErrorCode::Argument, "profiles on different underlyings '" + a.issuer + "' and '" +
                                             b.issuer + "' cannot be compared");
    }
    if (!a.currency.empty() && !b.currency.empty() && a.currency != b.currency) {
        throw Error(ErrorCode::CurrencyMismatch, "profiles in " + a.currency + " and " + b.currency);
    }
    const std::string& currency = a.currency.empty() ? b.currency : a.currency;
    std::vector<std::int64_t> points{0};
    std::merge(a.breakpoints.begin(), a.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end(),
               std::back_inserter(points));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (std::int64_t s : points) {
        const Money price(s, currency);
        if (a.value_at(price) != b.value_at(price)) return Equivalence{false, price};
    }
    // Equal at every kink of either: they can only differ beyond the last one.
    if (a.slopes.back() != b.slopes.back()) {
        return Equivalence{false, Money(points.back() + Money::kMinorPerMajor, currency)};
    }
    return Equivalence{true, std::nullopt};
}

Equivalence economic_equivalence(const Portfolio& a, const Portfolio& b) {
    return compare_profiles(payoff_profile(a), payoff_profile(b));
}

TitleAudit title_transfer_audit(const Portfolio& portfolio) {
    TitleAudit audit;
    for (const auto& p : portfolio.positions()) {
        const Instrument& inst = p.instrument;
        const bool moves = inst.is<Stock>() ||
                           ((inst.is<Option>() || inst.is<Forward>()) && inst.settlement() == Settlement::Physical);
        if (moves) {
            audit.moves_title = true;
            audit.instruments.push_back(inst.id);
        }
    }
    return audit;
}

DetectionVerdict detect_constructive_trade(const Portfolio& portfolio, const std::string& issuer) {
    DetectionVerdict v;
    v.issuer = issuer;
    v.profile = payoff_profile(portfolio, issuer, PayoffMode::Economic);
    v.riskless_component = v.profile.intercept;

    Portfolio relevant(portfolio.owner());
    for (const auto& p : portfolio.positions()) {
        const auto underlying = p.instrument.issuer();
        if (underlying && *underlying == issuer) relevant.add(p);
    }
    v.audit = title_transfer_audit(relevant);

    const auto& slopes = v.profile.slopes;
    if (std::all_of(slopes.begin(), slopes.end(), [](std::int64_t s) { return s == 0; })) {
        v.kind = VerdictKind::NoExposure;
        v.evidence = "payoff does not depend on the price of " + issuer;
        return v;
    }
    if (!v.profile.uniform_slope()) {
        v.kind = VerdictKind::NoExposure;
        v.evidence = "payoff is non-linear in the price of " + issuer + " and matches no share position";
        return v;
    }

    const std::int64_t shares = slopes.front();
    v.quantity = shares > 0 ? shares : -shares;
    v.direction = shares > 0 ? Side::Long : Side::Short;
    PayoffProfile reference = share_profile(issuer, shares, v.profile.currency);
    // Shift the reference by the riskless constant; what is left must match exactly.
    reference.intercept = v.profile.intercept;
    const Equivalence eq = compare_profiles(v.profile, reference);
    if (!eq.equivalent) {
        v.kind = VerdictKind::NoExposure;
        v.evidence = "profile diverges from the share position at " + money_text(*eq.witness);
        return v;
    }
    v.matched = share_profile(issuer, shares, v.profile.currency);
    if (v.audit.moves_title) {
        v.kind = VerdictKind::ActualTrade;
        v.evidence = "title moves through " + std::to_string(v.audit.instruments.size()) + " position(s)";
    } else {
        v.kind = VerdictKind::ConstructiveTrade;
        v.evidence = "payoff equals " + share_count_text(shares) + " shares of " + issuer +
                     " plus a riskless " + money_text(v.profile.intercept) + " with no transfer of title";
    }
    return v;
}

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::ActualTrade: return "ActualTrade";
    case VerdictKind::ConstructiveTrade: return "ConstructiveTrade";
    case VerdictKind::NoExposure: return "NoExposure";
    }
    return "?";
}

} // namespace ctrade
