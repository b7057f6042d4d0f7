// SPDX-License-Identifier: Apache-2.0
//
// Shared builders and independent oracles for the test binaries. Oracles here
// recompute values from contract terms with 128-bit integers and never call
// the engine's valuation code.
#pragma once

#include "ctrade/instruments.hpp"
#include "ctrade/money.hpp"
#include "ctrade/parity.hpp"
#include "ctrade/payoff.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace ctrade;

inline const std::string kCur = "PHP";

inline Money php(std::int64_t major) { return Money::major(major, kCur); }
inline Money centavos(std::int64_t minor) { return Money(minor, kCur); }

inline Party X() { return Party{"X", InsiderRole::SecondaryInsider}; }
inline Party Y() { return Party{"Y", InsiderRole::NotInsider}; }

inline Date trade_date() { return Date(2015, 1, 4); }
inline Date maturity() { return Date(2016, 1, 4); }

/// X lends 100M at 5% to Y, holds a call written by Y and writes a put held
/// by Y, both on 1M ABC at 105.00 and cash-settled.
inline SynthesisParams abc_params() {
    SynthesisParams p;
    p.issuer = "ABC";
    p.quantity = 1'000'000;
    p.initial_price = php(100);
    p.rate = make_rate(1, 20);
    p.trade_date = trade_date();
    p.maturity = maturity();
    p.investor = X();
    p.dealer = Y();
    p.id_prefix = "";
    return p;
}

inline PriceScenario abc_scenario(std::int64_t terminal_major, std::string name = "") {
    return PriceScenario{std::move(name), "ABC", maturity(), php(100), php(terminal_major)};
}

inline Instrument stock(const std::string& id, const std::string& issuer, std::int64_t qty) {
    return Instrument{id, trade_date(), Stock{issuer, qty, Settlement::Physical}};
}

inline Instrument loan(const std::string& id, const Party& lender, const Party& borrower, Money principal,
                       Rate rate) {
    return Instrument{id, trade_date(), Loan{lender, borrower, std::move(principal), rate, maturity()}};
}

inline Instrument option(const std::string& id, OptionKind kind, const Party& holder, const Party& writer,
                         const std::string& issuer, std::int64_t qty, Money strike,
                         Settlement settlement = Settlement::CashNet) {
    Option o;
    o.kind = kind;
    o.style = ExerciseStyle::European;
    o.holder = holder;
    o.writer = writer;
    o.issuer = issuer;
    o.quantity = qty;
    o.strike_per_share = std::move(strike);
    o.exercise_date = maturity();
    o.premium = Money::zero(kCur);
    o.settlement = settlement;
    return Instrument{id, trade_date(), o};
}

inline Instrument forward(const std::string& id, const Party& buyer, const Party& seller, const std::string& issuer,
                          std::int64_t qty, Money price, Settlement settlement = Settlement::CashNet) {
    return Instrument{id, trade_date(), Forward{buyer, seller, issuer, qty, std::move(price), maturity(), settlement}};
}

inline Instrument swap(const std::string& id, const Party& equity, const Party& fixed, const std::string& issuer,
                       std::int64_t qty, Money reference, Money notional, Rate rate) {
    return Instrument{id, trade_date(),
                      Swap{equity, fixed, issuer, qty, std::move(reference), std::move(notional), rate, maturity()}};
}

// ---------------------------------------------------------------------------
// Independent oracle

/// rate * amount as an exact rational; `ok` false when not whole.
inline __int128 oracle_interest(std::int64_t principal_minor, std::int64_t num, std::int64_t den, bool& ok) {
    const __int128 product = static_cast<__int128>(principal_minor) * num;
    ok = product % den == 0;
    return product / den;
}

/// Terminal value to the owner of `pos` when the share price is `price` minor
/// units. Computed straight from the terms.
inline __int128 oracle_value(const Position& pos, std::int64_t price) {
    const Instrument& inst = pos.instrument;
    const __int128 s = price;
    __int128 value = 0;
    if (inst.is<Stock>()) {
        value = s * inst.as<Stock>().quantity;
    } else if (inst.is<Loan>()) {
        const Loan& l = inst.as<Loan>();
        bool ok = true;
        value = l.principal.minor_units() + oracle_interest(l.principal.minor_units(), l.rate.numerator(),
                                                            l.rate.denominator(), ok);
    } else if (inst.is<Option>()) {
        const Option& o = inst.as<Option>();
        const __int128 k = o.strike_per_share.minor_units();
        const __int128 diff = o.kind == OptionKind::Call ? s - k : k - s;
        value = diff > 0 ? diff * o.quantity : 0;
    } else if (inst.is<Forward>()) {
        const Forward& f = inst.as<Forward>();
        value = (s - f.delivery_price_per_share.minor_units()) * f.quantity;
    } else {
        const Swap& w = inst.as<Swap>();
        bool ok = true;
        value = (s - w.reference_price_per_share.minor_units()) * w.quantity -
                oracle_interest(w.notional.minor_units(), w.fixed_rate.numerator(), w.fixed_rate.denominator(), ok);
    }
    return pos.side == Side::Long ? value : -value;
}

inline __int128 oracle_value(const Portfolio& portfolio, std::int64_t price) {
    __int128 total = 0;
    for (const Position& p : portfolio.positions()) total += oracle_value(p, price);
    return total;
}

/// Largest price at which any position's payoff changes slope.
inline std::int64_t oracle_max_kink(const Portfolio& portfolio) {
    std::int64_t kink = 0;
    for (const Position& p : portfolio.positions()) {
        if (p.instrument.is<Option>()) kink = std::max(kink, p.instrument.as<Option>().strike_per_share.minor_units());
    }
    return kink;
}

// ---------------------------------------------------------------------------
// Random generation

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Rate n/d with d <= 100 such that rate * principal is whole. Picks the
/// principal as a multiple of d.
struct ExactLoanTerms {
    Money principal;
    Rate rate;
};

inline Rate random_rate(Rng& rng) {
    const std::int64_t den = uniform(rng, 1, 100);
    const std::int64_t num = uniform(rng, 0, den);
    return make_rate(num, den);
}

/// A rate with denominator <= 100 for which rate * base is exact; falls back
/// to zero if none is found, which never happens for base divisible by 1.
inline Rate exact_rate_for(Rng& rng, std::int64_t base_minor) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Rate r = random_rate(rng);
        if ((static_cast<__int128>(base_minor) * r.numerator()) % r.denominator() == 0) return r;
    }
    return make_rate(0, 1);
}

/// Random single-issuer portfolio of 1..max_size positions owned by "P".
/// Amounts are kept small enough that a full grid evaluation fits in int64.
inline Portfolio random_portfolio(Rng& rng, int max_size, const std::string& issuer = "ABC") {
    const Party owner{"P", InsiderRole::NotInsider};
    const Party other{"C", InsiderRole::NotInsider};
    Portfolio pf(owner);
    const int n = static_cast<int>(uniform(rng, 1, max_size));
    for (int i = 0; i < n; ++i) {
        const std::string id = "i" + std::to_string(i);
        const bool long_side = uniform(rng, 0, 1) == 1;
        const Party& a = long_side ? owner : other;
        const Party& b = long_side ? other : owner;
        const std::int64_t qty = uniform(rng, 1, 10'000);
        const Money price = centavos(uniform(rng, 1, 50'000));
        switch (uniform(rng, 0, 5)) {
        case 0:
            pf.add(make_stock_position(owner, stock(id, issuer, qty), long_side ? Side::Long : Side::Short));
            break;
        case 1: {
            const Money principal = centavos(uniform(rng, 1, 100'000'000));
            pf.add(loan(id, a, b, principal, exact_rate_for(rng, principal.minor_units())));
            break;
        }
        case 2: pf.add(option(id, OptionKind::Call, a, b, issuer, qty, price)); break;
        case 3: pf.add(option(id, OptionKind::Put, a, b, issuer, qty, price)); break;
        case 4: pf.add(forward(id, a, b, issuer, qty, price)); break;
        default: {
            const Money notional = price.times(qty);
            pf.add(swap(id, a, b, issuer, qty, price, notional, exact_rate_for(rng, notional.minor_units())));
            break;
        }
        }
    }
    return pf;
}

inline std::int64_t to_i64(__int128 v) { return static_cast<std::int64_t>(v); }

} // namespace fixtures
