// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/instruments.hpp"
#include "ctrade/payoff.hpp"

#include <array>

namespace ctrade {

/// The security the constructive trade is measured against.
struct Reference {
    std::string issuer;
    Money initial_price;  // S0 per share
    std::int64_t quantity = 0;
};

struct Condition {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // offending values on failure
};

struct ConditionReport {
    std::array<Condition, 6> conditions;

    bool all_pass() const;
};

/// The six equalities under which stock + put = loan + call holds exactly:
///   1. equal strikes, 2. strike = principal + interest, 3. principal = S0 * qty,
///   4. same underlying and quantity, 5. both European, 6. exercise = maturity.
/// Failures are reported, never thrown.
ConditionReport check_parity_conditions(const Option& call, const Option& put, const Loan& loan,
                                        const Reference& reference);

struct SynthesisParams {
    std::string issuer;
    std::int64_t quantity = 0;
    Money initial_price;
    Rate rate;
    Date trade_date;
    Date maturity;
    Party investor;  // lends, holds the call, writes the put
    Party dealer;    // borrows, holds the shares and the put, writes the call
    std::string id_prefix;
};

/// Loan, call and put meeting every parity condition.
struct Construction {
    Instrument loan;
    Instrument call;
    Instrument put;
};

/// Strike per share = S0 * (1 + r); throws ErrorCode::Exactness if that is
/// not a whole number of minor units.
Construction build_construction(const SynthesisParams& params);

/// Investor side: lend S0 * qty, long call, short put. Pays qty * S_T.
Portfolio synthesize_long_stock(const SynthesisParams& params);
/// Dealer side: shares, long put, short call. Pays the loan's maturity value.
Portfolio synthesize_loan(const SynthesisParams& params);

/// Exact piecewise-linear terminal payoff as a function of the per-share
/// price S (minor units). slopes[i] holds on the segment ending at
/// breakpoints[i]; slopes.back() holds beyond the last breakpoint.
struct PayoffProfile {
    std::string currency;
    std::string issuer;  // empty when no position references an issuer
    std::vector<std::int64_t> breakpoints;
    std::vector<std::int64_t> slopes;  // shares; size() == breakpoints.size() + 1
    Money intercept;                   // value at S = 0

    Money value_at(const Money& price) const;
    bool uniform_slope() const;

    friend bool operator==(const PayoffProfile&, const PayoffProfile&) = default;
};

/// Profile of a portfolio with a single underlying issuer.
PayoffProfile payoff_profile(const Portfolio& portfolio, PayoffMode mode = PayoffMode::CashSettledOnly);
/// Profile of the positions on `issuer` plus every loan; other issuers are skipped.
PayoffProfile payoff_profile(const Portfolio& portfolio, const std::string& issuer, PayoffMode mode);
/// `quantity` shares held outright (negative for a short).
PayoffProfile share_profile(const std::string& issuer, std::int64_t quantity, const std::string& currency);

struct Equivalence {
    bool equivalent = false;
    std::optional<Money> witness;  // a price where the payoffs differ

    explicit operator bool() const { return equivalent; }
};

Equivalence compare_profiles(const PayoffProfile& a, const PayoffProfile& b);
Equivalence economic_equivalence(const Portfolio& a, const Portfolio& b);

struct TitleAudit {
    bool moves_title = false;
    std::vector<std::string> instruments;  // ids of title-moving positions
};

/// Stock holdings and physically settled derivatives move legal title;
/// cash-settled derivatives and loans do not.
TitleAudit title_transfer_audit(const Portfolio& portfolio);

enum class VerdictKind { ActualTrade, ConstructiveTrade, NoExposure };

struct DetectionVerdict {
    VerdictKind kind = VerdictKind::NoExposure;
    std::string issuer;
    std::int64_t quantity = 0;
    Side direction = Side::Long;
    PayoffProfile profile;
    std::optional<PayoffProfile> matched;  // the share profile matched, when any
    Money riskless_component;              // constant the profile carries on top of the shares
    TitleAudit audit;
    std::string evidence;
};

/// Classifies a portfolio's exposure to `issuer`. A profile that is an exact
/// share position plus a constant is an actual trade if title moves and a
/// constructive trade if it does not.
DetectionVerdict detect_constructive_trade(const Portfolio& portfolio, const std::string& issuer);

const char* to_string(VerdictKind k);

} // namespace ctrade
