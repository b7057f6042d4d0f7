// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/instruments.hpp"
#include "ctrade/payoff.hpp"

#include <map>
#include <span>

namespace ctrade {

/// Stages of a contract of sale. Entries only ever move forward, one stage
/// at a time.
enum class SettlementState { Negotiation, Perfection, Consummation };

struct Deliver {
    std::string issuer;
    std::int64_t quantity = 0;

    friend bool operator==(const Deliver&, const Deliver&) = default;
};

struct Pay {
    Money amount;

    friend bool operator==(const Pay&, const Pay&) = default;
};

using Obligation = std::variant<Deliver, Pay>;

/// How a consummated entry was extinguished.
enum class Discharge { Open, Compensated, Paid, Delivered };

struct SourceRef {
    std::string instrument_id;  // "set-off" for entries created by netting across contracts
    std::string leg;            // repayment, strike, delivery, net, equity_leg, fixed_leg
    Settlement settlement = Settlement::CashNet;

    friend bool operator==(const SourceRef&, const SourceRef&) = default;
};

struct LedgerEntry {
    Party debtor;
    Party creditor;
    Obligation obligation;
    SourceRef source;
    SettlementState state = SettlementState::Negotiation;
    Date due;
    Discharge discharge = Discharge::Open;

    bool is_pay() const { return std::holds_alternative<Pay>(obligation); }
    bool is_deliver() const { return std::holds_alternative<Deliver>(obligation); }
    bool is_open() const { return state != SettlementState::Consummation; }

    friend bool operator==(const LedgerEntry&, const LedgerEntry&) = default;
};

/// Moves `entry` to `target`; throws unless target is the immediate
/// successor of the current state.
void advance(LedgerEntry& entry, SettlementState target);

struct SettlementLedger {
    std::vector<LedgerEntry> entries;
    PriceScenario scenario;

    friend bool operator==(const SettlementLedger&, const SettlementLedger&) = default;
};

enum class ExerciseDecision { Exercise, Expire };

/// Exercise iff strictly in the money. Ties expire.
ExerciseDecision exercise_decision(const Option& option, const PriceScenario& scenario);

/// Ledger at the terminal date before any option is exercised. Loans,
/// forwards and swaps are already perfected; each option is a unilateral
/// promise still in negotiation.
SettlementLedger open_ledger(std::span<const Instrument> contracts, const PriceScenario& scenario);

/// Exercise perfects the sale: the writer's promise and the reciprocal
/// undertaking both enter Perfection. Expire leaves the ledger unchanged.
SettlementLedger perfect(const SettlementLedger& ledger, const Instrument& option, ExerciseDecision decision);

/// Drops an expired option's unaccepted offer from the ledger.
SettlementLedger lapse(const SettlementLedger& ledger, const Instrument& option);

/// Physical settlement: perfected deliveries of physically settled contracts
/// are performed by transfer of the shares.
SettlementLedger deliver_physically(const SettlementLedger& ledger);

/// Objective novation: every perfected Deliver{issuer, q} becomes
/// Pay{q * S_T}. Physically settled contracts refuse.
SettlementLedger novate_to_cash(const SettlementLedger& ledger);

enum class CompensationScope {
    PerContract,     // set off only obligations arising from the same contract
    AcrossContracts  // set off everything the pair owes each other
};

/// Set-off of mutual money debts between each pair of parties. Every open
/// entry must satisfy the money, due and demandable requisites; a share
/// delivery can never be compensated.
SettlementLedger legal_compensation(const SettlementLedger& ledger,
                                    CompensationScope scope = CompensationScope::AcrossContracts);

/// Payment of every remaining perfected money obligation.
SettlementLedger consummate(const SettlementLedger& ledger);

struct Holding {
    Party owner;
    std::string issuer;
    std::int64_t quantity = 0;
};

struct NetPosition {
    Party party;
    Money net_cash;
    std::map<std::string, std::int64_t> shares_held;
    bool title_transferred = false;

    /// Net cash plus shares marked at the scenario's terminal price.
    Money marked_value(const PriceScenario& scenario) const;
};

struct LedgerSnapshot {
    std::string stage;
    SettlementLedger ledger;
};

struct OptionDecision {
    std::string instrument_id;
    OptionKind kind = OptionKind::Call;
    ExerciseDecision decision = ExerciseDecision::Expire;
};

struct SettlementResult {
    PriceScenario scenario;
    std::vector<OptionDecision> decisions;
    std::vector<LedgerSnapshot> snapshots;
    std::vector<NetPosition> positions;  // sorted by party id

    const NetPosition& position_of(const std::string& party_id) const;
    const SettlementLedger& final_ledger() const { return snapshots.back().ledger; }
};

/// Full pipeline: exercise, perfection, lapse, physical delivery, novation,
/// per-contract then cross-contract compensation, payment.
SettlementResult settle(std::span<const Instrument> contracts, std::span<const Holding> holdings,
                        const PriceScenario& scenario);

/// Net positions implied by a fully consummated ledger and opening holdings.
std::vector<NetPosition> net_positions(const SettlementLedger& ledger, std::span<const Holding> holdings);

const char* to_string(SettlementState s);
const char* to_string(ExerciseDecision d);
const char* to_string(Discharge d);

} // namespace ctrade
