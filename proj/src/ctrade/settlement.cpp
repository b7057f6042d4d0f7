// SPDX-License-Identifier: Apache-2.0
#include "ctrade/settlement.hpp"

#include "ctrade/error.hpp"

#include <algorithm>
#include <tuple>

namespace ctrade {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

const Option& option_terms(const Instrument& instrument) {
    if (!instrument.is<Option>()) {
        throw Error(ErrorCode::Argument, "'" + instrument.id + "' is not an option");
    }
    return instrument.as<Option>();
}

LedgerEntry entry(const Party& debtor, const Party& creditor, Obligation what, SourceRef source,
                  SettlementState state, const Date& due) {
    return LedgerEntry{debtor, creditor, std::move(what), std::move(source), state, due, Discharge::Open};
}

const Money& pay_amount(const LedgerEntry& e) { return std::get<Pay>(e.obligation).amount; }

std::string describe(const LedgerEntry& e) {
    return e.debtor.id + " -> " + e.creditor.id + " (" + e.source.instrument_id + "/" + e.source.leg + ")";
}

} // namespace

void advance(LedgerEntry& entry, SettlementState target) {
    const int from = static_cast<int>(entry.state);
    const int to = static_cast<int>(target);
    if (to != from + 1) {
        throw Error(ErrorCode::Settlement, std::string("illegal settlement transition ") +
                                               to_string(entry.state) + " -> " + to_string(target) +
                                               " for " + describe(entry));
    }
    entry.state = target;
}

ExerciseDecision exercise_decision(const Option& option, const PriceScenario& scenario) {
    if (option.style != ExerciseStyle::European) {
        throw Error(ErrorCode::Unsupported, "only European options are settleable");
    }
    if (scenario.terminal_date != option.exercise_date) {
        throw Error(ErrorCode::Argument, "scenario date " + to_string(scenario.terminal_date) +
                                             " is not the exercise date " + to_string(option.exercise_date));
    }
    if (scenario.issuer != option.issuer) {
        throw Error(ErrorCode::Argument, "scenario prices '" + scenario.issuer + "', option is on '" +
                                             option.issuer + "'");
    }
    const bool in_the_money = option.kind == OptionKind::Call
                                  ? scenario.terminal_price > option.strike_per_share
                                  : scenario.terminal_price < option.strike_per_share;
    return in_the_money ? ExerciseDecision::Exercise : ExerciseDecision::Expire;
}

SettlementLedger open_ledger(std::span<const Instrument> contracts, const PriceScenario& scenario) {
    SettlementLedger ledger{{}, scenario};
    auto& out = ledger.entries;
    for (const Instrument& inst : contracts) {
        std::visit(
            overloaded{
                [&](const Stock&) {
                    throw Error(ErrorCode::Argument,
                                "stock '" + inst.id + "' is a holding, not a contract to settle");
                },
                [&](const Loan& l) {
                    out.push_back(entry(l.borrower, l.lender, Pay{loan_maturity_value(l)},
                                        {inst.id, "repayment", Settlement::CashNet},
                                        SettlementState::Perfection, l.maturity));
                },
                [&](const Option& o) {
                    // The writer's unilateral promise: to sell under a call, to buy under a put.
                    if (o.kind == OptionKind::Call) {
                        out.push_back(entry(o.writer, o.holder, Deliver{o.issuer, o.quantity},
                                            {inst.id, "delivery", o.settlement},
                                            SettlementState::Negotiation, o.exercise_date));
                    } else {
                        out.push_back(entry(o.writer, o.holder, Pay{o.total_strike()},
                                            {inst.id, "strike", o.settlement},
                                            SettlementState::Negotiation, o.exercise_date));
                    }
                },
                [&](const Forward& f) {
                    out.push_back(entry(f.buyer, f.seller, Pay{f.delivery_price_per_share.times(f.quantity)},
                                        {inst.id, "price", f.settlement}, SettlementState::Perfection, f.date));
                    out.push_back(entry(f.seller, f.buyer, Deliver{f.issuer, f.quantity},
                                        {inst.id, "delivery", f.settlement}, SettlementState::Perfection, f.date));
                },
                [&](const Swap& s) {
                    if (scenario.issuer != s.issuer) {
                        throw Error(ErrorCode::Argument, "swap '" + inst.id + "' references '" + s.issuer +
                                                             "', scenario prices '" + scenario.issuer + "'");
                    }
                    const Money equity =
                        (scenario.terminal_price - s.reference_price_per_share).times(s.quantity);
                    if (equity.is_positive()) {
                        out.push_back(entry(s.fixed_receiver, s.equity_receiver, Pay{equity},
                                            {inst.id, "equity_leg", Settlement::CashNet},
                                            SettlementState::Perfection, s.date));
                    } else if (equity.is_negative()) {
                        out.push_back(entry(s.equity_receiver, s.fixed_receiver, Pay{-equity},
                                            {inst.id, "equity_leg", Settlement::CashNet},
                                            SettlementState::Perfection, s.date));
                    }
                    const Money fixed = mul_exact(s.fixed_rate, s.notional);
                    if (fixed.is_positive()) {
                        out.push_back(entry(s.equity_receiver, s.fixed_receiver, Pay{fixed},
                                            {inst.id, "fixed_leg", Settlement::CashNet},
                                            SettlementState::Perfection, s.date));
                    }
                },
            },
            inst.terms);
    }
    return ledger;
}

SettlementLedger perfect(const SettlementLedger& ledger, const Instrument& option, ExerciseDecision decision) {
    const Option& o = option_terms(option);
    if (decision == ExerciseDecision::Expire) return ledger;
    if (exercise_decision(o, ledger.scenario) != ExerciseDecision::Exercise) {
        throw Error(ErrorCode::Settlement, "option '" + option.id +
                                               "' is not in the money and cannot be exercised");
    }
    SettlementLedger next = ledger;
    bool found = false;
    for (auto& e : next.entries) {
        if (e.source.instrument_id == option.id && e.state == SettlementState::Negotiation) {
            advance(e, SettlementState::Perfection);
            found = true;
        }
    }
    if (!found) {
        throw Error(ErrorCode::Settlement, "option '" + option.id +
                                               "' has no offer in negotiation (already exercised or unknown)");
    }
    if (o.kind == OptionKind::Call) {
        next.entries.push_back(entry(o.holder, o.writer, Pay{o.total_strike()},
                                     {option.id, "strike", o.settlement}, SettlementState::Perfection,
                                     o.exercise_date));
    } else {
        next.entries.push_back(entry(o.holder, o.writer, Deliver{o.issuer, o.quantity},
                                     {option.id, "delivery", o.settlement}, SettlementState::Perfection,
                                     o.exercise_date));
    }
    return next;
}

SettlementLedger lapse(const SettlementLedger& ledger, const Instrument& option) {
    option_terms(option);
    SettlementLedger next = ledger;
    std::erase_if(next.entries, [&](const LedgerEntry& e) {
        return e.source.instrument_id == option.id && e.state == SettlementState::Negotiation;
    });
    return next;
}

SettlementLedger deliver_physically(const SettlementLedger& ledger) {
    SettlementLedger next = ledger;
    for (auto& e : next.entries) {
        if (e.is_deliver() && e.state == SettlementState::Perfection &&
            e.source.settlement == Settlement::Physical) {
            advance(e, SettlementState::Consummation);
            e.discharge = Discharge::Delivered;
        }
    }
    return next;
}

SettlementLedger novate_to_cash(const SettlementLedger& ledger) {
    SettlementLedger next = ledger;
    for (auto& e : next.entries) {
        if (!e.is_deliver() || e.state != SettlementState::Perfection) continue;
        if (e.source.settlement == Settlement::Physical) {
            throw Error(ErrorCode::Settlement, "contract '" + e.source.instrument_id +
                                                   "' is physically settled and cannot be novated to cash");
        }
        const Deliver d = std::get<Deliver>(e.obligation);
        if (d.issuer != ledger.scenario.issuer) {
            throw Error(ErrorCode::Argument, "no terminal price for '" + d.issuer + "'");
        }
        e.obligation = Pay{ledger.scenario.terminal_price.times(d.quantity)};
        if (d.quantity == 0) {
            // Nothing to deliver means nothing to pay.
            advance(e, SettlementState::Consummation);
            e.discharge = Discharge::Paid;
        }
    }
    return next;
}

SettlementLedger legal_compensation(const SettlementLedger& ledger, CompensationScope scope) {
    for (const auto& e : ledger.entries) {
        if (!e.is_open()) continue;
        if (e.is_deliver()) {
            throw CompensationError(2, "delivery of shares owed by " + describe(e));
        }
        if (e.state == SettlementState::Negotiation) {
            throw CompensationError(4, "unaccepted offer " + describe(e) + " is not demandable");
        }
        if (e.due > ledger.scenario.terminal_date) {
            throw CompensationError(3, describe(e) + " falls due on " + to_string(e.due));
        }
    }

    // group key: (contract or "", lower party id, higher party id)
    using Key = std::tuple<std::string, std::string, std::string>;
    std::map<Key, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
        const auto& e = ledger.entries[i];
        if (!e.is_open()) continue;
        const auto& [lo, hi] = std::minmax(e.debtor.id, e.creditor.id);
        groups[{scope == CompensationScope::PerContract ? e.source.instrument_id : std::string{}, lo, hi}]
            .push_back(i);
    }

    SettlementLedger next = ledger;
    for (const auto& [key, indices] : groups) {
        const auto& lo = std::get<1>(key);
        std::optional<Party> lo_party;
        std::optional<Party> hi_party;
        Money lo_owes = Money::zero(ledger.scenario.terminal_price.currency());
        Money hi_owes = lo_owes;
        bool lo_debtor = false;
        bool hi_debtor = false;
        Date due = ledger.entries[indices.front()].due;
        for (std::size_t i : indices) {
            const auto& e = ledger.entries[i];
            due = std::max(due, e.due);
            if (e.debtor.id == lo) {
                lo_owes += pay_amount(e);
                lo_debtor = true;
                lo_party = e.debtor;
                hi_party = e.creditor;
            } else {
                hi_owes += pay_amount(e);
                hi_debtor = true;
                hi_party = e.debtor;
                lo_party = e.creditor;
            }
        }
        // Compensation needs each to be debtor and creditor of the other.
        if (!lo_debtor || !hi_debtor) continue;
        for (std::size_t i : indices) {
            advance(next.entries[i], SettlementState::Consummation);
            next.entries[i].discharge = Discharge::Compensated;
        }
        if (lo_owes == hi_owes) continue;
        const bool lo_pays = lo_owes > hi_owes;
        const Money net = lo_pays ? lo_owes - hi_owes : hi_owes - lo_owes;
        SourceRef source{scope == CompensationScope::PerContract ? std::get<0>(key) : "set-off", "net",
                         Settlement::CashNet};
        next.entries.push_back(entry(lo_pays ? *lo_party : *hi_party, lo_pays ? *hi_party : *lo_party,
                                     Pay{net}, std::move(source), SettlementState::Perfection, due));
    }
    return next;
}

SettlementLedger consummate(const SettlementLedger& ledger) {
    SettlementLedger next = ledger;
    for (auto& e : next.entries) {
        if (!e.is_open()) continue;
        if (e.state == SettlementState::Negotiation) {
            throw Error(ErrorCode::Settlement, "unaccepted offer " + describe(e) + " cannot be performed");
        }
        if (e.is_deliver()) {
            throw Error(ErrorCode::Settlement, "perfected delivery " + describe(e) +
                                                   " must be delivered or novated before payment");
        }
        advance(e, SettlementState::Consummation);
        e.discharge = Discharge::Paid;
    }
    return next;
}

Money NetPosition::marked_value(const PriceScenario& scenario) const {
    Money value = net_cash;
    if (auto it = shares_held.find(scenario.issuer); it != shares_held.end()) {
        value += scenario.terminal_price.times(it->second);
    }
    return value;
}

std::vector<NetPosition> net_positions(const SettlementLedger& ledger, std::span<const Holding> holdings) {
    std::map<std::string, NetPosition> by_party;
    const std::string& currency = ledger.scenario.terminal_price.currency();
    auto at = [&](const Party& p) -> NetPosition& {
        auto [it, inserted] = by_party.try_emplace(p.id);
        if (inserted) {
            it->second.party = p;
            it->second.net_cash = Money::zero(currency);
        }
        return it->second;
    };
    for (const auto& h : holdings) at(h.owner).shares_held[h.issuer] += h.quantity;
    for (const auto& e : ledger.entries) {
        NetPosition& debtor = at(e.debtor);
        NetPosition& creditor = at(e.creditor);
        if (e.state != SettlementState::Consummation) continue;
        if (e.discharge == Discharge::Paid) {
            debtor.net_cash -= pay_amount(e);
            creditor.net_cash += pay_amount(e);
        } else if (e.discharge == Discharge::Delivered) {
            const auto& d = std::get<Deliver>(e.obligation);
            debtor.shares_held[d.issuer] -= d.quantity;
            creditor.shares_held[d.issuer] += d.quantity;
            debtor.title_transferred = true;
            creditor.title_transferred = true;
        }
    }
    std::vector<NetPosition> out;
    out.reserve(by_party.size());
    for (auto& [_, p] : by_party) {
        std::erase_if(p.shares_held, [](const auto& kv) { return kv.second == 0; });
        out.push_back(std::move(p));
    }
    return out;
}

const NetPosition& SettlementResult::position_of(const std::string& party_id) const {
    for (const auto& p : positions) {
        if (p.party.id == party_id) return p;
    }
    throw Error(ErrorCode::Argument, "no settlement position for party '" + party_id + "'");
}

SettlementResult settle(std::span<const Instrument> contracts, std::span<const Holding> holdings,
                        const PriceScenario& scenario) {
    SettlementResult result;
    result.scenario = scenario;
    std::string stage = "validation";
    try {
        validate_scenario(scenario);
        for (const auto& c : contracts) validate_contract(c);

        stage = "negotiation";
        SettlementLedger ledger = open_ledger(contracts, scenario);
        result.snapshots.push_back({stage, ledger});

        stage = "perfection";
        bool any_exercised = false;
        for (const auto& c : contracts) {
            if (!c.is<Option>()) continue;
            const auto decision = exercise_decision(c.as<Option>(), scenario);
            result.decisions.push_back({c.id, c.as<Option>().kind, decision});
            if (decision == ExerciseDecision::Exercise) {
                ledger = perfect(ledger, c, decision);
                any_exercised = true;
            } else {
                ledger = lapse(ledger, c);
            }
        }
        result.snapshots.push_back({stage, ledger});

        const bool any_physical = std::any_of(ledger.entries.begin(), ledger.entries.end(), [](const auto& e) {
            return e.is_deliver() && e.state == SettlementState::Perfection &&
                   e.source.settlement == Settlement::Physical;
        });
        if (any_physical) {
            stage = "delivery";
            ledger = deliver_physically(ledger);
            result.snapshots.push_back({stage, ledger});
        }

        stage = "novation";
        ledger = novate_to_cash(ledger);
        if (any_exercised) result.snapshots.push_back({stage, ledger});

        stage = "compensation";
        ledger = legal_compensation(ledger, CompensationScope::PerContract);
        result.snapshots.push_back({"compensation:contract", ledger});
        ledger = legal_compensation(ledger, CompensationScope::AcrossContracts);
        result.snapshots.push_back({"compensation:all", ledger});

        stage = "consummation";
        ledger = consummate(ledger);
        result.snapshots.push_back({stage, ledger});
        result.positions = net_positions(ledger, holdings);
    } catch (const Error& e) {
        throw Error(e.code(), "settlement stage '" + stage + "': " + e.what());
    }
    return result;
}

const char* to_string(SettlementState s) {
    switch (s) {
    case SettlementState::Negotiation: return "Negotiation";
    case SettlementState::Perfection: return "Perfection";
    case SettlementState::Consummation: return "Consummation";
    }
    return "?";
}

const char* to_string(ExerciseDecision d) { return d == ExerciseDecision::Exercise ? "Exercise" : "Expire"; }

const char* to_string(Discharge d) {
    switch (d) {
    case Discharge::Open: return "open";
    case Discharge::Compensated: return "compensated";
    case Discharge::Paid: return "paid";
    case Discharge::Delivered: return "delivered";
    }
    return "?";
}

} // namespace ctrade
