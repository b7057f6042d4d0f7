// SPDX-License-Identifier: Apache-2.0
#include "ctrade/instruments.hpp"

#include "ctrade/error.hpp"

#include <map>
#include <set>

namespace ctrade {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

class Checker {
public:
    void require(bool ok, const char* name, std::string detail = {}) {
        if (!ok) violations.push_back({name, std::move(detail)});
    }

    void quantity(std::int64_t q) {
        require(q > 0, "quantity_not_positive", "quantity " + std::to_string(q));
    }

    void issuer(const std::string& issuer) { require(!issuer.empty(), "missing_issuer"); }

    void price(const Money& m, const char* field) {
        require(!m.is_negative(), "negative_price",
                std::string(field) + " " + to_decimal_string(m));
    }

    void after_trade(const Date& trade, const Date& d, const char* field) {
        require(d > trade, "date_not_after_trade_date",
                std::string(field) + " " + to_string(d) + " vs trade date " + to_string(trade));
    }

    void distinct(const Party& a, const Party& b) {
        require(!a.id.empty() && !b.id.empty(), "missing_party");
        require(!same_party(a, b), "same_counterparty", a.id);
    }

    void currency(const Money& a, const Money& b) {
        require(a.currency() == b.currency(), "currency_mismatch",
                a.currency() + " vs " + b.currency());
    }

    std::vector<Violation> violations;
};

} // namespace

std::optional<std::string> Instrument::issuer() const {
    return std::visit(overloaded{
                          [](const Loan&) -> std::optional<std::string> { return std::nullopt; },
                          [](const auto& t) -> std::optional<std::string> { return t.issuer; },
                      },
                      terms);
}

std::optional<Date> Instrument::terminal_date() const {
    return std::visit(overloaded{
                          [](const Stock&) -> std::optional<Date> { return std::nullopt; },
                          [](const Loan& l) -> std::optional<Date> { return l.maturity; },
                          [](const Option& o) -> std::optional<Date> { return o.exercise_date; },
                          [](const Forward& f) -> std::optional<Date> { return f.date; },
                          [](const Swap& s) -> std::optional<Date> { return s.date; },
                      },
                      terms);
}

Settlement Instrument::settlement() const {
    return std::visit(overloaded{
                          [](const Stock&) { return Settlement::Physical; },
                          [](const Loan&) { return Settlement::CashNet; },
                          [](const Swap&) { return Settlement::CashNet; },
                          [](const auto& t) { return t.settlement; },
                      },
                      terms);
}

const char* Instrument::kind_name() const {
    return std::visit(overloaded{
                          [](const Stock&) { return "stock"; },
                          [](const Loan&) { return "loan"; },
                          [](const Option& o) { return o.kind == OptionKind::Call ? "call" : "put"; },
                          [](const Forward&) { return "forward"; },
                          [](const Swap&) { return "swap"; },
                      },
                      terms);
}

Instrument validate_contract(const Instrument& instrument) {
    Checker c;
    c.require(!instrument.id.empty(), "missing_id");
    std::visit(overloaded{
                   [&](const Stock& s) {
                       c.issuer(s.issuer);
                       c.quantity(s.quantity);
                       c.require(s.settlement == Settlement::Physical, "stock_not_physical");
                   },
                   [&](const Loan& l) {
                       c.distinct(l.lender, l.borrower);
                       c.require(l.principal.is_positive(), "principal_not_positive",
                                 to_decimal_string(l.principal));
                       c.require(l.rate.numerator() >= 0, "negative_rate", to_string(l.rate));
                       c.after_trade(instrument.trade_date, l.maturity, "maturity");
                   },
                   [&](const Option& o) {
                       c.distinct(o.holder, o.writer);
                       c.issuer(o.issuer);
                       c.quantity(o.quantity);
                       c.price(o.strike_per_share, "strike_per_share");
                       c.require(!o.premium.is_negative(), "negative_premium",
                                 to_decimal_string(o.premium));
                       c.currency(o.strike_per_share, o.premium);
                       c.after_trade(instrument.trade_date, o.exercise_date, "exercise_date");
                   },
                   [&](const Forward& f) {
                       c.distinct(f.buyer, f.seller);
                       c.issuer(f.issuer);
                       c.quantity(f.quantity);
                       c.price(f.delivery_price_per_share, "delivery_price_per_share");
                       c.after_trade(instrument.trade_date, f.date, "date");
                   },
                   [&](const Swap& s) {
                       c.distinct(s.equity_receiver, s.fixed_receiver);
                       c.issuer(s.issuer);
                       c.quantity(s.quantity);
                       c.price(s.reference_price_per_share, "reference_price_per_share");
                       c.currency(s.reference_price_per_share, s.notional);
                       c.after_trade(instrument.trade_date, s.date, "date");
                       if (s.quantity > 0 &&
                           s.reference_price_per_share.currency() == s.notional.currency()) {
                           const Money expected = s.reference_price_per_share.times(s.quantity);
                           c.require(expected == s.notional, "swap_notional_mismatch",
                                     "notional " + to_decimal_string(s.notional) + " vs " +
                                         to_decimal_string(expected));
                       }
                   },
               },
               instrument.terms);
    if (!c.violations.empty()) {
        throw ValidationError("contract '" + instrument.id + "'", std::move(c.violations));
    }
    return instrument;
}

Position make_position(const Party& owner, const Instrument& instrument) {
    auto side = std::visit(
        overloaded{
            [&](const Stock&) -> std::optional<Side> { return Side::Long; },
            [&](const Loan& l) -> std::optional<Side> {
                if (same_party(owner, l.lender)) return Side::Long;
                if (same_party(owner, l.borrower)) return Side::Short;
                return std::nullopt;
            },
            [&](const Option& o) -> std::optional<Side> {
                if (same_party(owner, o.holder)) return Side::Long;
                if (same_party(owner, o.writer)) return Side::Short;
                return std::nullopt;
            },
            [&](const Forward& f) -> std::optional<Side> {
                if (same_party(owner, f.buyer)) return Side::Long;
                if (same_party(owner, f.seller)) return Side::Short;
                return std::nullopt;
            },
            [&](const Swap& s) -> std::optional<Side> {
                if (same_party(owner, s.equity_receiver)) return Side::Long;
                if (same_party(owner, s.fixed_receiver)) return Side::Short;
                return std::nullopt;
            },
        },
        instrument.terms);
    if (!side) {
        throw Error(ErrorCode::Argument,
                    "party '" + owner.id + "' is not a counterparty to '" + instrument.id + "'");
    }
    return Position{owner, instrument, *side};
}

Position make_stock_position(const Party& owner, const Instrument& stock, Side side) {
    if (!stock.is<Stock>()) {
        throw Error(ErrorCode::Argument, "'" + stock.id + "' is not a stock holding");
    }
    return Position{owner, stock, side};
}

void Portfolio::add(Position position) {
    if (!same_party(position.owner, owner_)) {
        throw Error(ErrorCode::Argument, "position owned by '" + position.owner.id +
                                             "' cannot join the portfolio of '" + owner_.id + "'");
    }
    positions_.push_back(std::move(position));
}

InsiderRole classify_insider(const Party& party, const Relations& relations) {
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& tip : relations.tips) edges[tip.from].push_back(tip.to);

    // Reject any cycle in the tip graph (iterative three-colour DFS).
    std::map<std::string, int> colour;
    for (const auto& [start, _] : edges) {
        if (colour[start] != 0) continue;
        std::vector<std::pair<std::string, std::size_t>> stack{{start, 0}};
        colour[start] = 1;
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            const auto& out = edges[node];
            if (next == out.size()) {
                colour[node] = 2;
                stack.pop_back();
                continue;
            }
            const std::string child = out[next++];
            if (colour[child] == 1) {
                throw Error(ErrorCode::Validation,
                            "cyclic tip chain through '" + child + "'");
            }
            if (colour[child] == 0) {
                colour[child] = 1;
                stack.emplace_back(child, 0);
            }
        }
    }

    std::set<std::string> primary;
    for (const auto& a : relations.affiliations) {
        if (relations.issuer.empty() || a.issuer == relations.issuer) primary.insert(a.party);
    }
    if (primary.contains(party.id)) return InsiderRole::PrimaryInsider;

    std::set<std::string> seen(primary.begin(), primary.end());
    std::vector<std::string> frontier(primary.begin(), primary.end());
    while (!frontier.empty()) {
        const std::string node = frontier.back();
        frontier.pop_back();
        for (const auto& next : edges[node]) {
            if (next == party.id) return InsiderRole::SecondaryInsider;
            if (seen.insert(next).second) frontier.push_back(next);
        }
    }
    return InsiderRole::NotInsider;
}

const char* to_string(InsiderRole role) {
    switch (role) {
    case InsiderRole::PrimaryInsider: return "PrimaryInsider";
    case InsiderRole::SecondaryInsider: return "SecondaryInsider";
    case InsiderRole::NotInsider: return "NotInsider";
    }
    return "?";
}

const char* to_string(Settlement s) { return s == Settlement::Physical ? "physical" : "cash_net"; }
const char* to_string(OptionKind k) { return k == OptionKind::Call ? "call" : "put"; }
const char* to_string(ExerciseStyle s) { return s == ExerciseStyle::European ? "european" : "american"; }
const char* to_string(Side s) { return s == Side::Long ? "long" : "short"; }

const char* to_string(IssuerOffice o) {
    switch (o) {
    case IssuerOffice::Director: return "director";
    case IssuerOffice::Officer: return "officer";
    case IssuerOffice::ControllingPerson: return "controlling_person";
    case IssuerOffice::PositionHolder: return "position_holder";
    }
    return "?";
}

} // namespace ctrade
