// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/money.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ctrade {

enum class InsiderRole { PrimaryInsider, SecondaryInsider, NotInsider };

struct Party {
    std::string id;
    InsiderRole role = InsiderRole::NotInsider;

    friend bool operator==(const Party&, const Party&) = default;
};

inline bool same_party(const Party& a, const Party& b) { return a.id == b.id; }

enum class Settlement { Physical, CashNet };
enum class OptionKind { Call, Put };
enum class ExerciseStyle { European, American };
enum class Side { Long, Short };

struct Stock {
    std::string issuer;
    std::int64_t quantity = 0;
    Settlement settlement = Settlement::Physical;

    friend bool operator==(const Stock&, const Stock&) = default;
};

struct Loan {
    Party lender;
    Party borrower;
    Money principal;
    Rate rate;
    Date maturity;

    friend bool operator==(const Loan&, const Loan&) = default;
};

struct Option {
    OptionKind kind = OptionKind::Call;
    ExerciseStyle style = ExerciseStyle::European;
    Party holder;
    Party writer;
    std::string issuer;
    std::int64_t quantity = 0;
    Money strike_per_share;
    Date exercise_date;
    Money premium;  // upfront, never part of terminal payoff
    Settlement settlement = Settlement::CashNet;

    Money total_strike() const { return strike_per_share.times(quantity); }

    friend bool operator==(const Option&, const Option&) = default;
};

struct Forward {
    Party buyer;
    Party seller;
    std::string issuer;
    std::int64_t quantity = 0;
    Money delivery_price_per_share;
    Date date;
    Settlement settlement = Settlement::CashNet;

    friend bool operator==(const Forward&, const Forward&) = default;
};

/// Equity leg (price return only) against a fixed leg on the notional.
struct Swap {
    Party equity_receiver;
    Party fixed_receiver;
    std::string issuer;
    std::int64_t quantity = 0;
    Money reference_price_per_share;
    Money notional;
    Rate fixed_rate;
    Date date;

    friend bool operator==(const Swap&, const Swap&) = default;
};

using Terms = std::variant<Stock, Loan, Option, Forward, Swap>;

struct Instrument {
    std::string id;
    Date trade_date;
    Terms terms;

    template <typename T> bool is() const { return std::holds_alternative<T>(terms); }
    template <typename T> const T& as() const { return std::get<T>(terms); }

    /// Underlying issuer; empty for loans.
    std::optional<std::string> issuer() const;
    /// Date the contract pays off (maturity, exercise or value date).
    std::optional<Date> terminal_date() const;
    Settlement settlement() const;
    const char* kind_name() const;

    friend bool operator==(const Instrument&, const Instrument&) = default;
};

/// Checks every invariant and returns the instrument unchanged. Throws
/// ValidationError listing each violation by name.
Instrument validate_contract(const Instrument& instrument);

struct Position {
    Party owner;
    Instrument instrument;
    Side side = Side::Long;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Side follows from the owner's role in the contract: lender, holder, buyer
/// and equity receiver are long. Throws if the owner is not a counterparty.
Position make_position(const Party& owner, const Instrument& instrument);
/// Stock positions carry their side explicitly (short sale vs holding).
Position make_stock_position(const Party& owner, const Instrument& stock, Side side = Side::Long);

class Portfolio {
public:
    explicit Portfolio(Party owner) : owner_(std::move(owner)) {}

    const Party& owner() const noexcept { return owner_; }
    const std::vector<Position>& positions() const noexcept { return positions_; }
    bool empty() const noexcept { return positions_.empty(); }

    /// Rejects positions owned by anyone else.
    void add(Position position);
    void add(const Instrument& instrument) { add(make_position(owner_, instrument)); }

    friend bool operator==(const Portfolio&, const Portfolio&) = default;

private:
    Party owner_;
    std::vector<Position> positions_;
};

enum class IssuerOffice { Director, Officer, ControllingPerson, PositionHolder };

struct Affiliation {
    std::string party;
    std::string issuer;
    IssuerOffice office = IssuerOffice::Director;

    friend bool operator==(const Affiliation&, const Affiliation&) = default;
};

/// `from` communicated material non-public information to `to`.
struct Tip {
    std::string from;
    std::string to;

    friend bool operator==(const Tip&, const Tip&) = default;
};

struct Relations {
    std::string issuer;
    std::vector<Affiliation> affiliations;
    std::vector<Tip> tips;

    friend bool operator==(const Relations&, const Relations&) = default;
};

/// Office-holders of the issuer are primary insiders; anyone reachable from
/// a primary insider along tip edges is a secondary insider. Throws on a
/// cyclic tip graph.
InsiderRole classify_insider(const Party& party, const Relations& relations);

const char* to_string(InsiderRole role);
const char* to_string(Settlement s);
const char* to_string(OptionKind k);
const char* to_string(ExerciseStyle s);
const char* to_string(Side s);
const char* to_string(IssuerOffice o);

} // namespace ctrade
