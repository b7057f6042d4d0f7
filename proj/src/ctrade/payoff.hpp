// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/instruments.hpp"

namespace ctrade {

/// Observation of one issuer's share price at the start and at the terminal
/// date. Prices are per share.
struct PriceScenario {
    std::string name;
    std::string issuer;
    Date terminal_date;
    Money initial_price;
    Money terminal_price;

    friend bool operator==(const PriceScenario&, const PriceScenario&) = default;
};

/// Throws if either price is negative.
void validate_scenario(const PriceScenario& scenario);

/// Same scenario with a different terminal price.
PriceScenario at_price(const PriceScenario& scenario, const Money& terminal_price);

/// Terminal payoff to `party`; `counterparty` receives the negation.
struct Payoff {
    Party party;
    Money amount;
    Party counterparty;

    Money counterparty_amount() const { return -amount; }
};

/// How derivatives with physical settlement are treated when a whole
/// portfolio is valued.
enum class PayoffMode {
    CashSettledOnly,  // physical options/forwards are rejected
    Economic,         // valued at their cash equivalent
};

Payoff payoff_call(const PriceScenario& scenario, const Option& option);
Payoff payoff_put(const PriceScenario& scenario, const Option& option);
/// Dispatches on the option kind.
Payoff payoff_option(const PriceScenario& scenario, const Option& option);

/// Principal plus simple interest for the single period.
Money loan_maturity_value(const Loan& loan);

/// Market value quantity * S_T of the holding.
Money payoff_stock(const PriceScenario& scenario, const Stock& stock);

/// quantity * (S_T - delivery price) to the buyer. Cash-settled forwards only.
Payoff payoff_forward(const PriceScenario& scenario, const Forward& forward);

/// quantity * (S_T - reference) - fixed_rate * notional to the equity receiver.
Payoff payoff_swap(const PriceScenario& scenario, const Swap& swap);

/// Signed terminal value of one position from its owner's side.
Money position_payoff(const Position& position, const PriceScenario& scenario,
                      PayoffMode mode = PayoffMode::CashSettledOnly);

/// Sum of position payoffs. Errors are rethrown naming the position index.
Money portfolio_payoff(const Portfolio& portfolio, const PriceScenario& scenario,
                       PayoffMode mode = PayoffMode::CashSettledOnly);

/// Buy `quantity` at the initial price and sell at the terminal price.
Money direct_trade_gain(std::int64_t quantity, const PriceScenario& scenario);

} // namespace ctrade
