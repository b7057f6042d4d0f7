// SPDX-License-Identifier: Apache-2.0
#include "ctrade/payoff.hpp"

#include "ctrade/error.hpp"

namespace ctrade {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require_issuer(const PriceScenario& scenario, const std::string& issuer) {
    if (scenario.issuer != issuer) {
        throw Error(ErrorCode::Argument, "scenario prices '" + scenario.issuer +
                                             "' but the contract references '" + issuer + "'");
    }
}

void require_observation_date(const PriceScenario& scenario, const Date& date, const char* what) {
    if (scenario.terminal_date != date) {
        throw Error(ErrorCode::Argument, std::string("scenario date ") +
                                             to_string(scenario.terminal_date) + " does not match " +
                                             what + " " + to_string(date));
    }
}

void require_european(const Option& option) {
    if (option.style != ExerciseStyle::European) {
        throw Error(ErrorCode::Unsupported,
                    "American-style options have no terminal-price payoff here");
    }
}

Money option_value(const PriceScenario& scenario, const Option& option) {
    require_european(option);
    require_issuer(scenario, option.issuer);
    require_observation_date(scenario, option.exercise_date, "exercise date");
    const Money zero = Money::zero(option.strike_per_share.currency());
    const Money intrinsic = option.kind == OptionKind::Call
                                ? scenario.terminal_price - option.strike_per_share
                                : option.strike_per_share - scenario.terminal_price;
    return max(intrinsic, zero).times(option.quantity);
}

Money forward_value(const PriceScenario& scenario, const Forward& forward) {
    require_issuer(scenario, forward.issuer);
    require_observation_date(scenario, forward.date, "forward date");
    return (scenario.terminal_price - forward.delivery_price_per_share).times(forward.quantity);
}

Money signed_by_side(const Money& amount, Side side) { return side == Side::Long ? amount : -amount; }

} // namespace

void validate_scenario(const PriceScenario& scenario) {
    if (scenario.initial_price.is_negative() || scenario.terminal_price.is_negative()) {
        throw Error(ErrorCode::Validation, "scenario '" + scenario.name + "' has a negative price");
    }
    if (scenario.issuer.empty()) {
        throw Error(ErrorCode::Validation, "scenario '" + scenario.name + "' has no issuer");
    }
}

PriceScenario at_price(const PriceScenario& scenario, const Money& terminal_price) {
    PriceScenario s = scenario;
    s.terminal_price = terminal_price;
    return s;
}

Payoff payoff_call(const PriceScenario& scenario, const Option& option) {
    if (option.kind != OptionKind::Call) throw Error(ErrorCode::Argument, "not a call option");
    return Payoff{option.holder, option_value(scenario, option), option.writer};
}

Payoff payoff_put(const PriceScenario& scenario, const Option& option) {
    if (option.kind != OptionKind::Put) throw Error(ErrorCode::Argument, "not a put option");
    return Payoff{option.holder, option_value(scenario, option), option.writer};
}

Payoff payoff_option(const PriceScenario& scenario, const Option& option) {
    return option.kind == OptionKind::Call ? payoff_call(scenario, option)
                                           : payoff_put(scenario, option);
}

Money loan_maturity_value(const Loan& loan) { return loan.principal + mul_exact(loan.rate, loan.principal); }

Money payoff_stock(const PriceScenario& scenario, const Stock& stock) {
    require_issuer(scenario, stock.issuer);
    return scenario.terminal_price.times(stock.quantity);
}

Payoff payoff_forward(const PriceScenario& scenario, const Forward& forward) {
    if (forward.settlement != Settlement::CashNet) {
        throw Error(ErrorCode::Unsupported,
                    "physically settled forwards are settled by delivery, not by payoff");
    }
    return Payoff{forward.buyer, forward_value(scenario, forward), forward.seller};
}

Payoff payoff_swap(const PriceScenario& scenario, const Swap& swap) {
    require_issuer(scenario, swap.issuer);
    require_observation_date(scenario, swap.date, "swap date");
    const Money equity_leg = (scenario.terminal_price - swap.reference_price_per_share).times(swap.quantity);
    const Money fixed_leg = mul_exact(swap.fixed_rate, swap.notional);
    return Payoff{swap.equity_receiver, equity_leg - fixed_leg, swap.fixed_receiver};
}

Money position_payoff(const Position& position, const PriceScenario& scenario, PayoffMode mode) {
    const Instrument& inst = position.instrument;
    const bool economic = mode == PayoffMode::Economic;
    const Money value = std::visit(
        overloaded{
            [&](const Stock& s) { return payoff_stock(scenario, s); },
            [&](const Loan& l) {
                if (scenario.terminal_date < l.maturity) {
                    throw Error(ErrorCode::Argument, "scenario date " + to_string(scenario.terminal_date) +
                                                         " precedes loan maturity " + to_string(l.maturity));
                }
                return loan_maturity_value(l);
            },
            [&](const Option& o) {
                if (o.settlement == Settlement::Physical && !economic) {
                    throw Error(ErrorCode::Unsupported,
                                "physically settled option '" + inst.id + "' has no cash payoff");
                }
                return option_value(scenario, o);
            },
            [&](const Forward& f) {
                return economic ? forward_value(scenario, f) : payoff_forward(scenario, f).amount;
            },
            [&](const Swap& s) { return payoff_swap(scenario, s).amount; },
        },
        inst.terms);
    return signed_by_side(value, position.side);
}

Money portfolio_payoff(const Portfolio& portfolio, const PriceScenario& scenario, PayoffMode mode) {
    Money total = Money::zero(scenario.terminal_price.currency());
    const auto& positions = portfolio.positions();
    for (std::size_t i = 0; i < positions.size(); ++i) {
        try {
            total += position_payoff(positions[i], scenario, mode);
        } catch (const Error& e) {
            throw Error(e.code(), "position #" + std::to_string(i) + " ('" +
                                      positions[i].instrument.id + "'): " + e.what());
        }
    }
    return total;
}

Money direct_trade_gain(std::int64_t quantity, const PriceScenario& scenario) {
    return scenario.terminal_price.times(quantity) - scenario.initial_price.times(quantity);
}

} // namespace ctrade
