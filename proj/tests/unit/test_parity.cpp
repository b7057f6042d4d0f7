// SPDX-License-Identifier: Apache-2.0
#include "ctrade/error.hpp"
#include "ctrade/parity.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace ctrade;
using namespace fixtures;

namespace {

Reference abc_reference() { return Reference{"ABC", php(100), 1'000'000}; }

Portfolio holding(const Party& owner, std::int64_t qty, const std::string& issuer = "ABC") {
    Portfolio p(owner);
    p.add(make_stock_position(owner, stock("s", issuer, qty < 0 ? -qty : qty), qty < 0 ? Side::Short : Side::Long));
    return p;
}

Portfolio forward_route(const SynthesisParams& p) {
    Portfolio pf(p.investor);
    pf.add(loan("lend", p.investor, p.dealer, p.initial_price.times(p.quantity), p.rate));
    const Money k = build_construction(p).call.as<Option>().strike_per_share;
    pf.add(forward("fwd", p.investor, p.dealer, p.issuer, p.quantity, k));
    return pf;
}

Portfolio swap_route(const SynthesisParams& p) {
    Portfolio pf(p.investor);
    const Money notional = p.initial_price.times(p.quantity);
    pf.add(loan("bond", p.investor, p.dealer, notional, p.rate));
    pf.add(swap("trs", p.investor, p.dealer, p.issuer, p.quantity, p.initial_price, notional, p.rate));
    return pf;
}

SynthesisParams scaled(SynthesisParams p, std::int64_t factor) {
    p.quantity *= factor;
    return p;
}

} // namespace

TEST_CASE("all six conditions hold for the construction") {
    const Construction c = build_construction(abc_params());
    const ConditionReport r =
        check_parity_conditions(c.call.as<Option>(), c.put.as<Option>(), c.loan.as<Loan>(), abc_reference());
    CHECK(r.all_pass());
    for (int i = 0; i < 6; ++i) CHECK(r.conditions[i].number == i + 1);
    CHECK(r.conditions[1].name == "strike_equals_principal_plus_interest");
}

TEST_CASE("each condition fails on its own perturbation") {
    const Construction c = build_construction(abc_params());
    auto report = [&](Option call, Option put, Loan loan, Reference ref) {
        return check_parity_conditions(call, put, loan, ref);
    };
    const Option call = c.call.as<Option>();
    const Option put = c.put.as<Option>();
    const Loan l = c.loan.as<Loan>();

    Option put_k = put;
    put_k.strike_per_share = php(106);
    auto r = report(call, put_k, l, abc_reference());
    CHECK_FALSE(r.conditions[0].pass);
    CHECK_FALSE(r.conditions[0].detail.empty());

    Loan l_rate = l;
    l_rate.rate = make_rate(1, 10);
    CHECK_FALSE(report(call, put, l_rate, abc_reference()).conditions[1].pass);

    Reference ref = abc_reference();
    ref.initial_price = php(99);
    CHECK_FALSE(report(call, put, l, ref).conditions[2].pass);

    Option put_q = put;
    put_q.quantity = 999'999;
    CHECK_FALSE(report(call, put_q, l, abc_reference()).conditions[3].pass);

    Option call_am = call;
    call_am.style = ExerciseStyle::American;
    CHECK_FALSE(report(call_am, put, l, abc_reference()).conditions[4].pass);

    Option put_d = put;
    put_d.exercise_date = Date(2016, 1, 5);
    CHECK_FALSE(report(call, put_d, l, abc_reference()).conditions[5].pass);
}

TEST_CASE("construction strike must be exact") {
    SynthesisParams p = abc_params();
    p.quantity = 3;
    p.initial_price = centavos(1);
    p.rate = make_rate(1, 3);
    CHECK_THROWS_AS((void)build_construction(p), Error);
    p.quantity = 0;
    CHECK_THROWS_AS((void)build_construction(p), Error);
}

TEST_CASE("profile of X's bundle is one million shares") {
    const PayoffProfile prof = payoff_profile(synthesize_long_stock(abc_params()));
    CHECK(prof.issuer == "ABC");
    CHECK(prof.uniform_slope());
    CHECK(prof.slopes.front() == 1'000'000);
    CHECK(prof.intercept == php(0));
    CHECK(prof.value_at(php(150)) == php(150'000'000));
    CHECK(compare_profiles(prof, share_profile("ABC", 1'000'000, "PHP")).equivalent);
    CHECK(economic_equivalence(synthesize_long_stock(abc_params()), holding(X(), 1'000'000)).equivalent);

    const Equivalence off = economic_equivalence(synthesize_long_stock(abc_params()), holding(X(), 999'999));
    CHECK_FALSE(off.equivalent);
    REQUIRE(off.witness.has_value());
}

TEST_CASE("profiles on different issuers are not comparable") {
    CHECK_THROWS_AS((void)compare_profiles(share_profile("ABC", 1, "PHP"), share_profile("DEF", 1, "PHP")), Error);
}

TEST_CASE("dealer's book is a riskless loan") {
    const PayoffProfile prof = payoff_profile(synthesize_loan(abc_params()), PayoffMode::Economic);
    for (auto s : prof.slopes) CHECK(s == 0);
    CHECK(prof.intercept == php(105'000'000));
}

TEST_CASE("profile equals brute force payoff on a grid") {
    Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        const Portfolio pf = random_portfolio(rng, 6);
        const PayoffProfile prof = payoff_profile(pf);
        const std::int64_t hi = 3 * std::max<std::int64_t>(oracle_max_kink(pf), 100);
        for (std::int64_t s = 0; s <= hi; s += 37) {
            PriceScenario sc = abc_scenario(0);
            sc.terminal_price = centavos(s);
            const __int128 expected = oracle_value(pf, s);
            REQUIRE(portfolio_payoff(pf, sc).minor_units() == to_i64(expected));
            REQUIRE(prof.value_at(centavos(s)).minor_units() == to_i64(expected));
        }
    }
}

TEST_CASE("replication routes are equivalent, symmetric and transitive") {
    const SynthesisParams p = abc_params();
    const Portfolio routes[] = {synthesize_long_stock(p), forward_route(p), swap_route(p), holding(X(), p.quantity)};
    for (const Portfolio& a : routes) {
        for (const Portfolio& b : routes) {
            const bool ab = economic_equivalence(a, b).equivalent;
            const bool ba = economic_equivalence(b, a).equivalent;
            CHECK(ab == ba);
            CHECK(ab);
        }
    }
}

TEST_CASE("equity swap equals a long call and a short put at the forward strike") {
    const SynthesisParams p = abc_params();
    Portfolio sw(X());
    const Money notional = p.initial_price.times(p.quantity);
    sw.add(swap("trs", X(), Y(), "ABC", p.quantity, p.initial_price, notional, p.rate));
    const Construction c = build_construction(p);
    Portfolio opts(X());
    opts.add(c.call);
    opts.add(c.put);
    CHECK(economic_equivalence(sw, opts).equivalent);
}

TEST_CASE("scale covariance") {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        SynthesisParams p = abc_params();
        p.quantity = uniform(rng, 1, 10'000);
        p.initial_price = centavos(uniform(rng, 1, 10'000));
        p.rate = exact_rate_for(rng, p.initial_price.minor_units() * p.quantity);
        const SynthesisParams d = scaled(p, 2);
        try {
            (void)build_construction(p);
        } catch (const Error&) {
            continue;  // strike not a whole centavo per share
        }
        const PayoffProfile a = payoff_profile(synthesize_long_stock(p));
        const PayoffProfile b = payoff_profile(synthesize_long_stock(d));
        for (std::int64_t s : {0LL, 1LL, 500LL, 12'345LL, 99'999LL}) {
            CHECK(b.value_at(centavos(s)) == a.value_at(centavos(s)).times(2));
        }
        CHECK(detect_constructive_trade(synthesize_long_stock(p), "ABC").kind ==
              detect_constructive_trade(synthesize_long_stock(d), "ABC").kind);
    }
}

TEST_CASE("title audit") {
    CHECK_FALSE(title_transfer_audit(synthesize_long_stock(abc_params())).moves_title);
    CHECK(title_transfer_audit(holding(X(), 10)).moves_title);
    Portfolio phys(X());
    phys.add(option("pc", OptionKind::Call, X(), Y(), "ABC", 10, php(105), Settlement::Physical));
    const TitleAudit a = title_transfer_audit(phys);
    CHECK(a.moves_title);
    CHECK(a.instruments == std::vector<std::string>{"pc"});
}

TEST_CASE("detector verdicts") {
    const SynthesisParams p = abc_params();
    const DetectionVerdict bundle = detect_constructive_trade(synthesize_long_stock(p), "ABC");
    CHECK(bundle.kind == VerdictKind::ConstructiveTrade);
    CHECK(bundle.quantity == 1'000'000);
    CHECK(bundle.direction == Side::Long);
    CHECK(bundle.riskless_component == php(0));

    CHECK(detect_constructive_trade(forward_route(p), "ABC").kind == VerdictKind::ConstructiveTrade);
    CHECK(detect_constructive_trade(swap_route(p), "ABC").kind == VerdictKind::ConstructiveTrade);

    const DetectionVerdict outright = detect_constructive_trade(holding(X(), 1'000'000), "ABC");
    CHECK(outright.kind == VerdictKind::ActualTrade);
    CHECK(outright.quantity == 1'000'000);

    Portfolio pure(X());
    pure.add(loan("l", X(), Y(), php(100'000'000), p.rate));
    CHECK(detect_constructive_trade(pure, "ABC").kind == VerdictKind::NoExposure);

    CHECK(detect_constructive_trade(synthesize_loan(p), "ABC").kind == VerdictKind::NoExposure);
}

TEST_CASE("detector direction and leftovers") {
    // Writing the bundle the other way round is a short sale.
    SynthesisParams p = abc_params();
    Portfolio shorted(X());
    const Construction c = build_construction(p);
    shorted.add(make_position(X(), option("c", OptionKind::Call, Y(), X(), "ABC", p.quantity, php(105))));
    shorted.add(make_position(X(), option("p", OptionKind::Put, X(), Y(), "ABC", p.quantity, php(105))));
    const DetectionVerdict v = detect_constructive_trade(shorted, "ABC");
    CHECK(v.kind == VerdictKind::ConstructiveTrade);
    CHECK(v.direction == Side::Short);
    CHECK(v.quantity == 1'000'000);
    CHECK(v.riskless_component == php(105'000'000));

    // A lone call has no uniform slope.
    Portfolio call_only(X());
    call_only.add(c.call);
    const DetectionVerdict k = detect_constructive_trade(call_only, "ABC");
    CHECK(k.kind == VerdictKind::NoExposure);
    CHECK_FALSE(k.evidence.empty());

    // Same profile, but the put is physically settled so title can move.
    Portfolio mixed(X());
    mixed.add(c.call);
    mixed.add(option("pp", OptionKind::Put, Y(), X(), "ABC", p.quantity, php(105), Settlement::Physical));
    const DetectionVerdict m = detect_constructive_trade(mixed, "ABC");
    CHECK(m.kind == VerdictKind::ActualTrade);
}

TEST_CASE("detector only flags exact matches without title movement") {
    Rng rng(1234);
    for (int i = 0; i < 200; ++i) {
        const Portfolio pf = random_portfolio(rng, 6);
        const DetectionVerdict v = detect_constructive_trade(pf, "ABC");
        if (v.kind == VerdictKind::ConstructiveTrade) {
            CHECK_FALSE(title_transfer_audit(pf).moves_title);
            CHECK(v.profile.uniform_slope());
            const PayoffProfile shares = share_profile("ABC", v.direction == Side::Long ? v.quantity : -v.quantity, "PHP");
            for (std::int64_t s : {0LL, 1LL, 777LL, 100'000LL}) {
                CHECK(v.profile.value_at(centavos(s)) - shares.value_at(centavos(s)) == v.riskless_component);
            }
        }
    }
}
