// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Money comparisons are exact (tolerance 0 minor
// units); runtime limits are wall-clock.

#include "ctrade/contract_file.hpp"
#include "ctrade/error.hpp"
#include "ctrade/parity.hpp"
#include "ctrade/payoff.hpp"
#include "ctrade/settlement.hpp"
#include "support/fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace ctrade;
using namespace fixtures;

namespace {

constexpr std::int64_t kToleranceMinor = 0;

constexpr double kLimitCriterion1 = 1.0;
constexpr double kLimitCriterion5 = 10.0;
constexpr double kLimitCriterion6 = 30.0;
constexpr int kParityCases = 1000;
constexpr int kRandomGridPoints = 50;
constexpr int kOraclePortfolios = 200;
constexpr int kMaxInstruments = 6;

const std::string kSample = std::string(CTRADE_CONTRACTS_DIR) + "/abc_mining.contracts";

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
    void expect_money(const char* what, const Money& got, const Money& want) {
        const std::int64_t diff = got.minor_units() - want.minor_units();
        if (got.currency() != want.currency() || diff > kToleranceMinor || diff < -kToleranceMinor) {
            fail(std::string(what) + " = " + format_money(got) + ", expected " + format_money(want));
        }
    }
    void expect(const char* what, bool ok) {
        if (!ok) fail(what);
    }
};

int failures = 0;

void criterion(int number, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("unexpected error: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && elapsed >= limit_seconds) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "runtime %.3fs exceeds %.0fs", elapsed, limit_seconds);
        out.fail(buf);
    }
    if (!out.pass) ++failures;
    std::printf("criterion %d %s  %s  (%.3fs", number, out.pass ? "PASS" : "FAIL", title, elapsed);
    if (limit_seconds > 0) std::printf(", limit %.0fs", limit_seconds);
    std::printf(")%s%s\n", out.detail.empty() ? "" : ": ", out.detail.c_str());
}

std::vector<Instrument> abc_contracts() {
    const Construction c = build_construction(abc_params());
    return {c.loan, c.call, c.put};
}

const std::vector<Holding> kHoldings{Holding{Y(), "ABC", 1'000'000}};

Outcome branch(std::int64_t price, const Instrument& option, const Party& winner, std::int64_t payoff_major,
               std::int64_t x_total_major) {
    Outcome out;
    const ContractModel model = load_contracts(kSample);
    const PriceScenario sc = at_price(model.scenarios.front(), php(price));
    const Payoff p = payoff_option(sc, option.as<Option>());
    out.expect("payoff goes to the expected party", p.party.id == winner.id);
    out.expect_money("option payoff", p.amount, php(payoff_major));
    out.expect_money("counterparty payoff", p.counterparty_amount(), php(-payoff_major));
    const SettlementResult r = settle(model.contracts(), model.holdings(), sc);
    out.expect_money("X total entitlement", r.position_of("X").marked_value(sc), php(x_total_major));
    out.expect_money("X net cash", r.position_of("X").net_cash, php(x_total_major));
    out.expect_money("Y net position", r.position_of("Y").marked_value(sc), php(0));
    out.expect("title stays with Y", !r.position_of("X").title_transferred && !r.position_of("Y").title_transferred);
    return out;
}

// Strike per share S0 * (1 + n/d) is whole when d divides S0 * n.
Rate exact_strike_rate(Rng& rng, std::int64_t s0) {
    for (;;) {
        const std::int64_t d = uniform(rng, 1, 100);
        const std::int64_t n = uniform(rng, 0, d);
        if ((s0 * n) % d == 0) return make_rate(n, d);
    }
}

std::string run_cli(const std::string& args, int& status) {
    const std::string cmd = std::string(CTRADE_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int raw = pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    std::printf("money tolerance: %lld minor units (exact)\n", static_cast<long long>(kToleranceMinor));
    criterion(1, "direct trade gain 1M @ 100 -> 150 is 50,000,000.00", kLimitCriterion1, [] {
        Outcome out;
        const ContractModel model = load_contracts(kSample);
        const PriceScenario& sc = *model.scenario("call-branch");
        out.expect_money("gain", direct_trade_gain(1'000'000, sc), php(50'000'000));
        return out;
    });

    criterion(2, "call branch S_T=150", 0, [] {
        return branch(150, abc_contracts()[1], X(), 45'000'000, 150'000'000);
    });

    criterion(3, "put branch S_T=80", 0, [] {
        return branch(80, abc_contracts()[2], Y(), 25'000'000, 80'000'000);
    });

    criterion(4, "flat branch S_T=105", 0, [] {
        Outcome out = branch(105, abc_contracts()[1], X(), 0, 105'000'000);
        const Outcome put = branch(105, abc_contracts()[2], Y(), 0, 105'000'000);
        if (!put.pass) out.fail(put.detail);
        const SettlementResult r = settle(abc_contracts(), kHoldings, abc_scenario(105));
        for (const OptionDecision& d : r.decisions) out.expect("both options expire", d.decision == ExerciseDecision::Expire);
        return out;
    });

    criterion(5, "parity and replication over 1000 random constructions", kLimitCriterion5, [] {
        Outcome out;
        Rng rng(20150104);
        int cases = 0;
        for (; cases < kParityCases && out.pass; ++cases) {
            SynthesisParams p = abc_params();
            p.initial_price = centavos(uniform(rng, 1, 10'000));
            p.quantity = uniform(rng, 1, 1'000'000);
            p.rate = exact_strike_rate(rng, p.initial_price.minor_units());
            const Construction c = build_construction(p);
            const Option& call = c.call.as<Option>();
            const Option& put = c.put.as<Option>();
            const Loan& loan = c.loan.as<Loan>();
            const Reference ref{p.issuer, p.initial_price, p.quantity};
            out.expect("six conditions hold", check_parity_conditions(call, put, loan, ref).all_pass());

            const Portfolio x = synthesize_long_stock(p);
            const PayoffProfile prof = payoff_profile(x);
            const Party& dealer = p.dealer;
            const Instrument shares = stock("shares", p.issuer, p.quantity);
            const Position stock_pos = make_stock_position(dealer, shares);

            std::vector<std::int64_t> points = prof.breakpoints;
            points.push_back(0);
            const std::int64_t k = call.strike_per_share.minor_units();
            for (int i = 0; i < kRandomGridPoints; ++i) points.push_back(uniform(rng, 0, 3 * k));

            std::vector<Instrument> contracts{c.loan, c.call, c.put};
            const std::vector<Holding> holdings{Holding{dealer, p.issuer, p.quantity}};
            for (std::int64_t s : points) {
                PriceScenario sc = abc_scenario(0);
                sc.initial_price = p.initial_price;
                sc.terminal_price = centavos(s);
                const Money stock_plus_put =
                    position_payoff(stock_pos, sc) + position_payoff(make_position(dealer, c.put), sc);
                const Money loan_plus_call =
                    position_payoff(make_position(p.investor, c.loan), sc) +
                    position_payoff(make_position(p.investor, c.call), sc);
                out.expect_money("stock + put vs loan + call", stock_plus_put, loan_plus_call);
                const Money want = centavos(s).times(p.quantity);
                out.expect_money("profile entitlement", prof.value_at(centavos(s)), want);
                out.expect_money("portfolio entitlement", portfolio_payoff(x, sc), want);
                const SettlementResult r = settle(contracts, holdings, sc);
                out.expect_money("settled entitlement", r.position_of(p.investor.id).marked_value(sc), want);
                out.expect_money("dealer net", r.position_of(dealer.id).marked_value(sc), Money::zero("PHP"));
                if (!out.pass) break;
            }
        }
        out.expect("case count", cases >= kParityCases);
        return out;
    });

    criterion(6, "profile equals brute-force payoff on a 1.00 grid, 200 portfolios", kLimitCriterion6, [] {
        Outcome out;
        Rng rng(6);
        int checked = 0;
        for (; checked < kOraclePortfolios && out.pass; ++checked) {
            const Portfolio pf = random_portfolio(rng, kMaxInstruments);
            const PayoffProfile prof = payoff_profile(pf);
            std::int64_t top = Money::kMinorPerMajor;
            for (std::int64_t b : prof.breakpoints) top = std::max(top, b);
            if (oracle_max_kink(pf) > top) out.fail("profile misses a strike");
            for (std::int64_t s = 0; s <= 3 * top; s += Money::kMinorPerMajor) {
                PriceScenario sc = abc_scenario(0);
                sc.terminal_price = centavos(s);
                const Money brute = portfolio_payoff(pf, sc);
                out.expect_money("profile vs portfolio_payoff", prof.value_at(centavos(s)), brute);
                out.expect("portfolio_payoff vs term oracle", brute.minor_units() == to_i64(oracle_value(pf, s)));
                if (!out.pass) break;
            }
        }
        out.expect("portfolio count", checked >= kOraclePortfolios);
        return out;
    });

    criterion(7, "detector classifications", 0, [] {
        Outcome out;
        const SynthesisParams p = abc_params();
        const Money notional = p.initial_price.times(p.quantity);
        const Money k = build_construction(p).call.as<Option>().strike_per_share;

        const DetectionVerdict bundle = detect_constructive_trade(synthesize_long_stock(p), "ABC");
        out.expect("loan+call+put -> ConstructiveTrade long 1M",
                   bundle.kind == VerdictKind::ConstructiveTrade && bundle.direction == Side::Long &&
                       bundle.quantity == 1'000'000);

        Portfolio fwd(X());
        fwd.add(loan("lend", X(), Y(), notional, p.rate));
        fwd.add(forward("fwd", X(), Y(), "ABC", p.quantity, k));
        out.expect("lend + cash forward -> ConstructiveTrade",
                   detect_constructive_trade(fwd, "ABC").kind == VerdictKind::ConstructiveTrade);

        Portfolio sw(X());
        sw.add(loan("bond", X(), Y(), notional, p.rate));
        sw.add(swap("trs", X(), Y(), "ABC", p.quantity, p.initial_price, notional, p.rate));
        out.expect("equity swap + bond -> ConstructiveTrade",
                   detect_constructive_trade(sw, "ABC").kind == VerdictKind::ConstructiveTrade);

        Portfolio outright(X());
        outright.add(make_stock_position(X(), stock("buy", "ABC", p.quantity)));
        const DetectionVerdict actual = detect_constructive_trade(outright, "ABC");
        out.expect("outright purchase -> ActualTrade",
                   actual.kind == VerdictKind::ActualTrade && actual.quantity == 1'000'000);

        Portfolio pure(X());
        pure.add(loan("lend", X(), Y(), notional, p.rate));
        out.expect("pure loan -> NoExposure", detect_constructive_trade(pure, "ABC").kind == VerdictKind::NoExposure);

        out.expect("stock + put - call -> NoExposure",
                   detect_constructive_trade(synthesize_loan(p), "ABC").kind == VerdictKind::NoExposure);
        return out;
    });

    criterion(8, "settlement-law guards", 0, [] {
        Outcome out;
        const auto cs = abc_contracts();
        SettlementLedger l = perfect(open_ledger(cs, abc_scenario(150)), cs[1], ExerciseDecision::Exercise);
        l = lapse(l, cs[2]);
        try {
            (void)legal_compensation(l);
            out.fail("compensation accepted a Deliver entry");
        } catch (const CompensationError& e) {
            out.expect("error cites the money requisite",
                       e.requisite() == 2 && std::string(e.what()).find("sum of money") != std::string::npos);
        }
        const SettlementLedger done = consummate(legal_compensation(novate_to_cash(l)));
        for (const LedgerEntry& e : done.entries) {
            out.expect("novation then compensation settles everything", e.state == SettlementState::Consummation);
        }
        LedgerEntry e = l.entries.front();
        out.expect("entry starts perfected", e.state == SettlementState::Perfection);
        try {
            advance(e, SettlementState::Negotiation);
            out.fail("Perfection -> Negotiation was allowed");
        } catch (const Error&) {
        }
        return out;
    });

    criterion(9, "CLI golden reports for settle, parity and detect", 0, [] {
        Outcome out;
        struct Golden {
            const char* command;
            const char* flags;
            const char* file;
            int exit_code;
        };
        const Golden cases[] = {
            {"settle", "--scenario S_T=150", "settle_call_branch.txt", 0},
            {"settle", "--scenario put-branch", "settle_put_branch.txt", 0},
            {"settle", "--scenario flat", "settle_flat.txt", 0},
            {"parity", "", "parity.txt", 0},
            {"detect", "", "detect.txt", 2},
        };
        for (const Golden& g : cases) {
            int status = 0;
            const std::string got = run_cli(std::string(g.command) + " " + kSample + " " + g.flags, status);
            const std::string want = read_file(std::string(CTRADE_GOLDEN_DIR) + "/" + g.file);
            if (want.empty()) {
                out.fail(std::string("missing golden file ") + g.file);
            } else if (got != want) {
                out.fail(std::string(g.file) + " differs from CLI output");
            }
            if (status != g.exit_code) out.fail(std::string(g.command) + " exit code " + std::to_string(status));
        }
        bool row_found = false;
        std::istringstream lines(read_file(std::string(CTRADE_GOLDEN_DIR) + "/settle_call_branch.txt"));
        for (std::string line; std::getline(lines, line);) {
            if (line.rfind("Total Amount Entitled", 0) == 0 && line.find("150,000,000.00") != std::string::npos) {
                row_found = true;
            }
        }
        out.expect("Total Amount Entitled row reads 150,000,000.00", row_found);
        return out;
    });

    std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
    return failures == 0 ? 0 : 1;
}
