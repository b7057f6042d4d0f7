// SPDX-License-Identifier: Apache-2.0
#include "ctrade/report.hpp"

#include "ctrade/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace ctrade {

namespace {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string shares_text(std::int64_t n) {
    std::string s = format_minor(n * Money::kMinorPerMajor);
    return s.substr(0, s.size() - 3);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string instrument_summary(const ModelEntry& e) {
    const Instrument& inst = e.instrument;
    return std::visit(
        overloaded{
            [&](const Stock& s) {
                return (e.owner ? e.owner->id : std::string("?")) + " " + to_string(e.side) + " " +
                       shares_text(s.quantity) + " " + s.issuer;
            },
            [&](const Loan& l) {
                return l.lender.id + " lends " + format_money(l.principal) + " to " + l.borrower.id + " at " +
                       to_string(l.rate);
            },
            [&](const Option& o) {
                return std::string(to_string(o.style)) + " " + to_string(o.kind) + " held by " + o.holder.id +
                       ", written by " + o.writer.id + ": " + shares_text(o.quantity) + " " + o.issuer + " @ " +
                       format_money(o.strike_per_share) + ", " + to_string(o.settlement);
            },
            [&](const Forward& f) {
                return f.buyer.id + " buys from " + f.seller.id + " " + shares_text(f.quantity) + " " + f.issuer +
                       " @ " + format_money(f.delivery_price_per_share) + ", " + to_string(f.settlement);
            },
            [&](const Swap& s) {
                return s.equity_receiver.id + " receives equity return on " + shares_text(s.quantity) + " " +
                       s.issuer + " from " + s.fixed_receiver.id + " against " + to_string(s.fixed_rate) +
                       " on " + format_money(s.notional);
            },
        },
        inst.terms);
}

/// Scenarios a request applies to.
std::vector<PriceScenario> select_scenarios(const ContractModel& model, const std::string& selector) {
    if (selector.empty()) return model.scenarios;
    if (selector.rfind("S_T=", 0) == 0) {
        const Money price = parse_money(selector.substr(4), model.currency);
        PriceScenario base;
        if (!model.scenarios.empty()) {
            base = model.scenarios.front();
        } else {
            const auto matches = model.constructions();
            if (matches.empty()) {
                throw Error(ErrorCode::Argument, "no scenario in the file to reprice for " + selector);
            }
            const Loan& loan = model.instruments[matches.front().loan].instrument.as<Loan>();
            const Option& call = model.instruments[matches.front().call].instrument.as<Option>();
            base.issuer = call.issuer;
            base.terminal_date = call.exercise_date;
            base.initial_price = Money(loan.principal.minor_units() / call.quantity, model.currency);
        }
        base.name = "S_T=" + to_decimal_string(price);
        base.terminal_price = price;
        validate_scenario(base);
        return {base};
    }
    if (const PriceScenario* s = model.scenario(selector)) return {*s};
    throw Error(ErrorCode::Argument, "no scenario named '" + selector + "'");
}

Reference reference_for(const ContractModel& model, const ConstructionMatch& m, const std::vector<PriceScenario>& scenarios) {
    const Option& call = model.instruments[m.call].instrument.as<Option>();
    const Loan& loan = model.instruments[m.loan].instrument.as<Loan>();
    Reference ref{call.issuer, Money(loan.principal.minor_units() / call.quantity, model.currency), call.quantity};
    for (const auto& s : scenarios) {
        if (s.issuer == call.issuer) {
            ref.initial_price = s.initial_price;
            break;
        }
    }
    return ref;
}

Table amount_table(std::string title, const std::string& currency) {
    return Table{std::move(title), {"", "Per Share (" + currency + ")", "Total (" + currency + ")"}, {}};
}

void add_row(Table& t, const std::string& label, std::optional<Money> per_share, std::optional<Money> total) {
    auto money_or_blank = [](const std::optional<Money>& m) { return m ? Cell::money(*m) : Cell::empty(); };
    t.rows.push_back({Cell::label(label), money_or_blank(per_share), money_or_blank(total)});
}

class Runner {
public:
    Runner(const ContractModel& model, const RunRequest& request) : model_(model), request_(request) {}

    Report run() {
        report_.command = to_string(request_.command);
        switch (request_.command) {
        case Command::Validate: validate(); break;
        case Command::Payoff: payoff(); break;
        case Command::Settle: settle_all(); break;
        case Command::Parity: parity(); break;
        case Command::Detect: detect(); break;
        case Command::Report:
            validate();
            parity();
            settle_all();
            detect();
            break;
        }
        return std::move(report_);
    }

private:
    void validate() {
        Section s{"model", model_.title.empty() ? "Contract model" : model_.title, {}, {}};
        s.fields = {{"schema_version", std::to_string(model_.schema_version)},
                    {"currency", model_.currency},
                    {"parties", std::to_string(model_.parties.size())},
                    {"instruments", std::to_string(model_.instruments.size())},
                    {"scenarios", std::to_string(model_.scenarios.size())},
                    {"status", "valid"}};

        Table parties{"Parties", {"Party", "Role"}, {}};
        for (const auto& p : model_.parties) parties.rows.push_back({Cell::label(p.id), Cell::label(to_string(p.role))});
        s.tables.push_back(std::move(parties));

        Table inst{"Instruments", {"Id", "Type", "Trade Date", "Terminal Date", "Terms"}, {}};
        for (const auto& e : model_.instruments) {
            const auto terminal = e.instrument.terminal_date();
            inst.rows.push_back({Cell::label(e.instrument.id), Cell::label(e.instrument.kind_name()),
                                 Cell::label(to_string(e.instrument.trade_date)),
                                 Cell::label(terminal ? to_string(*terminal) : "-"),
                                 Cell::label(instrument_summary(e))});
        }
        s.tables.push_back(std::move(inst));

        if (!model_.scenarios.empty()) {
            Table sc{"Scenarios", {"Name", "Issuer", "Date", "Initial Price", "Terminal Price"}, {}};
            for (const auto& x : model_.scenarios) {
                sc.rows.push_back({Cell::label(x.name), Cell::label(x.issuer), Cell::label(to_string(x.terminal_date)),
                                   Cell::money(x.initial_price), Cell::money(x.terminal_price)});
            }
            s.tables.push_back(std::move(sc));
        }

        const auto matches = model_.constructions();
        if (!matches.empty()) {
            Table t{"Loan and option constructions", {"Loan", "Call", "Put"}, {}};
            for (const auto& m : matches) {
                t.rows.push_back({Cell::label(model_.instruments[m.loan].instrument.id),
                                  Cell::label(model_.instruments[m.call].instrument.id),
                                  Cell::label(model_.instruments[m.put].instrument.id)});
            }
            s.tables.push_back(std::move(t));
        }
        report_.sections.push_back(std::move(s));
    }

    std::vector<std::string> payoff_parties() const {
        if (!request_.party.empty()) {
            model_.party(request_.party);
            return {request_.party};
        }
        std::vector<std::string> out;
        for (const auto& d : model_.detections) {
            if (std::find(out.begin(), out.end(), d.party) == out.end()) out.push_back(d.party);
        }
        if (out.empty()) {
            for (const auto& p : model_.parties) {
                if (!model_.portfolio_of(p.id).empty()) out.push_back(p.id);
            }
        }
        return out;
    }

    std::vector<PriceScenario> payoff_grid() const {
        const bool any_grid = request_.grid_min || request_.grid_max || request_.grid_step;
        if (!any_grid) return select_scenarios(model_, request_.scenario);
        std::vector<PriceScenario> base = select_scenarios(model_, request_.scenario);
        if (base.empty()) throw Error(ErrorCode::Argument, "a price grid needs at least one scenario for its date");
        const Money lo = request_.grid_min.value_or(Money::zero(model_.currency));
        const Money step = request_.grid_step.value_or(Money::major(1, model_.currency));
        const Money hi = request_.grid_max.value_or(lo);
        if (!step.is_positive()) throw Error(ErrorCode::Argument, "grid step must be positive");
        if (hi < lo) throw Error(ErrorCode::Argument, "grid max is below grid min");
        if (lo.is_negative()) throw Error(ErrorCode::Argument, "grid prices must be non-negative");
        if ((hi - lo).minor_units() / step.minor_units() > 100000) {
            throw Error(ErrorCode::Argument, "grid has more than 100000 points");
        }
        std::vector<PriceScenario> out;
        for (Money p = lo; p <= hi; p += step) {
            PriceScenario s = at_price(base.front(), p);
            s.name = "S_T=" + to_decimal_string(p);
            out.push_back(std::move(s));
        }
        return out;
    }

    void payoff() {
        const auto grid = payoff_grid();
        for (const auto& party_id : payoff_parties()) {
            const Portfolio portfolio = model_.portfolio_of(party_id);
            Section s{"payoff", "Terminal payoffs: " + party_id, {}, {}};
            const PayoffProfile profile = payoff_profile(portfolio);
            profile_fields(s, profile);
            Table t{"Payoff by terminal price", {"S_T"}, {}};
            for (const auto& p : portfolio.positions()) {
                t.columns.push_back(p.instrument.id + " (" + to_string(p.side) + ")");
            }
            t.columns.push_back("Total");
            for (const auto& sc : grid) {
                std::vector<Cell> row{Cell::money(sc.terminal_price)};
                for (const auto& p : portfolio.positions()) row.push_back(Cell::money(position_payoff(p, sc)));
                row.push_back(Cell::money(portfolio_payoff(portfolio, sc)));
                t.rows.push_back(std::move(row));
            }
            s.tables.push_back(std::move(t));
            report_.sections.push_back(std::move(s));
        }
    }

    static std::string obligation_text(const LedgerEntry& e) {
        return std::visit(overloaded{
                              [](const Pay& p) { return format_money(p.amount); },
                              [](const Deliver& d) { return shares_text(d.quantity) + " " + d.issuer + " shares"; },
                          },
                          e.obligation);
    }

    static std::string obligation_value(const LedgerEntry& e) {
        return std::visit(overloaded{
                              [](const Pay& p) { return to_decimal_string(p.amount); },
                              [](const Deliver& d) { return std::to_string(d.quantity); },
                          },
                          e.obligation);
    }

    static Table ledger_table(const LedgerSnapshot& snap) {
        Table t{"Ledger after " + snap.stage,
                {"Debtor", "Creditor", "Obligation", "Amount", "Source", "Due", "State", "Discharge"},
                {}};
        for (const auto& e : snap.ledger.entries) {
            Cell amount{obligation_text(e), obligation_value(e), true};
            t.rows.push_back({Cell::label(e.debtor.id), Cell::label(e.creditor.id),
                              Cell::label(e.is_pay() ? "pay" : "deliver"), amount,
                              Cell::label(e.source.instrument_id + "/" + e.source.leg), Cell::label(to_string(e.due)),
                              Cell::label(to_string(e.state)), Cell::label(to_string(e.discharge))});
        }
        return t;
    }

    void settle_all() {
        const auto scenarios = select_scenarios(model_, request_.scenario);
        if (scenarios.empty()) throw Error(ErrorCode::Argument, "settle needs at least one scenario");
        const auto contracts = model_.contracts();
        const auto holdings = model_.holdings();
        for (const auto& sc : scenarios) settle_one(sc, contracts, holdings);
    }

    void settle_one(const PriceScenario& sc, const std::vector<Instrument>& contracts,
                    const std::vector<Holding>& holdings) {
        const SettlementResult result = settle(contracts, holdings, sc);
        const std::string& cur = model_.currency;
        const std::string date = to_string(sc.terminal_date);
        Section s{"settlement", "Settlement: " + sc.name, {}, {}};
        s.fields = {{"scenario", sc.name},
                    {"issuer", sc.issuer},
                    {"terminal_date", date},
                    {"initial_price", format_money(sc.initial_price)},
                    {"terminal_price", format_money(sc.terminal_price)}};

        const auto matches = model_.constructions();
        if (!matches.empty()) {
            const Option& call = model_.instruments[matches.front().call].instrument.as<Option>();
            if (call.issuer == sc.issuer) {
                Table gain = amount_table("Hypothetical direct trade", cur);
                add_row(gain, "Selling Price (after announcement)", sc.terminal_price,
                        sc.terminal_price.times(call.quantity));
                add_row(gain, "Less: Acquisition Cost (before announcement)", sc.initial_price,
                        sc.initial_price.times(call.quantity));
                add_row(gain, "Gain from Insider Trading", sc.terminal_price - sc.initial_price,
                        direct_trade_gain(call.quantity, sc));
                s.tables.push_back(std::move(gain));
            }
        }

        Table decisions{"Exercise decisions", {"Option", "Kind", "Strike", "S_T", "Decision"}, {}};
        for (const auto& d : result.decisions) {
            const auto it = std::find_if(contracts.begin(), contracts.end(),
                                         [&](const Instrument& i) { return i.id == d.instrument_id; });
            decisions.rows.push_back({Cell::label(d.instrument_id), Cell::label(to_string(d.kind)),
                                      Cell::money(it->as<Option>().strike_per_share), Cell::money(sc.terminal_price),
                                      Cell::label(to_string(d.decision))});
        }
        if (!decisions.rows.empty()) s.tables.push_back(std::move(decisions));

        for (const auto& snap : result.snapshots) s.tables.push_back(ledger_table(snap));

        for (const auto& m : matches) construction_tables(s, m, sc, result);

        Table net{"Net positions", {"Party", "Net Cash", "Shares Held", "Marked Value", "Title Transferred"}, {}};
        for (const auto& p : result.positions) {
            std::string shares;
            for (const auto& [issuer, q] : p.shares_held) {
                if (!shares.empty()) shares += ", ";
                shares += shares_text(q) + " " + issuer;
            }
            net.rows.push_back({Cell::label(p.party.id), Cell::money(p.net_cash),
                                Cell::label(shares.empty() ? "-" : shares), Cell::money(p.marked_value(sc)),
                                Cell::label(yes_no(p.title_transferred))});
        }
        s.tables.push_back(std::move(net));
        report_.sections.push_back(std::move(s));
    }

    void construction_tables(Section& s, const ConstructionMatch& m, const PriceScenario& sc,
                             const SettlementResult& result) {
        const Instrument& loan_i = model_.instruments[m.loan].instrument;
        const Option& call = model_.instruments[m.call].instrument.as<Option>();
        const Option& put = model_.instruments[m.put].instrument.as<Option>();
        const Loan& loan = loan_i.as<Loan>();
        if (call.issuer != sc.issuer) return;
        const ConditionReport conditions = check_parity_conditions(call, put, loan, reference_for(model_, m, {sc}));
        if (!conditions.all_pass()) return;

        const std::string& cur = model_.currency;
        const std::string date = to_string(sc.terminal_date);
        const Money k = call.strike_per_share;
        const std::int64_t q = call.quantity;
        const Money due = loan_maturity_value(loan);
        const bool call_ex = std::any_of(result.decisions.begin(), result.decisions.end(), [&](const OptionDecision& d) {
            return d.instrument_id == model_.instruments[m.call].instrument.id && d.decision == ExerciseDecision::Exercise;
        });
        const bool put_ex = std::any_of(result.decisions.begin(), result.decisions.end(), [&](const OptionDecision& d) {
            return d.instrument_id == model_.instruments[m.put].instrument.id && d.decision == ExerciseDecision::Exercise;
        });
        const std::string lender_label = call_ex ? "Payoff from Call Option" : put_ex ? "Payoff from Put Option"
                                                                                      : "Payoff from Either Option";
        const std::string borrower_label = call_ex ? "Negative Payoff from Call Option" : lender_label;
        const std::string shares = call.issuer + " Shares";

        Table x = amount_table("Total amount entitled: " + loan.lender.id, cur);
        add_row(x, "Monetary Equivalent of " + shares + " (" + date + ")", sc.terminal_price, sc.terminal_price.times(q));
        add_row(x, "Less: Strike Price", k, k.times(q));
        add_row(x, lender_label, sc.terminal_price - k, (sc.terminal_price - k).times(q));
        add_row(x, "Add: Loan Receivable", std::nullopt, due);
        add_row(x, "Total Amount Entitled (" + date + ")", std::nullopt, result.position_of(loan.lender.id).net_cash);
        s.tables.push_back(std::move(x));

        Table y = amount_table("Net position: " + loan.borrower.id, cur);
        add_row(y, "Strike Price", k, k.times(q));
        add_row(y, "Less: Monetary Equivalent of " + shares + " (" + date + ")", sc.terminal_price,
                sc.terminal_price.times(q));
        add_row(y, borrower_label, k - sc.terminal_price, (k - sc.terminal_price).times(q));
        add_row(y, "Add: New Share Price (" + date + ")", sc.terminal_price, sc.terminal_price.times(q));
        add_row(y, "Gross Position", k, k.times(q));
        add_row(y, "Less: Loan Repayment", std::nullopt, due);
        add_row(y, "Net Position", std::nullopt, result.position_of(loan.borrower.id).marked_value(sc));
        s.tables.push_back(std::move(y));

        s.fields.emplace_back("title_transferred_to_" + loan.lender.id,
                              yes_no(result.position_of(loan.lender.id).title_transferred));
    }

    void parity() {
        const auto matches = model_.constructions();
        if (matches.empty()) throw Error(ErrorCode::Argument, "no loan/call/put construction in the file");
        const auto scenarios = select_scenarios(model_, request_.scenario);
        for (const auto& m : matches) {
            const Instrument& loan_i = model_.instruments[m.loan].instrument;
            const Instrument& call_i = model_.instruments[m.call].instrument;
            const Instrument& put_i = model_.instruments[m.put].instrument;
            const Option& call = call_i.as<Option>();
            const Option& put = put_i.as<Option>();
            const Loan& loan = loan_i.as<Loan>();
            const Reference ref = reference_for(model_, m, scenarios);
            const ConditionReport report = check_parity_conditions(call, put, loan, ref);

            Section s{"parity", "Parity conditions: " + loan_i.id + " / " + call_i.id + " / " + put_i.id, {}, {}};
            s.fields = {{"issuer", ref.issuer},
                        {"quantity", shares_text(ref.quantity)},
                        {"initial_price", format_money(ref.initial_price)},
                        {"principal", format_money(loan.principal)},
                        {"maturity_value", format_money(loan_maturity_value(loan))},
                        {"all_conditions_hold", yes_no(report.all_pass())}};
            Table t{"Conditions", {"#", "Condition", "Result", "Detail"}, {}};
            for (const auto& c : report.conditions) {
                t.rows.push_back({Cell::count(c.number), Cell::label(c.name), Cell::label(c.pass ? "pass" : "FAIL"),
                                  Cell::label(c.detail.empty() ? "-" : c.detail)});
            }
            s.tables.push_back(std::move(t));

            Table id{"Stock + put = loan + call",
                     {"S_T", "Return on Shares of Stock", "Payoff from Option to Sell", "Return on Loan Agreement",
                      "Payoff from Option to Buy", "Stock + Put", "Loan + Call", "Holds"},
                     {}};
            for (const auto& sc : scenarios) {
                if (sc.issuer != ref.issuer || sc.terminal_date != call.exercise_date) continue;
                const Money stock = sc.terminal_price.times(ref.quantity);
                const Money put_pay = payoff_put(sc, put).amount;
                const Money loan_ret = loan_maturity_value(loan);
                const Money call_pay = payoff_call(sc, call).amount;
                id.rows.push_back({Cell::money(sc.terminal_price), Cell::money(stock), Cell::money(put_pay),
                                   Cell::money(loan_ret), Cell::money(call_pay), Cell::money(stock + put_pay),
                                   Cell::money(loan_ret + call_pay),
                                   Cell::label(yes_no(stock + put_pay == loan_ret + call_pay))});
            }
            if (!id.rows.empty()) s.tables.push_back(std::move(id));
            report_.sections.push_back(std::move(s));
        }
    }

    static void profile_fields(Section& s, const PayoffProfile& profile) {
        std::string bps;
        for (auto b : profile.breakpoints) bps += (bps.empty() ? "" : ", ") + format_minor(b);
        std::string slopes;
        for (auto sl : profile.slopes) slopes += (slopes.empty() ? "" : ", ") + shares_text(sl);
        s.fields.emplace_back("breakpoints", "[" + bps + "]");
        s.fields.emplace_back("slopes", "[" + slopes + "]");
        s.fields.emplace_back("value_at_zero", format_money(profile.intercept));
    }

    void detect() {
        std::vector<DetectionRequest> requests = model_.detections;
        if (requests.empty()) {
            std::set<std::string> issuers;
            for (const auto& e : model_.instruments) {
                if (auto i = e.instrument.issuer()) issuers.insert(*i);
            }
            for (const auto& p : model_.parties) {
                for (const auto& i : issuers) requests.push_back({p.id, i});
            }
        }
        for (const auto& req : requests) {
            const Portfolio portfolio = model_.portfolio_of(req.party);
            const DetectionVerdict v = detect_constructive_trade(portfolio, req.issuer);
            if (v.kind == VerdictKind::ConstructiveTrade) report_.constructive_trade_found = true;
            Section s{"detection", "Detection: " + req.party + " against " + req.issuer, {}, {}};
            s.fields = {{"party", req.party},
                        {"insider_role", to_string(model_.party(req.party).role)},
                        {"issuer", req.issuer},
                        {"verdict", to_string(v.kind)}};
            if (v.kind != VerdictKind::NoExposure) {
                s.fields.emplace_back("direction", to_string(v.direction));
                s.fields.emplace_back("quantity", shares_text(v.quantity));
                s.fields.emplace_back("riskless_component", format_money(v.riskless_component));
            }
            std::string moved;
            for (const auto& id : v.audit.instruments) moved += (moved.empty() ? "" : ", ") + id;
            s.fields.emplace_back("title_movement", moved.empty() ? "none" : moved);
            profile_fields(s, v.profile);
            s.fields.emplace_back("evidence", v.evidence);

            Table t{"Payoff profile", {"From", "To", "Slope (shares)"}, {}};
            std::int64_t from = 0;
            for (std::size_t i = 0; i < v.profile.slopes.size(); ++i) {
                const bool last = i == v.profile.breakpoints.size();
                Cell to = last ? Cell{"+inf", "inf", true} : Cell::money(Money(v.profile.breakpoints[i], model_.currency));
                t.rows.push_back({Cell::money(Money(from, model_.currency)), to, Cell::count(v.profile.slopes[i])});
                if (!last) from = v.profile.breakpoints[i];
            }
            s.tables.push_back(std::move(t));
            report_.sections.push_back(std::move(s));
        }
    }

    const ContractModel& model_;
    const RunRequest& request_;
    Report report_;
};

std::string pad(const std::string& s, std::size_t width, bool right) {
    if (s.size() >= width) return s;
    const std::string fill(width - s.size(), ' ');
    return right ? fill + s : s + fill;
}

void render_table(std::string& out, const Table& t) {
    std::vector<std::size_t> widths(t.columns.size(), 0);
    for (std::size_t c = 0; c < t.columns.size(); ++c) widths[c] = t.columns[c].size();
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].text.size());
        }
    }
    std::vector<bool> numeric(t.columns.size(), false);
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size() && c < numeric.size(); ++c) {
            if (row[c].numeric) numeric[c] = true;
        }
    }
    auto line = [&](auto cell_text) {
        std::string l;
        for (std::size_t c = 0; c < widths.size(); ++c) {
            if (c > 0) l += "  ";
            l += pad(cell_text(c), widths[c], numeric[c]);
        }
        while (!l.empty() && l.back() == ' ') l.pop_back();
        out += l + "\n";
    };
    out += t.title + "\n";
    line([&](std::size_t c) { return t.columns[c]; });
    std::string rule;
    for (std::size_t c = 0; c < widths.size(); ++c) {
        if (c > 0) rule += "  ";
        rule += std::string(widths[c], '-');
    }
    out += rule + "\n";
    for (const auto& row : t.rows) {
        line([&](std::size_t c) { return c < row.size() ? row[c].text : std::string{}; });
    }
}

} // namespace

Cell Cell::money(const Money& m) {
    return Cell{format_money(m, NegativeStyle::Parentheses), to_decimal_string(m), true};
}

Cell Cell::count(std::int64_t n) { return Cell{shares_text(n), std::to_string(n), true}; }

Report run(const ContractModel& model, const RunRequest& request) { return Runner(model, request).run(); }

std::string render_text(const Report& report) {
    std::string out;
    for (std::size_t i = 0; i < report.sections.size(); ++i) {
        const Section& s = report.sections[i];
        if (i > 0) out += "\n";
        out += "== " + s.title + " ==\n";
        std::size_t key_width = 0;
        for (const auto& [k, _] : s.fields) key_width = std::max(key_width, k.size());
        for (const auto& [k, v] : s.fields) out += pad(k + ":", key_width + 1, false) + " " + v + "\n";
        for (const auto& t : s.tables) {
            out += "\n";
            render_table(out, t);
        }
    }
    return out;
}

std::string render_structured(const Report& report) {
    using json = nlohmann::ordered_json;
    json root;
    root["command"] = report.command;
    root["constructive_trade_found"] = report.constructive_trade_found;
    json sections = json::array();
    for (const auto& s : report.sections) {
        json js;
        js["kind"] = s.kind;
        js["title"] = s.title;
        json fields = json::object();
        for (const auto& [k, v] : s.fields) fields[k] = v;
        js["fields"] = fields;
        json tables = json::array();
        for (const auto& t : s.tables) {
            json jt;
            jt["title"] = t.title;
            jt["columns"] = t.columns;
            json rows = json::array();
            for (const auto& row : t.rows) {
                json jr = json::array();
                for (const auto& cell : row) jr.push_back(cell.value);
                rows.push_back(std::move(jr));
            }
            jt["rows"] = rows;
            tables.push_back(std::move(jt));
        }
        js["tables"] = tables;
        sections.push_back(std::move(js));
    }
    root["sections"] = sections;
    return root.dump(2) + "\n";
}

std::string render(const Report& report, OutputFormat format) {
    return format == OutputFormat::Text ? render_text(report) : render_structured(report);
}

const char* to_string(Command c) {
    switch (c) {
    case Command::Validate: return "validate";
    case Command::Payoff: return "payoff";
    case Command::Settle: return "settle";
    case Command::Parity: return "parity";
    case Command::Detect: return "detect";
    case Command::Report: return "report";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::Validate, Command::Payoff, Command::Settle, Command::Parity, Command::Detect,
                      Command::Report}) {
        if (name == to_string(c)) return c;
    }
    return std::nullopt;
}

} // namespace ctrade
