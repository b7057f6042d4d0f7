// SPDX-License-Identifier: Apache-2.0
#include "ctrade/contract_file.hpp"

#include "ctrade/error.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace ctrade {

namespace {

using json = nlohmann::ordered_json;

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw Error(ErrorCode::Parse, path + ": " + message);
}

// Field-addressed reader over one JSON object. Every key must be consumed
// or explicitly allowed, so misspelt fields are caught.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(path_, "expected an object");
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return path_ + "." + key; }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json& get(const std::string& key) {
        seen_.insert(key);
        if (!node_.contains(key)) fail(at(key), "required field is missing");
        return node_.at(key);
    }

    std::string string(const std::string& key) {
        const json& v = get(key);
        if (!v.is_string()) fail(at(key), "expected a string");
        return v.get<std::string>();
    }

    std::string string_or(const std::string& key, std::string fallback) {
        if (!has(key)) {
            seen_.insert(key);
            return fallback;
        }
        return string(key);
    }

    std::int64_t integer(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number_integer()) fail(at(key), "expected an integer");
        return v.get<std::int64_t>();
    }

    Money money(const std::string& key, const std::string& currency) {
        const json& v = get(key);
        if (!v.is_string()) fail(at(key), "amounts must be decimal strings, e.g. \"100000000.00\"");
        try {
            return parse_money(v.get<std::string>(), currency);
        } catch (const Error& e) {
            throw Error(e.code(), at(key) + ": " + e.what());
        }
    }

    Date date(const std::string& key) {
        const std::string text = string(key);
        try {
            return parse_date(text);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, at(key) + ": " + e.what());
        }
    }

    Rate rate(const std::string& key) {
        const std::string text = string(key);
        try {
            return parse_rate(text);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, at(key) + ": " + e.what());
        }
    }

    template <typename Enum>
    Enum choice(const std::string& key, std::initializer_list<std::pair<const char*, Enum>> options,
                std::optional<Enum> fallback = std::nullopt) {
        if (!has(key) && fallback) {
            seen_.insert(key);
            return *fallback;
        }
        const std::string v = string(key);
        std::string allowed;
        for (const auto& [name, value] : options) {
            if (v == name) return value;
            allowed += allowed.empty() ? name : std::string(", ") + name;
        }
        fail(at(key), "unknown value \"" + v + "\" (expected one of: " + allowed + ")");
    }

    const json& array(const std::string& key, bool required = true) {
        static const json empty = json::array();
        if (!required && !has(key)) {
            seen_.insert(key);
            return empty;
        }
        const json& v = get(key);
        if (!v.is_array()) fail(at(key), "expected an array");
        return v;
    }

    void finish() const {
        for (const auto& [key, _] : node_.items()) {
            if (!seen_.contains(key)) fail(at(key), "unknown field");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

const std::initializer_list<std::pair<const char*, InsiderRole>> kRoles = {
    {"primary_insider", InsiderRole::PrimaryInsider},
    {"secondary_insider", InsiderRole::SecondaryInsider},
    {"not_insider", InsiderRole::NotInsider},
};
const std::initializer_list<std::pair<const char*, Settlement>> kSettlements = {
    {"cash_net", Settlement::CashNet}, {"physical", Settlement::Physical}};
const std::initializer_list<std::pair<const char*, OptionKind>> kKinds = {
    {"call", OptionKind::Call}, {"put", OptionKind::Put}};
const std::initializer_list<std::pair<const char*, ExerciseStyle>> kStyles = {
    {"european", ExerciseStyle::European}, {"american", ExerciseStyle::American}};
const std::initializer_list<std::pair<const char*, Side>> kSides = {{"long", Side::Long}, {"short", Side::Short}};
const std::initializer_list<std::pair<const char*, IssuerOffice>> kOffices = {
    {"director", IssuerOffice::Director},
    {"officer", IssuerOffice::Officer},
    {"controlling_person", IssuerOffice::ControllingPerson},
    {"position_holder", IssuerOffice::PositionHolder},
};

const char* role_key(InsiderRole r) {
    switch (r) {
    case InsiderRole::PrimaryInsider: return "primary_insider";
    case InsiderRole::SecondaryInsider: return "secondary_insider";
    case InsiderRole::NotInsider: return "not_insider";
    }
    return "?";
}

class ModelParser {
public:
    ContractModel parse(const json& root) {
        Reader top(root, "$");
        const json& version = top.get("schema_version");
        if (!version.is_number_integer() || version.get<int>() != kContractSchemaVersion) {
            fail(top.at("schema_version"), "unsupported schema version (expected " +
                                               std::to_string(kContractSchemaVersion) + ")");
        }
        model_.title = top.string_or("title", "");
        model_.currency = top.string("currency");
        if (model_.currency.empty()) fail(top.at("currency"), "must not be empty");
        default_trade_date_ = top.has("trade_date") ? std::optional<Date>(top.date("trade_date")) : std::nullopt;

        parse_parties(top);
        if (top.has("relations")) parse_relations(Reader(top.get("relations"), top.at("relations")));
        classify();

        const json& instruments = top.array("instruments");
        std::set<std::string> ids;
        for (std::size_t i = 0; i < instruments.size(); ++i) {
            const std::string path = top.at("instruments") + "[" + std::to_string(i) + "]";
            ModelEntry entry = parse_instrument(Reader(instruments[i], path));
            if (!ids.insert(entry.instrument.id).second) fail(path + ".id", "duplicate instrument id '" + entry.instrument.id + "'");
            try {
                validate_contract(entry.instrument);
            } catch (const ValidationError& e) {
                throw ValidationError(path + " ('" + entry.instrument.id + "')", e.violations());
            }
            model_.instruments.push_back(std::move(entry));
        }

        const json& scenarios = top.array("scenarios", false);
        std::set<std::string> names;
        for (std::size_t i = 0; i < scenarios.size(); ++i) {
            const std::string path = top.at("scenarios") + "[" + std::to_string(i) + "]";
            Reader r(scenarios[i], path);
            PriceScenario s;
            s.name = r.string("name");
            s.issuer = r.string("issuer");
            s.terminal_date = r.date("terminal_date");
            s.initial_price = r.money("initial_price", model_.currency);
            s.terminal_price = r.money("terminal_price", model_.currency);
            r.finish();
            if (!names.insert(s.name).second) fail(path + ".name", "duplicate scenario name '" + s.name + "'");
            try {
                validate_scenario(s);
            } catch (const Error& e) {
                fail(path, e.what());
            }
            model_.scenarios.push_back(std::move(s));
        }

        const json& detections = top.array("detections", false);
        for (std::size_t i = 0; i < detections.size(); ++i) {
            const std::string path = top.at("detections") + "[" + std::to_string(i) + "]";
            Reader r(detections[i], path);
            DetectionRequest d;
            d.party = party_ref(r, "party").id;
            d.issuer = r.string("issuer");
            r.finish();
            model_.detections.push_back(std::move(d));
        }
        top.finish();
        return std::move(model_);
    }

private:
    void parse_parties(Reader& top) {
        const json& parties = top.array("parties");
        for (std::size_t i = 0; i < parties.size(); ++i) {
            const std::string path = top.at("parties") + "[" + std::to_string(i) + "]";
            Reader r(parties[i], path);
            Party p;
            p.id = r.string("id");
            if (p.id.empty()) fail(path + ".id", "must not be empty");
            if (r.has("role")) {
                p.role = r.choice("role", kRoles);
                explicit_roles_.insert(p.id);
            }
            r.finish();
            for (const auto& existing : model_.parties) {
                if (existing.id == p.id) fail(path + ".id", "duplicate party '" + p.id + "'");
            }
            model_.parties.push_back(std::move(p));
        }
    }

    void parse_relations(Reader r) {
        Relations rel;
        rel.issuer = r.string("issuer");
        const json& affiliations = r.array("affiliations", false);
        for (std::size_t i = 0; i < affiliations.size(); ++i) {
            Reader a(affiliations[i], r.at("affiliations") + "[" + std::to_string(i) + "]");
            Affiliation aff;
            aff.party = party_ref(a, "party").id;
            aff.issuer = a.string_or("issuer", rel.issuer);
            aff.office = a.choice("office", kOffices);
            a.finish();
            rel.affiliations.push_back(std::move(aff));
        }
        const json& tips = r.array("tips", false);
        for (std::size_t i = 0; i < tips.size(); ++i) {
            Reader t(tips[i], r.at("tips") + "[" + std::to_string(i) + "]");
            Tip tip;
            tip.from = party_ref(t, "from").id;
            tip.to = party_ref(t, "to").id;
            t.finish();
            rel.tips.push_back(std::move(tip));
        }
        r.finish();
        relations_path_ = r.path();
        model_.relations = std::move(rel);
    }

    void classify() {
        if (!model_.relations) return;
        for (auto& p : model_.parties) {
            if (explicit_roles_.contains(p.id)) continue;
            try {
                p.role = classify_insider(p, *model_.relations);
            } catch (const Error& e) {
                fail(relations_path_ + ".tips", e.what());
            }
        }
    }

    const Party& party_ref(Reader& r, const std::string& key) {
        const std::string id = r.string(key);
        for (const auto& p : model_.parties) {
            if (p.id == id) return p;
        }
        fail(r.at(key), "unknown party '" + id + "'");
    }

    ModelEntry parse_instrument(Reader r) {
        const std::string& cur = model_.currency;
        ModelEntry entry;
        Instrument& inst = entry.instrument;
        inst.id = r.string("id");
        const std::string type = r.string("type");
        if (r.has("trade_date") || !default_trade_date_) {
            inst.trade_date = r.date("trade_date");
        } else {
            inst.trade_date = *default_trade_date_;
        }
        if (type == "stock") {
            Stock s;
            entry.owner = party_ref(r, "owner");
            entry.side = r.choice("side", kSides, std::optional<Side>(Side::Long));
            s.issuer = r.string("issuer");
            s.quantity = r.integer("quantity");
            inst.terms = s;
        } else if (type == "loan") {
            Loan l;
            l.lender = party_ref(r, "lender");
            l.borrower = party_ref(r, "borrower");
            l.principal = r.money("principal", cur);
            l.rate = r.rate("rate");
            l.maturity = r.date("maturity");
            inst.terms = l;
        } else if (type == "option") {
            Option o;
            o.kind = r.choice("kind", kKinds);
            o.style = r.choice("style", kStyles);
            o.holder = party_ref(r, "holder");
            o.writer = party_ref(r, "writer");
            o.issuer = r.string("issuer");
            o.quantity = r.integer("quantity");
            o.strike_per_share = r.money("strike_per_share", cur);
            o.exercise_date = r.date("exercise_date");
            o.premium = r.has("premium") ? r.money("premium", cur) : Money::zero(cur);
            o.settlement = r.choice("settlement", kSettlements);
            inst.terms = o;
        } else if (type == "forward") {
            Forward f;
            f.buyer = party_ref(r, "buyer");
            f.seller = party_ref(r, "seller");
            f.issuer = r.string("issuer");
            f.quantity = r.integer("quantity");
            f.delivery_price_per_share = r.money("delivery_price_per_share", cur);
            f.date = r.date("date");
            f.settlement = r.choice("settlement", kSettlements);
            inst.terms = f;
        } else if (type == "swap") {
            Swap s;
            s.equity_receiver = party_ref(r, "equity_receiver");
            s.fixed_receiver = party_ref(r, "fixed_receiver");
            s.issuer = r.string("issuer");
            s.quantity = r.integer("quantity");
            s.reference_price_per_share = r.money("reference_price_per_share", cur);
            s.notional = r.money("notional", cur);
            s.fixed_rate = r.rate("fixed_rate");
            s.date = r.date("date");
            inst.terms = s;
        } else {
            fail(r.at("type"), "unknown instrument type \"" + type + "\" (expected stock, loan, option, forward, swap)");
        }
        r.finish();
        return entry;
    }

    ContractModel model_;
    std::optional<Date> default_trade_date_;
    std::set<std::string> explicit_roles_;
    std::string relations_path_ = "$.relations";
};

json render_instrument(const ModelEntry& entry) {
    const Instrument& inst = entry.instrument;
    json j;
    j["id"] = inst.id;
    std::visit(overloaded{
                   [&](const Stock& s) {
                       j["type"] = "stock";
                       j["trade_date"] = to_string(inst.trade_date);
                       j["owner"] = entry.owner ? entry.owner->id : "";
                       j["side"] = to_string(entry.side);
                       j["issuer"] = s.issuer;
                       j["quantity"] = s.quantity;
                   },
                   [&](const Loan& l) {
                       j["type"] = "loan";
                       j["trade_date"] = to_string(inst.trade_date);
                       j["lender"] = l.lender.id;
                       j["borrower"] = l.borrower.id;
                       j["principal"] = to_decimal_string(l.principal);
                       j["rate"] = to_string(l.rate);
                       j["maturity"] = to_string(l.maturity);
                   },
                   [&](const Option& o) {
                       j["type"] = "option";
                       j["trade_date"] = to_string(inst.trade_date);
                       j["kind"] = to_string(o.kind);
                       j["style"] = to_string(o.style);
                       j["holder"] = o.holder.id;
                       j["writer"] = o.writer.id;
                       j["issuer"] = o.issuer;
                       j["quantity"] = o.quantity;
                       j["strike_per_share"] = to_decimal_string(o.strike_per_share);
                       j["exercise_date"] = to_string(o.exercise_date);
                       j["premium"] = to_decimal_string(o.premium);
                       j["settlement"] = to_string(o.settlement);
                   },
                   [&](const Forward& f) {
                       j["type"] = "forward";
                       j["trade_date"] = to_string(inst.trade_date);
                       j["buyer"] = f.buyer.id;
                       j["seller"] = f.seller.id;
                       j["issuer"] = f.issuer;
                       j["quantity"] = f.quantity;
                       j["delivery_price_per_share"] = to_decimal_string(f.delivery_price_per_share);
                       j["date"] = to_string(f.date);
                       j["settlement"] = to_string(f.settlement);
                   },
                   [&](const Swap& s) {
                       j["type"] = "swap";
                       j["trade_date"] = to_string(inst.trade_date);
                       j["equity_receiver"] = s.equity_receiver.id;
                       j["fixed_receiver"] = s.fixed_receiver.id;
                       j["issuer"] = s.issuer;
                       j["quantity"] = s.quantity;
                       j["reference_price_per_share"] = to_decimal_string(s.reference_price_per_share);
                       j["notional"] = to_decimal_string(s.notional);
                       j["fixed_rate"] = to_string(s.fixed_rate);
                       j["date"] = to_string(s.date);
                   },
               },
               inst.terms);
    return j;
}

} // namespace

const Party& ContractModel::party(const std::string& id) const {
    for (const auto& p : parties) {
        if (p.id == id) return p;
    }
    throw Error(ErrorCode::Argument, "unknown party '" + id + "'");
}

Portfolio ContractModel::portfolio_of(const std::string& party_id) const {
    const Party& owner = party(party_id);
    Portfolio out(owner);
    for (const auto& e : instruments) {
        if (e.instrument.is<Stock>()) {
            if (e.owner && e.owner->id == party_id) out.add(make_stock_position(owner, e.instrument, e.side));
            continue;
        }
        try {
            out.add(make_position(owner, e.instrument));
        } catch (const Error&) {
            // not a counterparty to this contract
        }
    }
    return out;
}

std::vector<Instrument> ContractModel::contracts() const {
    std::vector<Instrument> out;
    for (const auto& e : instruments) {
        if (!e.instrument.is<Stock>()) out.push_back(e.instrument);
    }
    return out;
}

std::vector<Holding> ContractModel::holdings() const {
    std::vector<Holding> out;
    for (const auto& e : instruments) {
        if (!e.instrument.is<Stock>() || !e.owner) continue;
        const Stock& s = e.instrument.as<Stock>();
        out.push_back(Holding{*e.owner, s.issuer, e.side == Side::Long ? s.quantity : -s.quantity});
    }
    return out;
}

std::vector<ConstructionMatch> ContractModel::constructions() const {
    std::vector<ConstructionMatch> out;
    for (std::size_t li = 0; li < instruments.size(); ++li) {
        if (!instruments[li].instrument.is<Loan>()) continue;
        const Loan& loan = instruments[li].instrument.as<Loan>();
        std::optional<std::size_t> call;
        std::optional<std::size_t> put;
        for (std::size_t i = 0; i < instruments.size(); ++i) {
            const Instrument& inst = instruments[i].instrument;
            if (!inst.is<Option>()) continue;
            const Option& o = inst.as<Option>();
            if (!call && o.kind == OptionKind::Call && same_party(o.holder, loan.lender) &&
                same_party(o.writer, loan.borrower)) {
                call = i;
            }
            if (!put && o.kind == OptionKind::Put && same_party(o.holder, loan.borrower) &&
                same_party(o.writer, loan.lender)) {
                put = i;
            }
        }
        if (call && put &&
            instruments[*call].instrument.as<Option>().issuer == instruments[*put].instrument.as<Option>().issuer) {
            out.push_back({li, *call, *put});
        }
    }
    return out;
}

const PriceScenario* ContractModel::scenario(const std::string& name) const {
    for (const auto& s : scenarios) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

ContractModel parse_contracts(std::string_view document) {
    json root;
    try {
        root = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::Parse, std::string("malformed document: ") + e.what());
    }
    return ModelParser{}.parse(root);
}

ContractModel load_contracts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Argument, "cannot open contract file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_contracts(buf.str());
    } catch (const ValidationError& e) {
        throw ValidationError(path, e.violations());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string render_contracts(const ContractModel& model) {
    json root;
    root["schema_version"] = model.schema_version;
    if (!model.title.empty()) root["title"] = model.title;
    root["currency"] = model.currency;
    json parties = json::array();
    for (const auto& p : model.parties) parties.push_back({{"id", p.id}, {"role", role_key(p.role)}});
    root["parties"] = parties;
    if (model.relations) {
        json rel;
        rel["issuer"] = model.relations->issuer;
        json affs = json::array();
        for (const auto& a : model.relations->affiliations) {
            affs.push_back({{"party", a.party}, {"issuer", a.issuer}, {"office", to_string(a.office)}});
        }
        rel["affiliations"] = affs;
        json tips = json::array();
        for (const auto& t : model.relations->tips) tips.push_back({{"from", t.from}, {"to", t.to}});
        rel["tips"] = tips;
        root["relations"] = rel;
    }
    json instruments = json::array();
    for (const auto& e : model.instruments) instruments.push_back(render_instrument(e));
    root["instruments"] = instruments;
    json scenarios = json::array();
    for (const auto& s : model.scenarios) {
        scenarios.push_back({{"name", s.name},
                             {"issuer", s.issuer},
                             {"terminal_date", to_string(s.terminal_date)},
                             {"initial_price", to_decimal_string(s.initial_price)},
                             {"terminal_price", to_decimal_string(s.terminal_price)}});
    }
    root["scenarios"] = scenarios;
    json detections = json::array();
    for (const auto& d : model.detections) detections.push_back({{"party", d.party}, {"issuer", d.issuer}});
    root["detections"] = detections;
    return root.dump(2) + "\n";
}

} // namespace ctrade
