// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Talks to the engine only through the C API.
//
// Exit codes: 0 success, 1 the contract file failed to parse or validate,
// 2 a constructive trade was detected, 3 evaluation error, 4 usage error.

#include "ctrade/ctrade.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitConstructive = 2;
constexpr int kExitEvaluation = 3;
constexpr int kExitUsage = 4;

struct ModelDeleter {
    void operator()(ctrade_model* m) const { ctrade_model_free(m); }
};
using ModelPtr = std::unique_ptr<ctrade_model, ModelDeleter>;

struct StringDeleter {
    void operator()(char* s) const { ctrade_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct Options {
    std::string file;
    std::string scenario;
    std::string party;
    std::optional<std::string> grid_min;
    std::optional<std::string> grid_max;
    std::optional<std::string> grid_step;
    std::string format = "text";
    bool canonical = false;
};

void report_error(const char* stage, ctrade_status status, bool verbose) {
    if (verbose) {
        std::fprintf(stderr, "ctrade: %s failed (%s): %s\n", stage, ctrade_status_name(status), ctrade_last_error());
    } else {
        std::fprintf(stderr, "ctrade: %s\n", ctrade_last_error());
    }
}

int execute(ctrade_command command, const Options& opts, bool verbose) {
    ctrade_model* raw = nullptr;
    const ctrade_status load = ctrade_model_load(opts.file.c_str(), &raw);
    if (load != CTRADE_OK) {
        report_error("loading contracts", load, verbose);
        return load == CTRADE_ERR_INTERNAL ? kExitEvaluation : kExitInvalid;
    }
    ModelPtr model(raw);

    if (command == CTRADE_CMD_VALIDATE && opts.canonical) {
        char* text = nullptr;
        const ctrade_status st = ctrade_model_render(model.get(), &text);
        OwnedString owned(text);
        if (st != CTRADE_OK) {
            report_error("rendering contracts", st, verbose);
            return kExitEvaluation;
        }
        std::fputs(owned.get(), stdout);
        return kExitOk;
    }

    ctrade_request req{};
    req.command = command;
    req.format = opts.format == "structured" || opts.format == "json" ? CTRADE_FORMAT_STRUCTURED : CTRADE_FORMAT_TEXT;
    req.scenario = opts.scenario.empty() ? nullptr : opts.scenario.c_str();
    req.party = opts.party.empty() ? nullptr : opts.party.c_str();
    req.grid_min = opts.grid_min ? opts.grid_min->c_str() : nullptr;
    req.grid_max = opts.grid_max ? opts.grid_max->c_str() : nullptr;
    req.grid_step = opts.grid_step ? opts.grid_step->c_str() : nullptr;

    char* text = nullptr;
    int constructive = 0;
    const ctrade_status st = ctrade_run(model.get(), &req, &text, &constructive);
    OwnedString owned(text);
    if (st != CTRADE_OK) {
        report_error("run", st, verbose);
        return st == CTRADE_ERR_VALIDATION || st == CTRADE_ERR_PARSE ? kExitInvalid : kExitEvaluation;
    }
    std::fputs(owned.get(), stdout);
    return constructive != 0 ? kExitConstructive : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contract engine for cash-settled derivative constructions"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Report error categories with messages");
    app.set_version_flag("--version", std::string(ctrade_version()));

    struct Subcommand {
        const char* name;
        const char* help;
        ctrade_command command;
    };
    const Subcommand subcommands[] = {
        {"validate", "Parse and validate a contract file", CTRADE_CMD_VALIDATE},
        {"payoff", "Terminal payoff tables per position", CTRADE_CMD_PAYOFF},
        {"settle", "Run exercise, novation and compensation for each scenario", CTRADE_CMD_SETTLE},
        {"parity", "Check the six parity conditions and the parity identity", CTRADE_CMD_PARITY},
        {"detect", "Classify portfolios as actual, constructive or no trade", CTRADE_CMD_DETECT},
        {"report", "Everything above in one document", CTRADE_CMD_REPORT},
    };

    Options opts;
    std::optional<ctrade_command> chosen;
    for (const Subcommand& spec : subcommands) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        sub->add_option("file", opts.file, "Contract file")->required()->check(CLI::ExistingFile);
        sub->add_option("-f,--format", opts.format, "Output format")
            ->check(CLI::IsMember({"text", "structured", "json"}));
        if (spec.command != CTRADE_CMD_VALIDATE) {
            sub->add_option("-s,--scenario", opts.scenario, "Scenario name or S_T=<price per share>");
        }
        if (spec.command == CTRADE_CMD_VALIDATE) {
            sub->add_flag("--canonical", opts.canonical, "Print the canonical contract file instead");
        }
        if (spec.command == CTRADE_CMD_PAYOFF) {
            sub->add_option("-p,--party", opts.party, "Party whose positions are evaluated");
            sub->add_option("--grid-min", opts.grid_min, "Lowest terminal price per share");
            sub->add_option("--grid-max", opts.grid_max, "Highest terminal price per share");
            sub->add_option("--grid-step", opts.grid_step, "Price step per share");
        }
        const ctrade_command command = spec.command;
        sub->callback([&chosen, command] { chosen = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (!chosen) return kExitUsage;
    return execute(*chosen, opts, verbose);
}
