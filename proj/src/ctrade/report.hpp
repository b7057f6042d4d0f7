// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/contract_file.hpp"

namespace ctrade {

enum class Command { Validate, Payoff, Settle, Parity, Detect, Report };
enum class OutputFormat { Text, Structured };

struct RunRequest {
    Command command = Command::Report;
    /// Empty for every scenario in the file, a scenario name, or "S_T=<price>"
    /// to reprice the file's first scenario.
    std::string scenario;
    /// Payoff tables: party to evaluate; empty for every detection party.
    std::string party;
    std::optional<Money> grid_min;
    std::optional<Money> grid_max;
    std::optional<Money> grid_step;
};

struct Cell {
    std::string text;        // rendered form, e.g. "(45,000,000.00)"
    std::string value;       // plain form for structured output, e.g. "-45000000.00"
    bool numeric = false;

    static Cell label(std::string s) { return Cell{s, std::move(s), false}; }
    static Cell money(const Money& m);
    static Cell count(std::int64_t n);
    static Cell empty() { return Cell{}; }
};

struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Section {
    std::string kind;   // model, payoff, settlement, parity, detection
    std::string title;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<Table> tables;
};

struct Report {
    std::string command;
    std::vector<Section> sections;
    bool constructive_trade_found = false;
};

/// Executes one request against a parsed model. Output depends only on the
/// inputs.
Report run(const ContractModel& model, const RunRequest& request);

std::string render_text(const Report& report);
/// JSON document with the same content as the text rendering.
std::string render_structured(const Report& report);
std::string render(const Report& report, OutputFormat format);

const char* to_string(Command c);
std::optional<Command> parse_command(std::string_view name);

} // namespace ctrade
