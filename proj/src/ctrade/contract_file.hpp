// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctrade/instruments.hpp"
#include "ctrade/parity.hpp"
#include "ctrade/payoff.hpp"
#include "ctrade/settlement.hpp"

#include <string_view>

namespace ctrade {

inline constexpr int kContractSchemaVersion = 1;

struct ModelEntry {
    Instrument instrument;
    std::optional<Party> owner;  // stock holdings only
    Side side = Side::Long;

    friend bool operator==(const ModelEntry&, const ModelEntry&) = default;
};

struct DetectionRequest {
    std::string party;
    std::string issuer;

    friend bool operator==(const DetectionRequest&, const DetectionRequest&) = default;
};

/// A loan whose lender holds a call written by the borrower and has written
/// a put held by the borrower, all on one issuer.
/// Indices refer to ContractModel::instruments.
struct ConstructionMatch {
    std::size_t loan = 0;
    std::size_t call = 0;
    std::size_t put = 0;
};

struct ContractModel {
    int schema_version = kContractSchemaVersion;
    std::string title;
    std::string currency;
    std::vector<Party> parties;
    std::optional<Relations> relations;
    std::vector<ModelEntry> instruments;
    std::vector<PriceScenario> scenarios;
    std::vector<DetectionRequest> detections;

    const Party& party(const std::string& id) const;
    /// Every position the party takes in the file's instruments.
    Portfolio portfolio_of(const std::string& party_id) const;
    /// Everything except stock holdings.
    std::vector<Instrument> contracts() const;
    std::vector<Holding> holdings() const;
    std::vector<ConstructionMatch> constructions() const;
    const PriceScenario* scenario(const std::string& name) const;

    friend bool operator==(const ContractModel&, const ContractModel&) = default;
};

/// Parses and validates a contract document (JSON, documented in
/// docs/contract-format.md). Errors name the offending field path.
ContractModel parse_contracts(std::string_view document);
ContractModel load_contracts(const std::string& path);

/// Canonical document; parse_contracts(render_contracts(m)) == m.
std::string render_contracts(const ContractModel& model);

} // namespace ctrade
