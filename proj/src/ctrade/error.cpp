// SPDX-License-Identifier: Apache-2.0
#include "ctrade/error.hpp"

#include <algorithm>

namespace ctrade {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Exactness: return "exactness";
    case ErrorCode::CurrencyMismatch: return "currency_mismatch";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Settlement: return "settlement";
    case ErrorCode::Argument: return "argument";
    }
    return "unknown";
}

namespace {

std::string join_violations(const std::string& context, const std::vector<Violation>& vs) {
    std::string out = context + ": ";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i > 0) out += "; ";
        out += vs[i].name;
        if (!vs[i].detail.empty()) out += " (" + vs[i].detail + ")";
    }
    return out;
}

const char* requisite_text(int requisite) {
    switch (requisite) {
    case 1: return "each obligor must be bound principally and be a principal creditor of the other";
    case 2: return "both debts must consist in a sum of money";
    case 3: return "both debts must be due";
    case 4: return "both debts must be liquidated and demandable";
    case 5: return "neither debt may be subject to retention or controversy";
    default: return "unknown requisite";
    }
}

} // namespace

ValidationError::ValidationError(std::string context, std::vector<Violation> violations)
    : Error(ErrorCode::Validation, join_violations(context, violations)),
      violations_(std::move(violations)) {}

bool ValidationError::has(const std::string& name) const {
    return std::any_of(violations_.begin(), violations_.end(),
                       [&](const Violation& v) { return v.name == name; });
}

CompensationError::CompensationError(int requisite, const std::string& detail)
    : Error(ErrorCode::Settlement,
            "legal compensation requisite Art. 1279(" + std::to_string(requisite) +
                ") not met: " + requisite_text(requisite) + ": " + detail),
      requisite_(requisite) {}

} // namespace ctrade
