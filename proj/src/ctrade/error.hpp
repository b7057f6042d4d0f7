// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ctrade {

enum class ErrorCode {
    Parse,
    Validation,
    Exactness,
    CurrencyMismatch,
    Overflow,
    Unsupported,
    Settlement,
    Argument,
};

const char* to_string(ErrorCode code) noexcept;

/// Base error for everything the engine throws. The code is what the C API
/// maps onto its status values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct Violation {
    std::string name;    // stable identifier, e.g. "quantity_not_positive"
    std::string detail;
};

/// A contract failed one or more of its invariants. Every failed invariant is
/// listed, not only the first.
class ValidationError : public Error {
public:
    ValidationError(std::string context, std::vector<Violation> violations);

    const std::vector<Violation>& violations() const noexcept { return violations_; }
    bool has(const std::string& name) const;

private:
    std::vector<Violation> violations_;
};

/// Set-off attempted while one of the Civil Code Art. 1279 requisites does
/// not hold. `requisite` is the paragraph number (1..5).
class CompensationError : public Error {
public:
    CompensationError(int requisite, const std::string& detail);

    int requisite() const noexcept { return requisite_; }

private:
    int requisite_;
};

} // namespace ctrade
