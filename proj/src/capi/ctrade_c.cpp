// SPDX-License-Identifier: Apache-2.0
#include "ctrade/ctrade.h"

#include "ctrade/contract_file.hpp"
#include "ctrade/error.hpp"
#include "ctrade/parity.hpp"
#include "ctrade/report.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

struct ctrade_model {
    ctrade::ContractModel model;
};

namespace {

thread_local std::string g_last_error;

ctrade_status status_of(ctrade::ErrorCode code) {
    using ctrade::ErrorCode;
    switch (code) {
    case ErrorCode::Parse: return CTRADE_ERR_PARSE;
    case ErrorCode::Validation: return CTRADE_ERR_VALIDATION;
    case ErrorCode::Exactness: return CTRADE_ERR_EXACTNESS;
    case ErrorCode::CurrencyMismatch: return CTRADE_ERR_CURRENCY;
    case ErrorCode::Overflow: return CTRADE_ERR_OVERFLOW;
    case ErrorCode::Unsupported: return CTRADE_ERR_UNSUPPORTED;
    case ErrorCode::Settlement: return CTRADE_ERR_SETTLEMENT;
    case ErrorCode::Argument: return CTRADE_ERR_ARGUMENT;
    }
    return CTRADE_ERR_INTERNAL;
}

template <typename F> ctrade_status guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return CTRADE_OK;
    } catch (const ctrade::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return CTRADE_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CTRADE_ERR_INTERNAL;
    }
}

ctrade_status null_argument(const char* what) {
    g_last_error = std::string(what) + " must not be NULL";
    return CTRADE_ERR_ARGUMENT;
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

std::optional<ctrade::Money> price_arg(const char* text, const std::string& currency) {
    if (text == nullptr) return std::nullopt;
    return ctrade::parse_money(text, currency);
}

} // namespace

extern "C" {

const char* ctrade_version(void) { return "1.0.0"; }

const char* ctrade_status_name(ctrade_status status) {
    switch (status) {
    case CTRADE_OK: return "ok";
    case CTRADE_ERR_PARSE: return "parse error";
    case CTRADE_ERR_VALIDATION: return "validation error";
    case CTRADE_ERR_EXACTNESS: return "exactness error";
    case CTRADE_ERR_CURRENCY: return "currency mismatch";
    case CTRADE_ERR_OVERFLOW: return "overflow";
    case CTRADE_ERR_UNSUPPORTED: return "unsupported";
    case CTRADE_ERR_SETTLEMENT: return "settlement error";
    case CTRADE_ERR_ARGUMENT: return "invalid argument";
    case CTRADE_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ctrade_last_error(void) { return g_last_error.c_str(); }

ctrade_status ctrade_model_parse(const char* document, size_t length, ctrade_model** out) {
    if (document == nullptr) return null_argument("document");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new ctrade_model{ctrade::parse_contracts(std::string_view(document, length))}; });
}

ctrade_status ctrade_model_load(const char* path, ctrade_model** out) {
    if (path == nullptr) return null_argument("path");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new ctrade_model{ctrade::load_contracts(path)}; });
}

void ctrade_model_free(ctrade_model* model) { delete model; }

ctrade_status ctrade_model_render(const ctrade_model* model, char** out) {
    if (model == nullptr) return null_argument("model");
    if (out == nullptr) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = duplicate(ctrade::render_contracts(model->model)); });
}

ctrade_status ctrade_run(const ctrade_model* model, const ctrade_request* request, char** out_report,
                         int* constructive_found) {
    if (model == nullptr) return null_argument("model");
    if (request == nullptr) return null_argument("request");
    if (out_report == nullptr) return null_argument("out_report");
    *out_report = nullptr;
    if (constructive_found != nullptr) *constructive_found = 0;
    return guarded([&] {
        if (request->command < CTRADE_CMD_VALIDATE || request->command > CTRADE_CMD_REPORT) {
            throw ctrade::Error(ctrade::ErrorCode::Argument, "unknown command");
        }
        const std::string& cur = model->model.currency;
        ctrade::RunRequest req;
        req.command = static_cast<ctrade::Command>(request->command);
        if (request->scenario != nullptr) req.scenario = request->scenario;
        if (request->party != nullptr) req.party = request->party;
        req.grid_min = price_arg(request->grid_min, cur);
        req.grid_max = price_arg(request->grid_max, cur);
        req.grid_step = price_arg(request->grid_step, cur);
        const ctrade::Report report = ctrade::run(model->model, req);
        const auto format = request->format == CTRADE_FORMAT_STRUCTURED ? ctrade::OutputFormat::Structured
                                                                        : ctrade::OutputFormat::Text;
        *out_report = duplicate(ctrade::render(report, format));
        if (constructive_found != nullptr) *constructive_found = report.constructive_trade_found ? 1 : 0;
    });
}

ctrade_status ctrade_detect(const ctrade_model* model, const char* party, const char* issuer, ctrade_detection* out) {
    if (model == nullptr) return null_argument("model");
    if (party == nullptr) return null_argument("party");
    if (issuer == nullptr) return null_argument("issuer");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        const auto verdict = ctrade::detect_constructive_trade(model->model.portfolio_of(party), issuer);
        ctrade_detection d{};
        switch (verdict.kind) {
        case ctrade::VerdictKind::NoExposure: d.verdict = CTRADE_VERDICT_NO_EXPOSURE; break;
        case ctrade::VerdictKind::ActualTrade: d.verdict = CTRADE_VERDICT_ACTUAL_TRADE; break;
        case ctrade::VerdictKind::ConstructiveTrade: d.verdict = CTRADE_VERDICT_CONSTRUCTIVE_TRADE; break;
        }
        d.quantity = verdict.quantity;
        d.is_short = verdict.direction == ctrade::Side::Short ? 1 : 0;
        d.riskless_minor = verdict.riskless_component.minor_units();
        d.title_moves = verdict.audit.moves_title ? 1 : 0;
        *out = d;
    });
}

ctrade_status ctrade_format_money(int64_t minor_units, char* buffer, size_t size) {
    if (buffer == nullptr) return null_argument("buffer");
    const std::string s = ctrade::format_minor(minor_units);
    if (s.size() + 1 > size) {
        g_last_error = "buffer of " + std::to_string(size) + " bytes is too small";
        return CTRADE_ERR_ARGUMENT;
    }
    std::memcpy(buffer, s.c_str(), s.size() + 1);
    g_last_error.clear();
    return CTRADE_OK;
}

void ctrade_string_free(char* s) { std::free(s); }

} // extern "C"
