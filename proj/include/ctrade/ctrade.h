/* SPDX-License-Identifier: Apache-2.0 */
#ifndef CTRADE_CTRADE_H
#define CTRADE_CTRADE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CTRADE_BUILDING)
#    define CTRADE_API __declspec(dllexport)
#  else
#    define CTRADE_API __declspec(dllimport)
#  endif
#else
#  define CTRADE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Parsed and validated contract file. Immutable once created; a model may
 * be shared between threads. */
typedef struct ctrade_model ctrade_model;

typedef enum ctrade_status {
    CTRADE_OK = 0,
    CTRADE_ERR_PARSE = 1,
    CTRADE_ERR_VALIDATION = 2,
    CTRADE_ERR_EXACTNESS = 3,
    CTRADE_ERR_CURRENCY = 4,
    CTRADE_ERR_OVERFLOW = 5,
    CTRADE_ERR_UNSUPPORTED = 6,
    CTRADE_ERR_SETTLEMENT = 7,
    CTRADE_ERR_ARGUMENT = 8,
    CTRADE_ERR_INTERNAL = 9
} ctrade_status;

typedef enum ctrade_command {
    CTRADE_CMD_VALIDATE = 0,
    CTRADE_CMD_PAYOFF = 1,
    CTRADE_CMD_SETTLE = 2,
    CTRADE_CMD_PARITY = 3,
    CTRADE_CMD_DETECT = 4,
    CTRADE_CMD_REPORT = 5
} ctrade_command;

typedef enum ctrade_format {
    CTRADE_FORMAT_TEXT = 0,
    CTRADE_FORMAT_STRUCTURED = 1
} ctrade_format;

typedef enum ctrade_verdict {
    CTRADE_VERDICT_NO_EXPOSURE = 0,
    CTRADE_VERDICT_ACTUAL_TRADE = 1,
    CTRADE_VERDICT_CONSTRUCTIVE_TRADE = 2
} ctrade_verdict;

/* NULL string members mean "not set". Prices are decimal strings. */
typedef struct ctrade_request {
    ctrade_command command;
    ctrade_format format;
    const char* scenario;  /* scenario name, or "S_T=<price>" */
    const char* party;
    const char* grid_min;
    const char* grid_max;
    const char* grid_step;
} ctrade_request;

typedef struct ctrade_detection {
    ctrade_verdict verdict;
    int64_t quantity;           /* shares matched; 0 for no exposure */
    int is_short;
    int64_t riskless_minor;     /* constant carried on top of the share exposure */
    int title_moves;
} ctrade_detection;

CTRADE_API const char* ctrade_version(void);
CTRADE_API const char* ctrade_status_name(ctrade_status status);

/* Message for the most recent failure on the calling thread. */
CTRADE_API const char* ctrade_last_error(void);

CTRADE_API ctrade_status ctrade_model_parse(const char* document, size_t length, ctrade_model** out);
CTRADE_API ctrade_status ctrade_model_load(const char* path, ctrade_model** out);
CTRADE_API void ctrade_model_free(ctrade_model* model);

/* Canonical contract document. Free with ctrade_string_free. */
CTRADE_API ctrade_status ctrade_model_render(const ctrade_model* model, char** out);

/* Runs one command. `constructive_found` may be NULL. Free the report with
 * ctrade_string_free. */
CTRADE_API ctrade_status ctrade_run(const ctrade_model* model, const ctrade_request* request, char** out_report,
                                    int* constructive_found);

CTRADE_API ctrade_status ctrade_detect(const ctrade_model* model, const char* party, const char* issuer,
                                       ctrade_detection* out);

/* "150,000,000.00" into buffer; fails with CTRADE_ERR_ARGUMENT if too small. */
CTRADE_API ctrade_status ctrade_format_money(int64_t minor_units, char* buffer, size_t size);

CTRADE_API void ctrade_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CTRADE_CTRADE_H */
