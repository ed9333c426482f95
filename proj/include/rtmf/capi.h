#ifndef RTMF_CAPI_H
#define RTMF_CAPI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes in the CLI. */
typedef enum rtmf_status {
    RTMF_OK = 0,
    RTMF_ERROR = 1,          /* internal numeric failure */
    RTMF_ERR_VALIDATION = 2, /* bad input, config or arguments */
    RTMF_ERR_INFEASIBLE = 3, /* synthesis rank/Hurwitz conditions not met */
    RTMF_ERR_DIVERGENCE = 4  /* simulation blow-up or closed air gap */
} rtmf_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* rtmf_last_error(void);

/* Heap strings returned through char** outputs are released with this. */
void rtmf_string_free(char* s);

/* ---- scenarios (opaque) ---- */
typedef struct rtmf_scenario rtmf_scenario;

size_t rtmf_preset_count(void);
const char* rtmf_preset_name(size_t index); /* NULL when out of range */

rtmf_status rtmf_scenario_preset(const char* name, rtmf_scenario** out);
rtmf_status rtmf_scenario_from_config(const char* text, rtmf_scenario** out);
/* Dotted-path assignment, e.g. "gains.lambda1=15". Validate afterwards. */
rtmf_status rtmf_scenario_override(rtmf_scenario* s, const char* assignment);
rtmf_status rtmf_scenario_validate(const rtmf_scenario* s);
rtmf_status rtmf_scenario_to_config(const rtmf_scenario* s, char** out);
void rtmf_scenario_free(rtmf_scenario* s);

/* ---- simulation (opaque result: trajectory plus metrics) ---- */
typedef struct rtmf_result rtmf_result;

rtmf_status rtmf_simulate(const rtmf_scenario* s, rtmf_result** out);
rtmf_status rtmf_result_csv(const rtmf_result* r, char** out);
rtmf_status rtmf_result_metrics_text(const rtmf_result* r, char** out);
rtmf_status rtmf_result_metrics_json(const rtmf_result* r, char** out);
void rtmf_result_free(rtmf_result* r);

/* ---- paired comparison ---- */
rtmf_status rtmf_compare(const rtmf_scenario* a, const rtmf_scenario* b,
                         char** text_out, char** json_out);

/* ---- synthesis; NULL config runs the built-in benchmark job ---- */
rtmf_status rtmf_synthesize(const char* config_text, char** text_out, char** json_out);

/* ---- atomic file write (temp then rename; no partial files) ---- */
rtmf_status rtmf_write_file(const char* path, const char* content);

#ifdef __cplusplus
}
#endif

#endif /* RTMF_CAPI_H */
