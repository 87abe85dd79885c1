#ifndef QSTAB_H
#define QSTAB_H

/*
 * C API of the qstab shared library: ground-state stabilization of the
 * bilinear Schrodinger equation i dz/dt = (-Lap + V) z + u(z) Q z on an
 * interval, by Lyapunov feedback in a truncated eigenbasis.
 *
 * All entry points return a status code:
 *   QSTAB_OK          success
 *   QSTAB_ERR_RUNTIME numerical/runtime failure
 *   QSTAB_ERR_SPEC    unreadable or invalid spec, unknown key, bad value
 * On failure qstab_last_error() holds a one-line message (thread-local,
 * valid until the next failing call on the same thread).
 *
 * Strings returned through char** out-parameters are heap-allocated; release
 * them with qstab_string_free(). Spec handles are opaque; release them with
 * qstab_spec_free().
 */

#ifdef __cplusplus
extern "C" {
#endif

#define QSTAB_OK 0
#define QSTAB_ERR_RUNTIME 1
#define QSTAB_ERR_SPEC 2

typedef struct qstab_spec qstab_spec;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
const char* qstab_version(void);

/* Last error message on this thread ("" when no error has occurred). */
const char* qstab_last_error(void);

/* Releases a string returned via a char** out-parameter. NULL is a no-op. */
void qstab_string_free(char* s);

/* Newline-separated list of recognized spec keys ("section.key  description").
 * Static storage; do not free. */
const char* qstab_spec_keys(void);

/* Loads a spec document from an INI file. */
int qstab_spec_load(const char* path, qstab_spec** out);

/* Parses a spec document from text. */
int qstab_spec_parse(const char* text, qstab_spec** out);

/* Applies one "section.key=value" override onto the document. */
int qstab_spec_set(qstab_spec* spec, const char* key_eq_value);

void qstab_spec_free(qstab_spec* spec);

/* Eigenvalue table of the spec's basis as CSV ("k,lambda_k"). */
int qstab_eig_table(const qstab_spec* spec, char** csv_out);

/* Genericity audit of (V, Q); the JSON report is always produced. */
int qstab_check_conditions(const qstab_spec* spec, char** json_out);

/* Runs the closed-loop experiment, writes trajectory.csv and summary.json
 * under the spec's output directory, and returns the summary JSON. */
int qstab_simulate(const qstab_spec* spec, char** summary_json_out);

/* Runs the sweep, writes per-run artifacts and the aggregate sweep.csv,
 * and returns a summary JSON. */
int qstab_sweep(const qstab_spec* spec, char** summary_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSTAB_H */
