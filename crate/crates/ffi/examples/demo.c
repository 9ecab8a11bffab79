/* Minimal C consumer: load an instance, run the axioms suite, print
 * the report, and emit a span as DOT.
 *
 * Build (from the workspace root, after `cargo build -p eqlab-ffi`):
 *   cc crates/ffi/examples/demo.c -Icrates/ffi/include \
 *      target/debug/libeqlab_ffi.a -lpthread -ldl -lm -o demo
 */
#include <stdio.h>

#include "eqlab.h"

int main(int argc, char **argv) {
    if (argc < 2) {
        fprintf(stderr, "usage: %s <instance.json>\n", argv[0]);
        return 2;
    }
    EqlabInstance *instance = NULL;
    EqlabStatus status = eqlab_instance_load(argv[1], &instance);
    if (status != EQLAB_STATUS_OK) {
        fprintf(stderr, "load failed: %s\n", eqlab_last_error_message());
        return (int)status;
    }
    EqlabReport *report = NULL;
    status = eqlab_run_suite(instance, "axioms", &report);
    if (status != EQLAB_STATUS_OK && status != EQLAB_STATUS_COUNTEREXAMPLE) {
        fprintf(stderr, "run failed: %s\n", eqlab_last_error_message());
        eqlab_instance_free(instance);
        return (int)status;
    }
    char *text = NULL;
    if (eqlab_report_text(report, &text) == EQLAB_STATUS_OK) {
        fputs(text, stdout);
        eqlab_string_free(text);
    }
    int exit_code = eqlab_report_passed(report) ? 0 : 1;
    eqlab_report_free(report);
    eqlab_instance_free(instance);
    return exit_code;
}
