#include <stdio.h>
#include <string.h>

#include "paranil.h"

static const char *HEIS =
    "[group]\n"
    "generators = a b c\n"
    "relative_orders = 0 0 0\n"
    "b^a = b c^-1\n";

int main(void) {
    ParanilGroup *g = NULL;
    if (paranil_group_from_text(HEIS, NULL, &g) != PARANIL_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", paranil_last_error());
        return 1;
    }
    size_t h = 0;
    char *tau = NULL;
    if (paranil_group_hirsch_length(g, &h) != PARANIL_STATUS_OK || h != 3) return 2;
    if (paranil_group_tau(g, &tau) != PARANIL_STATUS_OK || strcmp(tau, "{}") != 0) return 3;
    paranil_string_free(tau);
    paranil_group_free(g);

    ParanilGroup *bad = NULL;
    if (paranil_group_from_text("[group]\ngenerators = a\nb^a = a\n", NULL, &bad) != PARANIL_STATUS_PARSE) return 4;
    if (bad != NULL || paranil_last_error() == NULL) return 5;

    const char *argv[] = {"paranil", "selftest", "--seed", "5"};
    int code = -1;
    char *report = NULL;
    if (paranil_run(4, argv, &code, &report) != PARANIL_STATUS_OK || code != 0) return 6;
    printf("%s", report);
    paranil_string_free(report);
    return 0;
}
