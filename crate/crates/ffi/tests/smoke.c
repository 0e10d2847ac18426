#include <math.h>
#include <stdio.h>
#include <string.h>

#include "dmchain.h"

#define CHECK(call)                                                              \
    do {                                                                         \
        DmStatus s_ = (call);                                                    \
        if (s_ != DM_STATUS_OK) {                                                \
            fprintf(stderr, "%s failed: %d %s\n", #call, s_, dm_last_error_message()); \
            return 1;                                                            \
        }                                                                        \
    } while (0)

int main(void) {
    DmModel *model = NULL;
    DmDensity *rho0 = NULL, *limit = NULL;
    double c = -1.0;

    CHECK(dm_model_new(DM_VARIANT_DZ, 1.0, 0.2, 1.0, 2.0, &model));
    CHECK(dm_initial_state(DM_FAMILY_ANTIPARALLEL, M_PI / 3.0, &rho0));
    CHECK(dm_asymptotic_state(model, rho0, &limit));
    CHECK(dm_concurrence(limit, &c));
    if (fabs(c - sin(2.0 * M_PI / 3.0) / sqrt(5.0)) > 1e-12) {
        fprintf(stderr, "unexpected concurrence %.17g\n", c);
        return 1;
    }

    if (dm_model_new(42, 1.0, 0.0, 0.0, 0.0, &model) != DM_STATUS_INVALID || strlen(dm_last_error_message()) == 0) {
        fprintf(stderr, "bad variant was accepted\n");
        return 1;
    }

    char *csv = NULL;
    CHECK(dm_figure_csv("fig11", &csv));
    if (strncmp(csv, "variant,J,gamma", 15) != 0) {
        return 1;
    }
    dm_string_free(csv);

    dm_density_free(limit);
    dm_density_free(rho0);
    dm_model_free(model);
    printf("ok %s\n", dm_version());
    return 0;
}
