#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "modgamma.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);     \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    MgInstance *h = NULL;
    CHECK(mg_instance_new(3, 9, false, &h) == MG_STATUS_INVALID_INSTANCE);
    CHECK(mg_instance_new(3, 7, false, &h) == MG_STATUS_OK);
    size_t degree = 0;
    uint64_t mp = 0, np = 0, la = 0;
    CHECK(mg_instance_shape(h, &degree, &mp, &np, &la) == MG_STATUS_OK);
    CHECK(mp == 16 && np == 2 && la == 3);
    uint32_t *buf = calloc(la * degree, sizeof(uint32_t));
    CHECK(mg_gamma(h, 2, 1, buf, degree) == MG_STATUS_OK);
    CHECK(buf[0] == 2);
    for (size_t k = 1; k < degree; k++) CHECK(buf[k] == 0);
    CHECK(mg_gamma(h, 16, 0, buf, degree) == MG_STATUS_OUT_OF_RANGE);
    CHECK(mg_gamma_tilde(h, 2, 0, buf, degree) == MG_STATUS_BUFFER_TOO_SMALL);
    CHECK(mg_gamma_tilde(h, 2, 0, buf, la * degree) == MG_STATUS_OK);
    char *json = NULL;
    CHECK(mg_table_json(h, &json) == MG_STATUS_OK);
    CHECK(strstr(json, "\"schema\": 1") != NULL);
    mg_string_free(json);
    size_t dups = 0;
    CHECK(mg_search_duplicates(2, 17, &dups) == MG_STATUS_OK && dups == 10);
    CHECK(strcmp(mg_status_message(MG_STATUS_OK), "ok") == 0);
    free(buf);
    mg_instance_free(h);
    puts("ok");
    return 0;
}
