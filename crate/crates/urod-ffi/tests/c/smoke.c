#include <stdio.h>
#include <string.h>

#include "urod.h"

#define EXPECT(cond)                                              \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);    \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    EXPECT(strlen(urod_version()) > 0);
    EXPECT(urod_check_count() >= 25);
    EXPECT(urod_check_id(urod_check_count()) == NULL);

    UrodRequest *bad = urod_request_new("nonexistent.check");
    EXPECT(urod_request_validate(bad) == UROD_CODE_USAGE);
    EXPECT(strstr(urod_last_error(), "unknown check id") != NULL);
    UrodReport *rep = NULL;
    EXPECT(urod_run(bad, &rep) == UROD_CODE_USAGE);
    EXPECT(rep == NULL);
    urod_request_free(bad);

    UrodRequest *req = urod_request_new("characters.c5");
    EXPECT(urod_request_set_order(req, 12) == UROD_CODE_PASS);
    EXPECT(urod_request_set_param(req, "n", "2") == UROD_CODE_PASS);
    EXPECT(urod_run(req, &rep) == UROD_CODE_PASS);
    EXPECT(urod_report_status(rep) == UROD_STATUS_PASS);
    char *json = urod_report_json(rep);
    EXPECT(strstr(json, "\"id\": \"characters.c5\"") != NULL);
    urod_string_free(json);
    urod_report_free(rep);
    urod_request_free(req);

    req = urod_request_new("ope.h_density");
    urod_request_set_param(req, "variant", "printed");
    EXPECT(urod_run(req, &rep) == UROD_CODE_FAIL);
    EXPECT(urod_report_status(rep) == UROD_STATUS_FAIL);
    urod_report_free(rep);
    urod_request_free(req);

    EXPECT(urod_run_suite("weekly", 0, NULL, &rep) == UROD_CODE_USAGE);
    EXPECT(urod_request_set_order(NULL, 3) == UROD_CODE_NULL_ARGUMENT);
    puts("c api ok");
    return 0;
}
