#include <stdio.h>
#include "weilcodes.h"

int main(void) {
    WcField *field = NULL;
    WcCode *code = NULL;
    WcDistribution *dist = NULL;
    char msg[256];

    if (wc_field_new(5, 3, 1, 0, &field) != WC_STATUS_OK) {
        wc_last_error(msg, sizeof msg);
        fprintf(stderr, "field: %s\n", msg);
        return 1;
    }
    if (wc_code_du(field, 0, &code) != WC_STATUS_OK) return 1;
    if (wc_distribution(code, WC_METHOD_BOTH, 0, 0, &dist) != WC_STATUS_OK) return 1;

    uint64_t n, d;
    uint32_t k;
    wc_distribution_summary(dist, &n, &k, &d);
    printf("n=%llu k=%u d=%llu\n", (unsigned long long)n, k, (unsigned long long)d);
    for (size_t i = 0; i < wc_distribution_len(dist); i++) {
        uint64_t w, f;
        wc_distribution_get(dist, i, &w, &f);
        printf("%llu:%llu\n", (unsigned long long)w, (unsigned long long)f);
    }

    wc_distribution_free(dist);
    wc_code_free(code);
    wc_field_free(field);
    return 0;
}
