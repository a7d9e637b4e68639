/* Build: cc -I crates/ffi/include crates/ffi/examples/rank.c target/debug/libpersilat_ffi.a -lpthread -ldl -lm */
#include <stdio.h>

#include "persilat.h"

static const char *CHAIN =
    "{\"field\": 2, \"nodes\": [{\"id\": \"X0\", \"dim\": 1}, {\"id\": \"X1\", \"dim\": 1}],"
    " \"edges\": [{\"from\": \"X0\", \"to\": \"X1\", \"matrix\": [[1]]}]}";

int main(void) {
    PersilatDiagram *d = NULL;
    PersilatStatus s = persilat_diagram_parse(CHAIN, false, &d);
    if (s != PERSILAT_STATUS_OK) {
        fprintf(stderr, "parse failed: %s\n", persilat_last_error());
        return 1;
    }
    PersilatRankReport r;
    s = persilat_rank(d, "X0", "X1", &r);
    if (s != PERSILAT_STATUS_OK) {
        fprintf(stderr, "rank failed: %s\n", persilat_last_error());
        persilat_diagram_free(d);
        return 1;
    }
    char *dot = NULL;
    if (persilat_hasse_dot(d, 1000, &dot) == PERSILAT_STATUS_OK) {
        fputs(dot, stdout);
        persilat_string_free(dot);
    }
    printf("rank %zu meet %zu join %zu\n", r.rank, r.dim_meet, r.dim_join);
    if (persilat_rank(d, "X0", "missing", &r) == PERSILAT_STATUS_DOMAIN_ERROR) {
        printf("error: %s\n", persilat_last_error());
    }
    persilat_diagram_free(d);
    return 0;
}
