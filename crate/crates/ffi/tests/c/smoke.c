#include <stdio.h>
#include <string.h>
#include "trispcl.h"

static const char *CHAIN = "{\"elements\":[\"a\",\"b\",\"c\"],\"less\":[[0,1],[1,2]]}";

int main(void) {
    TrispclCategory *c = NULL;
    TrispclTrisp *t = NULL;
    size_t objects = 0, morphisms = 0, edges = 0;
    int64_t chi = 0;
    bool valid = false;

    if (trispcl_category_from_json(CHAIN, &c) != TRISPCL_STATUS_OK) return 1;
    if (trispcl_category_size(c, &objects, &morphisms) != TRISPCL_STATUS_OK) return 2;
    if (objects != 3 || morphisms != 3) return 3;
    if (trispcl_category_validate(c, &valid) != TRISPCL_STATUS_OK || !valid) return 4;
    if (trispcl_nerve(c, &t) != TRISPCL_STATUS_OK) return 5;
    if (trispcl_trisp_count(t, 1, &edges) != TRISPCL_STATUS_OK || edges != 3) return 6;
    if (trispcl_trisp_euler_characteristic(t, &chi) != TRISPCL_STATUS_OK || chi != 1) return 7;

    TrispclTrisp *bad = NULL;
    if (trispcl_trisp_from_json("{\"counts\": [1", &bad) != TRISPCL_STATUS_INPUT_ERROR) return 8;
    if (trispcl_last_error() == NULL) return 9;

    trispcl_trisp_free(t);
    trispcl_category_free(c);
    puts("ok");
    return 0;
}
