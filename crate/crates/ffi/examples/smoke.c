/* Minimal C consumer: build a disk, prompt it, sketch it back. */
#include <stdio.h>
#include "quadprompt.h"

#define W 48
#define H 48

int main(void) {
    uint8_t bytes[W * H];
    for (int y = 0; y < H; y++)
        for (int x = 0; x < W; x++)
            bytes[y * W + x] = (x - 24) * (x - 24) + (y - 24) * (y - 24) <= 144;

    QpMask *mask = NULL;
    if (qp_mask_from_bytes(W, H, bytes, sizeof bytes, &mask) != QP_STATUS_OK) {
        fprintf(stderr, "%s\n", qp_last_error());
        return 1;
    }
    QpPromptSet *ps = NULL;
    QpScoring scoring = qp_scoring_default();
    scoring.dilation_radius = 0;
    if (qp_generate(mask, QP_PROMPT_KIND_EXTREME, &scoring, 7, true, &ps) != QP_STATUS_OK) {
        fprintf(stderr, "%s\n", qp_last_error());
        qp_mask_free(mask);
        return 1;
    }
    size_t n = 0;
    qp_prompt_set_len(ps, &n);
    for (size_t i = 0; i < n; i++) {
        QpPoint p;
        qp_prompt_set_point(ps, i, &p);
        printf("(%u, %u) role %d\n", p.x, p.y, (int)p.role);
    }
    QpMask *sketch = NULL;
    double v = 0.0;
    qp_sketch(ps, W, H, &sketch);
    qp_iou(mask, sketch, &v);
    printf("sketch iou %.4f\n", v);

    qp_mask_free(sketch);
    qp_prompt_set_free(ps);
    qp_mask_free(mask);
    return 0;
}
