#include "abcdwavenet/wavelet.hpp"

#include "abcdwavenet/prof.hpp"

#include <string>

namespace abcdwavenet {

// Filters l = [1, 1]/sqrt(2), h = [-1, 1]/sqrt(2) applied separably with
// stride 2 collapse to a 2x2 block transform with weight 1/2:
//   ll = (a + b + c + d) / 2     lh = (b - a + d - c) / 2
//   hl = (c + d - a - b) / 2     hh = (a - b - c + d) / 2
// for the block a = F(2u, 2v), b = F(2u, 2v+1), c = F(2u+1, 2v),
// d = F(2u+1, 2v+1). The 4x4 block matrix is orthogonal, so the inverse
// is its transpose.

SubBands dwt2d(const Tensor& input) {
    prof::ScopedTimer timer("dwt");
    if (input.h % 2 != 0) {
        shape_error("dwt2d requires even height, got H=" + std::to_string(input.h));
    }
    if (input.w % 2 != 0) {
        shape_error("dwt2d requires even width, got W=" + std::to_string(input.w));
    }
    const int oh = input.h / 2;
    const int ow = input.w / 2;
    SubBands bands{Tensor(input.n, input.c, oh, ow), Tensor(input.n, input.c, oh, ow),
                   Tensor(input.n, input.c, oh, ow), Tensor(input.n, input.c, oh, ow)};
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float* src = input.plane(in, ic);
            float* ll = bands.ll.plane(in, ic);
            float* lh = bands.lh.plane(in, ic);
            float* hl = bands.hl.plane(in, ic);
            float* hh = bands.hh.plane(in, ic);
            for (int u = 0; u < oh; ++u) {
                const float* top = src + static_cast<std::size_t>(2 * u) * input.w;
                const float* bot = top + input.w;
                for (int v = 0; v < ow; ++v) {
                    const float a = top[2 * v];
                    const float b = top[2 * v + 1];
                    const float c = bot[2 * v];
                    const float d = bot[2 * v + 1];
                    const std::size_t o = static_cast<std::size_t>(u) * ow + v;
                    ll[o] = 0.5f * (a + b + c + d);
                    lh[o] = 0.5f * ((b - a) + (d - c));
                    hl[o] = 0.5f * ((c - a) + (d - b));
                    hh[o] = 0.5f * ((a - b) + (d - c));
                }
            }
        }
    }
    return bands;
}

Tensor idwt2d(const SubBands& bands) {
    prof::ScopedTimer timer("dwt");
    if (!bands.ll.same_shape(bands.lh) || !bands.ll.same_shape(bands.hl) ||
        !bands.ll.same_shape(bands.hh)) {
        shape_error("idwt2d requires all four bands to share one shape; got LL " +
                    bands.ll.shape_str() + ", LH " + bands.lh.shape_str() + ", HL " +
                    bands.hl.shape_str() + ", HH " + bands.hh.shape_str());
    }
    const int oh = bands.ll.h * 2;
    const int ow = bands.ll.w * 2;
    Tensor out(bands.ll.n, bands.ll.c, oh, ow);
    for (int in = 0; in < out.n; ++in) {
        for (int ic = 0; ic < out.c; ++ic) {
            const float* ll = bands.ll.plane(in, ic);
            const float* lh = bands.lh.plane(in, ic);
            const float* hl = bands.hl.plane(in, ic);
            const float* hh = bands.hh.plane(in, ic);
            float* dst = out.plane(in, ic);
            for (int u = 0; u < bands.ll.h; ++u) {
                float* top = dst + static_cast<std::size_t>(2 * u) * ow;
                float* bot = top + ow;
                for (int v = 0; v < bands.ll.w; ++v) {
                    const std::size_t o = static_cast<std::size_t>(u) * bands.ll.w + v;
                    const float s = ll[o];
                    const float ch = lh[o];
                    const float rh = hl[o];
                    const float dd = hh[o];
                    top[2 * v] = 0.5f * (s - ch - rh + dd);
                    top[2 * v + 1] = 0.5f * (s + ch - rh - dd);
                    bot[2 * v] = 0.5f * (s - ch + rh - dd);
                    bot[2 * v + 1] = 0.5f * (s + ch + rh + dd);
                }
            }
        }
    }
    return out;
}

}  // namespace abcdwavenet
