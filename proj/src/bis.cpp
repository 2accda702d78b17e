#include "abcdwavenet/bis.hpp"

#include "abcdwavenet/ops.hpp"
#include "abcdwavenet/wavelet.hpp"

#include <cstring>
#include <string>

namespace abcdwavenet {

Tensor channel_shuffle(const Tensor& input, int groups) {
    if (groups < 1 || input.c % groups != 0) {
        shape_error("channel_shuffle requires C divisible by groups, got C=" +
                    std::to_string(input.c) + " groups=" + std::to_string(groups));
    }
    const int per_group = input.c / groups;
    Tensor out(input.n, input.c, input.h, input.w);
    const std::size_t plane = static_cast<std::size_t>(input.h) * input.w;
    for (int in = 0; in < input.n; ++in) {
        for (int g = 0; g < groups; ++g) {
            for (int i = 0; i < per_group; ++i) {
                // (g, i) -> position i * groups + g: transpose of the group view.
                std::memcpy(out.plane(in, i * groups + g), input.plane(in, g * per_group + i),
                            sizeof(float) * plane);
            }
        }
    }
    return out;
}

Tensor fmblock(const Tensor& ll, const FmBlockParams& params) {
    if (params.identity_hook) return ll;
    if (ll.c != params.channels) {
        shape_error("fmblock input has " + std::to_string(ll.c) + " channels, expected " +
                    std::to_string(params.channels));
    }
    if (ll.c % 2 != 0) {
        shape_error("fmblock requires an even channel count for the split, got C=" +
                    std::to_string(ll.c));
    }
    const int half = ll.c / 2;
    const std::size_t plane = static_cast<std::size_t>(ll.h) * ll.w;

    Tensor active(ll.n, half, ll.h, ll.w);
    Tensor passive(ll.n, half, ll.h, ll.w);
    for (int in = 0; in < ll.n; ++in) {
        std::memcpy(active.plane(in, 0), ll.plane(in, 0), sizeof(float) * plane * half);
        std::memcpy(passive.plane(in, 0), ll.plane(in, half), sizeof(float) * plane * half);
    }

    ConvSpec dw_spec;
    dw_spec.in_channels = half;
    dw_spec.out_channels = half;
    dw_spec.kernel = params.kernel;
    dw_spec.padding = params.kernel / 2;
    dw_spec.groups = half;
    Tensor mixed = relu(depthwise_separable_conv(active, params.dw_weights, params.dw_bias,
                                                 params.pw_weights, params.pw_bias, dw_spec));

    Tensor merged = concat_channels({&mixed, &passive});
    merged = channel_shuffle(merged, 2);
    merged = cca_forward(merged, params.cca);
    return add(merged, ll);
}

Tensor frequency_pathway(const Tensor& input, const FmBlockParams& params) {
    SubBands bands = dwt2d(input);
    bands.ll = fmblock(bands.ll, params);
    Tensor recon = idwt2d(bands);
    return add(input, recon);
}

Tensor spatial_pathway(const Tensor& input, const SpatialPathwayParams& params) {
    if (input.c != params.channels) {
        shape_error("spatial_pathway input has " + std::to_string(input.c) +
                    " channels, expected " + std::to_string(params.channels));
    }
    ConvSpec dw_spec;
    dw_spec.in_channels = input.c;
    dw_spec.out_channels = input.c;
    dw_spec.kernel = 3;
    dw_spec.padding = 1;
    dw_spec.groups = input.c;

    Tensor y = conv2d(input, params.dw1_weights, params.dw1_bias, dw_spec);
    y = relu(y);
    y = batchnorm_infer(y, params.norm.mean, params.norm.var, params.norm.gamma, params.norm.beta,
                        params.norm.eps);
    y = conv2d(y, params.dw2_weights, params.dw2_bias, dw_spec);
    return add(y, input);
}

Tensor bis_forward(const Tensor& input, const BisParams& params) {
    if (input.c != params.channels) {
        shape_error("bis_forward input has " + std::to_string(input.c) + " channels, expected " +
                    std::to_string(params.channels));
    }
    Tensor freq = frequency_pathway(input, params.fm);
    Tensor spatial = spatial_pathway(input, params.spatial);
    Tensor merged = concat_channels({&freq, &spatial});

    ConvSpec fuse_spec;
    fuse_spec.in_channels = merged.c;
    fuse_spec.out_channels = merged.c;
    fuse_spec.kernel = 3;
    fuse_spec.padding = 1;
    fuse_spec.groups = merged.c;
    return depthwise_separable_conv(merged, params.fuse_dw_weights, params.fuse_dw_bias,
                                    params.fuse_pw_weights, params.fuse_pw_bias, fuse_spec);
}

}  // namespace abcdwavenet
