#pragma once

#include "abcdwavenet/cca.hpp"
#include "abcdwavenet/dynamic_conv.hpp"
#include "abcdwavenet/tensor.hpp"

#include <vector>

namespace abcdwavenet {

// Interleaves channel groups: with groups=2 and C=4, [0,1,2,3] -> [0,2,1,3].
Tensor channel_shuffle(const Tensor& input, int groups);

// Enhancement applied to the LL sub-band: split channels in half, pass one
// half through a large-kernel depthwise + pointwise conv (FMBconv), concat,
// shuffle, reweight with CCA, then add the block input back.
struct FmBlockParams {
    int channels = 0;
    int kernel = 7;
    Tensor dw_weights;            // [C/2, 1, K, K]
    std::vector<float> dw_bias;   // C/2
    Tensor pw_weights;            // [C/2, C/2, 1, 1]
    std::vector<float> pw_bias;   // C/2
    CcaParams cca;
    bool identity_hook = false;   // test hook: return the input untouched
};

Tensor fmblock(const Tensor& ll, const FmBlockParams& params);

// DWT -> FMBlock on LL only -> IDWT -> residual. High bands pass through
// bit-identical.
Tensor frequency_pathway(const Tensor& input, const FmBlockParams& params);

// Depthwise K=3 -> ReLU -> BatchNorm -> depthwise K=3 -> residual.
struct SpatialPathwayParams {
    int channels = 0;
    Tensor dw1_weights;           // [C, 1, 3, 3]
    std::vector<float> dw1_bias;
    NormParams norm;
    Tensor dw2_weights;           // [C, 1, 3, 3]
    std::vector<float> dw2_bias;
};

Tensor spatial_pathway(const Tensor& input, const SpatialPathwayParams& params);

// Both pathways concatenated (2C) then fused back to C channels by a
// depthwise-separable conv.
struct BisParams {
    int channels = 0;
    FmBlockParams fm;
    SpatialPathwayParams spatial;
    Tensor fuse_dw_weights;       // [2C, 1, 3, 3]
    std::vector<float> fuse_dw_bias;
    Tensor fuse_pw_weights;       // [C, 2C, 1, 1]
    std::vector<float> fuse_pw_bias;
};

Tensor bis_forward(const Tensor& input, const BisParams& params);

}  // namespace abcdwavenet
