#pragma once

#include "abcdwavenet/tensor.hpp"

#include <vector>

namespace abcdwavenet {

// Skip-connection gate: multi-head cross attention between the broadcast
// MIA features (queries) and the encoder features (keys/values), then a
// layernorm + sigmoid gate applied element-wise to the encoder features,
// with the MIA features added back.
struct AacgParams {
    int channels = 0;
    int heads = 1;
    // Packed per-head projections, each C x C row-major; head i owns rows
    // [i * d_k, (i + 1) * d_k). No projection biases.
    std::vector<float> wq, wk, wv, wo;
    std::vector<float> ln_gamma, ln_beta;
    float ln_eps = 1e-5f;
    // Attention token grid is capped at this edge length: larger inputs are
    // average-pooled before projection and the gate is bilinearly upsampled
    // back. 0 disables the cap.
    int max_attn_hw = 32;

    void validate() const;
};

// Plain multi-head cross attention at the given resolution. Inputs must
// share shape; tokens are the H*W spatial positions.
Tensor cross_attention(const Tensor& queries_src, const Tensor& keys_values_src,
                       const AacgParams& params);

Tensor aacg_forward(const Tensor& f_mia, const Tensor& f_enc, const AacgParams& params);

}  // namespace abcdwavenet
