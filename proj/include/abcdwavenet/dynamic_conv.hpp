#pragma once

#include "abcdwavenet/tensor.hpp"

#include <vector>

namespace abcdwavenet {

// One input-conditioned convolution: M expert kernels mixed per sample by
// sigmoid coefficients from a pooled-input MLP (C_in -> C_in -> M, ReLU
// between). The MLP hidden width is fixed at C_in so the analytic parameter
// term C_in^2 is literal.
struct DynamicConvParams {
    ConvSpec spec;
    int num_experts = 1;
    std::vector<Tensor> kernels;  // M entries, each [C_out, C_in, K, K]
    std::vector<float> mlp_w1;    // C_in x C_in, row-major
    std::vector<float> mlp_b1;    // C_in
    std::vector<float> mlp_w2;    // M x C_in, row-major
    std::vector<float> mlp_b2;    // M
    std::vector<float> bias;      // C_out, or empty

    void validate() const;
};

// Per-sample mixing coefficients, each strictly inside (0, 1). They are
// sigmoid outputs and deliberately do not sum to 1.
struct AttentionCoeffs {
    int batch = 0;
    int num_experts = 0;
    std::vector<float> values;  // batch x M, row-major

    float at(int sample, int expert) const { return values[sample * num_experts + expert]; }
};

AttentionCoeffs attention_coeffs(const Tensor& input, const DynamicConvParams& params);

Tensor dynamic_conv2d(const Tensor& input, const DynamicConvParams& params);

// Test hook: run the convolution with externally supplied coefficients,
// bypassing the MLP. Needed for the one-hot oracle checks.
Tensor dynamic_conv2d_with_coeffs(const Tensor& input, const DynamicConvParams& params,
                                  const AttentionCoeffs& coeffs);

// Inference-mode normalization statistics + affine, per channel.
struct NormParams {
    std::vector<float> mean;
    std::vector<float> var;
    std::vector<float> gamma;
    std::vector<float> beta;
    float eps = 1e-5f;

    static NormParams identity(int channels);
};

// Two consecutive dynamic convolutions, each followed by inference batch
// norm and ReLU. The second stage's coefficients are computed from the
// first stage's output.
struct DdcLayerParams {
    DynamicConvParams first;
    NormParams norm1;
    DynamicConvParams second;
    NormParams norm2;
};

Tensor ddc_layer(const Tensor& input, const DdcLayerParams& params);

}  // namespace abcdwavenet
