#pragma once

#include "abcdwavenet/tensor.hpp"

#include <vector>

namespace abcdwavenet {

// Cross-correlation (no kernel flip), zero padding. weights is
// [C_out, C_in/groups, K, K]; bias is [C_out] or empty.
Tensor conv2d(const Tensor& input, const Tensor& weights, const std::vector<float>& bias,
              const ConvSpec& spec);

// Depthwise stage (groups = C) followed by a 1x1 pointwise stage.
// dw_spec describes the depthwise stage; the pointwise stage is derived.
Tensor depthwise_separable_conv(const Tensor& input, const Tensor& dw_weights,
                                const std::vector<float>& dw_bias, const Tensor& pw_weights,
                                const std::vector<float>& pw_bias, const ConvSpec& dw_spec);

Tensor global_avg_pool(const Tensor& input);
Tensor adaptive_avg_pool(const Tensor& input, int out_h, int out_w);
Tensor bilinear_resize(const Tensor& input, int out_h, int out_w);
Tensor maxpool2d(const Tensor& input, int kernel = 2, int stride = 2);

Tensor relu(const Tensor& input);
Tensor leaky_relu(const Tensor& input, float slope = 0.01f);
Tensor sigmoid(const Tensor& input);
Tensor add(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor concat_channels(const std::vector<const Tensor*>& parts);

// Inference-mode batch normalization; statistic vectors have length C.
Tensor batchnorm_infer(const Tensor& input, const std::vector<float>& mean,
                       const std::vector<float>& var, const std::vector<float>& gamma,
                       const std::vector<float>& beta, float eps = 1e-5f);

// Normalizes over the channel axis at each (n, h, w) position.
Tensor layernorm(const Tensor& input, const std::vector<float>& gamma,
                 const std::vector<float>& beta, float eps = 1e-5f);

// axis: 0..3 over (n, c, h, w); max-subtracted for stability.
Tensor softmax(const Tensor& input, int axis);
std::vector<float> softmax(const std::vector<float>& logits);

}  // namespace abcdwavenet
