#pragma once

#include "abcdwavenet/cca.hpp"
#include "abcdwavenet/tensor.hpp"

#include <array>
#include <vector>

namespace abcdwavenet {

// Adaptive Scale Selection: depthwise branches at K=3/5/7 plus a chained
// 3->5->7 branch, mixed by softmax over four learnable scalar logits.
struct AssParams {
    int channels = 0;
    Tensor branch3, branch5, branch7;         // [C, 1, K, K] depthwise
    std::vector<float> bias3, bias5, bias7;
    Tensor chain3, chain5, chain7;            // separately-weighted chain
    std::vector<float> chain_bias3, chain_bias5, chain_bias7;
    std::array<float, 4> mixing_logits{0.0f, 0.0f, 0.0f, 0.0f};
};

Tensor ass_forward(const Tensor& input, const AssParams& params);

// Progressive Separable Refinement: at each step a depthwise-separable conv
// with LeakyReLU, then a half split into distilled / remainder channels.
// The final step distills everything; the distilled parts concatenate back
// to the input channel count.
struct PsrStepParams {
    Tensor dw_weights;            // [C_step, 1, 3, 3]
    std::vector<float> dw_bias;
    Tensor pw_weights;            // [C_step, C_step, 1, 1]
    std::vector<float> pw_bias;
};

struct PsrParams {
    int channels = 0;
    std::vector<PsrStepParams> steps;
};

Tensor psr_forward(const Tensor& input, const PsrParams& params);

// Full aggregation head over the five encoder outputs: unify to F4's shape
// and channel count, then ASS -> PSR -> CCA. The ASS/PSR stages are
// omitted when the corresponding ablation removes their parameters.
struct MiaParams {
    int out_channels = 0;         // C4
    Tensor unify_weights;         // [C4, sum(stage channels), 1, 1]
    std::vector<float> unify_bias;
    bool has_ass = true;
    AssParams ass;
    bool has_psr = true;
    PsrParams psr;
    CcaParams cca;
};

Tensor mia_unify(const std::vector<Tensor>& stages, const MiaParams& params);
Tensor mia_forward(const std::vector<Tensor>& stages, const MiaParams& params);

}  // namespace abcdwavenet
