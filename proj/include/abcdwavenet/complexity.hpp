#pragma once

#include "abcdwavenet/tensor.hpp"

#include <string>
#include <vector>

namespace abcdwavenet {

// Analytic parameter/FLOP accounting for a single convolution layer.
// The *_formula fields follow the textbook multiply-accumulate counts
// (weights only, bias excluded); the *_stored fields count every scalar a
// parameter record actually holds (weights + biases), which is what the
// weight-file audit compares against.
struct ConvComplexity {
    long long standard_params = 0;   // C_out * C_in * K^2
    long long standard_flops = 0;    // H' * W' * C_out * C_in * K^2
    long long dynamic_params = 0;    // C_in^2 + C_in * M + M * C_out * C_in * K^2
    long long dynamic_flops = 0;     // dynamic_params + standard_flops
    long long dynamic_params_stored = 0;  // dynamic_params + MLP biases + conv bias
    double r_param_exact = 0.0;
    double r_param_approx = 0.0;     // 1/K^2 + M
    double r_flops_exact = 0.0;
    double r_flops_approx = 1.0;
};

// num_experts is the kernel count M; out_h/out_w are the output spatial dims.
ConvComplexity conv_complexity(const ConvSpec& spec, int num_experts, int out_h, int out_w,
                               bool with_bias = true);

// One named layer in a model-level report. params counts stored scalars
// exactly (so the weight-store total matches to the digit); flops counts
// multiply-accumulates in the Eq.-style convention.
struct LayerComplexity {
    std::string name;
    std::string kind;
    long long params = 0;
    long long flops = 0;
};

struct ComplexityReport {
    std::vector<LayerComplexity> layers;
    long long total_params() const;
    long long total_flops() const;
};

}  // namespace abcdwavenet
