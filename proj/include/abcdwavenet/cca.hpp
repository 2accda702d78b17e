#pragma once

#include "abcdwavenet/tensor.hpp"

#include <vector>

namespace abcdwavenet {

// Contrast-aware channel attention: per-channel contrast statistic
// (spatial mean + spatial standard deviation) through a bottleneck MLP
// with sigmoid output, applied as a per-channel scale. No biases.
struct CcaParams {
    int channels = 0;
    int hidden = 0;             // channels / ratio, clamped to >= 1
    std::vector<float> w2;      // hidden x channels, row-major
    std::vector<float> w3;      // channels x hidden, row-major

    void validate() const;
    static int hidden_for(int channels, int ratio);
};

Tensor cca_forward(const Tensor& input, const CcaParams& params);

}  // namespace abcdwavenet
