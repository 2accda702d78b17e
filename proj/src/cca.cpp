#include "abcdwavenet/cca.hpp"

#include <cmath>
#include <string>

namespace abcdwavenet {

int CcaParams::hidden_for(int channels, int ratio) {
    if (ratio < 1) shape_error("cca ratio must be >= 1");
    return channels >= ratio ? channels / ratio : 1;
}

void CcaParams::validate() const {
    if (channels < 1 || hidden < 1) shape_error("cca requires positive channel counts");
    if (w2.size() != static_cast<std::size_t>(hidden) * channels ||
        w3.size() != static_cast<std::size_t>(channels) * hidden) {
        shape_error("cca weight shapes must be (hidden x C) and (C x hidden)");
    }
}

Tensor cca_forward(const Tensor& input, const CcaParams& params) {
    params.validate();
    if (input.c != params.channels) {
        shape_error("cca input has " + std::to_string(input.c) + " channels, expected " +
                    std::to_string(params.channels));
    }
    const int c = input.c;
    const std::size_t plane = static_cast<std::size_t>(input.h) * input.w;
    const double inv_plane = 1.0 / static_cast<double>(plane);

    Tensor out(input.n, input.c, input.h, input.w);
    std::vector<float> contrast(c), hidden(params.hidden), gate(c);
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < c; ++ic) {
            const float* src = input.plane(in, ic);
            double sum = 0.0;
            for (std::size_t i = 0; i < plane; ++i) sum += src[i];
            const double mean = sum * inv_plane;
            double var = 0.0;
            for (std::size_t i = 0; i < plane; ++i) {
                const double d = src[i] - mean;
                var += d * d;
            }
            contrast[ic] = static_cast<float>(mean + std::sqrt(var * inv_plane));
        }
        for (int i = 0; i < params.hidden; ++i) {
            float acc = 0.0f;
            const float* row = params.w2.data() + static_cast<std::size_t>(i) * c;
            for (int j = 0; j < c; ++j) acc += row[j] * contrast[j];
            hidden[i] = acc > 0.0f ? acc : 0.0f;
        }
        for (int i = 0; i < c; ++i) {
            float acc = 0.0f;
            const float* row = params.w3.data() + static_cast<std::size_t>(i) * params.hidden;
            for (int j = 0; j < params.hidden; ++j) acc += row[j] * hidden[j];
            gate[i] = 1.0f / (1.0f + std::exp(-acc));
        }
        for (int ic = 0; ic < c; ++ic) {
            const float* src = input.plane(in, ic);
            float* dst = out.plane(in, ic);
            const float g = gate[ic];
            for (std::size_t i = 0; i < plane; ++i) dst[i] = src[i] * g;
        }
    }
    return out;
}

}  // namespace abcdwavenet
