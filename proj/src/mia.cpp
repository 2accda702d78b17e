#include "abcdwavenet/mia.hpp"

#include "abcdwavenet/ops.hpp"

#include <cstring>
#include <string>

namespace abcdwavenet {

namespace {

Tensor depthwise(const Tensor& input, const Tensor& weights, const std::vector<float>& bias,
                 int kernel) {
    ConvSpec spec;
    spec.in_channels = input.c;
    spec.out_channels = input.c;
    spec.kernel = kernel;
    spec.padding = kernel / 2;
    spec.groups = input.c;
    return conv2d(input, weights, bias, spec);
}

}  // namespace

Tensor ass_forward(const Tensor& input, const AssParams& params) {
    if (input.c != params.channels) {
        shape_error("ass_forward input has " + std::to_string(input.c) + " channels, expected " +
                    std::to_string(params.channels));
    }
    Tensor b3 = depthwise(input, params.branch3, params.bias3, 3);
    Tensor b5 = depthwise(input, params.branch5, params.bias5, 5);
    Tensor b7 = depthwise(input, params.branch7, params.bias7, 7);
    Tensor chain = depthwise(input, params.chain3, params.chain_bias3, 3);
    chain = depthwise(chain, params.chain5, params.chain_bias5, 5);
    chain = depthwise(chain, params.chain7, params.chain_bias7, 7);

    const std::vector<float> weights = softmax(
        std::vector<float>(params.mixing_logits.begin(), params.mixing_logits.end()));
    Tensor out(input.n, input.c, input.h, input.w);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = weights[0] * b3.data[i] + weights[1] * b5.data[i] +
                      weights[2] * b7.data[i] + weights[3] * chain.data[i];
    }
    return out;
}

Tensor psr_forward(const Tensor& input, const PsrParams& params) {
    if (input.c != params.channels) {
        shape_error("psr_forward input has " + std::to_string(input.c) + " channels, expected " +
                    std::to_string(params.channels));
    }
    const int steps = static_cast<int>(params.steps.size());
    if (steps < 1) shape_error("psr_forward requires at least one step");

    std::vector<Tensor> distilled;
    Tensor current = input;
    for (int i = 0; i < steps; ++i) {
        const PsrStepParams& sp = params.steps[i];
        ConvSpec dw_spec;
        dw_spec.in_channels = current.c;
        dw_spec.out_channels = current.c;
        dw_spec.kernel = 3;
        dw_spec.padding = 1;
        dw_spec.groups = current.c;
        Tensor refined = leaky_relu(depthwise_separable_conv(current, sp.dw_weights, sp.dw_bias,
                                                             sp.pw_weights, sp.pw_bias, dw_spec));
        if (i == steps - 1) {
            distilled.push_back(std::move(refined));
            break;
        }
        if (refined.c % 2 != 0) {
            shape_error("psr_forward cannot halve an odd channel count at step " +
                        std::to_string(i + 1) + " (C=" + std::to_string(refined.c) + ")");
        }
        const int half = refined.c / 2;
        Tensor dis(refined.n, half, refined.h, refined.w);
        Tensor rem(refined.n, half, refined.h, refined.w);
        const std::size_t plane = static_cast<std::size_t>(refined.h) * refined.w;
        for (int in = 0; in < refined.n; ++in) {
            std::memcpy(dis.plane(in, 0), refined.plane(in, 0), sizeof(float) * plane * half);
            std::memcpy(rem.plane(in, 0), refined.plane(in, half), sizeof(float) * plane * half);
        }
        distilled.push_back(std::move(dis));
        current = std::move(rem);
    }

    std::vector<const Tensor*> parts;
    parts.reserve(distilled.size());
    for (const Tensor& t : distilled) parts.push_back(&t);
    Tensor out = concat_channels(parts);
    if (out.c != input.c) {
        shape_error("psr_forward distilled channels sum to " + std::to_string(out.c) +
                    ", expected " + std::to_string(input.c));
    }
    return out;
}

Tensor mia_unify(const std::vector<Tensor>& stages, const MiaParams& params) {
    if (stages.size() != 5) {
        shape_error("mia_unify expects exactly 5 stage tensors, got " +
                    std::to_string(stages.size()));
    }
    const Tensor& ref = stages[3];
    std::vector<Tensor> resized;
    resized.reserve(5);
    for (const Tensor& s : stages) {
        if (s.h > ref.h || s.w > ref.w) {
            resized.push_back(adaptive_avg_pool(s, ref.h, ref.w));
        } else if (s.h < ref.h || s.w < ref.w) {
            resized.push_back(bilinear_resize(s, ref.h, ref.w));
        } else {
            resized.push_back(s);
        }
    }
    std::vector<const Tensor*> parts;
    for (const Tensor& t : resized) parts.push_back(&t);
    Tensor merged = concat_channels(parts);

    ConvSpec spec;
    spec.in_channels = merged.c;
    spec.out_channels = params.out_channels;
    spec.kernel = 1;
    return conv2d(merged, params.unify_weights, params.unify_bias, spec);
}

Tensor mia_forward(const std::vector<Tensor>& stages, const MiaParams& params) {
    Tensor f = mia_unify(stages, params);
    if (params.has_ass) f = ass_forward(f, params.ass);
    if (params.has_psr) f = psr_forward(f, params.psr);
    return cca_forward(f, params.cca);
}

}  // namespace abcdwavenet
