#include "abcdwavenet/dynamic_conv.hpp"

#include "abcdwavenet/ops.hpp"
#include "abcdwavenet/prof.hpp"

#include <cmath>
#include <string>

namespace abcdwavenet {

void DynamicConvParams::validate() const {
    spec.validate();
    if (num_experts < 1) shape_error("dynamic conv requires num_experts >= 1");
    if (static_cast<int>(kernels.size()) != num_experts) {
        shape_error("dynamic conv has " + std::to_string(kernels.size()) + " kernels, expected " +
                    std::to_string(num_experts));
    }
    const int group_in = spec.in_channels / spec.groups;
    for (const Tensor& k : kernels) {
        if (k.n != spec.out_channels || k.c != group_in || k.h != spec.kernel ||
            k.w != spec.kernel) {
            shape_error("dynamic conv kernel " + k.shape_str() + " does not match spec");
        }
    }
    const std::size_t cin = static_cast<std::size_t>(spec.in_channels);
    const std::size_t m = static_cast<std::size_t>(num_experts);
    if (mlp_w1.size() != cin * cin || mlp_b1.size() != cin) {
        shape_error("dynamic conv MLP first layer must be C_in x C_in with C_in bias");
    }
    if (mlp_w2.size() != m * cin || mlp_b2.size() != m) {
        shape_error("dynamic conv MLP second layer must be M x C_in with M bias");
    }
    if (!bias.empty() && static_cast<int>(bias.size()) != spec.out_channels) {
        shape_error("dynamic conv bias length mismatch");
    }
}

AttentionCoeffs attention_coeffs(const Tensor& input, const DynamicConvParams& params) {
    params.validate();
    if (input.c != params.spec.in_channels) {
        shape_error("attention_coeffs input has " + std::to_string(input.c) +
                    " channels, expected " + std::to_string(params.spec.in_channels));
    }
    const int cin = params.spec.in_channels;
    const int m = params.num_experts;
    Tensor pooled = global_avg_pool(input);

    AttentionCoeffs coeffs;
    coeffs.batch = input.n;
    coeffs.num_experts = m;
    coeffs.values.resize(static_cast<std::size_t>(input.n) * m);

    std::vector<float> hidden(cin);
    for (int in = 0; in < input.n; ++in) {
        const float* p = pooled.plane(in, 0);
        for (int i = 0; i < cin; ++i) {
            float acc = params.mlp_b1[i];
            const float* row = params.mlp_w1.data() + static_cast<std::size_t>(i) * cin;
            for (int j = 0; j < cin; ++j) acc += row[j] * p[j];
            hidden[i] = acc > 0.0f ? acc : 0.0f;
        }
        for (int e = 0; e < m; ++e) {
            float acc = params.mlp_b2[e];
            const float* row = params.mlp_w2.data() + static_cast<std::size_t>(e) * cin;
            for (int j = 0; j < cin; ++j) acc += row[j] * hidden[j];
            coeffs.values[static_cast<std::size_t>(in) * m + e] = 1.0f / (1.0f + std::exp(-acc));
        }
    }
    return coeffs;
}

Tensor dynamic_conv2d_with_coeffs(const Tensor& input, const DynamicConvParams& params,
                                  const AttentionCoeffs& coeffs) {
    prof::ScopedTimer timer("dynamic_conv");
    params.validate();
    if (coeffs.batch != input.n || coeffs.num_experts != params.num_experts) {
        shape_error("attention coefficients are " + std::to_string(coeffs.batch) + "x" +
                    std::to_string(coeffs.num_experts) + ", expected " + std::to_string(input.n) +
                    "x" + std::to_string(params.num_experts));
    }

    // Aggregate the expert kernels per sample, then convolve once. Linearity
    // of convolution makes this equal to convolving each expert and mixing.
    Tensor out;
    const Tensor& k0 = params.kernels.front();
    Tensor agg(k0.n, k0.c, k0.h, k0.w);
    for (int in = 0; in < input.n; ++in) {
        std::fill(agg.data.begin(), agg.data.end(), 0.0f);
        for (int e = 0; e < params.num_experts; ++e) {
            const float alpha = coeffs.at(in, e);
            const std::vector<float>& src = params.kernels[e].data;
            for (std::size_t i = 0; i < agg.data.size(); ++i) agg.data[i] += alpha * src[i];
        }
        Tensor sample(1, input.c, input.h, input.w);
        std::copy(input.plane(in, 0), input.plane(in, 0) + sample.size(), sample.data.begin());
        Tensor y = conv2d(sample, agg, params.bias, params.spec);
        if (in == 0) {
            out = Tensor(input.n, y.c, y.h, y.w);
        }
        std::copy(y.data.begin(), y.data.end(), out.plane(in, 0));
    }
    return out;
}

Tensor dynamic_conv2d(const Tensor& input, const DynamicConvParams& params) {
    return dynamic_conv2d_with_coeffs(input, params, attention_coeffs(input, params));
}

NormParams NormParams::identity(int channels) {
    NormParams p;
    p.mean.assign(channels, 0.0f);
    p.var.assign(channels, 1.0f);
    p.gamma.assign(channels, 1.0f);
    p.beta.assign(channels, 0.0f);
    p.eps = 0.0f;
    return p;
}

Tensor ddc_layer(const Tensor& input, const DdcLayerParams& params) {
    if (params.second.spec.in_channels != params.first.spec.out_channels) {
        shape_error("ddc_layer stages disagree: first emits " +
                    std::to_string(params.first.spec.out_channels) + " channels, second expects " +
                    std::to_string(params.second.spec.in_channels));
    }
    Tensor y = dynamic_conv2d(input, params.first);
    y = batchnorm_infer(y, params.norm1.mean, params.norm1.var, params.norm1.gamma,
                        params.norm1.beta, params.norm1.eps);
    y = relu(y);
    y = dynamic_conv2d(y, params.second);
    y = batchnorm_infer(y, params.norm2.mean, params.norm2.var, params.norm2.gamma,
                        params.norm2.beta, params.norm2.eps);
    return relu(y);
}

}  // namespace abcdwavenet
