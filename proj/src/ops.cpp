#include "abcdwavenet/ops.hpp"

#include "abcdwavenet/prof.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

namespace abcdwavenet {

namespace {

// C[M x N] += A[M x K] * B[K x N], all row-major. The j loop is contiguous
// over both B and C, so the compiler turns the inner update into FMA lanes.
void gemm_acc(const float* a, const float* b, float* c, int rows, int depth, int cols) {
    for (int i = 0; i < rows; ++i) {
        float* crow = c + static_cast<std::size_t>(i) * cols;
        const float* arow = a + static_cast<std::size_t>(i) * depth;
        for (int k = 0; k < depth; ++k) {
            const float av = arow[k];
            if (av == 0.0f) continue;
            const float* brow = b + static_cast<std::size_t>(k) * cols;
            for (int j = 0; j < cols; ++j) crow[j] += av * brow[j];
        }
    }
}

// Fills patch columns for output rows [oy0, oy1) of one (sample, group) pair.
// Layout: rows are (ic, ky, kx), columns are (oy - oy0) * out_w + ox.
void im2col_rows(const Tensor& input, int sample, int c0, int group_channels,
                 const ConvSpec& spec, int out_w, int oy0, int oy1, float* buffer) {
    const int cols = (oy1 - oy0) * out_w;
    const int k = spec.kernel;
    std::size_t row = 0;
    for (int ic = 0; ic < group_channels; ++ic) {
        const float* src = input.plane(sample, c0 + ic);
        for (int ky = 0; ky < k; ++ky) {
            for (int kx = 0; kx < k; ++kx, ++row) {
                float* dst = buffer + row * cols;
                for (int oy = oy0; oy < oy1; ++oy) {
                    const int iy = oy * spec.stride + ky - spec.padding;
                    float* drow = dst + static_cast<std::size_t>(oy - oy0) * out_w;
                    if (iy < 0 || iy >= input.h) {
                        std::memset(drow, 0, sizeof(float) * out_w);
                        continue;
                    }
                    const float* srow = src + static_cast<std::size_t>(iy) * input.w;
                    if (spec.stride == 1) {
                        const int ix0 = kx - spec.padding;
                        int ox = 0;
                        for (; ox < out_w && ix0 + ox < 0; ++ox) drow[ox] = 0.0f;
                        const int valid_end = std::min(out_w, input.w - ix0);
                        if (valid_end > ox) {
                            std::memcpy(drow + ox, srow + ix0 + ox,
                                        sizeof(float) * (valid_end - ox));
                            ox = valid_end;
                        }
                        for (; ox < out_w; ++ox) drow[ox] = 0.0f;
                    } else {
                        for (int ox = 0; ox < out_w; ++ox) {
                            const int ix = ox * spec.stride + kx - spec.padding;
                            drow[ox] = (ix < 0 || ix >= input.w) ? 0.0f : srow[ix];
                        }
                    }
                }
            }
        }
    }
}

void conv_depthwise(const Tensor& input, const Tensor& weights, const std::vector<float>& bias,
                    const ConvSpec& spec, Tensor& out) {
    const int k = spec.kernel;
    for (int in = 0; in < input.n; ++in) {
        for (int ch = 0; ch < spec.out_channels; ++ch) {
            const float* src = input.plane(in, ch);
            const float* ker = weights.plane(ch, 0);
            float* dst = out.plane(in, ch);
            const float b = bias.empty() ? 0.0f : bias[ch];
            for (int oy = 0; oy < out.h; ++oy) {
                for (int ox = 0; ox < out.w; ++ox) {
                    float acc = b;
                    for (int ky = 0; ky < k; ++ky) {
                        const int iy = oy * spec.stride + ky - spec.padding;
                        if (iy < 0 || iy >= input.h) continue;
                        const float* srow = src + static_cast<std::size_t>(iy) * input.w;
                        const float* krow = ker + static_cast<std::size_t>(ky) * k;
                        for (int kx = 0; kx < k; ++kx) {
                            const int ix = ox * spec.stride + kx - spec.padding;
                            if (ix < 0 || ix >= input.w) continue;
                            acc += srow[ix] * krow[kx];
                        }
                    }
                    dst[static_cast<std::size_t>(oy) * out.w + ox] = acc;
                }
            }
        }
    }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
    if (!a.same_shape(b)) {
        shape_error(std::string(op) + " requires matching shapes, got " + a.shape_str() +
                    " vs " + b.shape_str());
    }
}

}  // namespace

Tensor conv2d(const Tensor& input, const Tensor& weights, const std::vector<float>& bias,
              const ConvSpec& spec) {
    prof::ScopedTimer timer("conv2d");
    spec.validate();
    if (input.c != spec.in_channels) {
        shape_error("conv2d input has " + std::to_string(input.c) + " channels, spec expects " +
                    std::to_string(spec.in_channels));
    }
    const int group_in = spec.in_channels / spec.groups;
    if (weights.n != spec.out_channels || weights.c != group_in || weights.h != spec.kernel ||
        weights.w != spec.kernel) {
        shape_error("conv2d weights " + weights.shape_str() + " do not match spec (" +
                    std::to_string(spec.out_channels) + "x" + std::to_string(group_in) + "x" +
                    std::to_string(spec.kernel) + "x" + std::to_string(spec.kernel) + ")");
    }
    if (!bias.empty() && static_cast<int>(bias.size()) != spec.out_channels) {
        shape_error("conv2d bias length " + std::to_string(bias.size()) +
                    " does not match out_channels " + std::to_string(spec.out_channels));
    }
    const int out_h = spec.out_dim(input.h);
    const int out_w = spec.out_dim(input.w);
    if (out_h < 1 || out_w < 1) {
        shape_error("conv2d produces empty output for input " + input.shape_str() + " with K=" +
                    std::to_string(spec.kernel) + " stride=" + std::to_string(spec.stride) +
                    " pad=" + std::to_string(spec.padding));
    }

    Tensor out(input.n, spec.out_channels, out_h, out_w);

    if (spec.groups == spec.in_channels && spec.groups == spec.out_channels) {
        conv_depthwise(input, weights, bias, spec, out);
        return out;
    }

    const int group_out = spec.out_channels / spec.groups;
    const int depth = group_in * spec.kernel * spec.kernel;

    // Row-blocked im2col keeps the patch buffer inside cache.
    constexpr std::size_t kBlockBudget = 1u << 20;  // floats
    int block_rows = std::max<int>(1, static_cast<int>(kBlockBudget / (static_cast<std::size_t>(depth) * out_w)));
    block_rows = std::min(block_rows, out_h);
    std::vector<float> patches(static_cast<std::size_t>(depth) * block_rows * out_w);

    for (int in = 0; in < input.n; ++in) {
        for (int g = 0; g < spec.groups; ++g) {
            const float* wptr = weights.plane(g * group_out, 0);
            for (int oy0 = 0; oy0 < out_h; oy0 += block_rows) {
                const int oy1 = std::min(out_h, oy0 + block_rows);
                const int cols = (oy1 - oy0) * out_w;
                im2col_rows(input, in, g * group_in, group_in, spec, out_w, oy0, oy1,
                            patches.data());
                for (int oc = 0; oc < group_out; ++oc) {
                    float* dst = out.plane(in, g * group_out + oc) +
                                 static_cast<std::size_t>(oy0) * out_w;
                    const float b = bias.empty() ? 0.0f : bias[g * group_out + oc];
                    std::fill(dst, dst + cols, b);
                }
                gemm_acc(wptr, patches.data(), out.plane(in, g * group_out) +
                                                   static_cast<std::size_t>(oy0) * out_w,
                         group_out, depth, cols);
            }
        }
    }
    return out;
}

Tensor depthwise_separable_conv(const Tensor& input, const Tensor& dw_weights,
                                const std::vector<float>& dw_bias, const Tensor& pw_weights,
                                const std::vector<float>& pw_bias, const ConvSpec& dw_spec) {
    if (dw_spec.groups != dw_spec.in_channels || dw_spec.in_channels != dw_spec.out_channels) {
        shape_error("depthwise stage requires groups == in_channels == out_channels");
    }
    Tensor mid = conv2d(input, dw_weights, dw_bias, dw_spec);
    ConvSpec pw_spec;
    pw_spec.in_channels = dw_spec.out_channels;
    pw_spec.out_channels = pw_weights.n;
    pw_spec.kernel = 1;
    return conv2d(mid, pw_weights, pw_bias, pw_spec);
}

Tensor global_avg_pool(const Tensor& input) {
    Tensor out(input.n, input.c, 1, 1);
    const double inv = 1.0 / (static_cast<double>(input.h) * input.w);
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float* src = input.plane(in, ic);
            double sum = 0.0;
            const std::size_t count = static_cast<std::size_t>(input.h) * input.w;
            for (std::size_t i = 0; i < count; ++i) sum += src[i];
            out.at(in, ic, 0, 0) = static_cast<float>(sum * inv);
        }
    }
    return out;
}

Tensor adaptive_avg_pool(const Tensor& input, int out_h, int out_w) {
    prof::ScopedTimer timer("pool");
    if (out_h < 1 || out_w < 1) shape_error("adaptive_avg_pool output dims must be >= 1");
    if (out_h > input.h || out_w > input.w) {
        shape_error("adaptive_avg_pool only downsamples (" + std::to_string(out_h) + "x" +
                    std::to_string(out_w) + " from " + std::to_string(input.h) + "x" +
                    std::to_string(input.w) + "); use bilinear_resize to upsample");
    }
    Tensor out(input.n, input.c, out_h, out_w);
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float* src = input.plane(in, ic);
            float* dst = out.plane(in, ic);
            for (int oy = 0; oy < out_h; ++oy) {
                const int y0 = (oy * input.h) / out_h;
                const int y1 = ((oy + 1) * input.h + out_h - 1) / out_h;
                for (int ox = 0; ox < out_w; ++ox) {
                    const int x0 = (ox * input.w) / out_w;
                    const int x1 = ((ox + 1) * input.w + out_w - 1) / out_w;
                    double sum = 0.0;
                    for (int y = y0; y < y1; ++y) {
                        const float* row = src + static_cast<std::size_t>(y) * input.w;
                        for (int x = x0; x < x1; ++x) sum += row[x];
                    }
                    dst[static_cast<std::size_t>(oy) * out_w + ox] =
                        static_cast<float>(sum / ((y1 - y0) * (x1 - x0)));
                }
            }
        }
    }
    return out;
}

Tensor bilinear_resize(const Tensor& input, int out_h, int out_w) {
    prof::ScopedTimer timer("resize");
    if (out_h < 1 || out_w < 1) shape_error("bilinear_resize output dims must be >= 1");
    if (out_h == input.h && out_w == input.w) return input;

    Tensor out(input.n, input.c, out_h, out_w);
    const float sy = static_cast<float>(input.h) / out_h;
    const float sx = static_cast<float>(input.w) / out_w;

    // Half-pixel centers (align_corners = false).
    std::vector<int> x0(out_w), x1(out_w);
    std::vector<float> fx(out_w);
    for (int ox = 0; ox < out_w; ++ox) {
        float x = (ox + 0.5f) * sx - 0.5f;
        x = std::max(0.0f, std::min(x, static_cast<float>(input.w - 1)));
        x0[ox] = static_cast<int>(x);
        x1[ox] = std::min(x0[ox] + 1, input.w - 1);
        fx[ox] = x - x0[ox];
    }
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float* src = input.plane(in, ic);
            float* dst = out.plane(in, ic);
            for (int oy = 0; oy < out_h; ++oy) {
                float y = (oy + 0.5f) * sy - 0.5f;
                y = std::max(0.0f, std::min(y, static_cast<float>(input.h - 1)));
                const int y0 = static_cast<int>(y);
                const int y1 = std::min(y0 + 1, input.h - 1);
                const float fyv = y - y0;
                const float* row0 = src + static_cast<std::size_t>(y0) * input.w;
                const float* row1 = src + static_cast<std::size_t>(y1) * input.w;
                float* drow = dst + static_cast<std::size_t>(oy) * out_w;
                for (int ox = 0; ox < out_w; ++ox) {
                    const float top = row0[x0[ox]] + (row0[x1[ox]] - row0[x0[ox]]) * fx[ox];
                    const float bot = row1[x0[ox]] + (row1[x1[ox]] - row1[x0[ox]]) * fx[ox];
                    drow[ox] = top + (bot - top) * fyv;
                }
            }
        }
    }
    return out;
}

Tensor maxpool2d(const Tensor& input, int kernel, int stride) {
    prof::ScopedTimer timer("pool");
    if (kernel < 1 || stride < 1) shape_error("maxpool2d kernel and stride must be >= 1");
    if (input.h % stride != 0 || input.w % stride != 0) {
        shape_error("maxpool2d requires H and W divisible by stride, got " + input.shape_str());
    }
    const int out_h = (input.h - kernel) / stride + 1;
    const int out_w = (input.w - kernel) / stride + 1;
    if (out_h < 1 || out_w < 1) shape_error("maxpool2d window larger than input");
    Tensor out(input.n, input.c, out_h, out_w);
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float* src = input.plane(in, ic);
            float* dst = out.plane(in, ic);
            for (int oy = 0; oy < out_h; ++oy) {
                for (int ox = 0; ox < out_w; ++ox) {
                    float best = -std::numeric_limits<float>::infinity();
                    for (int ky = 0; ky < kernel; ++ky) {
                        const float* row = src + static_cast<std::size_t>(oy * stride + ky) * input.w;
                        for (int kx = 0; kx < kernel; ++kx) {
                            best = std::max(best, row[ox * stride + kx]);
                        }
                    }
                    dst[static_cast<std::size_t>(oy) * out_w + ox] = best;
                }
            }
        }
    }
    return out;
}

Tensor relu(const Tensor& input) {
    Tensor out = input;
    for (float& v : out.data) v = v > 0.0f ? v : 0.0f;
    return out;
}

Tensor leaky_relu(const Tensor& input, float slope) {
    Tensor out = input;
    for (float& v : out.data) v = v > 0.0f ? v : slope * v;
    return out;
}

Tensor sigmoid(const Tensor& input) {
    Tensor out = input;
    for (float& v : out.data) v = 1.0f / (1.0f + std::exp(-v));
    return out;
}

Tensor add(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "add");
    Tensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] += b.data[i];
    return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
    require_same_shape(a, b, "mul");
    Tensor out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] *= b.data[i];
    return out;
}

Tensor concat_channels(const std::vector<const Tensor*>& parts) {
    if (parts.empty()) shape_error("concat_channels needs at least one tensor");
    const Tensor& first = *parts.front();
    int total_c = 0;
    for (const Tensor* t : parts) {
        if (t->n != first.n || t->h != first.h || t->w != first.w) {
            shape_error("concat_channels requires matching N, H, W; got " + first.shape_str() +
                        " vs " + t->shape_str());
        }
        total_c += t->c;
    }
    Tensor out(first.n, total_c, first.h, first.w);
    const std::size_t plane = static_cast<std::size_t>(first.h) * first.w;
    for (int in = 0; in < first.n; ++in) {
        int oc = 0;
        for (const Tensor* t : parts) {
            std::memcpy(out.plane(in, oc), t->plane(in, 0), sizeof(float) * plane * t->c);
            oc += t->c;
        }
    }
    return out;
}

Tensor batchnorm_infer(const Tensor& input, const std::vector<float>& mean,
                       const std::vector<float>& var, const std::vector<float>& gamma,
                       const std::vector<float>& beta, float eps) {
    const std::size_t c = static_cast<std::size_t>(input.c);
    if (mean.size() != c || var.size() != c || gamma.size() != c || beta.size() != c) {
        shape_error("batchnorm_infer statistic vectors must have length C=" + std::to_string(c));
    }
    if (eps < 0.0f) shape_error("batchnorm_infer eps must be >= 0");
    for (float v : var) {
        if (v < 0.0f) shape_error("batchnorm_infer variance must be non-negative");
    }
    Tensor out(input.n, input.c, input.h, input.w);
    const std::size_t plane = static_cast<std::size_t>(input.h) * input.w;
    for (int in = 0; in < input.n; ++in) {
        for (int ic = 0; ic < input.c; ++ic) {
            const float scale = gamma[ic] / std::sqrt(var[ic] + eps);
            const float shift = beta[ic] - mean[ic] * scale;
            const float* src = input.plane(in, ic);
            float* dst = out.plane(in, ic);
            for (std::size_t i = 0; i < plane; ++i) dst[i] = src[i] * scale + shift;
        }
    }
    return out;
}

Tensor layernorm(const Tensor& input, const std::vector<float>& gamma,
                 const std::vector<float>& beta, float eps) {
    const std::size_t c = static_cast<std::size_t>(input.c);
    if (gamma.size() != c || beta.size() != c) {
        shape_error("layernorm affine vectors must have length C=" + std::to_string(c));
    }
    Tensor out(input.n, input.c, input.h, input.w);
    const std::size_t plane = static_cast<std::size_t>(input.h) * input.w;
    const float inv_c = 1.0f / static_cast<float>(input.c);
    for (int in = 0; in < input.n; ++in) {
        const float* base = input.plane(in, 0);
        float* obase = out.plane(in, 0);
        for (std::size_t p = 0; p < plane; ++p) {
            float mean = 0.0f;
            for (int ic = 0; ic < input.c; ++ic) mean += base[ic * plane + p];
            mean *= inv_c;
            float var = 0.0f;
            for (int ic = 0; ic < input.c; ++ic) {
                const float d = base[ic * plane + p] - mean;
                var += d * d;
            }
            var *= inv_c;
            const float inv_std = 1.0f / std::sqrt(var + eps);
            for (int ic = 0; ic < input.c; ++ic) {
                obase[ic * plane + p] =
                    (base[ic * plane + p] - mean) * inv_std * gamma[ic] + beta[ic];
            }
        }
    }
    return out;
}

Tensor softmax(const Tensor& input, int axis) {
    if (axis < 0 || axis > 3) shape_error("softmax axis must be in [0, 3]");
    const int dims[4] = {input.n, input.c, input.h, input.w};
    const std::size_t strides[4] = {static_cast<std::size_t>(input.c) * input.h * input.w,
                                    static_cast<std::size_t>(input.h) * input.w,
                                    static_cast<std::size_t>(input.w), 1};
    const int len = dims[axis];
    const std::size_t stride = strides[axis];

    Tensor out = input;
    const std::size_t total = input.size();
    const std::size_t slice_count = total / len;
    for (std::size_t s = 0; s < slice_count; ++s) {
        // Decompose slice id into the non-axis coordinates to find the base offset.
        std::size_t base = 0;
        std::size_t rem = s;
        for (int d = 3; d >= 0; --d) {
            if (d == axis) continue;
            const std::size_t coord = rem % dims[d];
            rem /= dims[d];
            base += coord * strides[d];
        }
        float maxv = out.data[base];
        for (int i = 1; i < len; ++i) maxv = std::max(maxv, out.data[base + i * stride]);
        float sum = 0.0f;
        for (int i = 0; i < len; ++i) {
            const float e = std::exp(out.data[base + i * stride] - maxv);
            out.data[base + i * stride] = e;
            sum += e;
        }
        const float inv = 1.0f / sum;
        for (int i = 0; i < len; ++i) out.data[base + i * stride] *= inv;
    }
    return out;
}

std::vector<float> softmax(const std::vector<float>& logits) {
    if (logits.empty()) shape_error("softmax of empty vector");
    std::vector<float> out(logits.size());
    const float maxv = *std::max_element(logits.begin(), logits.end());
    float sum = 0.0f;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        out[i] = std::exp(logits[i] - maxv);
        sum += out[i];
    }
    for (float& v : out) v /= sum;
    return out;
}

}  // namespace abcdwavenet
