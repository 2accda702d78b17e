#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace abcdwavenet {

// Dense rank-4 array in (batch, channel, row, col) order, row-major,
// single precision. The one value type flowing through the whole network.
struct Tensor {
    int n = 0;
    int c = 0;
    int h = 0;
    int w = 0;
    std::vector<float> data;

    Tensor() = default;
    Tensor(int n, int c, int h, int w, float fill = 0.0f);
    Tensor(int n, int c, int h, int w, std::initializer_list<float> values);

    std::size_t size() const { return data.size(); }

    std::size_t index(int in, int ic, int iy, int ix) const {
        return ((static_cast<std::size_t>(in) * c + ic) * h + iy) * w + ix;
    }
    float& at(int in, int ic, int iy, int ix) { return data[index(in, ic, iy, ix)]; }
    float at(int in, int ic, int iy, int ix) const { return data[index(in, ic, iy, ix)]; }

    // Pointer to the start of one (n, c) plane.
    float* plane(int in, int ic) { return data.data() + index(in, ic, 0, 0); }
    const float* plane(int in, int ic) const { return data.data() + index(in, ic, 0, 0); }

    bool same_shape(const Tensor& other) const {
        return n == other.n && c == other.c && h == other.h && w == other.w;
    }
    std::string shape_str() const;

    bool all_finite() const;
};

// Geometry of one convolution. in/out channels must be divisible by groups.
struct ConvSpec {
    int in_channels = 1;
    int out_channels = 1;
    int kernel = 1;
    int stride = 1;
    int padding = 0;
    int groups = 1;

    void validate() const;
    int out_dim(int in_dim) const { return (in_dim + 2 * padding - kernel) / stride + 1; }
};

[[noreturn]] void shape_error(const std::string& message);

}  // namespace abcdwavenet
