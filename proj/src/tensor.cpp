#include "abcdwavenet/tensor.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace abcdwavenet {

namespace {

void check_dims(int n, int c, int h, int w) {
    if (n < 1 || c < 1 || h < 1 || w < 1) {
        std::ostringstream msg;
        msg << "tensor dimensions must all be >= 1, got " << n << "x" << c << "x" << h << "x" << w;
        shape_error(msg.str());
    }
}

}  // namespace

Tensor::Tensor(int n_, int c_, int h_, int w_, float fill) : n(n_), c(c_), h(h_), w(w_) {
    check_dims(n, c, h, w);
    data.assign(static_cast<std::size_t>(n) * c * h * w, fill);
}

Tensor::Tensor(int n_, int c_, int h_, int w_, std::initializer_list<float> values)
    : n(n_), c(c_), h(h_), w(w_), data(values) {
    check_dims(n, c, h, w);
    if (data.size() != static_cast<std::size_t>(n) * c * h * w) {
        shape_error("initializer length " + std::to_string(data.size()) +
                    " does not match shape " + shape_str());
    }
}

std::string Tensor::shape_str() const {
    std::ostringstream s;
    s << n << "x" << c << "x" << h << "x" << w;
    return s.str();
}

bool Tensor::all_finite() const {
    for (float v : data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void ConvSpec::validate() const {
    if (in_channels < 1 || out_channels < 1 || kernel < 1 || groups < 1) {
        shape_error("conv spec requires positive channel, kernel and group counts");
    }
    if (stride < 1) shape_error("conv stride must be >= 1");
    if (padding < 0) shape_error("conv padding must be >= 0");
    if (in_channels % groups != 0 || out_channels % groups != 0) {
        shape_error("conv channels (" + std::to_string(in_channels) + " -> " +
                    std::to_string(out_channels) + ") not divisible by groups " +
                    std::to_string(groups));
    }
}

void shape_error(const std::string& message) { throw std::invalid_argument(message); }

}  // namespace abcdwavenet
