#pragma once

#include "abcdwavenet/tensor.hpp"

namespace abcdwavenet {

// Single-level orthonormal Haar decomposition. All four bands are
// (N, C, H/2, W/2); LH carries column detail, HL carries row detail.
struct SubBands {
    Tensor ll;
    Tensor lh;
    Tensor hl;
    Tensor hh;
};

SubBands dwt2d(const Tensor& input);
Tensor idwt2d(const SubBands& bands);

}  // namespace abcdwavenet
