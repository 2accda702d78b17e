#include "abcdwavenet/complexity.hpp"

namespace abcdwavenet {

ConvComplexity conv_complexity(const ConvSpec& spec, int num_experts, int out_h, int out_w,
                               bool with_bias) {
    spec.validate();
    if (num_experts < 1) shape_error("conv_complexity requires num_experts >= 1");
    if (out_h < 1 || out_w < 1) shape_error("conv_complexity requires positive output dims");

    const long long cin = spec.in_channels;
    const long long cout = spec.out_channels;
    const long long k2 = static_cast<long long>(spec.kernel) * spec.kernel;
    const long long hw = static_cast<long long>(out_h) * out_w;
    const long long m = num_experts;

    ConvComplexity r;
    r.standard_params = cout * cin * k2;
    r.standard_flops = hw * cout * cin * k2;
    r.dynamic_params = cin * cin + cin * m + m * cout * cin * k2;
    r.dynamic_flops = r.dynamic_params + r.standard_flops;
    r.dynamic_params_stored = r.dynamic_params + cin + m + (with_bias ? cout : 0);
    r.r_param_exact = static_cast<double>(r.dynamic_params) / static_cast<double>(r.standard_params);
    r.r_param_approx = 1.0 / static_cast<double>(k2) + static_cast<double>(m);
    r.r_flops_exact = static_cast<double>(r.dynamic_flops) / static_cast<double>(r.standard_flops);
    r.r_flops_approx = 1.0;
    return r;
}

long long ComplexityReport::total_params() const {
    long long sum = 0;
    for (const LayerComplexity& l : layers) sum += l.params;
    return sum;
}

long long ComplexityReport::total_flops() const {
    long long sum = 0;
    for (const LayerComplexity& l : layers) sum += l.flops;
    return sum;
}

}  // namespace abcdwavenet
