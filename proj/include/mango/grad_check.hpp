#pragma once

// Central finite-difference check over every parameter of a network.
// The loss functional maps the network output to (loss, ∂loss/∂output);
// the harness compares backprop gradients against numerical ones and
// reports the worst relative discrepancy.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mango/mlp.hpp"

namespace mango {

struct GradCheckResult {
    double max_rel_err = 0.0;
    std::size_t worst_layer = 0;
    std::size_t worst_index = 0;
};

inline double grad_rel_err(double analytic, double numeric) {
    const double scale = std::max({1.0, std::abs(analytic), std::abs(numeric)});
    return std::abs(analytic - numeric) / scale;
}

// loss_fn: output vector -> (loss, upstream gradient w.r.t. output)
using LossFn = std::function<std::pair<double, std::vector<double>>(
    const std::vector<double>&)>;

inline GradCheckResult grad_check(Mlp<double>& net, const LossFn& loss_fn,
                                  const std::vector<double>& sample,
                                  double h = 1e-5) {
    ForwardTape<double> tape;
    const std::vector<double> out = forward_one(net, sample, &tape);
    auto [loss, up] = loss_fn(out);
    (void)loss;
    BatchMatrix<double> upstream(1, up.size());
    upstream.data = up;
    std::vector<LayerGrads<double>> grads;
    backprop(net, tape, upstream, grads);

    GradCheckResult res;
    const auto eval = [&]() {
        return loss_fn(forward_one(net, sample)).first;
    };
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        auto check_tensor = [&](std::vector<double>& param,
                                const std::vector<double>& analytic) {
            for (std::size_t i = 0; i < param.size(); ++i) {
                const double orig = param[i];
                param[i] = orig + h;
                const double fp = eval();
                param[i] = orig - h;
                const double fm = eval();
                param[i] = orig;
                const double numeric = (fp - fm) / (2.0 * h);
                const double rel = grad_rel_err(analytic[i], numeric);
                if (rel > res.max_rel_err) {
                    res.max_rel_err = rel;
                    res.worst_layer = li;
                    res.worst_index = i;
                }
            }
        };
        check_tensor(net.layers[li].weights, grads[li].weights);
        check_tensor(net.layers[li].bias, grads[li].bias);
    }
    return res;
}

}  // namespace mango
