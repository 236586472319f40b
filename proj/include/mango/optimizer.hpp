#pragma once

// First-order parameter updates. One Optimizer instance owns the moment
// buffers for a fixed tensor list, fed in the same order every step.

#include <cmath>
#include <cstddef>
#include <vector>

#include "mango/errors.hpp"

namespace mango {

enum class OptimizerKind : unsigned char { Sgd = 0, Adam = 1 };

template <class Real>
class Optimizer {
public:
    Optimizer() = default;
    Optimizer(OptimizerKind kind, Real lr, Real beta1 = Real(0.9),
              Real beta2 = Real(0.999), Real eps = Real(1e-8))
        : kind_(kind), lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

    OptimizerKind kind() const { return kind_; }
    Real learning_rate() const { return lr_; }
    void set_learning_rate(Real lr) { lr_ = lr; }

    // Applies one update. tensors[i] and grads[i] must alias the same
    // parameter across calls; moment buffers mirror shapes and are created
    // on the first step.
    void step(const std::vector<std::vector<Real>*>& tensors,
              const std::vector<const std::vector<Real>*>& grads) {
        if (tensors.size() != grads.size())
            throw DimensionError("optimizer: tensor/grad count mismatch");
        if (kind_ == OptimizerKind::Sgd) {
            for (std::size_t t = 0; t < tensors.size(); ++t)
                apply_sgd(*tensors[t], *grads[t]);
            return;
        }
        if (m_.empty()) {
            m_.resize(tensors.size());
            v_.resize(tensors.size());
            for (std::size_t t = 0; t < tensors.size(); ++t) {
                m_[t].assign(tensors[t]->size(), Real(0));
                v_[t].assign(tensors[t]->size(), Real(0));
            }
        }
        if (m_.size() != tensors.size())
            throw DimensionError("optimizer: tensor list changed size");
        ++step_count_;
        const Real bc1 = Real(1) - std::pow(beta1_, Real(step_count_));
        const Real bc2 = Real(1) - std::pow(beta2_, Real(step_count_));
        for (std::size_t t = 0; t < tensors.size(); ++t) {
            auto& p = *tensors[t];
            const auto& g = *grads[t];
            if (p.size() != g.size() || p.size() != m_[t].size())
                throw DimensionError("optimizer: state shape mismatch");
            for (std::size_t i = 0; i < p.size(); ++i) {
                m_[t][i] = beta1_ * m_[t][i] + (Real(1) - beta1_) * g[i];
                v_[t][i] = beta2_ * v_[t][i] + (Real(1) - beta2_) * g[i] * g[i];
                const Real mhat = m_[t][i] / bc1;
                const Real vhat = v_[t][i] / bc2;
                p[i] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
            }
        }
    }

private:
    void apply_sgd(std::vector<Real>& p, const std::vector<Real>& g) {
        if (p.size() != g.size())
            throw DimensionError("optimizer: grad shape mismatch");
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr_ * g[i];
    }

    OptimizerKind kind_ = OptimizerKind::Adam;
    Real lr_ = Real(1e-3);
    Real beta1_ = Real(0.9), beta2_ = Real(0.999), eps_ = Real(1e-8);
    long step_count_ = 0;
    std::vector<std::vector<Real>> m_, v_;
};

}  // namespace mango
