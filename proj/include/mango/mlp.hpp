#pragma once

// Fully connected network with explicit parameter storage and reverse-mode
// gradients. Templated on the scalar so the same layers run in real64 for
// training/gradient checks and real32 for throughput comparisons.

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mango/dense.hpp"
#include "mango/errors.hpp"

namespace mango {

enum class Activation : unsigned char { LeakyRelu = 0, Sigmoid = 1, Linear = 2 };

// B rows of dim columns, row-major.
template <class Real>
struct BatchMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Real> data;

    BatchMatrix() = default;
    BatchMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * c, Real(0)) {}

    Real* row(std::size_t r) { return data.data() + r * cols; }
    const Real* row(std::size_t r) const { return data.data() + r * cols; }
};

template <class Real>
struct DenseLayer {
    std::size_t in = 0, out = 0;
    Activation act = Activation::Linear;
    std::vector<Real> weights;  // out×in row-major
    std::vector<Real> bias;     // out
};

template <class Real>
struct LayerGrads {
    std::vector<Real> weights;
    std::vector<Real> bias;
};

template <class Real>
struct Mlp {
    std::vector<DenseLayer<Real>> layers;
    Real leaky_slope = Real(0.01);

    std::size_t input_dim() const { return layers.front().in; }
    std::size_t output_dim() const { return layers.back().out; }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.weights.size() + l.bias.size();
        return n;
    }
};

// Activations cached per layer; holds everything backprop needs. Valid only
// for the forward pass that produced it.
template <class Real>
struct ForwardTape {
    BatchMatrix<Real> input;
    std::vector<BatchMatrix<Real>> post;  // post-activation per layer

    const BatchMatrix<Real>& output() const { return post.back(); }
};

namespace detail {

template <class Real>
inline Real activate(Real x, Activation a, Real slope) {
    switch (a) {
        case Activation::LeakyRelu: return x >= Real(0) ? x : slope * x;
        case Activation::Sigmoid:   return Real(1) / (Real(1) + std::exp(-x));
        case Activation::Linear:    return x;
    }
    return x;
}

// Derivative expressed through the post-activation value.
template <class Real>
inline Real activate_grad(Real y, Activation a, Real slope) {
    switch (a) {
        case Activation::LeakyRelu: return y >= Real(0) ? Real(1) : slope;
        case Activation::Sigmoid:   return y * (Real(1) - y);
        case Activation::Linear:    return Real(1);
    }
    return Real(1);
}

}  // namespace detail

// Builds a layer stack with He-style uniform fan-in initialization and zero
// biases.
template <class Real>
Mlp<Real> make_mlp(const std::vector<std::size_t>& dims,
                   const std::vector<Activation>& acts, std::mt19937_64& gen,
                   Real leaky_slope = Real(0.01)) {
    if (dims.size() < 2 || acts.size() != dims.size() - 1)
        throw DimensionError("make_mlp: dims/activations mismatch");
    Mlp<Real> net;
    net.leaky_slope = leaky_slope;
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        DenseLayer<Real> layer;
        layer.in = dims[l];
        layer.out = dims[l + 1];
        layer.act = acts[l];
        layer.weights.resize(layer.in * layer.out);
        layer.bias.assign(layer.out, Real(0));
        const double bound = std::sqrt(6.0 / static_cast<double>(layer.in));
        std::uniform_real_distribution<double> d(-bound, bound);
        for (auto& w : layer.weights) w = static_cast<Real>(d(gen));
        net.layers.push_back(std::move(layer));
    }
    return net;
}

// Batched forward pass; fills the tape when given one.
template <class Real>
BatchMatrix<Real> forward(const Mlp<Real>& net, const BatchMatrix<Real>& x,
                          ForwardTape<Real>* tape = nullptr) {
    if (x.cols != net.input_dim())
        throw DimensionError("forward: input dim " + std::to_string(x.cols) +
                             " != " + std::to_string(net.input_dim()));
    if (tape) {
        tape->input = x;
        tape->post.clear();
        tape->post.reserve(net.layers.size());
    }
    BatchMatrix<Real> cur = x;
    for (const auto& layer : net.layers) {
        BatchMatrix<Real> next(cur.rows, layer.out);
        dense::gemm_nt(cur.rows, layer.out, layer.in, cur.data.data(),
                       layer.weights.data(), next.data.data());
        for (std::size_t r = 0; r < next.rows; ++r) {
            Real* p = next.row(r);
            for (std::size_t j = 0; j < layer.out; ++j)
                p[j] = detail::activate(p[j] + layer.bias[j], layer.act,
                                        net.leaky_slope);
        }
        if (tape) tape->post.push_back(next);
        cur = std::move(next);
    }
    return cur;
}

template <class Real>
std::vector<Real> forward_one(const Mlp<Real>& net,
                              const std::vector<Real>& x,
                              ForwardTape<Real>* tape = nullptr) {
    BatchMatrix<Real> b(1, x.size());
    b.data = x;
    return forward(net, b, tape).data;
}

// Reverse-mode gradients for a taped forward pass. Returns the gradient
// w.r.t. the batch input; parameter gradients are accumulated into grads
// (sized on first use).
template <class Real>
BatchMatrix<Real> backprop(const Mlp<Real>& net, const ForwardTape<Real>& tape,
                           const BatchMatrix<Real>& upstream,
                           std::vector<LayerGrads<Real>>& grads) {
    if (tape.post.size() != net.layers.size())
        throw DimensionError("backprop: tape does not match network");
    if (upstream.rows != tape.input.rows ||
        upstream.cols != net.output_dim())
        throw DimensionError("backprop: upstream shape mismatch");
    if (grads.empty()) {
        grads.resize(net.layers.size());
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            grads[l].weights.assign(net.layers[l].weights.size(), Real(0));
            grads[l].bias.assign(net.layers[l].bias.size(), Real(0));
        }
    }
    const std::size_t batch = upstream.rows;
    BatchMatrix<Real> delta = upstream;
    for (std::size_t li = net.layers.size(); li-- > 0;) {
        const auto& layer = net.layers[li];
        const BatchMatrix<Real>& y = tape.post[li];
        if (y.rows != batch || y.cols != layer.out)
            throw DimensionError("backprop: stale tape");
        for (std::size_t r = 0; r < batch; ++r) {
            Real* d = delta.row(r);
            const Real* yr = y.row(r);
            for (std::size_t j = 0; j < layer.out; ++j)
                d[j] *= detail::activate_grad(yr[j], layer.act,
                                              net.leaky_slope);
        }
        const BatchMatrix<Real>& input =
            li == 0 ? tape.input : tape.post[li - 1];
        // dW += deltaᵀ · input, db += column sums of delta
        std::vector<Real> dw(layer.out * layer.in);
        dense::gemm_tn(layer.out, layer.in, batch, delta.data.data(),
                       input.data.data(), dw.data());
        for (std::size_t i = 0; i < dw.size(); ++i)
            grads[li].weights[i] += dw[i];
        for (std::size_t r = 0; r < batch; ++r) {
            const Real* d = delta.row(r);
            for (std::size_t j = 0; j < layer.out; ++j)
                grads[li].bias[j] += d[j];
        }
        if (li == 0) {
            BatchMatrix<Real> dx(batch, layer.in);
            dense::gemm_nn(batch, layer.in, layer.out, delta.data.data(),
                           layer.weights.data(), dx.data.data());
            return dx;
        }
        BatchMatrix<Real> prev(batch, layer.in);
        dense::gemm_nn(batch, layer.in, layer.out, delta.data.data(),
                       layer.weights.data(), prev.data.data());
        delta = std::move(prev);
    }
    return {};
}

template <class Real, class Fn>
void for_each_tensor(Mlp<Real>& net, Fn&& fn) {
    for (auto& layer : net.layers) {
        fn(layer.weights);
        fn(layer.bias);
    }
}

template <class Real, class Fn>
void for_each_grad(std::vector<LayerGrads<Real>>& grads, Fn&& fn) {
    for (auto& g : grads) {
        fn(g.weights);
        fn(g.bias);
    }
}

}  // namespace mango
