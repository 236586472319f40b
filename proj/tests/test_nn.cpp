#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mango/autoencoder.hpp"
#include "mango/grad_check.hpp"
#include "mango/mlp.hpp"
#include "mango/optimizer.hpp"
#include "support/oracles.hpp"

using mango::Activation;
using mango::BatchMatrix;
using mango::ForwardTape;
using mango::Mlp;

namespace {

Mlp<double> seeded_net(const std::vector<std::size_t>& dims,
                       std::vector<mango::Activation> acts,
                       std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    return mango::make_mlp<double>(dims, acts, gen);
}

double leaky(double x, double s = 0.01) { return x >= 0 ? x : s * x; }

}  // namespace

TEST_CASE("zero-parameter encoder maps to the zero latent") {
    Mlp<double> net = seeded_net({6, 4, 2},
                                 {Activation::LeakyRelu, Activation::LeakyRelu},
                                 1);
    mango::for_each_tensor(net, [](std::vector<double>& t) {
        std::fill(t.begin(), t.end(), 0.0);
    });
    const auto z = forward_one(net, std::vector<double>{.1, .2, .3, .4, .5, .6});
    for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("identity single layer restricted to the latent width") {
    Mlp<double> net;
    mango::DenseLayer<double> l;
    l.in = 5;
    l.out = 3;
    l.act = Activation::Linear;
    l.weights.assign(15, 0.0);
    for (std::size_t i = 0; i < 3; ++i) l.weights[i * 5 + i] = 1.0;
    l.bias.assign(3, 0.0);
    net.layers.push_back(l);
    const auto z = forward_one(net, std::vector<double>{9, 8, 7, 6, 5});
    CHECK(z == std::vector<double>{9, 8, 7});
}

TEST_CASE("seeded two-layer forward matches a hand-evaluated oracle") {
    Mlp<double> net = seeded_net(
        {3, 2, 2}, {Activation::LeakyRelu, Activation::Sigmoid}, 21);
    const std::vector<double> x{0.4, -0.7, 0.9};
    // step-by-step evaluation straight off the stored parameters
    std::vector<double> h(2);
    for (int j = 0; j < 2; ++j) {
        double acc = net.layers[0].bias[j];
        for (int i = 0; i < 3; ++i)
            acc += net.layers[0].weights[j * 3 + i] * x[i];
        h[j] = leaky(acc);
    }
    std::vector<double> y(2);
    for (int j = 0; j < 2; ++j) {
        double acc = net.layers[1].bias[j];
        for (int i = 0; i < 2; ++i)
            acc += net.layers[1].weights[j * 2 + i] * h[i];
        y[j] = 1.0 / (1.0 + std::exp(-acc));
    }
    const auto got = forward_one(net, x);
    CHECK(got[0] == Catch::Approx(y[0]).epsilon(1e-15));
    CHECK(got[1] == Catch::Approx(y[1]).epsilon(1e-15));
}

TEST_CASE("zero-parameter decoder outputs sigmoid(0) everywhere") {
    Mlp<double> net =
        seeded_net({2, 3, 4}, {Activation::LeakyRelu, Activation::Sigmoid}, 2);
    mango::for_each_tensor(net, [](std::vector<double>& t) {
        std::fill(t.begin(), t.end(), 0.0);
    });
    const auto y = forward_one(net, std::vector<double>{3.0, -1.0});
    for (double v : y) CHECK(v == 0.5);
}

TEST_CASE("sigmoid output stays inside (0,1)") {
    // double-precision sigmoid rounds to 1.0 only once the pre-activation
    // exceeds ~37; drive it across the non-saturating range
    auto ae = mango::make_autoencoder<double>(12, 3, 77, {8, 4});
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> z(3);
        for (auto& v : z) v = d(gen);
        const auto y = decode(ae, z);
        for (double v : y) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
    }
}

TEST_CASE("dimension mismatch raises") {
    Mlp<double> net = seeded_net({4, 2}, {Activation::Linear}, 3);
    CHECK_THROWS_AS(forward_one(net, std::vector<double>{1.0, 2.0}),
                    mango::DimensionError);
}

TEST_CASE("backprop with zero upstream yields zero gradients") {
    Mlp<double> net = seeded_net(
        {5, 4, 3}, {Activation::LeakyRelu, Activation::Sigmoid}, 8);
    ForwardTape<double> tape;
    BatchMatrix<double> x(2, 5);
    std::iota(x.data.begin(), x.data.end(), 0.0);
    forward(net, x, &tape);
    BatchMatrix<double> upstream(2, 3);
    std::vector<mango::LayerGrads<double>> grads;
    const auto dx = backprop(net, tape, upstream, grads);
    mango::for_each_grad(grads, [](std::vector<double>& g) {
        for (double v : g) CHECK(v == 0.0);
    });
    for (double v : dx.data) CHECK(v == 0.0);
}

TEST_CASE("linear layer input gradient is the weight transpose action") {
    Mlp<double> net = seeded_net({4, 3}, {Activation::Linear}, 9);
    ForwardTape<double> tape;
    BatchMatrix<double> x(1, 4);
    x.data = {0.5, -0.25, 1.0, 2.0};
    forward(net, x, &tape);
    BatchMatrix<double> up(1, 3);
    up.data = {1.0, -2.0, 0.5};
    std::vector<mango::LayerGrads<double>> grads;
    const auto dx = backprop(net, tape, up, grads);
    for (std::size_t i = 0; i < 4; ++i) {
        double expect = 0.0;
        for (std::size_t j = 0; j < 3; ++j)
            expect += net.layers[0].weights[j * 4 + i] * up.data[j];
        CHECK(dx.data[i] == Catch::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("backprop matches finite differences on a tiny net") {
    Mlp<double> net = seeded_net(
        {6, 4, 2}, {Activation::LeakyRelu, Activation::LeakyRelu}, 404);
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> x(6);
    for (auto& v : x) v = d(gen);
    // squared-error loss against a fixed target
    const std::vector<double> target{0.3, -0.8};
    const mango::LossFn loss = [&](const std::vector<double>& out) {
        double l = 0.0;
        std::vector<double> up(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double r = out[i] - target[i];
            l += r * r;
            up[i] = 2.0 * r;
        }
        return std::make_pair(l, up);
    };
    const auto res = grad_check(net, loss, x);
    CHECK(res.max_rel_err <= 1e-5);
}

TEST_CASE("gradient check passes on nets up to D=20 L=8") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Mlp<double> net = seeded_net({20, 12, 8},
                                     {Activation::LeakyRelu,
                                      Activation::Sigmoid},
                                     900 + seed);
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> d(0.0, 1.0);
        std::vector<double> x(20);
        for (auto& v : x) v = d(gen);
        const mango::LossFn loss = [](const std::vector<double>& out) {
            double l = 0.0;
            std::vector<double> up(out.size());
            for (std::size_t i = 0; i < out.size(); ++i) {
                l += out[i] * out[i];
                up[i] = 2.0 * out[i];
            }
            return std::make_pair(l, up);
        };
        CHECK(grad_check(net, loss, x).max_rel_err <= 1e-5);
    }
}

TEST_CASE("gradient checker flags an injected analytic error") {
    Mlp<double> net = seeded_net({4, 3, 2},
                                 {Activation::LeakyRelu, Activation::Linear},
                                 31);
    const std::vector<double> x{0.1, 0.2, 0.3, 0.4};
    // a deliberately wrong upstream (scaled by 1.5) must blow the check
    const mango::LossFn broken = [](const std::vector<double>& out) {
        double l = 0.0;
        std::vector<double> up(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            l += out[i] * out[i];
            up[i] = 3.0 * out[i];  // should be 2·out
        }
        return std::make_pair(l, up);
    };
    CHECK(grad_check(net, broken, x).max_rel_err > 1e-3);
}

TEST_CASE("leaky-ReLU slope is configurable and the activation monotone") {
    std::mt19937_64 gen(4);
    auto net = mango::make_mlp<double>({1, 1}, {Activation::LeakyRelu}, gen,
                                       /*leaky_slope=*/0.2);
    net.layers[0].weights = {1.0};
    net.layers[0].bias = {0.0};
    CHECK(forward_one(net, std::vector<double>{-2.0})[0] ==
          Catch::Approx(-0.4));
    std::vector<double> sorted_in{-3.0, -1.0, -0.5, 0.0, 0.25, 1.0, 4.0};
    double prev = -1e300;
    for (double v : sorted_in) {
        const double y = forward_one(net, std::vector<double>{v})[0];
        CHECK(y > prev);
        prev = y;
    }
}

TEST_CASE("sgd step") {
    std::vector<double> p{1.0, -2.0, 3.0};
    const std::vector<double> g{0.5, 0.25, -1.0};
    mango::Optimizer<double> opt(mango::OptimizerKind::Sgd, 0.1);
    SECTION("zero gradient leaves parameters unchanged") {
        const std::vector<double> zero(3, 0.0);
        auto copy = p;
        opt.step({&copy}, {&zero});
        CHECK(copy == p);
    }
    SECTION("p' = p - lr*g") {
        opt.step({&p}, {&g});
        CHECK(p[0] == Catch::Approx(1.0 - 0.1 * 0.5));
        CHECK(p[1] == Catch::Approx(-2.0 - 0.1 * 0.25));
        CHECK(p[2] == Catch::Approx(3.0 + 0.1 * 1.0));
    }
}

TEST_CASE("adam first step has magnitude lr·g/(|g|+eps)") {
    std::vector<double> p{0.0, 0.0, 0.0};
    const std::vector<double> g{0.5, -2.0, 1e-12};
    const double lr = 1e-3, eps = 1e-8;
    mango::Optimizer<double> opt(mango::OptimizerKind::Adam, lr, 0.9, 0.999,
                                 eps);
    opt.step({&p}, {&g});
    for (std::size_t i = 0; i < 3; ++i) {
        const double expect = -lr * g[i] / (std::abs(g[i]) + eps);
        CHECK(p[i] == Catch::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("forward pass is deterministic") {
    auto ae = mango::make_autoencoder<double>(10, 4, 123, {6});
    std::vector<double> x(10, 0.5);
    CHECK(encode(ae, x) == encode(ae, x));
    auto ae2 = mango::make_autoencoder<double>(10, 4, 123, {6});
    CHECK(encode(ae, x) == encode(ae2, x));
}
