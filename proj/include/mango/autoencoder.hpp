#pragma once

// Encoder/decoder pair over flattened images. Default stack follows the
// experiment architecture: D→256→64→L with leaky-ReLU activations
// (including the latent layer), mirrored decoder ending in a sigmoid so
// outputs stay in (0,1).

#include <cstdint>
#include <random>
#include <vector>

#include "mango/mlp.hpp"
#include "mango/rng.hpp"

namespace mango {

template <class Real>
struct Autoencoder {
    Mlp<Real> encoder;
    Mlp<Real> decoder;

    std::size_t input_dim() const { return encoder.input_dim(); }
    std::size_t latent_dim() const { return encoder.output_dim(); }
};

template <class Real>
Autoencoder<Real> make_autoencoder(std::size_t input_dim,
                                   std::size_t latent_dim,
                                   std::uint64_t seed,
                                   const std::vector<std::size_t>& hidden =
                                       {256, 64},
                                   Real leaky_slope = Real(0.01)) {
    std::vector<std::size_t> enc_dims{input_dim};
    enc_dims.insert(enc_dims.end(), hidden.begin(), hidden.end());
    enc_dims.push_back(latent_dim);
    std::vector<Activation> enc_acts(enc_dims.size() - 1,
                                     Activation::LeakyRelu);

    std::vector<std::size_t> dec_dims{latent_dim};
    dec_dims.insert(dec_dims.end(), hidden.rbegin(), hidden.rend());
    dec_dims.push_back(input_dim);
    std::vector<Activation> dec_acts(dec_dims.size() - 1,
                                     Activation::LeakyRelu);
    dec_acts.back() = Activation::Sigmoid;

    Autoencoder<Real> ae;
    auto enc_gen = rng::derive(seed, /*stream=*/1);
    auto dec_gen = rng::derive(seed, /*stream=*/2);
    ae.encoder = make_mlp<Real>(enc_dims, enc_acts, enc_gen, leaky_slope);
    ae.decoder = make_mlp<Real>(dec_dims, dec_acts, dec_gen, leaky_slope);
    return ae;
}

template <class Real>
std::vector<Real> encode(const Autoencoder<Real>& ae,
                         const std::vector<Real>& x) {
    return forward_one(ae.encoder, x);
}

template <class Real>
std::vector<Real> decode(const Autoencoder<Real>& ae,
                         const std::vector<Real>& z) {
    return forward_one(ae.decoder, z);
}

}  // namespace mango
