#pragma once

// Matrix exponential by scaling-and-squaring over a [13/13] rational
// approximant, plus its Fréchet derivative and the adjoint of that
// derivative. The derivative comes from the block identity
//
//   expm([[M, E], [0, M]]) = [[expm(M), L(M,E)], [0, expm(M)]]
//
// so one expm code path serves all three entry points.

#include <cmath>
#include <cstddef>
#include <utility>

#include "mango/matrix.hpp"

namespace mango {

namespace detail {

inline constexpr double kPade13Theta = 5.371920351148152;  // 1-norm bound

inline constexpr double kPade13Coeff[14] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

inline Matrix expm_core(Matrix a) {
    const double* b = kPade13Coeff;
    const std::size_t n = a.rows();
    int squarings = 0;
    const double nrm = a.norm1();
    if (nrm > kPade13Theta) {
        squarings = static_cast<int>(
            std::ceil(std::log2(nrm / kPade13Theta)));
        a *= std::ldexp(1.0, -squarings);
    }
    const Matrix id = Matrix::identity(n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;
    Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                    b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
               b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    Matrix r = lu_solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

}  // namespace detail

inline Matrix expm(const Matrix& m) {
    if (!m.square()) throw DimensionError("expm: matrix not square");
    m.check_finite();
    return detail::expm_core(m);
}

// Returns (expm(M), L(M,E)) where L is the Fréchet derivative of expm at M
// in direction E.
inline std::pair<Matrix, Matrix> expm_frechet(const Matrix& m,
                                              const Matrix& e) {
    if (!m.square()) throw DimensionError("expm_frechet: matrix not square");
    m.require_same_shape(e);
    m.check_finite();
    e.check_finite();
    const std::size_t n = m.rows();
    Matrix block(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            block(r, c) = m(r, c);
            block(r, n + c) = e(r, c);
            block(n + r, n + c) = m(r, c);
        }
    }
    const Matrix big = detail::expm_core(std::move(block));
    Matrix em(n, n), frechet(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            em(r, c) = big(r, c);
            frechet(r, c) = big(r, n + c);
        }
    }
    return {em, frechet};
}

// Adjoint of E ↦ L(M,E) under the trace inner product:
// ⟨L(M,E), W⟩ = ⟨E, L*(M,W)⟩ with L*(M,W) = L(Mᵀ, W).
inline Matrix expm_frechet_adjoint(const Matrix& m, const Matrix& w) {
    if (!m.square())
        throw DimensionError("expm_frechet_adjoint: matrix not square");
    m.require_same_shape(w);
    return expm_frechet(m.transpose(), w).second;
}

}  // namespace mango
