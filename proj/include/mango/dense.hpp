#pragma once

// Row-major dense kernels shared by the matrix core (double) and the
// neural-network layers (float or double). Plain loops, laid out so the
// compiler vectorizes the innermost stride-1 pass.

#include <cstddef>

namespace mango::dense {

// C(m×n) = A(m×k) · B(k×n)
template <class T>
void gemm_nn(std::size_t m, std::size_t n, std::size_t k,
             const T* A, const T* B, T* C) {
    for (std::size_t i = 0; i < m; ++i) {
        T* c = C + i * n;
        for (std::size_t j = 0; j < n; ++j) c[j] = T(0);
        const T* a = A + i * k;
        for (std::size_t p = 0; p < k; ++p) {
            const T ap = a[p];
            const T* b = B + p * n;
            for (std::size_t j = 0; j < n; ++j) c[j] += ap * b[j];
        }
    }
}

// C(m×n) = A(m×k) · B(n×k)ᵀ
template <class T>
void gemm_nt(std::size_t m, std::size_t n, std::size_t k,
             const T* A, const T* B, T* C) {
    for (std::size_t i = 0; i < m; ++i) {
        const T* a = A + i * k;
        T* c = C + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            const T* b = B + j * k;
            T acc = T(0);
            for (std::size_t p = 0; p < k; ++p) acc += a[p] * b[p];
            c[j] = acc;
        }
    }
}

// C(m×n) = A(k×m)ᵀ · B(k×n)
template <class T>
void gemm_tn(std::size_t m, std::size_t n, std::size_t k,
             const T* A, const T* B, T* C) {
    for (std::size_t i = 0; i < m * n; ++i) C[i] = T(0);
    for (std::size_t p = 0; p < k; ++p) {
        const T* a = A + p * m;
        const T* b = B + p * n;
        for (std::size_t i = 0; i < m; ++i) {
            const T ai = a[i];
            T* c = C + i * n;
            for (std::size_t j = 0; j < n; ++j) c[j] += ai * b[j];
        }
    }
}

// y(m) = A(m×n) · x(n)
template <class T>
void gemv(std::size_t m, std::size_t n, const T* A, const T* x, T* y) {
    for (std::size_t i = 0; i < m; ++i) {
        const T* a = A + i * n;
        T acc = T(0);
        for (std::size_t j = 0; j < n; ++j) acc += a[j] * x[j];
        y[i] = acc;
    }
}

// y(n) = A(m×n)ᵀ · x(m)
template <class T>
void gemv_t(std::size_t m, std::size_t n, const T* A, const T* x, T* y) {
    for (std::size_t j = 0; j < n; ++j) y[j] = T(0);
    for (std::size_t i = 0; i < m; ++i) {
        const T xi = x[i];
        const T* a = A + i * n;
        for (std::size_t j = 0; j < n; ++j) y[j] += xi * a[j];
    }
}

}  // namespace mango::dense
