// Copyright 2026 The qgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal dense 2x2 complex linear algebra for single-qubit states and
// operators. Only what the axis-conjugation check needs.

#include <algorithm>
#include <array>
#include <complex>

namespace qgate::qubit {

using Complex = std::complex<double>;

struct Ket {
    std::array<Complex, 2> v{};
    Complex& operator[](int i) { return v[i]; }
    const Complex& operator[](int i) const { return v[i]; }
};

struct Matrix {
    std::array<std::array<Complex, 2>, 2> e{};
    Complex& operator()(int i, int j) { return e[i][j]; }
    const Complex& operator()(int i, int j) const { return e[i][j]; }
};

inline Matrix identity() { return {{{{1.0, 0.0}, {0.0, 1.0}}}}; }

// sigma_1, sigma_2, sigma_3 for k = 1, 2, 3; identity for k = 0.
inline Matrix pauli(int k) {
    using namespace std::complex_literals;
    switch (k) {
    case 1: return {{{{0.0, 1.0}, {1.0, 0.0}}}};
    case 2: return {{{{0.0, -1.0i}, {1.0i, 0.0}}}};
    case 3: return {{{{1.0, 0.0}, {0.0, -1.0}}}};
    default: return identity();
    }
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

inline Matrix operator*(Complex s, const Matrix& a) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = s * a(i, j);
    return r;
}

inline Ket operator*(const Matrix& a, const Ket& x) {
    return {{a(0, 0) * x[0] + a(0, 1) * x[1], a(1, 0) * x[0] + a(1, 1) * x[1]}};
}

inline Matrix adjoint(const Matrix& a) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

inline Matrix outer(const Ket& x) {
    Matrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = x[i] * std::conj(x[j]);
    return r;
}

inline Complex inner(const Ket& a, const Ket& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// <x|A|x> for Hermitian A; the imaginary part is roundoff.
inline double expectation(const Ket& x, const Matrix& a) { return inner(x, a * x).real(); }

// sigma . n
inline Matrix pauli_dot(const std::array<double, 3>& n) {
    return Complex(n[0]) * pauli(1) + Complex(n[1]) * pauli(2) + Complex(n[2]) * pauli(3);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

} // namespace qgate::qubit
