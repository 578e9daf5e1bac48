#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Conventions used throughout the library (the single place they are defined):
//  * matrices are dense, row-major;
//  * for n-qubit objects, basis index bit q (qubit q) is bit (n-1-q) of the
//    integer index, i.e. qubit 0 is the LEFTMOST tensor factor / most
//    significant bit.  |0100> on four qubits is index 4.

namespace c4 {

using cplx = std::complex<double>;

struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;  // row-major, a[i*cols + j]

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {
        if (r == 0 || c == 0) throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool square() const { return rows == cols; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix zero(std::size_t r, std::size_t c) { return ComplexMatrix(r, c); }
};

// Real antisymmetric matrix, the carrier for Wick contraction blocks.
struct AntisymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major

    AntisymmetricMatrix() = default;
    explicit AntisymmetricMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    // Largest |A + A^T| entry relative to the largest |A| entry.
    double asymmetry() const {
        double amax = 0.0, dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                amax = std::max(amax, std::abs((*this)(i, j)));
                dev = std::max(dev, std::abs((*this)(i, j) + (*this)(j, i)));
            }
        return amax > 0.0 ? dev / amax : dev;
    }
};

}  // namespace c4
