#pragma once

#include <utility>
#include <vector>

#include "c4/types.hpp"

namespace c4 {

ComplexMatrix matmul(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix transpose(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
// Largest |M - M^dagger| entry over the largest |M| entry (0 for the zero matrix).
double hermiticity_defect(const ComplexMatrix& m);

struct EigResult {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // columns, unitary; M = V diag(w) V^dagger
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues come back sorted descending.  Throws if the input is not
/// Hermitian within a 1e-10 relative tolerance.
EigResult herm_eig(const ComplexMatrix& m);

/// Hermitian PSD square root via the eigendecomposition.  Eigenvalues in
/// [-clamp_rel*|w|_max, 0) are treated as rounding noise and clamped to zero;
/// anything below that throws ("not positive semidefinite").
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double clamp_rel = 1e-12);

}  // namespace c4
