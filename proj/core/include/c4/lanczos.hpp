#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace c4 {

/// Eigenvalues (ascending) and eigenvectors of a real symmetric tridiagonal
/// matrix; implicit-shift QL with accumulated rotations.  `diag` has n
/// entries, `off` the n-1 subdiagonal entries.  Row-major eigenvector matrix,
/// column j belongs to eigenvalue j.
void tridiag_eig(std::vector<double> diag, std::vector<double> off,
                 std::vector<double>& eigenvalues, std::vector<double>& eigenvectors);

struct LanczosResult {
    std::vector<double> eigenvalues;              // ascending, nev of them
    std::vector<std::vector<double>> eigenvectors;
    int iterations = 0;
};

/// Lowest `nev` eigenpairs of a real symmetric operator given by its
/// matrix-vector product, Lanczos with full reorthogonalization.
LanczosResult lanczos_lowest(const std::function<void(const double*, double*)>& apply,
                             std::size_t dim, int nev, double tol = 1e-11, int maxit = 500,
                             unsigned seed = 12345u);

}  // namespace c4
