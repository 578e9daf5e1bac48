#pragma once

#include <vector>

#include "c4/qubits.hpp"

namespace c4 {

/// sigma_y^{(x) n}: entry (~k, k) = i^n * (-1)^{popcount(k)}, everything else 0.
ComplexMatrix flip_operator(int nqubits);

/// Descending square roots of the eigenvalues of R = sqrt(rho) S rho* S sqrt(rho),
/// with S the n-qubit spin flip.  Eigenvalues of R below 1e-12 (absolute; |R| <= 1
/// on unit-trace input) are rounding residue of the two matrix square roots and
/// are flattened to zero so that exact algebraic zeros come out exact.
struct SpinFlipSpectrum {
    std::vector<double> lambda;  // descending, all >= 0
};

SpinFlipSpectrum spinflip_spectrum(const DensityMatrix& rho);

/// |<psi*| sigma_y^{(x)4} |psi>| for a 4-qubit pure state.
double fourtangle_pure(const PureState& psi);

/// Convex-roof 4-tangle max(0, 2 lambda_max - sum lambda) over the spin-flip
/// spectrum.  Agrees with fourtangle_pure on projectors.
double fourtangle_mixed(const DensityMatrix& rho);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4) of a 2-qubit state.
double concurrence(const DensityMatrix& rho);

/// The unclamped combination l1 - l2 - l3 - l4; it changes sign where the
/// concurrence touches zero, which is what root bracketing needs.
double wootters_difference(const DensityMatrix& rho);

/// One-tangle 4 det(rho_1) of a single-qubit state.
double one_tangle(const DensityMatrix& rho1);

/// tau_1 - sum_d C_d^2; the caller fixes the distance cutoff.
double residual_tangle(double tau1, const std::vector<double>& concurrences);

}  // namespace c4
