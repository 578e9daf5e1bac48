#pragma once

#include <vector>

#include "c4/linalg.hpp"
#include "c4/types.hpp"

namespace c4 {

/// Normalized state vector over n qubits (see types.hpp for the bit convention).
struct PureState {
    int nqubits = 0;
    std::vector<cplx> amp;

    PureState() = default;
    PureState(int n, std::vector<cplx> amplitudes);

    std::size_t dim() const { return amp.size(); }
    double norm() const;

    /// Rescale to unit norm (for amplitudes assembled by hand).
    static PureState normalized(int n, std::vector<cplx> amplitudes);
};

/// Hermitian unit-trace matrix over n qubits.  Hermiticity and trace are
/// checked on construction; positivity is enforced where states are built
/// (mixtures are convex sums of projectors, chain RDMs go through an explicit
/// clamp) and by the measure pipeline itself.
struct DensityMatrix {
    int nqubits = 0;
    ComplexMatrix m;

    DensityMatrix() = default;
    DensityMatrix(int n, ComplexMatrix entries);

    std::size_t dim() const { return m.rows; }
    cplx trace() const;
    /// Smallest eigenvalue; full PSD check for tests and validation paths.
    double min_eigenvalue() const;
};

DensityMatrix projector(const PureState& psi);

/// Tensor product of two pure states; a's qubits become the leftmost factors.
PureState tensor(const PureState& a, const PureState& b);

/// Reduced density matrix over `keep` (ascending, distinct qubit indices).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Reduced density matrix of a pure state without forming the full projector.
DensityMatrix rdm_from_pure(const PureState& psi, const std::vector<int>& keep);

}  // namespace c4
