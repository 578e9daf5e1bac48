#pragma once

#include <string>
#include <vector>

#include "c4/chain.hpp"
#include "c4/qubits.hpp"

namespace c4 {

/// Dense Hamiltonian of the open chain in the computational basis (site i is
/// qubit i).  Real symmetric; limited to N <= 12 so it fits in memory, use the
/// matrix-free ground-state path beyond that.
ComplexMatrix build_hamiltonian(const ChainConfig& cfg);

/// y = H x on real vectors of length 2^N, without building H.
void ed_apply_hamiltonian(const ChainConfig& cfg, const double* x, double* y);

struct EdSolution {
    PureState state;
    double energy = 0.0;
    double parity = 0.0;  // <prod_i sigma_z_i>, +-1 for parity eigenstates
};

/// Ground state, resolved per spin-parity sector with matrix-free Lanczos.
/// When the two sector minima agree within 1e-10 the even state is returned,
/// matching the free-fermion vacuum in the bulk.
EdSolution ed_solve(const ChainConfig& cfg);
PureState ed_ground_state(const ChainConfig& cfg);

/// <psi| P |psi> for a Pauli string on the given (ascending) sites.
double ed_pauli_expectation(const PureState& psi, const std::vector<int>& sites,
                            const std::string& labels);

}  // namespace c4
