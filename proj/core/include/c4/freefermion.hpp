#pragma once

#include <string>
#include <vector>

#include "c4/chain.hpp"
#include "c4/qubits.hpp"

namespace c4 {

/// Elementary ground-state contractions G[j][k] = <B_j A_k> of the open
/// chain, with A_j = c^dag_j + c_j and B_j = c^dag_j - c_j after the
/// Jordan-Wigner mapping.  <A_j A_k> = delta, <B_j B_k> = -delta.
/// At lambda = 0 the table is -I and <sigma_z_j> = -G[j][j] = +1.
struct CorrelatorTable {
    ChainConfig cfg;
    std::size_t n = 0;
    std::vector<double> g;  // row-major n x n

    double G(std::size_t j, std::size_t k) const { return g[j * n + k]; }
};

/// Solve the quadratic form of the open XY chain (SVD of the N x N matrix
/// A - B) and assemble the contraction table.  Deterministic for a fixed cfg.
CorrelatorTable ff_correlators(const ChainConfig& cfg);

/// Ground-state expectation of a Pauli string on ascending sites.  Strings
/// with an odd number of X+Y labels (fermion parity) or an odd number of Y
/// labels (unbalanced Majorana word) are exactly zero and short-circuit;
/// everything else is a Pfaffian of the Wick contraction matrix.
double pauli_expectation(const CorrelatorTable& table, const std::vector<int>& sites,
                         const std::string& labels);

struct RdmRepair {
    double min_eigenvalue = 0.0;  // most negative eigenvalue seen before the clamp
    double trace_shift = 0.0;     // |trace - 1| absorbed by renormalization
    bool repaired = false;
};

/// Four-site reduced density matrix from the 256 Pauli expectations,
/// rho = 2^{-4} sum <P> P.  Eigenvalues in [-1e-7, 0) are clamped to zero and
/// the trace renormalized (stats reported through `repair`); anything more
/// negative throws "backend inconsistency".
DensityMatrix ff_rdm(const CorrelatorTable& table, const SiteQuad& quad,
                     RdmRepair* repair = nullptr);
DensityMatrix ff_rdm(const CorrelatorTable& table, const std::array<int, 4>& sites,
                     RdmRepair* repair = nullptr);
DensityMatrix ff_rdm2(const CorrelatorTable& table, int site_a, int site_b,
                      RdmRepair* repair = nullptr);
DensityMatrix ff_rdm1(const CorrelatorTable& table, int site);

/// Max |ED - FF| over all 256 Pauli strings on the quad's centered sites.
double cross_validate(const ChainConfig& cfg, const SiteQuad& quad);

/// One-time check of the odd-Y / odd-(X+Y) zero filter against ED at six
/// (lambda, gamma) points; returns the largest |filtered - ED| seen.
double validate_symmetry_filter();

// Chain-level measures on centered placements.
double chain_c4(const CorrelatorTable& table, const SiteQuad& quad);
double chain_concurrence(const CorrelatorTable& table, int dist);
double chain_one_tangle(const CorrelatorTable& table);

}  // namespace c4
