#pragma once

#include <array>
#include <string>

#include "c4/types.hpp"

namespace c4 {

enum class Backend { Ed, FreeFermion };

/// One open-boundary transverse XY ground-state problem,
///   H = -lambda sum_i [ (1+gamma)/2 sx_i sx_{i+1} + (1-gamma)/2 sy_i sy_{i+1} ]
///       - sum_i sz_i
/// in Pauli operators.  gamma = 1 is the transverse Ising chain; the critical
/// point sits at lambda = 1 and the factorizing field at (1-gamma^2)^{-1/2}.
struct ChainConfig {
    double lambda = 1.0;
    double gamma = 1.0;
    int nsites = 1000;
    Backend backend = Backend::FreeFermion;

    void validate() const;
};

/// lambda_f = (1 - gamma^2)^{-1/2}, where the ground state factorizes.
double factorizing_lambda(double gamma);

/// Four sites given by their consecutive gaps (n1, n2, n3).
struct SiteQuad {
    int n1 = 1;
    int n2 = 1;
    int n3 = 1;

    int span() const { return n1 + n2 + n3; }
    /// Absolute sites (i, i+n1, i+n1+n2, i+n1+n2+n3) with the quad centered.
    std::array<int, 4> centered_sites(int nsites) const;
    std::array<int, 4> sites_from(int first) const;
    void validate() const;
};

/// Centered placement of a pair at distance d, and of a single site.
std::array<int, 2> centered_pair(int nsites, int dist);
int centered_site(int nsites);

ComplexMatrix pauli_matrix(char label);  // 'I','X','Y','Z'
/// Tensor product of single-site Paulis, first label = leftmost factor.
ComplexMatrix pauli_string_matrix(const std::string& labels);

}  // namespace c4
