#include "c4/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "c4/linalg.hpp"

namespace c4 {

void ChainConfig::validate() const {
    if (lambda < 0.0) throw std::invalid_argument("ChainConfig: lambda must be >= 0");
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("ChainConfig: gamma must be in [0,1]");
    if (nsites < 2) throw std::invalid_argument("ChainConfig: need at least 2 sites");
    if (backend == Backend::Ed && nsites > 14)
        throw std::invalid_argument("ChainConfig: ed backend supports at most 14 sites");
}

double factorizing_lambda(double gamma) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("factorizing_lambda: gamma must be in (0,1)");
    return 1.0 / std::sqrt(1.0 - gamma * gamma);
}

void SiteQuad::validate() const {
    if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("SiteQuad: distances must be positive");
}

std::array<int, 4> SiteQuad::sites_from(int first) const {
    return {first, first + n1, first + n1 + n2, first + n1 + n2 + n3};
}

std::array<int, 4> SiteQuad::centered_sites(int nsites) const {
    validate();
    if (span() + 1 > nsites) throw std::invalid_argument("SiteQuad: quad does not fit in the chain");
    return sites_from((nsites - 1 - span()) / 2);
}

std::array<int, 2> centered_pair(int nsites, int dist) {
    if (dist < 1 || dist + 1 > nsites) throw std::invalid_argument("centered_pair: bad distance");
    const int first = (nsites - 1 - dist) / 2;
    return {first, first + dist};
}

int centered_site(int nsites) { return (nsites - 1) / 2; }

ComplexMatrix pauli_matrix(char label) {
    ComplexMatrix m(2, 2);
    switch (label) {
        case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 'Y': m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
        case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw std::invalid_argument("pauli_matrix: label must be one of I,X,Y,Z");
    }
    return m;
}

ComplexMatrix pauli_string_matrix(const std::string& labels) {
    if (labels.empty()) throw std::invalid_argument("pauli_string_matrix: empty label string");
    ComplexMatrix m = pauli_matrix(labels[0]);
    for (std::size_t i = 1; i < labels.size(); ++i) m = kron(m, pauli_matrix(labels[i]));
    return m;
}

}  // namespace c4
