#include "c4/ed.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "c4/lanczos.hpp"
#include "c4/linalg.hpp"

namespace c4 {

namespace {

// Site i occupies bit (N-1-i): site 0 is the leftmost tensor factor.
inline std::size_t site_mask(int nsites, int site) { return std::size_t{1} << (nsites - 1 - site); }

}  // namespace

ComplexMatrix build_hamiltonian(const ChainConfig& cfg) {
    cfg.validate();
    if (cfg.nsites > 12)
        throw std::invalid_argument("build_hamiltonian: N too large for a dense build (use the matrix-free path)");

    const int n = cfg.nsites;
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix h(dim, dim);

    for (std::size_t s = 0; s < dim; ++s) {
        double diag = 0.0;
        for (int i = 0; i < n; ++i) diag -= (s & site_mask(n, i)) ? -1.0 : 1.0;
        h(s, s) = diag;
        for (int i = 0; i + 1 < n; ++i) {
            const std::size_t mi = site_mask(n, i), mj = site_mask(n, i + 1);
            const bool equal = ((s & mi) != 0) == ((s & mj) != 0);
            const std::size_t t = s ^ mi ^ mj;
            // sx sx flips with +1, sy sy flips with -1 (equal bits) or +1.
            h(t, s) += equal ? -cfg.lambda * cfg.gamma : -cfg.lambda;
        }
    }
    return h;
}

void ed_apply_hamiltonian(const ChainConfig& cfg, const double* x, double* y) {
    const int n = cfg.nsites;
    const std::size_t dim = std::size_t{1} << n;
    const double cg = -cfg.lambda * cfg.gamma;
    const double cd = -cfg.lambda;

    for (std::size_t s = 0; s < dim; ++s) {
        const int ones = std::popcount(s);
        y[s] = -static_cast<double>(n - 2 * ones) * x[s];
    }
    for (int i = 0; i + 1 < n; ++i) {
        const std::size_t mi = site_mask(n, i), mj = site_mask(n, i + 1);
        const std::size_t both = mi | mj;
        for (std::size_t s = 0; s < dim; ++s) {
            const std::size_t bits = s & both;
            const bool equal = bits == 0 || bits == both;
            y[s ^ both] += (equal ? cg : cd) * x[s];
        }
    }
}

namespace {

// The chain Hamiltonian conserves spin parity (bonds flip two bits), so the
// ground state is resolved per sector; this keeps the quasi-degenerate
// lambda > 1 regime out of the eigensolver entirely.
struct SectorGround {
    double energy = 0.0;
    std::vector<double> full;  // embedded back into the 2^N basis
};

SectorGround sector_ground(const ChainConfig& cfg, int parity) {
    const int n = cfg.nsites;
    const std::size_t dim = std::size_t{1} << n;

    std::vector<std::size_t> states;
    states.reserve(dim / 2);
    std::vector<std::uint32_t> index_of(dim, 0);
    for (std::size_t s = 0; s < dim; ++s)
        if (std::popcount(s) % 2 == parity) {
            index_of[s] = static_cast<std::uint32_t>(states.size());
            states.push_back(s);
        }
    const std::size_t sdim = states.size();

    const double cg = -cfg.lambda * cfg.gamma;
    const double cd = -cfg.lambda;
    auto apply = [&](const double* x, double* y) {
        for (std::size_t i = 0; i < sdim; ++i) {
            const std::size_t s = states[i];
            const int ones = std::popcount(s);
            y[i] = -static_cast<double>(n - 2 * ones) * x[i];
        }
        for (int b = 0; b + 1 < n; ++b) {
            const std::size_t both = site_mask(n, b) | site_mask(n, b + 1);
            for (std::size_t i = 0; i < sdim; ++i) {
                const std::size_t s = states[i];
                const std::size_t bits = s & both;
                const bool equal = bits == 0 || bits == both;
                y[index_of[s ^ both]] += (equal ? cg : cd) * x[i];
            }
        }
    };

    LanczosResult lr = lanczos_lowest(apply, sdim, 1, 1e-12, 600, 777u + parity);
    SectorGround out;
    out.energy = lr.eigenvalues[0];
    out.full.assign(dim, 0.0);
    for (std::size_t i = 0; i < sdim; ++i) out.full[states[i]] = lr.eigenvectors[0][i];
    return out;
}

}  // namespace

EdSolution ed_solve(const ChainConfig& cfg) {
    cfg.validate();
    if (cfg.nsites > 14) throw std::invalid_argument("ed_solve: N must be <= 14");
    const std::size_t dim = std::size_t{1} << cfg.nsites;

    const SectorGround even = sector_ground(cfg, 0);
    const SectorGround odd = sector_ground(cfg, 1);

    // Even wins ties within 1e-10; otherwise take the true minimum.
    const bool use_even = even.energy <= odd.energy + 1e-10;
    const SectorGround& g = use_even ? even : odd;
    std::vector<double> v = g.full;

    // Deterministic sign: make the largest-magnitude amplitude positive.
    std::size_t imax = 0;
    for (std::size_t s = 1; s < dim; ++s)
        if (std::abs(v[s]) > std::abs(v[imax])) imax = s;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;

    EdSolution sol;
    std::vector<cplx> amp(dim);
    for (std::size_t s = 0; s < dim; ++s) amp[s] = v[s];
    sol.state = PureState::normalized(cfg.nsites, std::move(amp));
    sol.energy = g.energy;
    sol.parity = use_even ? 1.0 : -1.0;
    return sol;
}

PureState ed_ground_state(const ChainConfig& cfg) { return ed_solve(cfg).state; }

double ed_pauli_expectation(const PureState& psi, const std::vector<int>& sites,
                            const std::string& labels) {
    if (sites.size() != labels.size())
        throw std::invalid_argument("ed_pauli_expectation: sites/labels length mismatch");
    const DensityMatrix rdm = rdm_from_pure(psi, sites);
    const ComplexMatrix p = pauli_string_matrix(labels);
    cplx tr = 0.0;
    for (std::size_t i = 0; i < rdm.dim(); ++i)
        for (std::size_t j = 0; j < rdm.dim(); ++j) tr += rdm.m(i, j) * p(j, i);
    return tr.real();
}

}  // namespace c4
