#include "c4/qubits.hpp"

#include <cmath>
#include <stdexcept>

namespace c4 {

namespace {

void check_keep(int nqubits, const std::vector<int>& keep) {
    if (keep.empty()) return;
    int prev = -1;
    for (int q : keep) {
        if (q < 0 || q >= nqubits) throw std::invalid_argument("keep: qubit index out of range");
        if (q <= prev) throw std::invalid_argument("keep: qubit indices must be ascending and distinct");
        prev = q;
    }
}

}  // namespace

PureState::PureState(int n, std::vector<cplx> amplitudes) : nqubits(n), amp(std::move(amplitudes)) {
    if (n < 1 || amp.size() != (std::size_t{1} << n))
        throw std::invalid_argument("PureState: amplitude count must be 2^n");
    if (std::abs(norm() - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: state is not normalized");
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& v : amp) s += std::norm(v);
    return std::sqrt(s);
}

PureState PureState::normalized(int n, std::vector<cplx> amplitudes) {
    double s = 0.0;
    for (const auto& v : amplitudes) s += std::norm(v);
    if (s == 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& v : amplitudes) v *= inv;
    PureState out;
    out.nqubits = n;
    out.amp = std::move(amplitudes);
    if (out.amp.size() != (std::size_t{1} << n))
        throw std::invalid_argument("PureState: amplitude count must be 2^n");
    return out;
}

DensityMatrix::DensityMatrix(int n, ComplexMatrix entries) : nqubits(n), m(std::move(entries)) {
    const std::size_t d = std::size_t{1} << n;
    if (n < 1 || m.rows != d || m.cols != d)
        throw std::invalid_argument("DensityMatrix: dimension must be 2^n x 2^n");
    if (hermiticity_defect(m) > 1e-10)
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(trace() - cplx(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument("DensityMatrix: trace must be 1");
}

cplx DensityMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) t += m(i, i);
    return t;
}

double DensityMatrix::min_eigenvalue() const {
    auto eig = herm_eig(m);
    return eig.eigenvalues.back();
}

DensityMatrix projector(const PureState& psi) {
    const std::size_t d = psi.dim();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = psi.amp[i] * std::conj(psi.amp[j]);
    return DensityMatrix(psi.nqubits, std::move(m));
}

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<cplx> amp(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) amp[i * b.dim() + j] = a.amp[i] * b.amp[j];
    return PureState(a.nqubits + b.nqubits, std::move(amp));
}

namespace {

// Scatter the bits of `sub` (over the `keep` qubits) and `env` (over the rest)
// into a full n-qubit basis index.  Qubit q occupies bit (n-1-q).
std::size_t compose_index(int nqubits, const std::vector<int>& keep, std::size_t sub, std::size_t env) {
    std::size_t idx = 0;
    std::size_t ki = 0, ei = 0;
    const std::size_t k = keep.size();
    for (int q = 0; q < nqubits; ++q) {
        const bool kept = ki < k && keep[ki] == q;
        std::size_t bit;
        if (kept) {
            bit = (sub >> (k - 1 - ki)) & 1u;
            ++ki;
        } else {
            bit = (env >> (std::size_t(nqubits) - k - 1 - ei)) & 1u;
            ++ei;
        }
        idx = (idx << 1) | bit;
    }
    return idx;
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    check_keep(rho.nqubits, keep);
    if (static_cast<int>(keep.size()) == rho.nqubits) return rho;
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep must not be empty");

    const int n = rho.nqubits;
    const std::size_t k = keep.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t de = std::size_t{1} << (n - k);

    ComplexMatrix out(dk, dk);
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t b = 0; b < dk; ++b) {
            cplx s = 0.0;
            for (std::size_t e = 0; e < de; ++e)
                s += rho.m(compose_index(n, keep, a, e), compose_index(n, keep, b, e));
            out(a, b) = s;
        }
    return DensityMatrix(static_cast<int>(k), std::move(out));
}

DensityMatrix rdm_from_pure(const PureState& psi, const std::vector<int>& keep) {
    check_keep(psi.nqubits, keep);
    if (keep.empty()) throw std::invalid_argument("rdm_from_pure: keep must not be empty");

    const int n = psi.nqubits;
    const std::size_t k = keep.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t de = std::size_t{1} << (n - k);

    ComplexMatrix out(dk, dk);
    for (std::size_t e = 0; e < de; ++e) {
        // Gather the k-qubit slice at fixed environment e, then accumulate its
        // outer product.
        std::vector<cplx> slice(dk);
        for (std::size_t a = 0; a < dk; ++a) slice[a] = psi.amp[compose_index(n, keep, a, e)];
        for (std::size_t a = 0; a < dk; ++a) {
            if (slice[a] == cplx{}) continue;
            for (std::size_t b = 0; b < dk; ++b) out(a, b) += slice[a] * std::conj(slice[b]);
        }
    }
    return DensityMatrix(static_cast<int>(k), std::move(out));
}

}  // namespace c4
