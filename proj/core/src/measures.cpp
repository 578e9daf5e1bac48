#include "c4/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace c4 {

namespace {

int popcount(std::size_t v) { return std::popcount(v); }

// Eigenvalues of R below this are artifacts of the sqrt/product rounding.
constexpr double kSpectrumFloor = 1e-12;

}  // namespace

ComplexMatrix flip_operator(int nqubits) {
    if (nqubits < 1) throw std::invalid_argument("flip_operator: need at least one qubit");
    const std::size_t d = std::size_t{1} << nqubits;
    const cplx i_pow_n = std::pow(cplx(0.0, 1.0), nqubits);
    ComplexMatrix s(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::size_t kf = ~k & (d - 1);
        s(kf, k) = i_pow_n * ((popcount(k) % 2 == 0) ? 1.0 : -1.0);
    }
    return s;
}

SpinFlipSpectrum spinflip_spectrum(const DensityMatrix& rho) {
    const int n = rho.nqubits;
    if (n != 2 && n != 4)
        throw std::invalid_argument("spinflip_spectrum: defined for 2- or 4-qubit states");

    const std::size_t d = rho.dim();
    const double sign_n = 1.0;  // (i^n)^2 = +1 for even n

    // X = S rho* S has the closed form X_ij = (-1)^{w(i)+w(j)} conj(rho_{~i,~j}).
    ComplexMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t fi = ~i & (d - 1);
        const double si = (popcount(i) % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t fj = ~j & (d - 1);
            const double sj = (popcount(j) % 2 == 0) ? 1.0 : -1.0;
            x(i, j) = sign_n * si * sj * std::conj(rho.m(fi, fj));
        }
    }

    // The DensityMatrix invariant tolerates eigenvalues down to -1e-10, so the
    // sqrt clamp is matched to that rather than the tighter kernel default.
    const ComplexMatrix root = psd_sqrt(rho.m, 1e-10);
    const ComplexMatrix r = matmul(root, matmul(x, root));

    EigResult eig = herm_eig(r);
    SpinFlipSpectrum out;
    out.lambda.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        double w = eig.eigenvalues[i];
        if (w < -1e-9)
            throw std::runtime_error("spinflip_spectrum: R has a significantly negative eigenvalue");
        out.lambda[i] = (w < kSpectrumFloor) ? 0.0 : std::sqrt(w);
    }
    std::sort(out.lambda.begin(), out.lambda.end(), std::greater<double>());
    return out;
}

double fourtangle_pure(const PureState& psi) {
    if (psi.nqubits != 4) throw std::invalid_argument("fourtangle_pure: state must have 4 qubits");
    const std::size_t d = psi.dim();
    cplx s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double sign = (popcount(k) % 2 == 0) ? 1.0 : -1.0;
        s += psi.amp[k] * sign * psi.amp[~k & (d - 1)];
    }
    return std::abs(s);
}

double fourtangle_mixed(const DensityMatrix& rho) {
    if (rho.nqubits != 4) throw std::invalid_argument("fourtangle_mixed: state must have 4 qubits");
    const SpinFlipSpectrum sp = spinflip_spectrum(rho);
    double sum = 0.0;
    for (double l : sp.lambda) sum += l;
    return std::max(0.0, 2.0 * sp.lambda.front() - sum);
}

double concurrence(const DensityMatrix& rho) {
    if (rho.nqubits != 2) throw std::invalid_argument("concurrence: state must have 2 qubits");
    return std::max(0.0, wootters_difference(rho));
}

double wootters_difference(const DensityMatrix& rho) {
    if (rho.nqubits != 2) throw std::invalid_argument("wootters_difference: state must have 2 qubits");
    const SpinFlipSpectrum sp = spinflip_spectrum(rho);
    return sp.lambda[0] - sp.lambda[1] - sp.lambda[2] - sp.lambda[3];
}

double one_tangle(const DensityMatrix& rho1) {
    if (rho1.nqubits != 1) throw std::invalid_argument("one_tangle: state must have 1 qubit");
    const cplx det = rho1.m(0, 0) * rho1.m(1, 1) - rho1.m(0, 1) * rho1.m(1, 0);
    if (std::abs(det.imag()) > 1e-12)
        throw std::runtime_error("one_tangle: determinant has a non-real residue");
    return 4.0 * det.real();
}

double residual_tangle(double tau1, const std::vector<double>& concurrences) {
    double s = tau1;
    for (double c : concurrences) s -= c * c;
    return s;
}

}  // namespace c4
