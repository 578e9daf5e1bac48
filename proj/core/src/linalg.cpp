#include "c4/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace c4 {

ComplexMatrix matmul(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols != rhs.rows) throw std::invalid_argument("matmul: inner dimensions differ");
    ComplexMatrix out(lhs.rows, rhs.cols);
    for (std::size_t i = 0; i < lhs.rows; ++i) {
        for (std::size_t k = 0; k < lhs.cols; ++k) {
            const cplx v = lhs(i, k);
            if (v == cplx{}) continue;
            const cplx* rrow = &rhs.a[k * rhs.cols];
            cplx* orow = &out.a[i * out.cols];
            for (std::size_t j = 0; j < rhs.cols; ++j) orow[j] += v * rrow[j];
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out(j, i) = m(i, j);
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (auto& v : out.a) v = std::conj(v);
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const cplx v = a(i, j);
            if (v == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    out(i * b.rows + k, j * b.cols + l) = v * b(k, l);
        }
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.a) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.a) s = std::max(s, std::abs(v));
    return s;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.square()) return 1.0;
    double amax = 0.0, dev = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            amax = std::max(amax, std::abs(m(i, j)));
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    return amax > 0.0 ? dev / amax : 0.0;
}

namespace {

double offdiag_frobenius(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult herm_eig(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("herm_eig: matrix must be square");
    const double defect = hermiticity_defect(m);
    if (defect > 1e-10)
        throw std::invalid_argument("herm_eig: matrix is not Hermitian (|M - M^dagger| / |M| = " +
                                    std::to_string(defect) + ")");

    const std::size_t n = m.rows;
    ComplexMatrix a = m;
    // Symmetrize exactly so rounding in the input cannot drift during sweeps.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cplx(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double fnorm = frobenius_norm(a);
    const double thresh = 1e-14 * fnorm;
    const int max_sweeps = 60;

    int sweep = 0;
    while (offdiag_frobenius(a) > thresh && fnorm > 0.0) {
        if (++sweep > max_sweeps) throw std::runtime_error("herm_eig: Jacobi iteration did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq <= thresh / (n * n + 1.0)) continue;

                // J = [[c, s],[-s*e^{-i phi}, c*e^{-i phi}]] with phi = arg(apq)
                // makes (J^dagger A J)_{pq} = 0.
                const cplx phase = std::conj(apq) / abs_apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * abs_apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const cplx jpp = c, jpq = s;
                const cplx jqp = -s * phase, jqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {  // A <- A J (columns p,q)
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A (rows p,q)
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (std::size_t k = 0; k < n; ++k) {  // V <- V J
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return w[x] > w[y]; });

    EigResult res;
    res.eigenvalues.resize(n);
    res.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.eigenvalues[j] = w[order[j]];
        for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, j) = v(i, order[j]);
    }
    return res;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double clamp_rel) {
    EigResult eig = herm_eig(m);
    const std::size_t n = m.rows;
    double wmax = 0.0;
    for (double w : eig.eigenvalues) wmax = std::max(wmax, std::abs(w));
    const double clamp = clamp_rel * wmax;

    std::vector<double> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        double w = eig.eigenvalues[i];
        if (w < -clamp)
            throw std::invalid_argument("psd_sqrt: not positive semidefinite (eigenvalue " +
                                        std::to_string(w) + ")");
        roots[i] = std::sqrt(std::max(w, 0.0));
    }

    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * roots[k] * std::conj(eig.eigenvectors(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    return out;
}

}  // namespace c4
