#include "c4/pfaffian.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace c4 {

double pfaffian(const AntisymmetricMatrix& a) {
    const std::size_t n = a.n;
    if (n % 2 != 0) throw std::invalid_argument("pfaffian: matrix size must be even");
    if (n == 0) return 1.0;
    if (a.asymmetry() > 1e-12)
        throw std::invalid_argument("pfaffian: matrix is not antisymmetric (A != -A^T)");

    std::vector<double> w(a.a);  // working copy, row-major
    auto at = [&](std::size_t i, std::size_t j) -> double& { return w[i * n + j]; };

    double pf = 1.0;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // Partial pivot: bring the largest |w(i,k)|, i > k, into row k+1.
        std::size_t kp = k + 1;
        for (std::size_t i = k + 2; i < n; ++i)
            if (std::abs(at(i, k)) > std::abs(at(kp, k))) kp = i;
        if (kp != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k + 1, j), at(kp, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(at(i, k + 1), at(i, kp));
            pf = -pf;  // simultaneous row+column transposition flips the sign
        }

        const double pivot = at(k, k + 1);
        if (pivot == 0.0) return 0.0;  // column k vanished -> Pf = 0
        pf *= pivot;
        if (k + 2 >= n) break;

        // Congruence M A M^T (det M = 1, Pfaffian invariant) clearing column k
        // below row k+1: row_i += mu_i * row_{k+1}, mu_i = A(i,k)/A(k,k+1).
        std::vector<double> mu(n - k - 2);
        for (std::size_t i = k + 2; i < n; ++i) mu[i - k - 2] = at(i, k) / pivot;
        for (std::size_t i = k + 2; i < n; ++i) {
            const double mi = mu[i - k - 2];
            for (std::size_t j = k + 2; j < n; ++j) {
                const double mj = mu[j - k - 2];
                at(i, j) += mi * at(k + 1, j) - mj * at(k + 1, i);
            }
        }
    }
    return pf;
}

}  // namespace c4
