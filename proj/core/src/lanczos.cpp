#include "c4/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace c4 {

void tridiag_eig(std::vector<double> d, std::vector<double> off,
                 std::vector<double>& eigenvalues, std::vector<double>& eigenvectors) {
    const int n = static_cast<int>(d.size());
    if (n == 0) throw std::invalid_argument("tridiag_eig: empty matrix");
    if (static_cast<int>(off.size()) + 1 != n && n > 1)
        throw std::invalid_argument("tridiag_eig: off-diagonal size must be n-1");

    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = off[i];

    std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) throw std::runtime_error("tridiag_eig: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                bool underflow = false;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        f = z[static_cast<std::size_t>(k) * n + i + 1];
                        z[static_cast<std::size_t>(k) * n + i + 1] =
                            s * z[static_cast<std::size_t>(k) * n + i] + c * f;
                        z[static_cast<std::size_t>(k) * n + i] =
                            c * z[static_cast<std::size_t>(k) * n + i] - s * f;
                    }
                }
                if (underflow && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });

    eigenvalues.resize(n);
    eigenvectors.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        eigenvalues[j] = d[order[j]];
        for (int k = 0; k < n; ++k)
            eigenvectors[static_cast<std::size_t>(k) * n + j] =
                z[static_cast<std::size_t>(k) * n + order[j]];
    }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

LanczosResult lanczos_lowest(const std::function<void(const double*, double*)>& apply,
                             std::size_t dim, int nev, double tol, int maxit, unsigned seed) {
    if (nev < 1 || static_cast<std::size_t>(nev) > dim)
        throw std::invalid_argument("lanczos_lowest: bad nev");
    maxit = std::min<int>(maxit, static_cast<int>(dim));

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::vector<double>> basis;
    std::vector<double> alphas, betas;

    std::vector<double> v(dim);
    for (auto& x : v) x = gauss(rng);
    {
        const double s = nrm(v);
        for (auto& x : v) x /= s;
    }
    basis.push_back(v);

    std::vector<double> w(dim), theta, s_small;
    double scale = 1.0;

    bool done = false;
    int it = 0;
    for (; it < maxit && !done; ++it) {
        apply(basis.back().data(), w.data());
        const double alpha = dot(basis.back(), w);
        alphas.push_back(alpha);
        for (std::size_t i = 0; i < dim; ++i) w[i] -= alpha * basis.back()[i];
        if (basis.size() > 1) {
            const double beta_prev = betas.back();
            const auto& prev = basis[basis.size() - 2];
            for (std::size_t i = 0; i < dim; ++i) w[i] -= beta_prev * prev[i];
        }
        // Full reorthogonalization, two passes.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                const double c = dot(b, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
            }
        scale = std::max(scale, std::abs(alpha));
        double beta = nrm(w);
        scale = std::max(scale, beta);

        const bool exhausted = basis.size() == dim;
        const bool check_now = static_cast<int>(alphas.size()) >= nev &&
                               (alphas.size() % 10 == 0 || beta <= 1e-13 * scale || exhausted ||
                                it == maxit - 1);
        if (check_now) {
            // Ritz residual bound |beta * (last component of T eigenvector)|.
            const int k = static_cast<int>(alphas.size());
            tridiag_eig(alphas, betas, theta, s_small);
            bool conv = true;
            for (int j = 0; j < nev && conv; ++j) {
                const double resid = beta * std::abs(s_small[static_cast<std::size_t>(k - 1) * k + j]);
                if (resid > tol * std::max(1.0, scale)) conv = false;
            }
            if (conv || exhausted || beta <= 1e-13 * scale) done = true;
        }

        if (!done) {
            if (beta <= 1e-13 * scale) {
                // Invariant subspace; restart in a fresh random direction.
                for (auto& x : w) x = gauss(rng);
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& b : basis) {
                        const double c = dot(b, w);
                        for (std::size_t i = 0; i < dim; ++i) w[i] -= c * b[i];
                    }
                const double s = nrm(w);
                if (s <= 1e-14) { done = true; break; }
                for (auto& x : w) x /= s;
                betas.push_back(0.0);
                basis.push_back(w);
            } else {
                std::vector<double> next(dim);
                for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / beta;
                betas.push_back(beta);
                basis.push_back(std::move(next));
            }
        }
    }

    const int k = static_cast<int>(alphas.size());
    tridiag_eig(alphas, betas, theta, s_small);

    LanczosResult res;
    res.iterations = it;
    res.eigenvalues.assign(theta.begin(), theta.begin() + nev);
    res.eigenvectors.assign(nev, std::vector<double>(dim, 0.0));
    for (int j = 0; j < nev; ++j) {
        auto& x = res.eigenvectors[j];
        for (int row = 0; row < k; ++row) {
            const double coef = s_small[static_cast<std::size_t>(row) * k + j];
            if (coef == 0.0) continue;
            const auto& b = basis[row];
            for (std::size_t i = 0; i < dim; ++i) x[i] += coef * b[i];
        }
        const double s = nrm(x);
        for (auto& xv : x) xv /= s;
    }
    return res;
}

}  // namespace c4
