#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "c4/pfaffian.hpp"
#include "test_rng.hpp"

using namespace c4;

namespace {

AntisymmetricMatrix random_antisym(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g(0.0, 1.0);
    AntisymmetricMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = g(rng);
            a(i, j) = v;
            a(j, i) = -v;
        }
    return a;
}

// Determinant via LU with partial pivoting; test-local oracle.
double det_oracle(const AntisymmetricMatrix& a) {
    const std::size_t n = a.n;
    std::vector<double> m(a.a);
    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i * n + k]) > std::abs(m[piv * n + k])) piv = i;
        if (m[piv * n + k] == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
            det = -det;
        }
        det *= m[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i * n + k] / m[k * n + k];
            for (std::size_t j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
        }
    }
    return det;
}

// Sum over perfect matchings with signs; the combinatorial definition.
double pfaffian_matchings(const AntisymmetricMatrix& a) {
    const std::size_t n = a.n;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);

    // Recursive pairing: always match the smallest free index.
    std::function<double(std::vector<int>&)> rec = [&](std::vector<int>& free) -> double {
        if (free.empty()) return 1.0;
        double total = 0.0;
        const int first = free.front();
        for (std::size_t pick = 1; pick < free.size(); ++pick) {
            const int partner = free[pick];
            // The sign of pairing (first,partner) is (-1)^{position-1}.
            const double sign = (pick % 2 == 1) ? 1.0 : -1.0;
            std::vector<int> rest;
            rest.reserve(free.size() - 2);
            for (std::size_t i = 1; i < free.size(); ++i)
                if (i != pick) rest.push_back(free[i]);
            total += sign * a(first, partner) * rec(rest);
        }
        return total;
    };
    return rec(idx);
}

}  // namespace

TEST_CASE("pfaffian closed forms") {
    AntisymmetricMatrix a2(2);
    a2(0, 1) = 2.5;
    a2(1, 0) = -2.5;
    CHECK(pfaffian(a2) == doctest::Approx(2.5));

    // Pf = a12 a34 - a13 a24 + a14 a23
    const double e[6] = {0.3, -1.2, 0.7, 2.0, -0.4, 1.1};  // a12,a13,a14,a23,a24,a34
    AntisymmetricMatrix a4(4);
    a4(0, 1) = e[0];
    a4(0, 2) = e[1];
    a4(0, 3) = e[2];
    a4(1, 2) = e[3];
    a4(1, 3) = e[4];
    a4(2, 3) = e[5];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) a4(i, j) = -a4(j, i);
    CHECK(pfaffian(a4) == doctest::Approx(e[0] * e[5] - e[1] * e[4] + e[2] * e[3]));
}

TEST_CASE("pfaffian squared equals the determinant (1000 random cases)") {
    auto rng = make_rng(10);
    std::uniform_int_distribution<std::size_t> sizes(1, 6);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 * sizes(rng);
        const AntisymmetricMatrix a = random_antisym(rng, n);
        const double pf = pfaffian(a);
        const double det = det_oracle(a);
        CHECK(std::abs(pf * pf - det) <= 1e-8 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("pfaffian matches the sum over perfect matchings up to 6x6") {
    auto rng = make_rng(11);
    for (std::size_t n : {2u, 4u, 6u}) {
        for (int rep = 0; rep < 50; ++rep) {
            const AntisymmetricMatrix a = random_antisym(rng, n);
            CHECK(pfaffian(a) == doctest::Approx(pfaffian_matchings(a)).epsilon(1e-10));
        }
    }
}

TEST_CASE("pfaffian congruence covariance Pf(B A B^T) = det(B) Pf(A)") {
    auto rng = make_rng(12);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t n : {4u, 6u, 8u}) {
        const AntisymmetricMatrix a = random_antisym(rng, n);
        std::vector<double> b(n * n);
        for (auto& v : b) v = g(rng);
        AntisymmetricMatrix bab(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    for (std::size_t l = 0; l < n; ++l) s += b[i * n + k] * a(k, l) * b[j * n + l];
                bab(i, j) = s;
            }
        // exact antisymmetrization against rounding
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double v = 0.5 * (bab(i, j) - bab(j, i));
                bab(i, j) = v;
                bab(j, i) = -v;
            }
        AntisymmetricMatrix bm(n);
        bm.a = b;
        const double detb = det_oracle(bm);  // oracle works on any square matrix
        CHECK(pfaffian(bab) == doctest::Approx(detb * pfaffian(a)).epsilon(1e-8));
    }
}

TEST_CASE("pfaffian input validation") {
    AntisymmetricMatrix odd(3);
    CHECK_THROWS_AS(pfaffian(odd), std::invalid_argument);

    AntisymmetricMatrix bad(2);
    bad(0, 1) = 1.0;
    bad(1, 0) = -0.5;
    CHECK_THROWS_WITH_AS(pfaffian(bad), doctest::Contains("antisymmetric"), std::invalid_argument);
}
