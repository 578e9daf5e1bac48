#include <doctest.h>

#include <cmath>

#include "c4/ed.hpp"
#include "c4/freefermion.hpp"
#include "c4/measures.hpp"

using namespace c4;

TEST_CASE("lambda = 0 correlators are -identity") {
    const CorrelatorTable t = ff_correlators({0.0, 1.0, 8, Backend::FreeFermion});
    for (std::size_t j = 0; j < 8; ++j)
        for (std::size_t k = 0; k < 8; ++k)
            CHECK(t.G(j, k) == doctest::Approx(j == k ? -1.0 : 0.0).epsilon(1e-12));

    // <sigma_z> = -G[j][j] = +1, matching the polarized ED ground state
    CHECK(pauli_expectation(t, {3}, "Z") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("all-identity string evaluates to 1 and odd strings to 0") {
    const CorrelatorTable t = ff_correlators({0.9, 1.0, 10, Backend::FreeFermion});
    CHECK(pauli_expectation(t, {2, 4, 6}, "III") == 1.0);
    CHECK(pauli_expectation(t, {4}, "X") == 0.0);   // odd X+Y
    CHECK(pauli_expectation(t, {4}, "Y") == 0.0);
    CHECK(pauli_expectation(t, {3, 5}, "XY") == 0.0);  // odd Y
}

TEST_CASE("nearest-neighbor XX matches ED at the critical point") {
    const ChainConfig cfg{1.0, 1.0, 10, Backend::Ed};
    const PureState psi = ed_ground_state(cfg);
    const CorrelatorTable t = ff_correlators(cfg);
    const auto pr = centered_pair(10, 1);
    const double ed = ed_pauli_expectation(psi, {pr[0], pr[1]}, "XX");
    const double ff = pauli_expectation(t, {pr[0], pr[1]}, "XX");
    CHECK(std::abs(ed - ff) <= 1e-8);
}

TEST_CASE("every Pauli expectation on a centered quad matches ED (gamma = 1, lambda = 0.5)") {
    CHECK(cross_validate({0.5, 1.0, 10, Backend::Ed}, SiteQuad{1, 1, 1}) <= 1e-8);
}

TEST_CASE("cross validation on an XY point with a wider quad") {
    CHECK(cross_validate({1.3, 0.5, 12, Backend::Ed}, SiteQuad{1, 2, 1}) <= 1e-8);
}

TEST_CASE("cross validation in the trivial limit") {
    CHECK(cross_validate({0.0, 0.7, 10, Backend::Ed}, SiteQuad{2, 1, 2}) <= 1e-10);
}

TEST_CASE("cross validation with long Jordan-Wigner interiors") {
    // production quads span 10-11 sites, so the Wick words carry interior
    // strings far longer than the nearest-neighbor cases
    CHECK(cross_validate({1.0, 1.0, 12, Backend::Ed}, SiteQuad{1, 7, 1}) <= 1e-8);
    CHECK(cross_validate({1.1, 0.5, 12, Backend::Ed}, SiteQuad{1, 9, 1}) <= 1e-8);
}

TEST_CASE("isotropic chain: empty band below lambda = 1, Fermi sea above") {
    const CorrelatorTable empty = ff_correlators({0.8, 0.0, 20, Backend::FreeFermion});
    for (std::size_t j = 0; j < 20; ++j)
        for (std::size_t k = 0; k < 20; ++k)
            CHECK(std::abs(empty.G(j, k) - (j == k ? -1.0 : 0.0)) <= 1e-10);

    // above lambda = 1 some modes fill and the magnetization drops; the
    // filled-sea sign handling must still match ED
    const ChainConfig cfg{1.5, 0.0, 10, Backend::Ed};
    const PureState psi = ed_ground_state(cfg);
    const CorrelatorTable sea = ff_correlators(cfg);
    const double z_ff = pauli_expectation(sea, {5}, "Z");
    CHECK(z_ff < 1.0 - 1e-3);
    CHECK(std::abs(z_ff - ed_pauli_expectation(psi, {5}, "Z")) <= 1e-8);
}

TEST_CASE("symmetry filter agrees with ED at six chain points") {
    CHECK(validate_symmetry_filter() <= 1e-9);
}

TEST_CASE("four-site RDM matches the ED partial trace entrywise") {
    const ChainConfig cfg{1.2, 1.0, 10, Backend::Ed};
    const PureState psi = ed_ground_state(cfg);
    const SiteQuad quad{1, 1, 1};
    const auto sites = quad.centered_sites(10);
    CHECK(sites == std::array<int, 4>{3, 4, 5, 6});

    const DensityMatrix ed = rdm_from_pure(psi, {sites.begin(), sites.end()});
    const CorrelatorTable t = ff_correlators(cfg);
    const DensityMatrix ff = ff_rdm(t, quad);
    for (std::size_t i = 0; i < 256; ++i) CHECK(std::abs(ed.m.a[i] - ff.m.a[i]) <= 1e-8);
    CHECK(std::abs(ff.trace() - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("lambda = 0 reduced state is the polarized product") {
    const CorrelatorTable t = ff_correlators({0.0, 0.5, 12, Backend::FreeFermion});
    const DensityMatrix rdm = ff_rdm(t, SiteQuad{1, 1, 1});
    CHECK(std::abs(rdm.m(0, 0) - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("reduced states are reflection symmetric about the chain center") {
    const int n = 24;
    const CorrelatorTable t = ff_correlators({1.1, 0.7, n, Backend::FreeFermion});
    const SiteQuad quad{1, 2, 1};
    const auto sites = quad.centered_sites(n);
    std::array<int, 4> mirrored;
    for (int i = 0; i < 4; ++i) mirrored[i] = n - 1 - sites[3 - i];

    const DensityMatrix a = ff_rdm(t, sites);
    const DensityMatrix b = ff_rdm(t, mirrored);
    // mirroring reverses the qubit order; compare against the bit-reversed matrix
    auto reverse_bits = [](std::size_t v) {
        return ((v & 1) << 3) | ((v & 2) << 1) | ((v & 4) >> 1) | ((v & 8) >> 3);
    };
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j)
            CHECK(std::abs(a.m(i, j) - b.m(reverse_bits(i), reverse_bits(j))) <= 1e-9);
}

TEST_CASE("single-site x magnetization vanishes by parity") {
    const CorrelatorTable t = ff_correlators({1.4, 0.8, 40, Backend::FreeFermion});
    CHECK(std::abs(pauli_expectation(t, {20}, "X")) <= 1e-10);
    CHECK(std::abs(pauli_expectation(t, {20}, "Y")) <= 1e-10);
}

TEST_CASE("one-tangle agrees between the backends at lambda = 2, N = 12") {
    const PureState psi = ed_ground_state({2.0, 1.0, 12, Backend::Ed});
    const double ed = one_tangle(rdm_from_pure(psi, {centered_site(12)}));
    const CorrelatorTable t = ff_correlators({2.0, 1.0, 12, Backend::FreeFermion});
    const double ff = one_tangle(ff_rdm1(t, centered_site(12)));
    CHECK(std::abs(ed - ff) <= 1e-8);
}

TEST_CASE("residual pipeline agrees between the backends at lambda = 1.1, N = 12") {
    const int n = 12;
    const PureState psi = ed_ground_state({1.1, 1.0, n, Backend::Ed});
    const CorrelatorTable t = ff_correlators({1.1, 1.0, n, Backend::FreeFermion});

    const double tau_ed = one_tangle(rdm_from_pure(psi, {centered_site(n)}));
    const double tau_ff = one_tangle(ff_rdm1(t, centered_site(n)));
    CHECK(std::abs(tau_ed - tau_ff) <= 1e-8);

    for (int d = 1; d <= 3; ++d) {
        const auto pr = centered_pair(n, d);
        const double c_ed = concurrence(rdm_from_pure(psi, {pr[0], pr[1]}));
        const double c_ff = concurrence(ff_rdm2(t, pr[0], pr[1]));
        CHECK(std::abs(c_ed - c_ff) <= 1e-8);
    }
}

TEST_CASE("central correlators converge from N = 400 to N = 800") {
    // the same check the sweep runs at production scale, kept affordable here
    const CorrelatorTable a = ff_correlators({0.9, 0.5, 400, Backend::FreeFermion});
    const CorrelatorTable b = ff_correlators({0.9, 0.5, 800, Backend::FreeFermion});
    const int ca = 400 / 2, cb = 800 / 2;
    for (int dj = -2; dj <= 2; ++dj)
        for (int dk = -2; dk <= 2; ++dk)
            CHECK(std::abs(a.G(ca + dj, ca + dk) - b.G(cb + dj, cb + dk)) <= 1e-8);
}

TEST_CASE("contraction magnitudes stay bounded") {
    const CorrelatorTable t = ff_correlators({1.0, 1.0, 64, Backend::FreeFermion});
    for (double v : t.g) CHECK(std::abs(v) <= 1.0 + 1e-9);
}
