#include "c4/freefermion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "c4/ed.hpp"
#include "c4/linalg.hpp"
#include "c4/measures.hpp"
#include "c4/pfaffian.hpp"

namespace c4 {

CorrelatorTable ff_correlators(const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.nsites;

    // H = sum c^dag A c + 1/2 (c^dag B c^dag + h.c.) with
    //   A_ii = 2, A_{i,i+1} = -lambda, B_{i,i+1} = -lambda*gamma.
    // M = A - B is tridiagonal; M = U S V^T pairs the Bogoliubov modes and the
    // eta-vacuum contractions are G = -V U^T.
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 2.0;
        if (i + 1 < n) {
            m(i, i + 1) = -cfg.lambda * (1.0 - cfg.gamma);
            m(i + 1, i) = -cfg.lambda * (1.0 + cfg.gamma);
        }
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::MatrixXd g = -svd.matrixV() * svd.matrixU().transpose();

    CorrelatorTable table;
    table.cfg = cfg;
    table.n = static_cast<std::size_t>(n);
    table.g.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) table.g[static_cast<std::size_t>(j) * n + k] = g(j, k);

    for (double v : table.g)
        if (std::abs(v) > 1.0 + 1e-9)
            throw std::runtime_error("ff_correlators: contraction magnitude exceeds 1");
    return table;
}

namespace {

struct MajoranaFactor {
    bool is_b;  // false: A_site, true: B_site
    int site;
};

// One evaluable Majorana word: ordered factors and a real phase.  Strings
// filtered by symmetry produce `zero = true`.
struct MajoranaWord {
    std::vector<MajoranaFactor> factors;
    double phase = 1.0;
    bool zero = false;
};

// Expand a Pauli string into the interval normal form:
// consecutive X/Y sites pair up, each pair contributing
//   (X,X) -> +  B_l [A B]_interior A_m
//   (Y,Y) -> -  A_l [A B]_interior B_m
//   (X,Y) -> +i B_l [A B]_interior B_m
//   (Y,X) -> +i A_l [A B]_interior A_m
// where interior sites carry A_k B_k from the Jordan-Wigner string unless the
// string itself has a Z there (the two z's cancel).  Z labels outside pair
// intervals contribute a bare A_k B_k.  The i factors come in even numbers
// whenever the Y count is even, so the phase stays real.
MajoranaWord build_word(const std::vector<int>& sites, const std::string& labels) {
    MajoranaWord word;

    std::vector<std::pair<int, char>> active;  // ascending (site, label), I dropped
    int prev = -1;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i] <= prev) throw std::invalid_argument("pauli_expectation: sites must be ascending");
        prev = sites[i];
        const char l = labels[i];
        if (l == 'I') continue;
        if (l != 'X' && l != 'Y' && l != 'Z')
            throw std::invalid_argument("pauli_expectation: labels must be I,X,Y,Z");
        active.emplace_back(sites[i], l);
    }

    std::vector<std::pair<int, char>> xy;
    int y_count = 0;
    for (const auto& [s, l] : active)
        if (l != 'Z') {
            xy.emplace_back(s, l);
            if (l == 'Y') ++y_count;
        }
    if (xy.size() % 2 != 0 || y_count % 2 != 0) {
        word.zero = true;
        return word;
    }

    auto label_at = [&active](int site) -> char {
        for (const auto& [s, l] : active)
            if (s == site) return l;
        return 'I';
    };

    int imag_units = 0;
    std::size_t xi = 0;
    std::size_t ai = 0;
    while (ai < active.size()) {
        const auto [s, l] = active[ai];
        if (l == 'Z') {
            word.factors.push_back({false, s});
            word.factors.push_back({true, s});
            ++ai;
            continue;
        }
        // Start of an X/Y pair (l's partner is the next X/Y site).
        const auto [sl, ll] = xy[xi];
        const auto [sr, lr] = xy[xi + 1];
        xi += 2;

        if (ll == 'X' && lr == 'X') {
            word.factors.push_back({true, sl});
        } else if (ll == 'Y' && lr == 'Y') {
            word.phase = -word.phase;
            word.factors.push_back({false, sl});
        } else if (ll == 'X' && lr == 'Y') {
            ++imag_units;
            word.factors.push_back({true, sl});
        } else {  // (Y,X)
            ++imag_units;
            word.factors.push_back({false, sl});
        }
        for (int k = sl + 1; k < sr; ++k) {
            if (label_at(k) == 'Z') continue;  // JW z meets the label z
            word.factors.push_back({false, k});
            word.factors.push_back({true, k});
        }
        word.factors.push_back({lr == 'Y', sr});  // right endpoint: X -> A, Y -> B
        // advance past everything up to and including sr
        while (ai < active.size() && active[ai].first <= sr) ++ai;
    }

    // i^imag_units with imag_units even: each pair of i's is a -1.
    if ((imag_units / 2) % 2 != 0) word.phase = -word.phase;
    return word;
}

double contraction(const CorrelatorTable& t, const MajoranaFactor& a, const MajoranaFactor& b) {
    if (!a.is_b && !b.is_b) return a.site == b.site ? 1.0 : 0.0;   // <A A>
    if (a.is_b && b.is_b) return a.site == b.site ? -1.0 : 0.0;    // <B B>
    if (a.is_b && !b.is_b) return t.G(a.site, b.site);             // <B A>
    return -t.G(b.site, a.site);                                   // <A B>
}

}  // namespace

double pauli_expectation(const CorrelatorTable& table, const std::vector<int>& sites,
                         const std::string& labels) {
    if (sites.size() != labels.size())
        throw std::invalid_argument("pauli_expectation: sites/labels length mismatch");
    for (int s : sites)
        if (s < 0 || static_cast<std::size_t>(s) >= table.n)
            throw std::invalid_argument("pauli_expectation: site outside the chain");

    const MajoranaWord word = build_word(sites, labels);
    if (word.zero) return 0.0;
    if (word.factors.empty()) return 1.0;  // all-identity string

    const std::size_t w = word.factors.size();
    AntisymmetricMatrix c(w);
    for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = a + 1; b < w; ++b) {
            const double v = contraction(table, word.factors[a], word.factors[b]);
            c(a, b) = v;
            c(b, a) = -v;
        }
    return word.phase * pfaffian(c);
}

namespace {

const char kPauliLabels[4] = {'I', 'X', 'Y', 'Z'};

DensityMatrix rdm_from_paulis(const CorrelatorTable& table, const std::vector<int>& sites,
                              RdmRepair* repair) {
    const int k = static_cast<int>(sites.size());
    const std::size_t d = std::size_t{1} << k;
    const int strings = 1 << (2 * k);

    ComplexMatrix m(d, d);
    std::string labels(k, 'I');
    for (int code = 0; code < strings; ++code) {
        int c = code;
        for (int q = k - 1; q >= 0; --q) {
            labels[q] = kPauliLabels[c & 3];
            c >>= 2;
        }
        const double val = pauli_expectation(table, sites, labels);
        if (val == 0.0) continue;
        const ComplexMatrix p = pauli_string_matrix(labels);
        const double coef = val / static_cast<double>(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) += coef * p(i, j);
    }

    // PSD repair: Pfaffian rounding must not leak into the measures.
    EigResult eig = herm_eig(m);
    const double wmin = eig.eigenvalues.back();
    if (wmin < -1e-7)
        throw std::runtime_error("ff_rdm: backend inconsistency (reduced state far from PSD)");
    if (repair) {
        repair->min_eigenvalue = wmin;
        repair->trace_shift = 0.0;
        repair->repaired = false;
    }
    if (wmin < 0.0) {
        std::vector<double> w = eig.eigenvalues;
        double tr = 0.0;
        for (double& x : w) {
            if (x < 0.0) x = 0.0;
            tr += x;
        }
        ComplexMatrix fixed(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                cplx s = 0.0;
                for (std::size_t l = 0; l < d; ++l)
                    s += eig.eigenvectors(i, l) * (w[l] / tr) * std::conj(eig.eigenvectors(j, l));
                fixed(i, j) = s;
                fixed(j, i) = std::conj(s);
            }
        if (repair) {
            repair->trace_shift = std::abs(tr - 1.0);
            repair->repaired = true;
        }
        return DensityMatrix(k, std::move(fixed));
    }
    return DensityMatrix(k, std::move(m));
}

}  // namespace

DensityMatrix ff_rdm(const CorrelatorTable& table, const SiteQuad& quad, RdmRepair* repair) {
    return ff_rdm(table, quad.centered_sites(static_cast<int>(table.n)), repair);
}

DensityMatrix ff_rdm(const CorrelatorTable& table, const std::array<int, 4>& sites,
                     RdmRepair* repair) {
    return rdm_from_paulis(table, {sites.begin(), sites.end()}, repair);
}

DensityMatrix ff_rdm2(const CorrelatorTable& table, int site_a, int site_b, RdmRepair* repair) {
    if (site_a >= site_b) throw std::invalid_argument("ff_rdm2: sites must be ascending");
    return rdm_from_paulis(table, {site_a, site_b}, repair);
}

DensityMatrix ff_rdm1(const CorrelatorTable& table, int site) {
    return rdm_from_paulis(table, {site}, nullptr);
}

double cross_validate(const ChainConfig& cfg, const SiteQuad& quad) {
    ChainConfig ed_cfg = cfg;
    ed_cfg.backend = Backend::Ed;
    ed_cfg.validate();

    const auto sites4 = quad.centered_sites(cfg.nsites);
    const std::vector<int> sites(sites4.begin(), sites4.end());

    const PureState psi = ed_ground_state(ed_cfg);
    ChainConfig ff_cfg = cfg;
    ff_cfg.backend = Backend::FreeFermion;
    const CorrelatorTable table = ff_correlators(ff_cfg);

    double worst = 0.0;
    std::string labels(4, 'I');
    for (int code = 0; code < 256; ++code) {
        int c = code;
        for (int q = 3; q >= 0; --q) {
            labels[q] = kPauliLabels[c & 3];
            c >>= 2;
        }
        const double ed = ed_pauli_expectation(psi, sites, labels);
        const double ff = pauli_expectation(table, sites, labels);
        worst = std::max(worst, std::abs(ed - ff));
    }
    return worst;
}

double validate_symmetry_filter() {
    const double lambdas[3] = {0.5, 1.0, 1.7};
    const double gammas[2] = {1.0, 0.5};
    double worst = 0.0;
    for (double g : gammas)
        for (double l : lambdas) {
            ChainConfig cfg{l, g, 10, Backend::Ed};
            const PureState psi = ed_ground_state(cfg);
            const SiteQuad quad{1, 1, 1};
            const auto sites4 = quad.centered_sites(cfg.nsites);
            const std::vector<int> sites(sites4.begin(), sites4.end());
            std::string labels(4, 'I');
            for (int code = 0; code < 256; ++code) {
                int c = code;
                int ycount = 0, xycount = 0;
                for (int q = 3; q >= 0; --q) {
                    labels[q] = kPauliLabels[c & 3];
                    if (labels[q] == 'Y') ++ycount;
                    if (labels[q] == 'X' || labels[q] == 'Y') ++xycount;
                    c >>= 2;
                }
                if (ycount % 2 == 0 && xycount % 2 == 0) continue;  // not filtered
                worst = std::max(worst, std::abs(ed_pauli_expectation(psi, sites, labels)));
            }
        }
    return worst;
}

double chain_c4(const CorrelatorTable& table, const SiteQuad& quad) {
    return fourtangle_mixed(ff_rdm(table, quad));
}

double chain_concurrence(const CorrelatorTable& table, int dist) {
    const auto pair = centered_pair(static_cast<int>(table.n), dist);
    return concurrence(ff_rdm2(table, pair[0], pair[1]));
}

double chain_one_tangle(const CorrelatorTable& table) {
    return one_tangle(ff_rdm1(table, centered_site(static_cast<int>(table.n))));
}

}  // namespace c4
