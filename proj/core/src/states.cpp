#include "c4/states.hpp"

#include <cmath>
#include <stdexcept>

namespace c4 {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState two_qubit(std::size_t i, cplx vi, std::size_t j, cplx vj) {
    std::vector<cplx> amp(4, 0.0);
    amp[i] = vi;
    amp[j] = vj;
    return PureState(2, std::move(amp));
}

}  // namespace

PureState named_state(StateTag tag) {
    switch (tag) {
        case StateTag::GHZ4: {
            std::vector<cplx> amp(16, 0.0);
            amp[0b0000] = kInvSqrt2;
            amp[0b1111] = kInvSqrt2;
            return PureState(4, std::move(amp));
        }
        case StateTag::GHZ4Prime: {
            std::vector<cplx> amp(16, 0.0);
            amp[0b0100] = kInvSqrt2;
            amp[0b1011] = kInvSqrt2;
            return PureState(4, std::move(amp));
        }
        case StateTag::W4: {
            std::vector<cplx> amp(16, 0.0);
            amp[0b1000] = 0.5;
            amp[0b0100] = 0.5;
            amp[0b0010] = 0.5;
            amp[0b0001] = 0.5;
            return PureState(4, std::move(amp));
        }
        case StateTag::PhiPlus:
            return two_qubit(0b11, kInvSqrt2, 0b00, kInvSqrt2);
        case StateTag::PhiMinus:
            return two_qubit(0b11, kInvSqrt2, 0b00, -kInvSqrt2);
        case StateTag::PsiPlus:
            return two_qubit(0b10, kInvSqrt2, 0b01, kInvSqrt2);
        case StateTag::PsiMinus:
            return two_qubit(0b10, kInvSqrt2, 0b01, -kInvSqrt2);
    }
    throw std::invalid_argument("named_state: unknown tag");
}

PureState named_state(const std::string& name) {
    if (name == "ghz4") return named_state(StateTag::GHZ4);
    if (name == "ghz4'" || name == "ghz4prime") return named_state(StateTag::GHZ4Prime);
    if (name == "w4") return named_state(StateTag::W4);
    if (name == "phi+") return named_state(StateTag::PhiPlus);
    if (name == "phi-") return named_state(StateTag::PhiMinus);
    if (name == "psi+") return named_state(StateTag::PsiPlus);
    if (name == "psi-") return named_state(StateTag::PsiMinus);
    throw std::invalid_argument("named_state: unknown state \"" + name + "\"");
}

PureState phi_plus_phase(double phi) {
    return two_qubit(0b11, kInvSqrt2, 0b00, std::polar(kInvSqrt2, phi));
}

DensityMatrix mix(const std::vector<PureState>& states, const std::vector<double>& weights) {
    if (states.empty() || states.size() != weights.size())
        throw std::invalid_argument("mix: need matching, nonempty states and weights");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mix: weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("mix: weights must sum to 1");

    const std::size_t d = states.front().dim();
    const int n = states.front().nqubits;
    ComplexMatrix m(d, d);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].dim() != d) throw std::invalid_argument("mix: dimension mismatch");
        if (weights[s] == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i) {
            if (states[s].amp[i] == cplx{}) continue;
            for (std::size_t j = 0; j < d; ++j)
                m(i, j) += weights[s] * states[s].amp[i] * std::conj(states[s].amp[j]);
        }
    }
    return DensityMatrix(n, std::move(m));
}

namespace {

Rank2Point eval_point(const DensityMatrix& rho, double p) {
    Rank2Point pt;
    pt.p = p;
    pt.c4 = fourtangle_mixed(rho);
    pt.conc_12 = concurrence(partial_trace(rho, {0, 1}));
    pt.conc_34 = concurrence(partial_trace(rho, {2, 3}));
    pt.conc_product = pt.conc_12 * pt.conc_34;
    return pt;
}

}  // namespace

std::vector<Rank2Point> rank2_curve(const PureState& a, const PureState& b,
                                    const std::vector<double>& p_grid) {
    if (a.nqubits != 4 || b.nqubits != 4)
        throw std::invalid_argument("rank2_curve: states must have 4 qubits");
    std::vector<Rank2Point> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("rank2_curve: p outside [0,1]");
        out.push_back(eval_point(mix({a, b}, {p, 1.0 - p}), p));
    }
    return out;
}

std::vector<Rank3Point> rank3_surface(const PureState& a, const PureState& b, const PureState& c,
                                      const std::vector<double>& p_grid,
                                      const std::vector<double>& q_grid) {
    if (a.nqubits != 4 || b.nqubits != 4 || c.nqubits != 4)
        throw std::invalid_argument("rank3_surface: states must have 4 qubits");
    std::vector<Rank3Point> out;
    out.reserve(p_grid.size() * q_grid.size());
    for (double p : p_grid)
        for (double q : q_grid) {
            if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
                throw std::invalid_argument("rank3_surface: parameters outside [0,1]");
            const DensityMatrix rho = mix({a, b, c}, {p, (1.0 - p) * q, (1.0 - p) * (1.0 - q)});
            const Rank2Point base = eval_point(rho, p);
            out.push_back({p, q, base.c4, base.conc_12, base.conc_34, base.conc_product});
        }
    return out;
}

MixtureFamily mixture_family(const std::string& name, double phi) {
    const PureState ghz = named_state(StateTag::GHZ4);
    const PureState w = named_state(StateTag::W4);
    const PureState phip = named_state(StateTag::PhiPlus);
    const PureState phim = named_state(StateTag::PhiMinus);
    const PureState psim = named_state(StateTag::PsiMinus);

    if (name == "ghz-w") return {name, 2, {ghz, w}};
    if (name == "bellbell-w") return {name, 2, {tensor(phip, phip), w}};
    if (name == "ghz-bellbell") return {name, 2, {ghz, tensor(phip, phip)}};
    if (name == "ghz-bellbell-phase") {
        const PureState bp = phi_plus_phase(phi);
        return {name, 2, {ghz, tensor(bp, bp)}};
    }
    if (name == "ghz-bb-bb") return {name, 3, {ghz, tensor(phim, phim), tensor(psim, psim)}};
    if (name == "ghzprime-bb-w")
        return {name, 3, {named_state(StateTag::GHZ4Prime), tensor(phip, psim), w}};
    if (name == "w-bb-bb") return {name, 3, {w, tensor(phim, phim), tensor(phip, phip)}};
    throw std::invalid_argument("mixture_family: unknown family \"" + name + "\"");
}

std::vector<std::string> mixture_family_names() {
    return {"ghz-w",    "bellbell-w",    "ghz-bellbell", "ghz-bellbell-phase",
            "ghz-bb-bb", "ghzprime-bb-w", "w-bb-bb"};
}

DensityMatrix family_density(const MixtureFamily& fam, double p, double q) {
    if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0)
        throw std::invalid_argument("family_density: parameters outside [0,1]");
    if (fam.rank == 2) return mix(fam.states, {p, 1.0 - p});
    return mix(fam.states, {p, (1.0 - p) * q, (1.0 - p) * (1.0 - q)});
}

}  // namespace c4
