#pragma once

#include <string>
#include <vector>

#include "c4/measures.hpp"
#include "c4/qubits.hpp"

namespace c4 {

enum class StateTag { GHZ4, GHZ4Prime, W4, PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// The fixed reference states:
///   GHZ4       (|0000> + |1111>)/sqrt(2)
///   GHZ4Prime  (|0100> + |1011>)/sqrt(2)
///   W4         (|1000> + |0100> + |0010> + |0001>)/2
///   Phi+-      (|11> +- |00>)/sqrt(2)
///   Psi+-      (|10> +- |01>)/sqrt(2)
PureState named_state(StateTag tag);
PureState named_state(const std::string& name);  // lower-case tag, e.g. "ghz4", "phi+"

/// (|11> + e^{i phi} |00>)/sqrt(2); phi = pi/2 is the Bell factor that makes
/// the Bell x Bell product orthogonal to GHZ4.
PureState phi_plus_phase(double phi);

/// sum_i w_i |psi_i><psi_i| with nonnegative weights summing to 1 (1e-12).
DensityMatrix mix(const std::vector<PureState>& states, const std::vector<double>& weights);

struct Rank2Point {
    double p;
    double c4;
    double conc_12;
    double conc_34;
    double conc_product;
};

/// rho(p) = p |a><a| + (1-p) |b><b| over a p-grid: C4 plus the concurrences of
/// the (1,2) and (3,4) site pairs and their product.
std::vector<Rank2Point> rank2_curve(const PureState& a, const PureState& b,
                                    const std::vector<double>& p_grid);

struct Rank3Point {
    double p;
    double q;
    double c4;
    double conc_12;
    double conc_34;
    double conc_product;
};

/// rho = p a + (1-p)(q b + (1-q) c) over a (p,q)-grid.
std::vector<Rank3Point> rank3_surface(const PureState& a, const PureState& b, const PureState& c,
                                      const std::vector<double>& p_grid,
                                      const std::vector<double>& q_grid);

// The two-parameter families studied on mixtures, addressable by name from the
// CLI.  Rank-2 families take p, rank-3 families take (p, q).
struct MixtureFamily {
    std::string name;
    int rank = 2;                   // 2 or 3
    std::vector<PureState> states;  // [a, b] or [a, b, c]
};

/// Families: ghz-w, bellbell-w, ghz-bellbell, ghz-bellbell-phase (uses phi),
/// ghz-bb-bb, ghzprime-bb-w, w-bb-bb.
MixtureFamily mixture_family(const std::string& name, double phi = 0.0);
std::vector<std::string> mixture_family_names();

DensityMatrix family_density(const MixtureFamily& fam, double p, double q = 0.0);

}  // namespace c4
