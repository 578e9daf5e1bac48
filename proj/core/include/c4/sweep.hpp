#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "c4/chain.hpp"
#include "c4/freefermion.hpp"
#include "c4/states.hpp"

namespace c4 {

enum class SweepMode { MixtureRank2, MixtureRank3, ChainC4, ChainResidual, Validate };

std::string to_string(SweepMode mode);
SweepMode sweep_mode_from_string(const std::string& s);

struct Grid {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.005;

    void validate() const;
    std::vector<double> points() const;
};

struct SweepPlan {
    SweepMode mode = SweepMode::ChainC4;
    Grid axis;                    // p for mixtures, lambda for chain modes
    Grid q_axis;                  // rank-3 mixtures only
    double gamma = 1.0;
    std::vector<SiteQuad> quads;  // chain-c4 / validate
    Backend backend = Backend::FreeFermion;
    int nsites = 1000;
    std::string family;           // mixture family name
    double phi = 0.0;
    std::string out_path;
    int threads = 0;              // 0 = hardware concurrency
    bool use_cache = true;
    bool convergence_check = false;

    void validate() const;
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string plan_echo;  // rendered behind "# " as the first CSV line
    // Largest |measure(N) - measure(2N)| over the sampled grid points when the
    // convergence check ran.
    std::optional<double> convergence_deviation;
};

/// One row per grid point (per quad for chain-c4), deterministic and
/// independent of the evaluation order.  Correlator tables are cached per
/// (lambda, gamma, N) and shared across quads.
SweepResult run_sweep(const SweepPlan& plan);

/// Header + 17-significant-digit rows, LF line endings; byte-identical for
/// identical results.
std::string csv_string(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

/// Drop all cached correlator tables (used by the cache-equivalence tests).
void clear_table_cache();

/// Shared cached access to ff_correlators; holders keep their table alive
/// independently of cache eviction.
std::shared_ptr<const CorrelatorTable> cached_correlators(const ChainConfig& cfg, bool use_cache = true);

/// Evaluate fn(0..count-1) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace c4
