#include "c4/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "c4/ed.hpp"
#include "c4/measures.hpp"

namespace c4 {

std::string to_string(SweepMode mode) {
    switch (mode) {
        case SweepMode::MixtureRank2: return "mixture-rank2";
        case SweepMode::MixtureRank3: return "mixture-rank3";
        case SweepMode::ChainC4: return "chain-c4";
        case SweepMode::ChainResidual: return "chain-residual";
        case SweepMode::Validate: return "validate";
    }
    throw std::invalid_argument("to_string: bad SweepMode");
}

SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "mixture-rank2") return SweepMode::MixtureRank2;
    if (s == "mixture-rank3") return SweepMode::MixtureRank3;
    if (s == "chain-c4") return SweepMode::ChainC4;
    if (s == "chain-residual") return SweepMode::ChainResidual;
    if (s == "validate") return SweepMode::Validate;
    throw std::invalid_argument("unknown sweep mode \"" + s + "\"");
}

void Grid::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("Grid: step must be positive");
    if (stop < start) throw std::invalid_argument("Grid: stop must be >= start");
}

std::vector<double> Grid::points() const {
    validate();
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = start + static_cast<double>(i) * step;
    return pts;
}

void SweepPlan::validate() const {
    axis.validate();
    const bool mixture = mode == SweepMode::MixtureRank2 || mode == SweepMode::MixtureRank3;
    if (mode == SweepMode::MixtureRank3) q_axis.validate();
    if (mixture) {
        if (family.empty()) throw std::invalid_argument("SweepPlan: mixture modes need a family");
    } else {
        ChainConfig cfg{axis.start, gamma, nsites, backend};
        cfg.validate();
        if (mode != SweepMode::ChainResidual && quads.empty())
            throw std::invalid_argument("SweepPlan: chain-c4/validate need at least one quad");
        for (const SiteQuad& q : quads) q.centered_sites(nsites);  // throws if it does not fit
    }
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned want = threads > 0 ? static_cast<unsigned>(threads) : hw;
    const unsigned nthreads = std::min<unsigned>(want, count);

    if (nthreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

struct TableKey {
    double lambda;
    double gamma;
    int nsites;
    bool operator<(const TableKey& o) const {
        if (lambda != o.lambda) return lambda < o.lambda;
        if (gamma != o.gamma) return gamma < o.gamma;
        return nsites < o.nsites;
    }
};

std::mutex cache_mutex;
std::map<TableKey, std::shared_ptr<const CorrelatorTable>> table_cache;
std::deque<TableKey> cache_order;
constexpr std::size_t kCacheCapacity = 12;

}  // namespace

void clear_table_cache() {
    std::lock_guard<std::mutex> lock(cache_mutex);
    table_cache.clear();
    cache_order.clear();
}

std::shared_ptr<const CorrelatorTable> cached_correlators(const ChainConfig& cfg, bool use_cache) {
    if (!use_cache) return std::make_shared<const CorrelatorTable>(ff_correlators(cfg));
    const TableKey key{cfg.lambda, cfg.gamma, cfg.nsites};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = table_cache.find(key);
        if (it != table_cache.end()) return it->second;
    }
    auto table = std::make_shared<const CorrelatorTable>(ff_correlators(cfg));
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto [it, inserted] = table_cache.emplace(key, table);
        if (inserted) {
            cache_order.push_back(key);
            while (cache_order.size() > kCacheCapacity) {
                table_cache.erase(cache_order.front());
                cache_order.pop_front();
            }
        }
        return it->second;
    }
}

namespace {

// Concurrences accumulated outward until they die off; CKW sums over both
// directions, so every distance counts twice for a bulk site.
struct ResidualPoint {
    double tau1;
    double sum_c2sq;
    double residual;
};

constexpr int kMaxConcurrenceDistance = 30;
constexpr double kConcurrenceCutoff = 1e-9;

ResidualPoint residual_point(const CorrelatorTable& table) {
    ResidualPoint out{};
    out.tau1 = chain_one_tangle(table);
    std::vector<double> cs;
    for (int d = 1; d <= kMaxConcurrenceDistance && d + 1 <= static_cast<int>(table.n); ++d) {
        const double c = chain_concurrence(table, d);
        cs.push_back(c);
        cs.push_back(c);  // both directions
        if (c < kConcurrenceCutoff && d >= 3) break;
    }
    out.residual = residual_tangle(out.tau1, cs);
    double s = 0.0;
    for (double c : cs) s += c * c;
    out.sum_c2sq = s;
    return out;
}

struct ChainPointValues {
    std::vector<double> row_block;  // concatenated rows for this lambda
};

std::string render_echo(const SweepPlan& plan) {
    std::ostringstream os;
    os << "mode=" << to_string(plan.mode);
    const bool mixture = plan.mode == SweepMode::MixtureRank2 || plan.mode == SweepMode::MixtureRank3;
    auto grid = [](const Grid& g) {
        std::ostringstream gs;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "[%.17g:%.17g:%.17g]", g.start, g.stop, g.step);
        gs << buf;
        return gs.str();
    };
    if (mixture) {
        os << " family=" << plan.family;
        if (plan.family == "ghz-bellbell-phase") {
            char buf[48];
            std::snprintf(buf, sizeof(buf), " phi=%.17g", plan.phi);
            os << buf;
        }
        os << " p=" << grid(plan.axis);
        if (plan.mode == SweepMode::MixtureRank3) os << " q=" << grid(plan.q_axis);
    } else {
        char buf[48];
        std::snprintf(buf, sizeof(buf), " gamma=%.17g", plan.gamma);
        os << buf << " lambda=" << grid(plan.axis) << " n=" << plan.nsites << " backend="
           << (plan.backend == Backend::Ed ? "ed" : "freefermion");
        if (!plan.quads.empty()) {
            os << " quads=";
            for (std::size_t i = 0; i < plan.quads.size(); ++i) {
                if (i) os << ";";
                os << plan.quads[i].n1 << "," << plan.quads[i].n2 << "," << plan.quads[i].n3;
            }
        }
    }
    return os.str();
}

// Everything a chain-c4 row needs at one (lambda, quad).
struct QuadRow {
    double c4;
    double c2_first;
    double c2_last;
};

QuadRow quad_row_ff(const CorrelatorTable& table, const SiteQuad& quad) {
    QuadRow r{};
    r.c4 = chain_c4(table, quad);
    r.c2_first = chain_concurrence(table, quad.n1);
    r.c2_last = chain_concurrence(table, quad.n3);
    return r;
}

QuadRow quad_row_ed(const ChainConfig& cfg, const SiteQuad& quad) {
    const PureState psi = ed_ground_state(cfg);
    QuadRow r{};
    const auto sites = quad.centered_sites(cfg.nsites);
    r.c4 = fourtangle_mixed(rdm_from_pure(psi, {sites.begin(), sites.end()}));
    const auto p1 = centered_pair(cfg.nsites, quad.n1);
    const auto p3 = centered_pair(cfg.nsites, quad.n3);
    r.c2_first = concurrence(rdm_from_pure(psi, {p1[0], p1[1]}));
    r.c2_last = concurrence(rdm_from_pure(psi, {p3[0], p3[1]}));
    return r;
}

double convergence_gate(const SweepPlan& plan, const std::vector<double>& lambdas);

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
    plan.validate();
    SweepResult res;
    res.plan_echo = render_echo(plan);

    switch (plan.mode) {
        case SweepMode::MixtureRank2: {
            res.columns = {"p", "c4", "conc_12", "conc_34", "conc_product"};
            const MixtureFamily fam = mixture_family(plan.family, plan.phi);
            if (fam.rank != 2) throw std::invalid_argument("run_sweep: family is not rank 2");
            const std::vector<double> ps = plan.axis.points();
            res.rows.assign(ps.size(), {});
            parallel_for(ps.size(), plan.threads, [&](std::size_t i) {
                const DensityMatrix rho = family_density(fam, ps[i]);
                const double c4 = fourtangle_mixed(rho);
                const double c12 = concurrence(partial_trace(rho, {0, 1}));
                const double c34 = concurrence(partial_trace(rho, {2, 3}));
                res.rows[i] = {ps[i], c4, c12, c34, c12 * c34};
            });
            break;
        }
        case SweepMode::MixtureRank3: {
            res.columns = {"p", "q", "c4", "conc_12", "conc_34", "conc_product"};
            const MixtureFamily fam = mixture_family(plan.family, plan.phi);
            if (fam.rank != 3) throw std::invalid_argument("run_sweep: family is not rank 3");
            const std::vector<double> ps = plan.axis.points();
            const std::vector<double> qs = plan.q_axis.points();
            res.rows.assign(ps.size() * qs.size(), {});
            parallel_for(res.rows.size(), plan.threads, [&](std::size_t idx) {
                const double p = ps[idx / qs.size()];
                const double q = qs[idx % qs.size()];
                const DensityMatrix rho = family_density(fam, p, q);
                const double c4 = fourtangle_mixed(rho);
                const double c12 = concurrence(partial_trace(rho, {0, 1}));
                const double c34 = concurrence(partial_trace(rho, {2, 3}));
                res.rows[idx] = {p, q, c4, c12, c34, c12 * c34};
            });
            break;
        }
        case SweepMode::ChainC4: {
            res.columns = {"lambda", "gamma", "n1", "n2", "n3", "c4", "c2_n1", "c2_n3",
                           "c2_product", "bound_gap"};
            const std::vector<double> ls = plan.axis.points();
            const std::size_t nq = plan.quads.size();
            res.rows.assign(ls.size() * nq, {});
            parallel_for(ls.size(), plan.threads, [&](std::size_t i) {
                const ChainConfig cfg{ls[i], plan.gamma, plan.nsites, plan.backend};
                std::shared_ptr<const CorrelatorTable> table;
                if (plan.backend == Backend::FreeFermion) table = cached_correlators(cfg, plan.use_cache);
                for (std::size_t qi = 0; qi < nq; ++qi) {
                    const SiteQuad& quad = plan.quads[qi];
                    const QuadRow qr = plan.backend == Backend::FreeFermion
                                           ? quad_row_ff(*table, quad)
                                           : quad_row_ed(cfg, quad);
                    const double prod = qr.c2_first * qr.c2_last;
                    res.rows[i * nq + qi] = {ls[i],
                                             plan.gamma,
                                             static_cast<double>(quad.n1),
                                             static_cast<double>(quad.n2),
                                             static_cast<double>(quad.n3),
                                             qr.c4,
                                             qr.c2_first,
                                             qr.c2_last,
                                             prod,
                                             prod - qr.c4};
                }
            });
            if (plan.convergence_check) res.convergence_deviation = convergence_gate(plan, ls);
            break;
        }
        case SweepMode::ChainResidual: {
            res.columns = {"lambda", "gamma", "tau1", "sum_c2sq", "residual"};
            const std::vector<double> ls = plan.axis.points();
            res.rows.assign(ls.size(), {});
            parallel_for(ls.size(), plan.threads, [&](std::size_t i) {
                const ChainConfig cfg{ls[i], plan.gamma, plan.nsites, Backend::FreeFermion};
                auto table = cached_correlators(cfg, plan.use_cache);
                const ResidualPoint rp = residual_point(*table);
                res.rows[i] = {ls[i], plan.gamma, rp.tau1, rp.sum_c2sq, rp.residual};
            });
            if (plan.convergence_check) res.convergence_deviation = convergence_gate(plan, ls);
            break;
        }
        case SweepMode::Validate: {
            res.columns = {"lambda", "gamma", "n1", "n2", "n3", "max_deviation"};
            const std::vector<double> ls = plan.axis.points();
            const std::size_t nq = plan.quads.size();
            res.rows.assign(ls.size() * nq, {});
            parallel_for(ls.size() * nq, plan.threads, [&](std::size_t idx) {
                const double l = ls[idx / nq];
                const SiteQuad& quad = plan.quads[idx % nq];
                const ChainConfig cfg{l, plan.gamma, plan.nsites, Backend::Ed};
                const double dev = cross_validate(cfg, quad);
                res.rows[idx] = {l,
                                 plan.gamma,
                                 static_cast<double>(quad.n1),
                                 static_cast<double>(quad.n2),
                                 static_cast<double>(quad.n3),
                                 dev};
            });
            break;
        }
    }
    return res;
}

namespace {

// Compare every reported measure at N against 2N on up to three sampled
// lambda points; the production N must already be converged.
double convergence_gate(const SweepPlan& plan, const std::vector<double>& lambdas) {
    std::vector<double> samples;
    samples.push_back(lambdas.front());
    if (lambdas.size() > 2) samples.push_back(lambdas[lambdas.size() / 2]);
    if (lambdas.size() > 1) samples.push_back(lambdas.back());

    double worst = 0.0;
    for (double l : samples) {
        const ChainConfig small{l, plan.gamma, plan.nsites, Backend::FreeFermion};
        const ChainConfig big{l, plan.gamma, plan.nsites * 2, Backend::FreeFermion};
        auto ts = cached_correlators(small, plan.use_cache);
        auto tb = cached_correlators(big, false);
        if (plan.mode == SweepMode::ChainC4) {
            for (const SiteQuad& quad : plan.quads) {
                const QuadRow a = quad_row_ff(*ts, quad);
                const QuadRow b = quad_row_ff(*tb, quad);
                worst = std::max({worst, std::abs(a.c4 - b.c4), std::abs(a.c2_first - b.c2_first),
                                  std::abs(a.c2_last - b.c2_last)});
            }
        } else {
            const ResidualPoint a = residual_point(*ts);
            const ResidualPoint b = residual_point(*tb);
            worst = std::max({worst, std::abs(a.tau1 - b.tau1), std::abs(a.sum_c2sq - b.sum_c2sq)});
        }
    }
    if (worst >= 1e-6)
        throw std::runtime_error("convergence gate failed: doubling N moves a measure by " +
                                 std::to_string(worst));
    return worst;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string csv_string(const SweepResult& result) {
    std::string out = "# " + result.plan_echo + "\n";
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
        if (c) out += ",";
        out += result.columns[c];
    }
    out += "\n";
    for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_value(row[c]);
        }
        out += "\n";
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open \"" + path + "\" for writing");
    const std::string body = csv_string(result);
    f.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!f) throw std::runtime_error("emit_csv: write failed for \"" + path + "\"");
}

}  // namespace c4
