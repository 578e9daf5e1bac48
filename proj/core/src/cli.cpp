#include "c4/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "c4/ed.hpp"
#include "c4/measures.hpp"
#include "c4/sweep.hpp"

namespace c4 {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SiteQuad parse_quad(const std::string& s) {
    SiteQuad q;
    if (std::sscanf(s.c_str(), "%d,%d,%d", &q.n1, &q.n2, &q.n3) != 3)
        throw CLI::ValidationError("--quad", "expected n1,n2,n3");
    q.validate();
    return q;
}

Backend parse_backend(const std::string& s) {
    if (s == "ed") return Backend::Ed;
    if (s == "ff" || s == "freefermion") return Backend::FreeFermion;
    throw CLI::ValidationError("--backend", "expected ed or freefermion");
}

// Plain-text key=value plan files; command-line flags override.
std::map<std::string, std::string> read_plan_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read plan file \"" + path + "\"");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

struct ScanOptions {
    std::string mode = "chain-c4";
    std::string family;
    double phi = 0.0;
    double p_start = 0.0, p_stop = 1.0, p_step = 0.005;
    double q_start = 0.0, q_stop = 1.0, q_step = 0.005;
    double lambda_start = 0.0, lambda_stop = 2.0, lambda_step = 0.005;
    double gamma = 1.0;
    std::vector<std::string> quads;
    int nsites = -1;  // -1: backend default
    std::string backend = "freefermion";
    std::string out;
    int threads = 0;
    bool no_cache = false;
    bool check_convergence = false;
};

SweepPlan plan_from_options(const ScanOptions& o) {
    SweepPlan plan;
    plan.mode = sweep_mode_from_string(o.mode);
    plan.family = o.family;
    plan.phi = o.phi;
    plan.gamma = o.gamma;
    plan.backend = parse_backend(o.backend);
    plan.nsites = o.nsites > 0 ? o.nsites : (plan.backend == Backend::Ed ? 10 : 1000);
    plan.out_path = o.out;
    plan.threads = o.threads;
    plan.use_cache = !o.no_cache;
    plan.convergence_check = o.check_convergence;
    const bool mixture = plan.mode == SweepMode::MixtureRank2 || plan.mode == SweepMode::MixtureRank3;
    if (mixture) {
        plan.axis = {o.p_start, o.p_stop, o.p_step};
        plan.q_axis = {o.q_start, o.q_stop, o.q_step};
    } else {
        plan.axis = {o.lambda_start, o.lambda_stop, o.lambda_step};
        for (const auto& qs : o.quads) plan.quads.push_back(parse_quad(qs));
        if (plan.quads.empty() && plan.mode != SweepMode::ChainResidual)
            plan.quads.push_back(SiteQuad{1, 1, 1});
    }
    return plan;
}

void apply_plan_file(ScanOptions& o, const std::map<std::string, std::string>& kv,
                     const CLI::App* cmd) {
    auto unset = [&](const std::string& flag) { return cmd->count(flag) == 0; };
    auto getd = [&](const char* key, double& slot, const char* flag) {
        auto it = kv.find(key);
        if (it != kv.end() && unset(flag)) slot = std::stod(it->second);
    };
    auto gets = [&](const char* key, std::string& slot, const char* flag) {
        auto it = kv.find(key);
        if (it != kv.end() && unset(flag)) slot = it->second;
    };
    gets("mode", o.mode, "--mode");
    gets("family", o.family, "--family");
    getd("phi", o.phi, "--phi");
    getd("p_start", o.p_start, "--p-start");
    getd("p_stop", o.p_stop, "--p-stop");
    getd("p_step", o.p_step, "--p-step");
    getd("q_start", o.q_start, "--q-start");
    getd("q_stop", o.q_stop, "--q-stop");
    getd("q_step", o.q_step, "--q-step");
    getd("lambda_start", o.lambda_start, "--lambda-start");
    getd("lambda_stop", o.lambda_stop, "--lambda-stop");
    getd("lambda_step", o.lambda_step, "--lambda-step");
    getd("gamma", o.gamma, "--gamma");
    gets("backend", o.backend, "--backend");
    gets("out", o.out, "--out");
    auto it = kv.find("n");
    if (it != kv.end() && unset("--n")) o.nsites = std::stoi(it->second);
    it = kv.find("threads");
    if (it != kv.end() && unset("--threads")) o.threads = std::stoi(it->second);
    it = kv.find("cache");
    if (it != kv.end() && unset("--no-cache")) o.no_cache = it->second == "0" || it->second == "off";
    it = kv.find("check_convergence");
    if (it != kv.end() && unset("--check-convergence"))
        o.check_convergence = it->second == "1" || it->second == "on";
    it = kv.find("quad");
    if (it != kv.end() && unset("--quad")) {
        o.quads.clear();
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) o.quads.push_back(item);
    }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"4-tangle, concurrence and residual-tangle sweeps for Bell/GHZ/W mixtures "
                 "and the open transverse XY chain"};
    app.require_subcommand(1);

    // ---- measure ----------------------------------------------------------
    auto* measure = app.add_subcommand("measure", "evaluate a single measure and print it");
    std::string meas_what;
    measure->add_option("what", meas_what, "one of c4, c2, c2prod, tau1")->required();
    std::string meas_family;
    double meas_p = 0.0, meas_q = 0.0, meas_phi = 0.0;
    measure->add_option("--family", meas_family, "mixture family name");
    measure->add_option("--p", meas_p, "mixture weight p");
    measure->add_option("--q", meas_q, "rank-3 mixture weight q");
    measure->add_option("--phi", meas_phi, "phase for ghz-bellbell-phase");
    double meas_gamma = 1.0, meas_lambda = -1.0;
    int meas_n = -1, meas_dist = 1;
    std::string meas_quad = "1,1,1", meas_backend = "freefermion";
    measure->add_option("--gamma", meas_gamma, "chain anisotropy");
    measure->add_option("--lambda", meas_lambda, "chain coupling (selects chain mode)");
    measure->add_option("--n", meas_n, "chain length");
    measure->add_option("--quad", meas_quad, "site distances n1,n2,n3 for c4");
    measure->add_option("--dist", meas_dist, "pair distance for c2");
    measure->add_option("--backend", meas_backend, "ed or freefermion");

    // ---- scan --------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "run a sweep and write CSV");
    ScanOptions so;
    std::string plan_path;
    scan->add_option("--plan", plan_path, "key=value plan file (flags override)");
    scan->add_option("--mode", so.mode,
                     "mixture-rank2|mixture-rank3|chain-c4|chain-residual|validate");
    scan->add_option("--family", so.family, "mixture family");
    scan->add_option("--phi", so.phi, "phase for ghz-bellbell-phase");
    scan->add_option("--p-start", so.p_start);
    scan->add_option("--p-stop", so.p_stop);
    scan->add_option("--p-step", so.p_step);
    scan->add_option("--q-start", so.q_start);
    scan->add_option("--q-stop", so.q_stop);
    scan->add_option("--q-step", so.q_step);
    scan->add_option("--lambda-start", so.lambda_start);
    scan->add_option("--lambda-stop", so.lambda_stop);
    scan->add_option("--lambda-step", so.lambda_step);
    scan->add_option("--gamma", so.gamma);
    scan->add_option("--quad", so.quads, "site distances n1,n2,n3 (repeatable)");
    scan->add_option("--n", so.nsites, "chain length (default 1000, ed 10)");
    scan->add_option("--backend", so.backend, "ed or freefermion");
    scan->add_option("--out", so.out, "output CSV path")->required();
    scan->add_option("--threads", so.threads, "concurrent evaluators (0 = hardware)");
    scan->add_flag("--no-cache", so.no_cache, "bypass the correlator table cache");
    scan->add_flag("--check-convergence", so.check_convergence,
                   "compare sampled points against a 2N chain");

    // ---- residual ----------------------------------------------------------
    auto* residual = app.add_subcommand("residual", "one-tangle / sum of squared concurrences sweep");
    double res_gamma = 1.0, res_start = 0.0, res_stop = 2.0, res_step = 0.005;
    int res_n = 1000, res_threads = 0;
    std::string res_out;
    bool res_check = false;
    residual->add_option("--gamma", res_gamma);
    residual->add_option("--lambda-start", res_start);
    residual->add_option("--lambda-stop", res_stop);
    residual->add_option("--lambda-step", res_step);
    residual->add_option("--n", res_n);
    residual->add_option("--threads", res_threads);
    residual->add_option("--out", res_out, "output CSV path")->required();
    residual->add_flag("--check-convergence", res_check);

    // ---- validate ----------------------------------------------------------
    auto* validate = app.add_subcommand("validate", "cross-check the backends (max deviation)");
    double val_gamma = 1.0, val_lambda = 0.5;
    double val_start = -1.0, val_stop = -1.0, val_step = 0.1;
    int val_n = 10;
    std::string val_quad = "1,1,1";
    double val_tol = 1e-8;
    bool val_filter = false;
    validate->add_option("--gamma", val_gamma);
    validate->add_option("--lambda", val_lambda, "single coupling value");
    validate->add_option("--lambda-start", val_start, "grid start (overrides --lambda)");
    validate->add_option("--lambda-stop", val_stop);
    validate->add_option("--lambda-step", val_step);
    validate->add_option("--n", val_n, "chain length (<= 14)");
    validate->add_option("--quad", val_quad, "site distances n1,n2,n3");
    validate->add_option("--tol", val_tol, "exit 1 when the deviation exceeds this");
    validate->add_flag("--filter", val_filter, "also check the Pauli symmetry filter against ED");

    // ---- factorizing -------------------------------------------------------
    auto* fact = app.add_subcommand("factorizing", "print the factorizing field for gamma");
    double fact_gamma = 0.5;
    fact->add_option("--gamma", fact_gamma)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (measure->parsed()) {
            const bool chain_mode = measure->count("--lambda") > 0;
            double value = 0.0;
            if (chain_mode) {
                const Backend backend = parse_backend(meas_backend);
                const int n = meas_n > 0 ? meas_n : (backend == Backend::Ed ? 10 : 1000);
                const ChainConfig cfg{meas_lambda, meas_gamma, n, backend};
                SweepPlan plan;
                plan.mode = SweepMode::ChainC4;
                plan.axis = {meas_lambda, meas_lambda, 1.0};
                plan.gamma = meas_gamma;
                plan.nsites = n;
                plan.backend = backend;
                if (meas_what == "c4") {
                    plan.quads = {parse_quad(meas_quad)};
                    value = run_sweep(plan).rows.at(0).at(5);
                } else if (meas_what == "c2") {
                    if (backend == Backend::Ed) {
                        const PureState psi = ed_ground_state(cfg);
                        const auto pr = centered_pair(n, meas_dist);
                        value = concurrence(rdm_from_pure(psi, {pr[0], pr[1]}));
                    } else {
                        value = chain_concurrence(*cached_correlators(cfg), meas_dist);
                    }
                } else if (meas_what == "tau1") {
                    if (backend == Backend::Ed) {
                        const PureState psi = ed_ground_state(cfg);
                        value = one_tangle(rdm_from_pure(psi, {centered_site(n)}));
                    } else {
                        value = chain_one_tangle(*cached_correlators(cfg));
                    }
                } else {
                    err << "measure: unknown chain measure \"" << meas_what << "\"\n";
                    return 2;
                }
            } else {
                if (meas_family.empty()) {
                    err << "measure: need --family (mixtures) or --lambda (chain)\n";
                    return 2;
                }
                const MixtureFamily fam = mixture_family(meas_family, meas_phi);
                const DensityMatrix rho = family_density(fam, meas_p, meas_q);
                if (meas_what == "c4") value = fourtangle_mixed(rho);
                else if (meas_what == "c2") value = concurrence(partial_trace(rho, {0, 1}));
                else if (meas_what == "c2prod")
                    value = concurrence(partial_trace(rho, {0, 1})) *
                            concurrence(partial_trace(rho, {2, 3}));
                else {
                    err << "measure: unknown mixture measure \"" << meas_what << "\"\n";
                    return 2;
                }
            }
            out << fmt(value) << "\n";
            return 0;
        }

        if (scan->parsed()) {
            if (!plan_path.empty()) apply_plan_file(so, read_plan_file(plan_path), scan);
            const SweepPlan plan = plan_from_options(so);
            const SweepResult result = run_sweep(plan);
            emit_csv(result, plan.out_path);
            if (result.convergence_deviation)
                out << "convergence deviation " << fmt(*result.convergence_deviation) << "\n";
            out << plan.out_path << ": " << result.rows.size() << " rows\n";
            return 0;
        }

        if (residual->parsed()) {
            SweepPlan plan;
            plan.mode = SweepMode::ChainResidual;
            plan.axis = {res_start, res_stop, res_step};
            plan.gamma = res_gamma;
            plan.nsites = res_n;
            plan.threads = res_threads;
            plan.convergence_check = res_check;
            plan.out_path = res_out;
            const SweepResult result = run_sweep(plan);
            emit_csv(result, plan.out_path);
            out << plan.out_path << ": " << result.rows.size() << " rows\n";
            return 0;
        }

        if (validate->parsed()) {
            if (val_filter) {
                const double dev = validate_symmetry_filter();
                out << fmt(dev) << "\n";
                return dev <= val_tol ? 0 : 1;
            }
            SweepPlan plan;
            plan.mode = SweepMode::Validate;
            plan.gamma = val_gamma;
            plan.nsites = val_n;
            plan.backend = Backend::Ed;
            plan.quads = {parse_quad(val_quad)};
            if (val_start >= 0.0 && val_stop >= val_start)
                plan.axis = {val_start, val_stop, val_step};
            else
                plan.axis = {val_lambda, val_lambda, 1.0};
            const SweepResult result = run_sweep(plan);
            double worst = 0.0;
            for (const auto& row : result.rows) worst = std::max(worst, row.back());
            out << fmt(worst) << "\n";
            return worst <= val_tol ? 0 : 1;
        }

        if (fact->parsed()) {
            out << fmt(factorizing_lambda(fact_gamma)) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand given\n";
    return 2;
}

}  // namespace c4
