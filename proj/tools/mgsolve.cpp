// Command-line front end: model-problem setup, multigrid solves, and
// diagnostic reports as JSON/CSV data files.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vmg/cycles.hpp"
#include "vmg/diagnostics.hpp"
#include "vmg/matrix_market.hpp"
#include "vmg/problems.hpp"

using nlohmann::json;

namespace {

struct RunConfig {
    int N = 32;
    int coarsest_N = 2;
    std::string cycle = "v";
    int mu = 1;
    int nu = 1;
    int q = 1;
    double eps = 1e-8;
    std::uint64_t seed = 42;
    std::string smoother = "richardson";
    double alpha = 1.0;
    std::string out = "mg_out";
    std::string format = "json";
    int threads = 1;
    bool deterministic = false;

    int spmv_threads() const { return deterministic ? 1 : threads; }
};

vmg::CycleParams cycle_params(const RunConfig& cfg) {
    vmg::CycleParams p;
    p.mu = cfg.mu;
    p.nu = cfg.nu;
    p.q = cfg.q;
    if (cfg.cycle == "tg") {
        p.kind = vmg::CycleKind::two_grid;
    } else if (cfg.cycle == "w") {
        p.kind = vmg::CycleKind::w_cycle;
    } else {
        p.kind = vmg::CycleKind::v_cycle;
    }
    if (cfg.smoother == "jacobi") {
        p.smoother.kind = vmg::SmootherKind::jacobi;
    } else if (cfg.smoother == "optimal") {
        p.smoother.kind = vmg::SmootherKind::richardson_optimal_step;
    }
    return p;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json config_json(const RunConfig& cfg, const std::string& command) {
    json j;
    j["command"] = command;
    j["n"] = cfg.N;
    j["coarsest_n"] = cfg.coarsest_N;
    j["cycle"] = cfg.cycle;
    j["mu"] = cfg.mu;
    j["nu"] = cfg.nu;
    j["q"] = cfg.q;
    j["eps"] = cfg.eps;
    j["seed"] = cfg.seed;
    j["smoother"] = cfg.smoother;
    j["alpha"] = cfg.alpha;
    return j;
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << j.dump(2) << "\n";
}

void write_report_csv(const vmg::SolveReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "cycle,residual,factor\n";
    for (std::size_t i = 0; i < report.residual_history.size(); ++i) {
        out << i << "," << fmt17(report.residual_history[i]) << ",";
        if (i > 0 && i - 1 < report.convergence_factors.size()) {
            out << fmt17(report.convergence_factors[i - 1]);
        }
        out << "\n";
    }
}

json report_json(const vmg::SolveReport& report) {
    json j;
    j["residual_history"] = report.residual_history;
    j["convergence_factors"] = report.convergence_factors;
    if (!report.energy_error_history.empty()) {
        j["energy_error_history"] = report.energy_error_history;
    }
    j["work_units"] = report.work_units;
    j["cycles_executed"] = report.cycles_executed;
    j["converged"] = report.converged;
    return j;
}

void emit_report(const RunConfig& cfg, const std::string& command,
                 const vmg::SolveReport& report, json extra) {
    json j = config_json(cfg, command);
    j["schema"] = 1;
    j["report"] = report_json(report);
    j.update(extra);
    write_json(j, cfg.out + "/report.json");
    if (cfg.format == "csv") {
        write_report_csv(report, cfg.out + "/report.csv");
    }
}

/// Reference discrete solution: dense Cholesky when the level fits under
/// the cap, otherwise V-cycles to near machine precision.
vmg::Vector reference_solution(const vmg::Hierarchy& hier,
                               const vmg::Vector& f) {
    const vmg::CsrMatrix& L = hier.finest().op;
    if (L.rows() <= vmg::kDefaultDirectSolveCap) {
        return vmg::dense_solve(L, f);
    }
    vmg::CycleParams p;
    p.mu = p.nu = 2;
    p.epsilon = 1e-13 * vmg::norm2(f);
    p.max_img_cycles = 200;
    auto [u, report] = vmg::img_solve(hier, vmg::zeros(f.size()), f, p);
    return u;
}

int cmd_snapshot(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    vmg::GridSpec grid{cfg.N};
    vmg::ModelProblem problem;
    problem.grid = grid;
    problem.matrix = vmg::assemble_poisson_5pt(grid);
    problem.source = vmg::zeros(grid.n_unknowns());

    vmg::Level level;
    level.grid = grid;
    level.op = problem.matrix;
    level.spectral = vmg::estimate_spectral_norm(level.op);

    const std::vector<int> panels = {0, 1, 2, 3, 10, 20};
    int last = panels.back();

    vmg::Vector v = vmg::figure1_initial_guess(grid, cfg.seed);
    vmg::Vector g = vmg::zeros(v.size());
    vmg::SmootherConfig one_sweep{vmg::SmootherKind::richardson, 1};

    std::ofstream norms(cfg.out + "/norms.csv");
    norms << "iteration,euclidean,energy\n";
    for (int it = 0; it <= last; ++it) {
        norms << it << "," << fmt17(vmg::norm2(v)) << ","
              << fmt17(vmg::energy_norm(level.op, v)) << "\n";
        if (std::find(panels.begin(), panels.end(), it) != panels.end()) {
            vmg::Vector mag = v;
            for (double& e : mag) e = std::abs(e);
            char name[64];
            std::snprintf(name, sizeof(name), "/error_iter_%03d.csv", it);
            vmg::write_grid_csv(grid, mag, cfg.out + name);
        }
        v = vmg::relax(level, std::move(v), g, one_sweep, nullptr,
                       cfg.spmv_threads());
    }
    std::cerr << "snapshot: wrote " << panels.size() << " panels to "
              << cfg.out << "\n";
    return 0;
}

int cmd_solve(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    auto t0 = std::chrono::steady_clock::now();

    vmg::ModelProblem problem = vmg::manufactured_poisson({cfg.N});
    vmg::Hierarchy hier =
        vmg::build_hierarchy(problem, cfg.coarsest_N, cfg.alpha);
    vmg::CycleParams params = cycle_params(cfg);
    params.epsilon = cfg.eps * vmg::norm2(problem.source);

    auto [u, report] =
        vmg::img_solve(hier, vmg::zeros(problem.source.size()),
                       problem.source, params);

    json extra;
    extra["epsilon_absolute"] = params.epsilon;
    if (!report.residual_history.empty() &&
        report.residual_history.size() >= 5) {
        extra["asymptotic_factor"] =
            vmg::asymptotic_convergence_factor(report.residual_history);
    }
    emit_report(cfg, "solve", report, extra);
    vmg::write_vector_binary(u, cfg.out + "/solution.f64");

    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    std::cerr << "solve: " << report.cycles_executed << " cycles, "
              << report.work_units << " WU, " << dt.count() << " s\n";
    return report.converged ? 0 : 1;
}

int cmd_fmg(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    auto t0 = std::chrono::steady_clock::now();

    vmg::ModelProblem problem = vmg::manufactured_poisson({cfg.N});
    vmg::Hierarchy hier =
        vmg::build_hierarchy(problem, cfg.coarsest_N, cfg.alpha);
    vmg::CycleParams params = cycle_params(cfg);

    auto sources = vmg::restricted_sources(hier, problem.source);
    auto [u, report] = vmg::fmg_solve(hier, sources, params);

    vmg::Vector u_ref = reference_solution(hier, problem.source);
    vmg::Vector u_exact = vmg::sample_exact(problem);

    vmg::Vector solver_err = u;
    vmg::axpy(-1.0, u_ref, solver_err);
    vmg::Vector disc_err = u_ref;
    vmg::axpy(-1.0, u_exact, disc_err);

    const vmg::CsrMatrix& L = hier.finest().op;
    json extra;
    extra["energy_error_vs_discrete"] = vmg::energy_norm(L, solver_err);
    extra["discretization_energy_error"] = vmg::energy_norm(L, disc_err);
    extra["work_units_per_unknown"] =
        report.work_units * L.nnz() / problem.grid.n_unknowns();
    emit_report(cfg, "fmg", report, extra);
    vmg::write_vector_binary(u, cfg.out + "/solution.f64");

    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    std::cerr << "fmg: " << report.work_units << " WU, " << dt.count()
              << " s\n";
    return 0;
}

vmg::Vector sampled_mode(const vmg::GridSpec& grid, int p, int q) {
    vmg::Vector w(grid.n_unknowns());
    int m = grid.interior_points_per_side();
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            w[grid.index(ix, iy)] =
                std::sin(p * std::numbers::pi * grid.x(ix)) *
                std::sin(q * std::numbers::pi * grid.y(iy));
        }
    }
    return w;
}

json smoothness_json(const vmg::SmoothnessReport& rep) {
    json j;
    j["m_weak"] = rep.m_weak;
    j["m_strong"] = rep.m_strong;
    j["xi"] = rep.xi;
    j["chi"] = rep.chi;
    j["euclidean_factor_sq"] = rep.euclidean_factor_sq;
    j["energy_factor_sq"] = rep.energy_factor_sq;
    return j;
}

int cmd_diagnose(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);

    vmg::ModelProblem problem = vmg::manufactured_poisson({cfg.N});
    vmg::Hierarchy hier =
        vmg::build_hierarchy(problem, cfg.coarsest_N, cfg.alpha);
    const vmg::Level& finest = hier.finest();
    int m = finest.grid.interior_points_per_side();

    json j = config_json(cfg, "diagnose");
    j["schema"] = 1;

    j["samples"]["lowest_mode"] = smoothness_json(
        vmg::relaxation_identity_check(finest, sampled_mode(finest.grid, 1, 1)));
    j["samples"]["highest_mode"] = smoothness_json(
        vmg::relaxation_identity_check(finest, sampled_mode(finest.grid, m, m)));
    j["samples"]["figure1_guess"] = smoothness_json(
        vmg::relaxation_identity_check(
            finest, vmg::figure1_initial_guess(finest.grid, cfg.seed)));

    // Identity audit over seeded random vectors.
    vmg::SplitMix64 rng(cfg.seed);
    int audits = 1000;
    int failures = 0;
    for (int k = 0; k < audits; ++k) {
        vmg::Vector e(finest.grid.n_unknowns());
        for (double& x : e) x = rng.next_uniform() - 0.5;
        auto rep = vmg::relaxation_identity_check(finest, e);
        double eu = 1.0 - (1.0 + rep.xi) * rep.m_weak;
        double en = 1.0 - (1.0 + rep.chi) * rep.m_strong;
        bool ok = std::abs(rep.euclidean_factor_sq - eu) <= 1e-10 &&
                  std::abs(rep.energy_factor_sq - en) <= 1e-10 &&
                  rep.xi >= 0.0 && rep.xi < 1.0 && rep.chi >= 0.0 &&
                  rep.chi < 1.0 && rep.m_weak <= rep.m_strong + 1e-12;
        if (!ok) ++failures;
    }
    j["identity_audit"]["samples"] = audits;
    j["identity_audit"]["failures"] = failures;

    // Saturation fit from dense-solved manufactured problems on coarse
    // levels.
    std::vector<double> errs, meshes;
    for (int n = 8; n <= std::min(cfg.N, 64); n *= 2) {
        vmg::ModelProblem p = vmg::manufactured_poisson({n});
        vmg::Vector u = vmg::dense_solve(p.matrix, p.source);
        vmg::Vector diff = u;
        vmg::axpy(-1.0, vmg::sample_exact(p), diff);
        errs.push_back(vmg::energy_norm(p.matrix, diff));
        meshes.push_back(p.grid.mesh_size_h());
    }
    if (errs.size() >= 3) {
        auto fit = vmg::estimate_saturation(errs, meshes);
        j["saturation"]["C"] = fit.C;
        j["saturation"]["k"] = fit.k;
        j["saturation"]["levels_used"] = fit.levels_used;
        j["saturation"]["residual_of_fit"] = fit.residual_of_fit;
    }

    // Per-level convergence factors from short V-cycle runs on g = 0.
    json level_factors = json::array();
    for (int l = 0; l + 1 < hier.n_levels(); ++l) {
        vmg::Hierarchy sub;
        sub.alpha = hier.alpha;
        sub.levels.assign(hier.levels.begin() + l, hier.levels.end());
        sub.coarsest_factor.emplace(sub.coarsest().op);
        vmg::CycleParams params = cycle_params(cfg);
        vmg::Vector v = vmg::figure1_initial_guess(sub.finest().grid, cfg.seed);
        vmg::Vector g = vmg::zeros(v.size());
        std::vector<double> history = {vmg::norm2(v)};
        for (int c = 0; c < 12; ++c) {
            v = vmg::apply_cycle(sub, std::move(v), g, params);
            history.push_back(vmg::norm2(v));
        }
        json entry;
        entry["N"] = sub.finest().grid.N;
        entry["factor"] = vmg::asymptotic_convergence_factor(history);
        level_factors.push_back(entry);
    }
    j["level_factors"] = level_factors;

    vmg::dump_hierarchy(hier, cfg.out + "/hierarchy");
    write_json(j, cfg.out + "/diagnose.json");
    std::cerr << "diagnose: " << failures << "/" << audits
              << " identity audit failures\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational geometric multigrid solver for SPD systems"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--n", cfg.N, "Fine grid N (mesh size 1/N)");
        cmd->add_option("--coarsest-n", cfg.coarsest_N, "Coarsest grid N");
        cmd->add_option("--cycle", cfg.cycle, "Cycle kind")
            ->check(CLI::IsMember({"tg", "v", "w"}));
        cmd->add_option("--mu", cfg.mu, "Pre-relaxation sweeps");
        cmd->add_option("--nu", cfg.nu, "Post-relaxation sweeps");
        cmd->add_option("--q", cfg.q, "FMG cycles per level");
        cmd->add_option("--eps", cfg.eps, "Relative residual tolerance");
        cmd->add_option("--seed", cfg.seed, "RNG seed");
        cmd->add_option("--smoother", cfg.smoother, "Smoother kind")
            ->check(CLI::IsMember({"richardson", "jacobi", "optimal"}));
        cmd->add_option("--alpha", cfg.alpha, "Restriction scaling");
        cmd->add_option("--out", cfg.out, "Output directory");
        cmd->add_option("--format", cfg.format, "Report format")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--threads", cfg.threads, "SpMV threads");
        cmd->add_flag("--deterministic", cfg.deterministic,
                      "Force sequential SpMV");
    };

    CLI::App* solve = app.add_subcommand("solve", "Iterative multigrid solve");
    CLI::App* fmg = app.add_subcommand("fmg", "Full multigrid solve");
    CLI::App* diagnose =
        app.add_subcommand("diagnose", "Smoothness and saturation reports");
    CLI::App* snapshot =
        app.add_subcommand("snapshot", "Relaxation error snapshots");
    for (CLI::App* cmd : {solve, fmg, diagnose, snapshot}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(cfg);
        if (fmg->parsed()) return cmd_fmg(cfg);
        if (diagnose->parsed()) return cmd_diagnose(cfg);
        if (snapshot->parsed()) return cmd_snapshot(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
