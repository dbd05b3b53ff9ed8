#include "agentseg/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "agentseg/admm.hpp"
#include "agentseg/cluster.hpp"
#include "agentseg/dal.hpp"
#include "agentseg/error.hpp"
#include "agentseg/parallel.hpp"
#include "agentseg/pgm.hpp"

namespace agentseg {

void RunConfig::validate() const {
    if (!(alpha > 0.0)) throw ParameterError("--alpha must be positive");
    if (!(rho > 0.0)) throw ParameterError("--rho must be positive");
    if (!(gamma > 0.0)) throw ParameterError("--gamma must be positive");
    steps_for_horizon(horizon, dt);
    ControlBounds::square(eps_min, eps_max).validate();
    if (eps_init < eps_min || eps_init > eps_max) {
        throw ParameterError("--eps-init must lie within [--eps-min, --eps-max]");
    }
    if (!(eta > 0.0)) throw ParameterError("--eta must be positive");
    if (max_iters < -1) throw ParameterError("--max-iters must be non-negative");
    if (max_outer < 0) throw ParameterError("--max-outer must be non-negative");
    if (!(primal_tol > 0.0)) throw ParameterError("--primal-tol must be positive");
    if (threads < 0) throw ParameterError("--threads must be non-negative");
    if (!(cluster_gap > 0.0)) throw ParameterError("--cluster-gap must be positive");
}

ParseOutcome parse_run_config(int argc, const char* const* argv, std::ostream& out,
                              std::ostream& err) {
    RunConfig cfg;
    std::string input;
    std::string out_dir = cfg.out_dir.string();
    std::string solver = "admm";
    std::string kernel = "wendland";

    CLI::App app{"Image quantization by optimal control of pixel-agent consensus dynamics"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.add_option("--input", input, "input image (8-bit PGM, P2 or P5)")->required();
    app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    app.add_option("--solver", solver, "dal | admm")
        ->check(CLI::IsMember({"dal", "admm"}))
        ->capture_default_str();
    app.add_option("--alpha", cfg.alpha, "fidelity weight")->capture_default_str();
    app.add_option("--rho", cfg.rho, "ADMM regularisation")->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "ADMM dual ascent step")->capture_default_str();
    app.add_option("--T", cfg.horizon, "time horizon")->capture_default_str();
    app.add_option("--dt", cfg.dt, "Euler step; must divide T")->capture_default_str();
    app.add_option("--eps-min", cfg.eps_min, "lower control bound (both axes)")->capture_default_str();
    app.add_option("--eps-max", cfg.eps_max, "upper control bound (both axes)")->capture_default_str();
    app.add_option("--eps-init", cfg.eps_init, "initial control (both axes)")->capture_default_str();
    app.add_option("--eta", cfg.eta, "relative stationarity tolerance")->capture_default_str();
    app.add_option("--max-iters", cfg.max_iters,
                   "DAL iterations (per outer step for admm); default 500 dal / 50 admm");
    app.add_option("--max-outer", cfg.max_outer, "ADMM outer iterations")->capture_default_str();
    app.add_option("--primal-tol", cfg.primal_tol, "ADMM primal residual tolerance")
        ->capture_default_str();
    app.add_option("--kernel", kernel, "wendland | paper")
        ->check(CLI::IsMember({"wendland", "paper"}))
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "worker threads (0 = OpenMP default)")
        ->capture_default_str();
    app.add_option("--cluster-gap", cfg.cluster_gap, "intensity gap separating clusters")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {std::nullopt, code == 0 ? exit_ok : exit_config};
    }

    cfg.input = input;
    cfg.out_dir = out_dir;
    cfg.solver = solver == "dal" ? SolverKind::dal : SolverKind::admm;
    cfg.kernel = parse_kernel_kind(kernel);
    return {cfg, exit_ok};
}

namespace {

struct SolveResult {
    ControlTrajectory control;
    ScalarField final_state;
    std::vector<double> costs;
    std::vector<double> residuals;  // admm only
    int iterations = 0;
    std::string stop;
};

SolveResult solve(const ImageGrid& image, const RunConfig& cfg) {
    DalConfig dal;
    dal.alpha = cfg.alpha;
    dal.dt = cfg.dt;
    dal.steps = steps_for_horizon(cfg.horizon, cfg.dt);
    dal.bounds = ControlBounds::square(cfg.eps_min, cfg.eps_max);
    dal.eps_init = {cfg.eps_init, cfg.eps_init};
    dal.eta = cfg.eta;
    dal.kernel = cfg.kernel;

    SolveResult out;
    if (cfg.solver == SolverKind::dal) {
        dal.max_iters = cfg.max_iters >= 0 ? cfg.max_iters : 500;
        DalReport r = dal_solve(image, dal);
        out.control = std::move(r.final_control);
        out.final_state = r.final_state.terminal();
        out.costs = std::move(r.cost_history);
        out.iterations = r.iterations;
        out.stop = r.stop_reason == DalStopReason::stationarity ? "stationarity" : "max_iters";
        return out;
    }

    AdmmConfig admm;
    dal.max_iters = cfg.max_iters >= 0 ? cfg.max_iters : 50;
    admm.inner = dal;
    admm.rho = cfg.rho;
    admm.gamma = cfg.gamma;
    admm.max_outer = cfg.max_outer;
    admm.primal_tol = cfg.primal_tol;
    AdmmReport r = admm_solve(image, admm);
    out.control = std::move(r.final_control);
    out.final_state = r.final_state.terminal();
    out.costs = std::move(r.objective_history);
    out.residuals = std::move(r.primal_residual_history);
    out.iterations = r.outer_iterations;
    out.stop = r.stop_reason == AdmmStopReason::primal_tolerance ? "primal_tolerance" : "max_outer";
    return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PgmError(PgmError::Kind::io, "cannot write " + path.string());
    f << std::setprecision(17);
    return f;
}

void write_outputs(const RunConfig& cfg, const ImageGrid& input, const SolveResult& result,
                   const ClusterReport& clusters) {
    const auto& dir = cfg.out_dir;

    ScalarField clamped = result.final_state;
    for (double& v : clamped.values()) v = std::clamp(v, 0.0, 1.0);
    write_pgm_file(dir / "final.pgm", ImageGrid(std::move(clamped)));

    {
        auto f = open_output(dir / "controls.csv");
        f << "t,eps_x,eps_c\n";
        for (std::size_t m = 0; m < result.control.steps(); ++m) {
            f << static_cast<double>(m) * result.control.dt << "," << result.control.pairs[m].eps_x
              << "," << result.control.pairs[m].eps_c << "\n";
        }
    }
    {
        auto f = open_output(dir / "cost_history.csv");
        const bool admm = cfg.solver == SolverKind::admm;
        f << (admm ? "iteration,cost,primal_residual\n" : "iteration,cost\n");
        for (std::size_t k = 0; k < result.costs.size(); ++k) {
            f << k << "," << result.costs[k];
            if (admm) f << "," << result.residuals[k];
            f << "\n";
        }
    }
    {
        auto f = open_output(dir / "pixels.csv");
        f << "x,y,c_initial,c_final\n";
        for (int j = 0; j < input.height(); ++j) {
            for (int i = 0; i < input.width(); ++i) {
                f << i << "," << j << "," << input(i, j) << "," << result.final_state(i, j) << "\n";
            }
        }
    }
    {
        auto f = open_output(dir / "clusters.txt");
        write_cluster_report(f, clusters);
        if (!f) throw PgmError(PgmError::Kind::io, "write failed in " + dir.string());
    }
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const Error& e) {
        err << "configuration error: " << e.what() << "\n";
        return exit_config;
    }
    set_thread_count(cfg.threads);

    ImageGrid image;
    try {
        image = read_pgm_file(cfg.input);
    } catch (const Error& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        std::filesystem::create_directories(cfg.out_dir);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "output error: " << e.what() << "\n";
        return exit_output;
    }

    const auto start = std::chrono::steady_clock::now();
    SolveResult result;
    try {
        result = solve(image, cfg);
    } catch (const Error& e) {
        err << "solver error: " << e.what() << "\n";
        return exit_solver;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const ClusterReport clusters = cluster_count(result.final_state, cfg.cluster_gap);
    try {
        write_outputs(cfg, image, result, clusters);
    } catch (const Error& e) {
        err << "output error: " << e.what() << "\n";
        return exit_output;
    }

    std::ostringstream line;
    line << std::setprecision(6) << "solver=" << (cfg.solver == SolverKind::dal ? "dal" : "admm")
         << " iterations=" << result.iterations << " stop=" << result.stop
         << " cost=" << (result.costs.empty() ? 0.0 : result.costs.back());
    if (!result.residuals.empty()) line << " residual=" << result.residuals.back();
    line << " clusters=" << clusters.count() << " seconds=" << std::setprecision(3) << seconds;
    out << line.str() << "\n";
    return exit_ok;
}

} // namespace agentseg
