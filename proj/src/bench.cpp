#include "dspca/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "dspca/errors.hpp"
#include "dspca/io.hpp"
#include "dspca/synthetic.hpp"
#include "dspca/threading.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dspca {

namespace {

BenchCell run_cell(std::size_t dim, Backend backend, const BenchConfig& cfg) {
    const SymmetricMatrix A =
        synthetic::wishart_covariance(dim, dim, cfg.seed + dim);
    SolverConfig solver_cfg;
    solver_cfg.epsilon = cfg.epsilon;
    solver_cfg.backend = backend;
    solver_cfg.max_iterations = cfg.max_iterations;

    const auto t0 = std::chrono::steady_clock::now();
    const SolveResult res = solve(PenalizedProblem{A, cfg.rho}, solver_cfg);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();

    BenchCell cell;
    cell.dim = dim;
    cell.backend = backend;
    cell.seconds = seconds;
    cell.iterations = res.iterations;
    cell.converged = res.converged;
    double mean = 0.0;
    for (const int e : res.eigs_history) {
        mean += static_cast<double>(e);
    }
    mean /= static_cast<double>(res.eigs_history.size()) *
            static_cast<double>(dim);
    double var = 0.0;
    for (const int e : res.eigs_history) {
        const double frac = static_cast<double>(e) / static_cast<double>(dim);
        var += (frac - mean) * (frac - mean);
    }
    var /= static_cast<double>(res.eigs_history.size());
    cell.avg_eig_fraction = mean;
    cell.sd_eig_fraction = std::sqrt(var);
    return cell;
}

} // namespace

std::vector<BenchCell> run_bench(const BenchConfig& cfg) {
    if (cfg.dims.empty() || cfg.backends.empty()) {
        throw InvalidInputError("bench: needs at least one dim and backend");
    }
    struct Task {
        std::size_t dim;
        Backend backend;
    };
    std::vector<Task> tasks;
    for (const std::size_t dim : cfg.dims) {
        for (const Backend backend : cfg.backends) {
            tasks.push_back({dim, backend});
        }
    }
    std::vector<BenchCell> cells(tasks.size());
    if (cfg.parallel && threading::max_threads() > 1) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(tasks.size());
             ++t) {
            const Task& task = tasks[static_cast<std::size_t>(t)];
            cells[static_cast<std::size_t>(t)] =
                run_cell(task.dim, task.backend, cfg);
        }
    } else {
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            cells[t] = run_cell(tasks[t].dim, tasks[t].backend, cfg);
        }
    }
    return cells;
}

void write_bench_csv(const std::string& path,
                     const std::vector<BenchCell>& cells) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("bench csv: cannot open '" + path + "'");
    }
    out << "dim,backend,seconds,avg_eig_fraction,sd_eig_fraction\n";
    for (const BenchCell& c : cells) {
        out << c.dim << ',' << to_string(c.backend) << ','
            << io::format_double(c.seconds) << ','
            << io::format_double(c.avg_eig_fraction) << ','
            << io::format_double(c.sd_eig_fraction) << '\n';
    }
}

} // namespace dspca
