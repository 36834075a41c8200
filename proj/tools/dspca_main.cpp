// Batch front-end: every subcommand reads files, writes plot-ready CSV plus
// a JSON summary, and records its resolved configuration next to the outputs
// so a run can be reproduced from the artifact directory alone.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dspca/analysis.hpp"
#include "dspca/bench.hpp"
#include "dspca/data.hpp"
#include "dspca/errors.hpp"
#include "dspca/io.hpp"
#include "dspca/lapack.hpp"
#include "dspca/solver.hpp"
#include "dspca/spca.hpp"
#include "dspca/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNumericalFailure = 3;
constexpr int kExitNotConverged = 4;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s,
                                         const char* flag) {
    std::vector<std::size_t> out;
    for (const std::string& item : split_list(s)) {
        std::size_t v = 0;
        const auto [ptr, ec] =
            std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || v == 0) {
            throw dspca::InvalidInputError(std::string(flag) +
                                           ": bad entry '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<dspca::Backend> parse_backend_list(const std::string& s) {
    std::vector<dspca::Backend> out;
    for (const std::string& item : split_list(s)) {
        out.push_back(dspca::parse_backend(item));
    }
    return out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw dspca::InvalidInputError("cannot open '" + path.string() +
                                       "' for writing");
    }
    out << j.dump(2) << '\n';
}

fs::path prepare_out_dir(const std::string& out) {
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

dspca::Partition partition_from_labels(const std::vector<std::string>& labels) {
    dspca::Partition p;
    std::vector<std::string> seen;
    for (const std::string& l : labels) {
        std::size_t id = seen.size();
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (seen[i] == l) {
                id = i;
                break;
            }
        }
        if (id == seen.size()) {
            seen.push_back(l);
        }
        p.assignments.push_back(static_cast<int>(id));
    }
    p.num_clusters = static_cast<int>(seen.size());
    return p;
}

// ---------------------------------------------------------------------------
// Shared input plumbing for solve/factors.

struct CommonSolveArgs {
    std::string input;
    std::string out = ".";
    bool covariance = false;
    double epsilon = 0.1;
    std::optional<double> delta;
    std::string backend = "partial";
    std::size_t max_iterations = 50000;
    std::size_t top_genes = 0;
    std::string labels;
    double threshold = 1e-3;
    std::uint64_t seed = 42;
};

struct LoadedInput {
    dspca::SymmetricMatrix A;
    std::vector<std::string> gene_ids;
    std::optional<dspca::ExpressionDataset> dataset; // set for expression input
};

LoadedInput load_input(const CommonSolveArgs& a) {
    LoadedInput in;
    if (a.covariance || dspca::io::is_covariance_binary(a.input)) {
        if (a.top_genes > 0) {
            throw dspca::InvalidInputError(
                "--top-genes needs an expression dataset, not a covariance");
        }
        dspca::io::CovarianceInput cov =
            dspca::io::load_covariance_auto(a.input);
        in.A = std::move(cov.matrix);
        in.gene_ids = std::move(cov.gene_ids);
    } else {
        dspca::ExpressionDataset raw = dspca::load_expression_csv(a.input);
        if (!a.labels.empty()) {
            raw.sample_labels = dspca::io::load_labels(a.labels);
            if (raw.sample_labels.size() != raw.samples()) {
                throw dspca::InvalidInputError(
                    "--labels: " + std::to_string(raw.sample_labels.size()) +
                    " labels for " + std::to_string(raw.samples()) +
                    " samples");
            }
        }
        dspca::ExpressionDataset prep = dspca::preprocess_log_zscore(raw);
        if (a.top_genes > 0 && a.top_genes < prep.genes()) {
            prep = dspca::select_top_variance_genes(prep, a.top_genes);
        }
        in.A = dspca::covariance(prep);
        in.gene_ids = prep.gene_ids;
        in.dataset = std::move(prep);
    }
    if (in.gene_ids.empty()) {
        for (std::size_t j = 0; j < in.A.dim(); ++j) {
            in.gene_ids.push_back("g" + std::to_string(j + 1));
        }
    }
    return in;
}

dspca::SolverConfig make_solver_config(const CommonSolveArgs& a) {
    dspca::SolverConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.delta = a.delta;
    cfg.backend = dspca::parse_backend(a.backend);
    cfg.max_iterations = a.max_iterations;
    return cfg;
}

json solver_config_json(const CommonSolveArgs& a, std::size_t n) {
    const double mu =
        a.epsilon / (2.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
    json j;
    j["input"] = a.input;
    j["covariance"] = a.covariance;
    j["epsilon"] = a.epsilon;
    j["delta"] = a.delta ? *a.delta : a.epsilon / 4.0;
    j["mu"] = mu;
    j["backend"] = a.backend;
    j["max_iterations"] = a.max_iterations;
    j["top_genes"] = a.top_genes;
    j["labels"] = a.labels;
    j["threshold"] = a.threshold;
    j["seed"] = a.seed;
    j["out"] = a.out;
    j["dimension"] = n;
    return j;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs : CommonSolveArgs {
    double rho = 0.0;
};

int cmd_solve(const SolveArgs& a) {
    LoadedInput in = load_input(a);
    const fs::path dir = prepare_out_dir(a.out);

    json config = solver_config_json(a, in.A.dim());
    config["command"] = "solve";
    config["rho"] = a.rho;
    write_json(dir / "resolved_config.json", config);

    const dspca::SolverConfig cfg = make_solver_config(a);
    const dspca::SolveResult res = dspca::solve({in.A, a.rho}, cfg);
    const dspca::SparseFactor factor =
        dspca::extract_factor(res.X_star, in.A, a.threshold, a.rho);

    dspca::io::write_factor_csv((dir / "factor.csv").string(),
                                dspca::rank_features(factor, in.gene_ids));
    dspca::io::write_trace_csv((dir / "trace.csv").string(), res.trace);

    json summary;
    summary["gap"] = res.gap;
    summary["iterations"] = res.iterations;
    summary["converged"] = res.converged;
    summary["explained_variance"] = factor.explained_variance_fraction;
    summary["nonzeros"] = factor.cardinality;
    summary["rho"] = a.rho;
    summary["epsilon"] = a.epsilon;
    summary["dual_value"] = res.dual_value;
    summary["primal_value"] = res.primal_value;
    write_json(dir / "summary.json", summary);

    std::cout << "solve: gap=" << dspca::io::format_double(res.gap)
              << " iterations=" << res.iterations
              << " nonzeros=" << factor.cardinality
              << " converged=" << (res.converged ? "yes" : "no") << '\n';
    return res.converged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// factors

struct FactorsArgs : CommonSolveArgs {
    std::string k_targets;
    std::size_t max_evals = 24;
};

int cmd_factors(const FactorsArgs& a) {
    const std::vector<std::size_t> targets =
        parse_size_list(a.k_targets, "--k-targets");
    LoadedInput in = load_input(a);
    const fs::path dir = prepare_out_dir(a.out);

    json config = solver_config_json(a, in.A.dim());
    config["command"] = "factors";
    config["k_targets"] = targets;
    config["max_evals"] = a.max_evals;
    write_json(dir / "resolved_config.json", config);

    const dspca::SolverConfig cfg = make_solver_config(a);
    dspca::RhoSearchConfig search;
    search.max_evals = a.max_evals;
    search.threshold = a.threshold;
    const dspca::FactorSequence seq =
        dspca::compute_factors(in.A, targets, cfg, search);

    bool all_converged = true;
    json factor_list = json::array();
    for (std::size_t i = 0; i < seq.factors.size(); ++i) {
        const dspca::SparseFactor& f = seq.factors[i];
        const dspca::SolveResult& s = seq.solves[i];
        const std::string tag = std::to_string(i + 1);
        dspca::io::write_factor_csv((dir / ("factor_" + tag + ".csv")).string(),
                                    dspca::rank_features(f, in.gene_ids));
        dspca::io::write_trace_csv((dir / ("trace_" + tag + ".csv")).string(),
                                   s.trace);
        json jf;
        jf["k_target"] = targets[i];
        jf["cardinality"] = f.cardinality;
        jf["explained_variance"] = f.explained_variance_fraction;
        jf["rho"] = f.rho_used;
        jf["approximate_cardinality"] = f.approximate_cardinality;
        jf["degenerate"] = f.degenerate;
        jf["gap"] = s.gap;
        jf["iterations"] = s.iterations;
        jf["converged"] = s.converged;
        factor_list.push_back(jf);
        all_converged = all_converged && s.converged;
    }

    double total = 0.0;
    for (const dspca::SparseFactor& f : seq.factors) {
        total += f.explained_variance_fraction;
    }
    json summary;
    summary["factors"] = factor_list;
    summary["total_explained_variance"] = total;
    summary["converged"] = all_converged;
    write_json(dir / "summary.json", summary);

    if (in.dataset) {
        const dspca::Embedding emb = dspca::project(*in.dataset, seq.factors);
        dspca::io::write_embedding_csv((dir / "embedding.csv").string(), emb,
                                       in.dataset->sample_labels);
    }

    std::cout << "factors: " << seq.factors.size()
              << " factor(s), total explained variance "
              << dspca::io::format_double(total)
              << (all_converged ? "" : " (some solves did not converge)")
              << '\n';
    return all_converged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterArgs {
    std::string input;
    std::string labels;
    std::string out = ".";
    int k = 2;
    int restarts = 10;
    std::uint64_t seed = 42;
};

int cmd_cluster(const ClusterArgs& a) {
    const dspca::io::EmbeddingInput emb =
        dspca::io::load_embedding_csv(a.input);
    std::vector<std::string> truth = emb.labels;
    if (!a.labels.empty()) {
        truth = dspca::io::load_labels(a.labels);
    }
    if (!truth.empty() && truth.size() != emb.coordinates.rows()) {
        throw dspca::InvalidInputError(
            "cluster: " + std::to_string(truth.size()) + " labels for " +
            std::to_string(emb.coordinates.rows()) + " samples");
    }
    const fs::path dir = prepare_out_dir(a.out);

    json config;
    config["command"] = "cluster";
    config["input"] = a.input;
    config["labels"] = a.labels;
    config["k"] = a.k;
    config["restarts"] = a.restarts;
    config["seed"] = a.seed;
    config["out"] = a.out;
    write_json(dir / "resolved_config.json", config);

    const dspca::KmeansResult km =
        dspca::kmeans_detailed(emb.coordinates, a.k, a.seed, a.restarts);
    dspca::io::write_assignments_csv((dir / "assignments.csv").string(),
                                     km.partition);
    const dspca::SeparationReport sep =
        dspca::separation(emb.coordinates, km.partition);

    json metrics;
    metrics["samples"] = emb.coordinates.rows();
    metrics["clusters"] = a.k;
    metrics["wcss"] = km.wcss;
    metrics["min_separation"] = sep.min_distance;
    if (!truth.empty()) {
        metrics["rand_index"] =
            dspca::rand_index(km.partition, partition_from_labels(truth));
    }
    write_json(dir / "metrics.json", metrics);

    std::cout << "cluster: wcss=" << dspca::io::format_double(km.wcss)
              << " min_separation="
              << dspca::io::format_double(sep.min_distance);
    if (metrics.contains("rand_index")) {
        std::cout << " rand_index="
                  << dspca::io::format_double(
                         metrics["rand_index"].get<double>());
    }
    std::cout << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    std::string dims = "50,100,200";
    std::string backends = "full,pade,partial";
    double rho = 1.0;
    double epsilon = 0.1;
    std::size_t max_iterations = 200;
    std::uint64_t seed = 42;
    bool parallel = false;
    std::string out = ".";
};

int cmd_bench(const BenchArgs& a) {
    dspca::BenchConfig cfg;
    cfg.dims = parse_size_list(a.dims, "--dims");
    cfg.backends = parse_backend_list(a.backends);
    cfg.rho = a.rho;
    cfg.epsilon = a.epsilon;
    cfg.max_iterations = a.max_iterations;
    cfg.seed = a.seed;
    cfg.parallel = a.parallel;
    const fs::path dir = prepare_out_dir(a.out);

    json config;
    config["command"] = "bench";
    config["dims"] = cfg.dims;
    config["backends"] = a.backends;
    config["rho"] = a.rho;
    config["epsilon"] = a.epsilon;
    config["max_iterations"] = a.max_iterations;
    config["seed"] = a.seed;
    config["parallel"] = a.parallel;
    config["out"] = a.out;
    write_json(dir / "resolved_config.json", config);

    const std::vector<dspca::BenchCell> cells = dspca::run_bench(cfg);
    dspca::write_bench_csv((dir / "bench.csv").string(), cells);
    for (const dspca::BenchCell& c : cells) {
        std::cout << "bench: dim=" << c.dim << " backend=" << to_string(c.backend)
                  << " seconds=" << dspca::io::format_double(c.seconds)
                  << " eig_fraction="
                  << dspca::io::format_double(c.avg_eig_fraction) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// oracle-check

struct OracleArgs {
    std::size_t n = 8;
    std::size_t k = 0; // 0 = every k in [1, n]
    std::size_t trials = 50;
    double epsilon = 0.1;
    double rho_fraction = 0.25;
    std::uint64_t seed = 7;
    std::string out = ".";
};

int cmd_oracle_check(const OracleArgs& a) {
    if (a.n == 0 || a.trials == 0) {
        throw dspca::InvalidInputError("oracle-check: n and trials must be >= 1");
    }
    if (a.k > a.n) {
        throw dspca::InvalidInputError("oracle-check: k exceeds n");
    }
    const fs::path dir = prepare_out_dir(a.out);

    json config;
    config["command"] = "oracle-check";
    config["n"] = a.n;
    config["k"] = a.k;
    config["trials"] = a.trials;
    config["epsilon"] = a.epsilon;
    config["rho_fraction"] = a.rho_fraction;
    config["seed"] = a.seed;
    config["out"] = a.out;
    write_json(dir / "resolved_config.json", config);

    std::ofstream report(dir / "oracle_check.csv");
    if (!report) {
        throw dspca::InvalidInputError("oracle-check: cannot write report");
    }
    report << "trial,k,rho,oracle_value,relaxation_primal,relaxation_dual,pass\n";

    dspca::SolverConfig cfg;
    cfg.epsilon = a.epsilon;
    cfg.backend = dspca::Backend::full;
    cfg.max_iterations = 20000;

    std::size_t checks = 0;
    std::size_t failures = 0;
    auto record = [&](std::size_t trial, std::size_t k, double rho,
                      double oracle, const dspca::SolveResult& res,
                      bool pass) {
        report << trial << ',' << k << ',' << dspca::io::format_double(rho)
               << ',' << dspca::io::format_double(oracle) << ','
               << dspca::io::format_double(res.primal_value) << ','
               << dspca::io::format_double(res.dual_value) << ','
               << (pass ? 1 : 0) << '\n';
        ++checks;
        if (!pass) {
            ++failures;
        }
    };

    for (std::size_t t = 0; t < a.trials; ++t) {
        const dspca::SymmetricMatrix A =
            dspca::synthetic::wishart_covariance(a.n, a.n, a.seed + t);
        const double lam1 = dspca::lapack::sym_eigenvalues(A)[0];

        // rho -> 0: the relaxation collapses onto lambda_max.
        const dspca::SolveResult res0 = dspca::solve({A, 0.0}, cfg);
        record(t, a.n, 0.0, lam1, res0,
               std::fabs(res0.dual_value - lam1) <= a.epsilon);

        const double rho = a.rho_fraction * A.max_abs();
        for (std::size_t k = a.k == 0 ? 1 : a.k;
             k <= (a.k == 0 ? a.n : a.k); ++k) {
            const auto [x, value] = dspca::brute_force_oracle(A, k);
            double l1 = 0.0;
            for (const double xi : x) {
                l1 += std::fabs(xi);
            }
            // Penalized value of the rank-one X = x x^T the oracle implies.
            const double vec_value = value - rho * l1 * l1;
            const dspca::SolveResult res = dspca::solve({A, rho}, cfg);
            record(t, k, rho, vec_value, res,
                   res.dual_value >= vec_value - 1e-8);
        }
    }

    std::cout << "oracle-check: " << (checks - failures) << "/" << checks
              << " checks passed\n";
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// overlap

struct OverlapArgs {
    std::string factor;
    std::string external;
    std::string top_m; // empty = the factor's own size
    std::string out = ".";
};

// factor.csv rows are already ordered by |loading| descending.
std::vector<std::string> load_factor_ids(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw dspca::InvalidInputError("overlap: cannot open '" + path + "'");
    }
    std::vector<std::string> ids;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (first) {
            first = false; // header
            continue;
        }
        const std::size_t a = line.find(',');
        const std::size_t b = a == std::string::npos
                                  ? std::string::npos
                                  : line.find(',', a + 1);
        if (a == std::string::npos || b == std::string::npos) {
            throw dspca::InvalidInputError("overlap: malformed row '" + line +
                                           "' in '" + path + "'");
        }
        ids.push_back(line.substr(a + 1, b - a - 1));
    }
    if (ids.empty()) {
        throw dspca::InvalidInputError("overlap: '" + path + "' has no rows");
    }
    return ids;
}

int cmd_overlap(const OverlapArgs& a) {
    const std::vector<std::string> ours = load_factor_ids(a.factor);
    const std::vector<std::string> external =
        dspca::io::load_ranked_ids_csv(a.external);

    std::vector<std::size_t> ms;
    if (a.top_m.empty()) {
        ms.push_back(ours.size());
    } else {
        ms = parse_size_list(a.top_m, "--top-m");
    }

    std::vector<dspca::RankedFeature> ranked;
    for (std::size_t i = 0; i < ours.size(); ++i) {
        ranked.push_back({static_cast<int>(i + 1), i, ours[i], 0.0});
    }

    const fs::path dir = prepare_out_dir(a.out);
    json config;
    config["command"] = "overlap";
    config["factor"] = a.factor;
    config["external"] = a.external;
    config["top_m"] = ms;
    config["out"] = a.out;
    write_json(dir / "resolved_config.json", config);

    std::ofstream report(dir / "overlap.csv");
    if (!report) {
        throw dspca::InvalidInputError("overlap: cannot write report");
    }
    report << "m,shared,ours_total,external_total\n";
    for (const std::size_t m : ms) {
        const std::size_t shared = dspca::overlap_top_m(ranked, external, m);
        report << m << ',' << shared << ',' << ours.size() << ','
               << external.size() << '\n';
        std::cout << "overlap: top-" << m << " shared " << shared << " of "
                  << std::min(m, ours.size()) << '\n';
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse PCA by smoothed semidefinite optimization"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand(
        "solve", "One penalized solve: factor, trace, and summary files");
    solve->add_option("--input", sa.input, "Covariance or expression CSV/binary")
        ->required();
    solve->add_flag("--covariance", sa.covariance,
                    "Force covariance interpretation of a text input");
    solve->add_option("--rho", sa.rho, "Entrywise penalty")->required();
    solve->add_option("--epsilon", sa.epsilon, "Target duality gap");
    solve->add_option("--delta", sa.delta, "Gradient error budget");
    solve->add_option("--backend", sa.backend, "full|pade|partial");
    solve->add_option("--max-iterations", sa.max_iterations,
                      "Iteration cap before flagging non-convergence");
    solve->add_option("--top-genes", sa.top_genes,
                      "Keep only the m most variable genes");
    solve->add_option("--labels", sa.labels, "Sample label file");
    solve->add_option("--threshold", sa.threshold,
                      "Relative loading zero threshold");
    solve->add_option("--seed", sa.seed, "Random seed");
    solve->add_option("--out", sa.out, "Output directory");

    FactorsArgs fa;
    CLI::App* factors = app.add_subcommand(
        "factors", "Deflation sequence of sparse factors plus embedding");
    factors->add_option("--input", fa.input, "Covariance or expression CSV/binary")
        ->required();
    factors->add_flag("--covariance", fa.covariance,
                      "Force covariance interpretation of a text input");
    factors->add_option("--k-targets", fa.k_targets,
                        "Comma list of cardinality targets")
        ->required();
    factors->add_option("--epsilon", fa.epsilon, "Target duality gap");
    factors->add_option("--delta", fa.delta, "Gradient error budget");
    factors->add_option("--backend", fa.backend, "full|pade|partial");
    factors->add_option("--max-iterations", fa.max_iterations,
                        "Iteration cap before flagging non-convergence");
    factors->add_option("--top-genes", fa.top_genes,
                        "Keep only the m most variable genes");
    factors->add_option("--labels", fa.labels, "Sample label file");
    factors->add_option("--threshold", fa.threshold,
                        "Relative loading zero threshold");
    factors->add_option("--max-evals", fa.max_evals,
                        "Solver calls allowed per rho search");
    factors->add_option("--seed", fa.seed, "Random seed");
    factors->add_option("--out", fa.out, "Output directory");

    ClusterArgs ca;
    CLI::App* cluster = app.add_subcommand(
        "cluster", "K-means on an embedding plus agreement metrics");
    cluster->add_option("--input", ca.input, "Embedding CSV")->required();
    cluster->add_option("--labels", ca.labels,
                        "True label file (overrides the label column)");
    cluster->add_option("--k", ca.k, "Number of clusters")->required();
    cluster->add_option("--restarts", ca.restarts, "K-means restarts");
    cluster->add_option("--seed", ca.seed, "Random seed");
    cluster->add_option("--out", ca.out, "Output directory");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand(
        "bench", "Backend timing grid on synthetic covariances");
    bench->add_option("--dims", ba.dims, "Comma list of dimensions");
    bench->add_option("--backends", ba.backends, "Comma list of backends");
    bench->add_option("--rho", ba.rho, "Entrywise penalty");
    bench->add_option("--epsilon", ba.epsilon, "Target duality gap");
    bench->add_option("--max-iterations", ba.max_iterations,
                      "Iteration cap per cell");
    bench->add_option("--seed", ba.seed, "Random seed");
    bench->add_flag("--parallel", ba.parallel, "Run cells concurrently");
    bench->add_option("--out", ba.out, "Output directory");

    OracleArgs oa;
    CLI::App* oracle = app.add_subcommand(
        "oracle-check", "Relaxation dominance against the brute-force oracle");
    oracle->add_option("--n", oa.n, "Instance dimension (<= 25)");
    oracle->add_option("--k", oa.k, "Single cardinality (default: all)");
    oracle->add_option("--trials", oa.trials, "Random instances");
    oracle->add_option("--epsilon", oa.epsilon, "Target duality gap");
    oracle->add_option("--rho-fraction", oa.rho_fraction,
                       "Penalty as a fraction of max |A_ij|");
    oracle->add_option("--seed", oa.seed, "Random seed");
    oracle->add_option("--out", oa.out, "Output directory");

    OverlapArgs va;
    CLI::App* overlap = app.add_subcommand(
        "overlap", "Top-m gene overlap against an external ranking");
    overlap->add_option("--factor", va.factor, "factor.csv from solve/factors")
        ->required();
    overlap->add_option("--external", va.external, "rank,gene_id CSV")
        ->required();
    overlap->add_option("--top-m", va.top_m, "Comma list of m values");
    overlap->add_option("--out", va.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(sa);
        }
        if (factors->parsed()) {
            return cmd_factors(fa);
        }
        if (cluster->parsed()) {
            return cmd_cluster(ca);
        }
        if (bench->parsed()) {
            return cmd_bench(ba);
        }
        if (oracle->parsed()) {
            return cmd_oracle_check(oa);
        }
        if (overlap->parsed()) {
            return cmd_overlap(va);
        }
    } catch (const dspca::InvalidInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const dspca::DegenerateInputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const dspca::NumericalFailureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    return kExitOk;
}
