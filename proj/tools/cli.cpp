#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fneq/error.hpp"
#include "fneq/eval.hpp"
#include "fneq/io.hpp"
#include "fneq/neq.hpp"
#include "fneq/parallel.hpp"
#include "fneq/tuner.hpp"

namespace fneq::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs `fn`, mapping library errors to `code`. Usage errors always map to kUsage.
template <typename Fn>
int stage(std::ostream& err, int code, Fn&& fn) {
    try {
        fn();
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return code;
    }
}

VectorFormat resolve_format(const std::string& format, const std::filesystem::path& path) {
    if (format == "fvecs") {
        return VectorFormat::fvecs;
    }
    if (format == "csv") {
        return VectorFormat::csv;
    }
    return path.extension() == ".fvecs" ? VectorFormat::fvecs : VectorFormat::csv;
}

void require_divides(std::size_t dim, std::size_t parts, const char* what) {
    if (parts == 0 || dim % parts != 0) {
        throw UsageError(std::string(what) + " (" + std::to_string(parts) + ") must divide D = " +
                         std::to_string(dim));
    }
}

struct TrainOptions {
    std::string data;
    std::string format = "auto";
    std::string mode = "fuzzy2_neq";
    std::size_t m = 8;
    std::size_t m_prime = 1;
    std::size_t k_star = 16;
    double xi1 = 8.5;
    double xi2 = 9.1;
    double epsilon = 1e-5;
    std::size_t max_iters = 100;
    std::uint64_t seed = 0;
    std::string out;
};

void add_training_flags(CLI::App* cmd, TrainOptions& o) {
    cmd->add_option("--mode", o.mode, "pq | rq | neq_kmeans | fuzzy2_neq")->capture_default_str();
    cmd->add_option("--m", o.m, "Total codebooks, norm codebooks included")->capture_default_str();
    cmd->add_option("--m-prime", o.m_prime, "Norm codebooks (NEQ modes)")->capture_default_str();
    cmd->add_option("--k-star", o.k_star, "Codewords per codebook")->capture_default_str();
    cmd->add_option("--xi1", o.xi1, "Lower fuzziness exponent")->capture_default_str();
    cmd->add_option("--xi2", o.xi2, "Upper fuzziness exponent")->capture_default_str();
    cmd->add_option("--epsilon", o.epsilon, "Clustering stop threshold")->capture_default_str();
    cmd->add_option("--max-iters", o.max_iters, "Clustering iteration cap")->capture_default_str();
    cmd->add_option("--seed", o.seed)->capture_default_str();
}

IndexConfig make_index_config(const TrainOptions& o) {
    const auto mode = parse_index_mode(o.mode);
    if (!mode) {
        throw UsageError("unknown mode '" + o.mode + "'");
    }
    IndexConfig config;
    config.mode = *mode;
    config.m = o.m;
    config.m_prime = is_norm_explicit(*mode) ? o.m_prime : 0;
    config.k_star = o.k_star;
    config.params = ClusteringParams{}.with_xi(o.xi1, o.xi2);
    config.params.c = o.k_star;
    config.params.epsilon = o.epsilon;
    config.params.max_iters = o.max_iters;
    config.params.seed = o.seed;
    if (config.k_star == 0 || config.k_star > kMaxCodebookSize) {
        throw UsageError("--k-star must lie in [1, 65535]");
    }
    if (config.m == 0) {
        throw UsageError("--m must be positive");
    }
    if (is_norm_explicit(*mode) && (config.m_prime == 0 || config.m_prime >= config.m)) {
        throw UsageError("--m-prime must lie in [1, m - 1] for NEQ modes");
    }
    try {
        config.params.validate();
    } catch (const InvalidInputError& e) {
        throw UsageError(e.what());
    }
    return config;
}

void check_config_against(const IndexConfig& config, std::size_t dim) {
    if (config.mode != IndexMode::rq) {
        require_divides(dim, config.m - config.m_prime, "direction codebook count");
    }
}

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
    IndexConfig config;
    if (int rc = stage(err, kUsage, [&] { config = make_index_config(o); })) {
        return rc;
    }
    std::optional<Dataset> data;
    if (int rc = stage(err, kData, [&] {
            data.emplace(load_vectors(o.data, resolve_format(o.format, o.data)));
            check_config_against(config, data->dim());
        })) {
        return rc;
    }
    IndexArtifact index;
    if (int rc = stage(err, kTrain, [&] { index = train_neq(*data, config); })) {
        return rc;
    }
    if (int rc = stage(err, kData, [&] { save_index(o.out, index); })) {
        return rc;
    }
    const std::size_t sub_dim = index.mode == IndexMode::rq ? index.dim() : index.layout.sub_dim();
    out << "trained " << to_string(index.mode) << " index: n=" << index.size() << " D=" << index.dim()
        << " m=" << index.m() << " m_prime=" << index.m_prime() << " k_star=" << index.k_star
        << " D*=" << sub_dim << " -> " << o.out << '\n';
    return kOk;
}

struct QueryOptions {
    std::string index;
    std::string queries;
    std::string format = "auto";
    std::size_t k = 20;
    std::string metric = "ip";
};

int cmd_query(const QueryOptions& o, std::ostream& out, std::ostream& err) {
    RankingMetric metric = RankingMetric::inner_product;
    if (o.metric == "euclidean") {
        metric = RankingMetric::euclidean;
    } else if (o.metric != "ip") {
        err << "error: unknown metric '" << o.metric << "'\n";
        return kUsage;
    }
    IndexArtifact index;
    Matrix queries;
    if (int rc = stage(err, kData, [&] {
            index = load_index(o.index);
            queries = load_vectors(o.queries, resolve_format(o.format, o.queries));
            if (queries.rows() > 0 && queries.cols() != index.dim()) {
                throw InvalidInputError("queries have dimension " + std::to_string(queries.cols()) +
                                        ", index has " + std::to_string(index.dim()));
            }
        })) {
        return rc;
    }
    if (queries.rows() == 0) {
        return kOk;
    }
    if (o.k == 0 || o.k > index.size()) {
        err << "error: --k must lie in [1, " << index.size() << "]\n";
        return kUsage;
    }
    const QuerySet set(std::move(queries));
    std::vector<std::vector<ScoredItem>> results(set.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(set.size()); ++qi) {
        results[qi] = top_k(set.query(static_cast<std::size_t>(qi)), index, o.k, metric);
    }
    const auto old_precision = out.precision(17);
    out << "query_id,rank,item_id,score\n";
    for (std::size_t q = 0; q < results.size(); ++q) {
        for (std::size_t r = 0; r < results[q].size(); ++r) {
            out << q << ',' << r + 1 << ',' << results[q][r].id << ',' << results[q][r].score << '\n';
        }
    }
    out.precision(old_precision);
    return kOk;
}

struct EvalOptions {
    std::string index;
    std::string data;
    std::string queries;
    std::string format = "auto";
    std::size_t truth_depth = 20;
    std::size_t iterations = 10;
    std::vector<std::size_t> items;
    bool retrain = false;
    double xi1 = 8.5;
    double xi2 = 9.1;
    std::string method;
    std::string dataset_name = "dataset";
    std::string metrics_out;
    std::string curve_out;
    std::uint64_t seed = 0;
};

void write_to(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& emit) {
    if (path.empty()) {
        emit(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    emit(file);
}

int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
    IndexArtifact index;
    std::optional<Dataset> data;
    std::optional<QuerySet> queries;
    if (int rc = stage(err, kData, [&] {
            index = load_index(o.index);
            data.emplace(load_vectors(o.data, resolve_format(o.format, o.data)));
            queries.emplace(load_vectors(o.queries, resolve_format(o.format, o.queries)));
            if (data->size() != index.size() || data->dim() != index.dim()) {
                throw InvalidInputError("dataset does not match the index (n or D differ)");
            }
            if (queries->size() == 0) {
                throw InvalidInputError("query file is empty");
            }
            if (queries->dim() != index.dim()) {
                throw InvalidInputError("queries have dimension " + std::to_string(queries->dim()) + ", index has " +
                                        std::to_string(index.dim()));
            }
        })) {
        return rc;
    }

    const std::size_t n = data->size();
    EvalConfig config;
    config.method = o.method.empty() ? std::string(to_string(index.mode)) : o.method;
    config.dataset_name = o.dataset_name;
    config.truth_depth = o.truth_depth;
    config.item_counts = o.items.empty() ? default_item_counts(n) : o.items;
    std::ranges::sort(config.item_counts);
    for (std::size_t count : config.item_counts) {
        if (count == 0 || count > n) {
            err << "error: --items-list value " << count << " outside [1, " << n << "]\n";
            return kUsage;
        }
    }
    if (o.truth_depth == 0 || o.truth_depth > n) {
        err << "error: --truth-depth must lie in [1, " << n << "]\n";
        return kUsage;
    }
    if (o.iterations == 0) {
        err << "error: --iterations must be positive\n";
        return kUsage;
    }

    EvalReport report;
    if (o.retrain) {
        config.index.mode = index.mode;
        config.index.m = index.m();
        config.index.m_prime = index.m_prime();
        config.index.k_star = index.k_star;
        config.index.params = ClusteringParams{}.with_xi(o.xi1, o.xi2);
        config.index.params.c = index.k_star;
        if (int rc = stage(err, kTrain, [&] { report = bootstrap_eval(*data, *queries, config, o.iterations, o.seed); })) {
            return rc;
        }
    } else if (int rc = stage(err, kData,
                              [&] { report = evaluate_index(index, *data, *queries, config, o.iterations, o.seed); })) {
        return rc;
    }

    return stage(err, kData, [&] {
        const std::vector<EvalReport> reports{report};
        write_to(o.metrics_out, out, [&](std::ostream& s) { write_metrics_csv(s, reports); });
        if (!o.curve_out.empty()) {
            write_to(o.curve_out, out, [&](std::ostream& s) { write_curve_csv(s, report); });
        }
    });
}

struct TuneOptions {
    std::string data;
    std::string format = "auto";
    std::vector<double> bounds{1.5, 12.0};
    std::string out_grid;
    std::size_t grid_steps = 11;
    std::string objective = "mse";
    std::vector<double> target{8.5, 9.1};
    std::size_t m_dir = 8;
    std::size_t k_star = 16;
    double holdout = 0.2;
    std::size_t population = 10;
    std::size_t generations = 50;
    double tolerance = 0.01;
    std::size_t max_iters = 100;
    std::uint64_t seed = 0;
};

int cmd_tune(const TuneOptions& o, std::ostream& out, std::ostream& err) {
    GAConfig ga;
    ga.population = o.population;
    ga.max_generations = o.generations;
    ga.tolerance = o.tolerance;
    ga.lower_bound = o.bounds[0];
    ga.upper_bound = o.bounds[1];
    ga.seed = o.seed;
    if (int rc = stage(err, kUsage, [&] {
            try {
                ga.validate();
            } catch (const InvalidInputError& e) {
                throw UsageError(e.what());
            }
            if (o.objective != "mse" && o.objective != "quadratic") {
                throw UsageError("unknown objective '" + o.objective + "'");
            }
            if (o.objective == "mse" && o.data.empty()) {
                throw UsageError("--data is required for the mse objective");
            }
            if (o.k_star == 0 || o.k_star > kMaxCodebookSize) {
                throw UsageError("--k-star must lie in [1, 65535]");
            }
        })) {
        return rc;
    }

    XiObjective objective;
    if (o.objective == "quadratic") {
        objective = make_quadratic_objective(o.target[0], o.target[1]);
    } else {
        std::optional<Dataset> data;
        if (int rc = stage(err, kData, [&] {
                data.emplace(load_vectors(o.data, resolve_format(o.format, o.data)));
                require_divides(data->dim(), o.m_dir, "--m-dir");
                ClusteringParams base;
                base.max_iters = o.max_iters;
                base.seed = o.seed;
                objective = make_mse_objective(*data, o.m_dir, o.k_star, base, o.holdout, o.seed);
            })) {
            return rc;
        }
    }

    GAResult result;
    if (int rc = stage(err, kTrain, [&] { result = ga_optimize(objective, ga); })) {
        return rc;
    }
    if (!o.out_grid.empty()) {
        std::vector<Genome> grid;
        if (int rc = stage(err, kTrain, [&] { grid = grid_costs(objective, ga.lower_bound, ga.upper_bound, o.grid_steps); })) {
            return rc;
        }
        if (int rc = stage(err, kData,
                           [&] { write_to(o.out_grid, out, [&](std::ostream& s) { write_grid_csv(s, grid); }); })) {
            return rc;
        }
    }
    out << "xi1,xi2,cost,generations,converged\n"
        << result.best.xi_lower << ',' << result.best.xi_upper << ',' << result.best.cost << ','
        << result.generations << ',' << (result.converged ? "true" : "false") << '\n';
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    apply_thread_env();

    CLI::App app{"Fuzzy norm-explicit quantization for maximum inner product search", "fneq"};
    app.require_subcommand(1);

    TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "Train an index and write it to disk");
    train_cmd->add_option("--data", train.data, "Item vectors")->required();
    train_cmd->add_option("--format", train.format, "fvecs | csv | auto (by extension)")->capture_default_str();
    train_cmd->add_option("--out", train.out, "Index file to write")->required();
    add_training_flags(train_cmd, train);

    QueryOptions query;
    auto* query_cmd = app.add_subcommand("query", "Top-k items for each query");
    query_cmd->add_option("--index", query.index)->required();
    query_cmd->add_option("--queries", query.queries)->required();
    query_cmd->add_option("--format", query.format)->capture_default_str();
    query_cmd->add_option("--k", query.k)->capture_default_str();
    query_cmd->add_option("--metric", query.metric, "ip | euclidean (experimental)")->capture_default_str();

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Recall/precision/F1 against the exact top-t");
    eval_cmd->add_option("--index", eval.index)->required();
    eval_cmd->add_option("--data", eval.data)->required();
    eval_cmd->add_option("--queries", eval.queries)->required();
    eval_cmd->add_option("--format", eval.format)->capture_default_str();
    eval_cmd->add_option("--truth-depth", eval.truth_depth)->capture_default_str();
    eval_cmd->add_option("--iterations", eval.iterations)->capture_default_str();
    eval_cmd->add_option("--items-list", eval.items, "Item counts for the recall curve")->delimiter(',');
    eval_cmd->add_flag("--retrain", eval.retrain, "Bootstrap: retrain on resampled items each iteration");
    eval_cmd->add_option("--xi1", eval.xi1)->capture_default_str();
    eval_cmd->add_option("--xi2", eval.xi2)->capture_default_str();
    eval_cmd->add_option("--method", eval.method, "Method label (default: index mode)");
    eval_cmd->add_option("--dataset-name", eval.dataset_name)->capture_default_str();
    eval_cmd->add_option("--metrics-out", eval.metrics_out, "Metrics CSV path (default: stdout)");
    eval_cmd->add_option("--curve-out", eval.curve_out, "Curve CSV path");
    eval_cmd->add_option("--seed", eval.seed)->capture_default_str();

    TuneOptions tune;
    auto* tune_cmd = app.add_subcommand("tune", "Search the fuzziness interval with differential evolution");
    tune_cmd->add_option("--data", tune.data);
    tune_cmd->add_option("--format", tune.format)->capture_default_str();
    tune_cmd->add_option("--bounds", tune.bounds)->expected(2)->capture_default_str();
    tune_cmd->add_option("--out-grid", tune.out_grid, "Write the xi1,xi2,cost grid here");
    tune_cmd->add_option("--grid-steps", tune.grid_steps)->capture_default_str();
    tune_cmd->add_option("--objective", tune.objective, "mse | quadratic")->capture_default_str();
    tune_cmd->add_option("--target", tune.target, "Optimum of the quadratic objective")->expected(2);
    tune_cmd->add_option("--m-dir", tune.m_dir, "Direction codebooks for the mse objective")->capture_default_str();
    tune_cmd->add_option("--k-star", tune.k_star)->capture_default_str();
    tune_cmd->add_option("--holdout", tune.holdout)->capture_default_str();
    tune_cmd->add_option("--population", tune.population)->capture_default_str();
    tune_cmd->add_option("--generations", tune.generations)->capture_default_str();
    tune_cmd->add_option("--tolerance", tune.tolerance)->capture_default_str();
    tune_cmd->add_option("--max-iters", tune.max_iters)->capture_default_str();
    tune_cmd->add_option("--seed", tune.seed)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsage;
    }

    if (*train_cmd) {
        return cmd_train(train, out, err);
    }
    if (*query_cmd) {
        return cmd_query(query, out, err);
    }
    if (*eval_cmd) {
        return cmd_eval(eval, out, err);
    }
    return cmd_tune(tune, out, err);
}

} // namespace fneq::cli
