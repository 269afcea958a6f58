#include "fneq/eval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>

#include "fneq/error.hpp"
#include "fneq/vector_ops.hpp"

namespace fneq {

namespace {

std::vector<idx_t> as_set(std::span<const idx_t> ids) {
    std::vector<idx_t> out(ids.begin(), ids.end());
    std::ranges::sort(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t overlap(std::span<const idx_t> a, std::span<const idx_t> b) {
    const auto sa = as_set(a);
    const auto sb = as_set(b);
    std::vector<idx_t> common;
    std::ranges::set_intersection(sa, sb, std::back_inserter(common));
    return common.size();
}

void check_counts(std::span<const std::size_t> item_counts, std::size_t n) {
    if (item_counts.empty()) {
        throw InvalidInputError("curve: no item counts");
    }
    for (std::size_t i = 0; i < item_counts.size(); ++i) {
        if (item_counts[i] == 0 || item_counts[i] > n) {
            throw InvalidInputError("curve: item count " + std::to_string(item_counts[i]) + " outside [1, " +
                                    std::to_string(n) + "]");
        }
        if (i > 0 && item_counts[i] < item_counts[i - 1]) {
            throw InvalidInputError("curve: item counts must be ascending");
        }
    }
}

CurvePoint make_point(std::size_t items, double recall_sum, double precision_sum, double f1_sum, std::size_t queries) {
    const auto q = static_cast<double>(queries);
    return {items, recall_sum / q, precision_sum / q, f1_sum / q};
}

} // namespace

GroundTruth exact_topk(const Dataset& dataset, const QuerySet& queries, std::size_t t, std::size_t prefix) {
    if (prefix == 0 || prefix > dataset.size()) {
        throw InvalidInputError("exact_topk: prefix outside [1, n]");
    }
    if (t > prefix) {
        throw InvalidInputError("exact_topk: depth " + std::to_string(t) + " exceeds " + std::to_string(prefix) +
                                " items");
    }
    if (queries.size() > 0 && queries.dim() != dataset.dim()) {
        throw InvalidInputError("exact_topk: query and dataset dimensions differ");
    }
    GroundTruth truth;
    truth.depth = t;
    truth.ids.resize(queries.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(queries.size()); ++qi) {
        auto q = queries.query(static_cast<std::size_t>(qi));
        std::vector<double> scores(prefix);
        for (std::size_t i = 0; i < prefix; ++i) {
            scores[i] = dot(dataset.item(i), q);
        }
        auto best = select_top_k(scores, t);
        auto& ids = truth.ids[static_cast<std::size_t>(qi)];
        ids.reserve(best.size());
        for (const auto& item : best) {
            ids.push_back(item.id);
        }
    }
    return truth;
}

GroundTruth exact_topk(const Dataset& dataset, const QuerySet& queries, std::size_t t) {
    return exact_topk(dataset, queries, t, dataset.size());
}

double recall(std::span<const idx_t> retrieved, std::span<const idx_t> relevant) {
    const auto rel = as_set(relevant);
    if (rel.empty()) {
        throw InvalidInputError("recall: relevant set is empty");
    }
    return static_cast<double>(overlap(retrieved, rel)) / static_cast<double>(rel.size());
}

double precision(std::span<const idx_t> retrieved, std::span<const idx_t> relevant) {
    const auto ret = as_set(retrieved);
    if (ret.empty()) {
        throw InvalidInputError("precision: retrieved set is empty");
    }
    return static_cast<double>(overlap(ret, relevant)) / static_cast<double>(ret.size());
}

double f1(double p, double r) {
    if (p + r <= 0.0) {
        return 0.0;
    }
    // Grouped so that f1(p, p) == p exactly.
    return p * (2.0 * r / (p + r));
}

double running_time(const std::function<void()>& run) {
    Stopwatch watch;
    run();
    return watch.seconds();
}

std::vector<CurvePoint> recall_item_curve(const IndexArtifact& index, const QuerySet& queries,
                                          const GroundTruth& truth, std::span<const std::size_t> item_counts) {
    check_counts(item_counts, index.size());
    if (queries.size() == 0) {
        throw InvalidInputError("curve: no queries");
    }
    if (truth.ids.size() != queries.size() || truth.depth == 0) {
        throw InvalidInputError("curve: ground truth does not match the query set");
    }
    const std::size_t deepest = item_counts.back();
    const std::size_t counts = item_counts.size();
    // Per-query metrics, reduced in query order afterwards so results do not depend on thread count.
    std::vector<double> r_q(queries.size() * counts);
    std::vector<double> p_q(queries.size() * counts);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t qq = 0; qq < static_cast<std::ptrdiff_t>(queries.size()); ++qq) {
        const auto qi = static_cast<std::size_t>(qq);
        const auto ranked = select_top_k(scan_scores(queries.query(qi), index), deepest);
        std::vector<idx_t> ids;
        ids.reserve(ranked.size());
        for (const auto& item : ranked) {
            ids.push_back(item.id);
        }
        for (std::size_t c = 0; c < counts; ++c) {
            std::span<const idx_t> retrieved(ids.data(), item_counts[c]);
            r_q[qi * counts + c] = recall(retrieved, truth.ids[qi]);
            p_q[qi * counts + c] = precision(retrieved, truth.ids[qi]);
        }
    }
    std::vector<double> recall_sum(counts, 0.0);
    std::vector<double> precision_sum(counts, 0.0);
    std::vector<double> f1_sum(counts, 0.0);
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        for (std::size_t c = 0; c < counts; ++c) {
            const double r = r_q[qi * counts + c];
            const double p = p_q[qi * counts + c];
            recall_sum[c] += r;
            precision_sum[c] += p;
            f1_sum[c] += f1(p, r);
        }
    }
    std::vector<CurvePoint> curve;
    for (std::size_t c = 0; c < item_counts.size(); ++c) {
        curve.push_back(make_point(item_counts[c], recall_sum[c], precision_sum[c], f1_sum[c], queries.size()));
    }
    return curve;
}

std::vector<CurvePoint> recall_item_curve(const IndexArtifact& index, const Dataset& dataset,
                                          const QuerySet& queries, std::span<const std::size_t> item_counts,
                                          std::size_t t, CurveMode mode) {
    if (index.size() != dataset.size() || index.dim() != dataset.dim()) {
        throw InvalidInputError("curve: index does not match the dataset");
    }
    check_counts(item_counts, dataset.size());
    if (t == 0) {
        throw InvalidInputError("curve: truth depth must be positive");
    }
    if (mode == CurveMode::probe_depth) {
        return recall_item_curve(index, queries, exact_topk(dataset, queries, t), item_counts);
    }

    if (queries.size() == 0) {
        throw InvalidInputError("curve: no queries");
    }
    std::vector<CurvePoint> curve;
    for (std::size_t count : item_counts) {
        if (count < t) {
            throw InvalidInputError("curve: prefix of " + std::to_string(count) + " items is shorter than depth " +
                                    std::to_string(t));
        }
        const GroundTruth truth = exact_topk(dataset, queries, t, count);
        double recall_sum = 0.0;
        double precision_sum = 0.0;
        double f1_sum = 0.0;
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
            const auto ranked = select_top_k(scan_scores(queries.query(qi), index, nullptr, count), t);
            std::vector<idx_t> ids;
            for (const auto& item : ranked) {
                ids.push_back(item.id);
            }
            const double r = recall(ids, truth.ids[qi]);
            const double p = precision(ids, truth.ids[qi]);
            recall_sum += r;
            precision_sum += p;
            f1_sum += f1(p, r);
        }
        curve.push_back(make_point(count, recall_sum, precision_sum, f1_sum, queries.size()));
    }
    return curve;
}

std::vector<std::size_t> default_item_counts(std::size_t n) {
    std::vector<std::size_t> counts;
    for (std::size_t c : {2048, 4096, 8192, 16384, 32768}) {
        if (c <= n) {
            counts.push_back(c);
        }
    }
    if (counts.empty()) {
        counts.push_back(n);
    }
    return counts;
}

std::pair<double, double> mean_std(std::span<const double> values) {
    if (values.empty()) {
        return {0.0, 0.0};
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(values.size());
    return {mean, std::sqrt(var)};
}

namespace {

// Item-count axis with t merged in, plus the position of t in it.
std::pair<std::vector<std::size_t>, std::size_t> with_depth(std::vector<std::size_t> counts, std::size_t t) {
    counts.push_back(t);
    std::ranges::sort(counts);
    counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
    const auto pos = static_cast<std::size_t>(std::ranges::find(counts, t) - counts.begin());
    return {std::move(counts), pos};
}

struct IterationResult {
    std::vector<CurvePoint> curve;
    double recall_at_t = 0.0;
    double seconds = 0.0;
};

EvalReport assemble(const EvalConfig& config, std::span<const std::size_t> counts, std::size_t depth_pos,
                    const std::vector<IterationResult>& runs) {
    EvalReport report;
    report.method = config.method;
    report.dataset_name = config.dataset_name;
    report.iterations = runs.size();

    std::vector<double> at_t;
    for (const auto& run : runs) {
        at_t.push_back(run.curve[depth_pos].recall);
        report.running_time_seconds.push_back(run.seconds);
    }
    std::tie(report.recall_at_t_mean, report.recall_at_t_std) = mean_std(at_t);
    std::tie(report.time_mean, report.time_std) = mean_std(report.running_time_seconds);

    for (const auto& run : runs) {
        double acc = 0.0;
        for (std::size_t requested : config.item_counts) {
            const auto pos = static_cast<std::size_t>(std::ranges::find(counts, requested) - counts.begin());
            acc += run.curve[pos].recall;
        }
        report.iteration_recall.push_back(acc / static_cast<double>(config.item_counts.size()));
    }

    for (std::size_t requested : config.item_counts) {
        const auto pos = static_cast<std::size_t>(std::ranges::find(counts, requested) - counts.begin());
        std::vector<double> r;
        std::vector<double> p;
        std::vector<double> f;
        for (const auto& run : runs) {
            r.push_back(run.curve[pos].recall);
            p.push_back(run.curve[pos].precision);
            f.push_back(run.curve[pos].f1);
        }
        EvalRow row;
        row.items = requested;
        std::tie(row.recall_mean, row.recall_std) = mean_std(r);
        row.precision_mean = mean_std(p).first;
        row.f1_mean = mean_std(f).first;
        report.rows.push_back(row);
    }
    return report;
}

void check_eval_config(const EvalConfig& config, std::size_t n, const QuerySet& queries) {
    if (queries.size() == 0) {
        throw InvalidInputError("eval: no queries");
    }
    if (config.item_counts.empty()) {
        throw InvalidInputError("eval: no item counts");
    }
    check_counts(config.item_counts, n);
    if (config.truth_depth == 0 || config.truth_depth > n) {
        throw InvalidInputError("eval: truth depth outside [1, n]");
    }
}

} // namespace

EvalReport bootstrap_eval(const Dataset& dataset, const QuerySet& queries, const EvalConfig& config,
                          std::size_t iterations, std::uint64_t seed) {
    if (iterations == 0) {
        throw InvalidInputError("bootstrap: at least one iteration is required");
    }
    check_eval_config(config, dataset.size(), queries);
    const auto [counts, depth_pos] = with_depth(config.item_counts, config.truth_depth);
    const GroundTruth truth = exact_topk(dataset, queries, config.truth_depth);

    std::vector<IterationResult> runs;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::mt19937_64 rng(seed + it);
        std::uniform_int_distribution<std::size_t> pick(0, dataset.size() - 1);
        std::vector<idx_t> sample(dataset.size());
        for (auto& id : sample) {
            id = static_cast<idx_t>(pick(rng));
        }
        IndexConfig index_config = config.index;
        index_config.params.seed = seed + it;

        IterationResult run;
        Stopwatch watch;
        const Dataset train(dataset.items().gather_rows(sample));
        const IndexArtifact index = train_index(train, dataset, index_config);
        run.curve = recall_item_curve(index, queries, truth, counts);
        run.seconds = watch.seconds();
        runs.push_back(std::move(run));
    }
    return assemble(config, counts, depth_pos, runs);
}

EvalReport evaluate_index(const IndexArtifact& index, const Dataset& dataset, const QuerySet& queries,
                          const EvalConfig& config, std::size_t iterations, std::uint64_t seed) {
    if (iterations == 0) {
        throw InvalidInputError("eval: at least one iteration is required");
    }
    if (index.size() != dataset.size() || index.dim() != dataset.dim()) {
        throw InvalidInputError("eval: index does not match the dataset");
    }
    check_eval_config(config, dataset.size(), queries);
    const auto [counts, depth_pos] = with_depth(config.item_counts, config.truth_depth);
    const GroundTruth truth = exact_topk(dataset, queries, config.truth_depth);

    std::vector<IterationResult> runs;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<idx_t> sample(queries.size());
        if (iterations == 1) {
            for (std::size_t i = 0; i < sample.size(); ++i) {
                sample[i] = static_cast<idx_t>(i);
            }
        } else {
            std::mt19937_64 rng(seed + it);
            std::uniform_int_distribution<std::size_t> pick(0, queries.size() - 1);
            for (auto& id : sample) {
                id = static_cast<idx_t>(pick(rng));
            }
        }
        const QuerySet resampled(queries.queries().gather_rows(sample));
        GroundTruth sub_truth;
        sub_truth.depth = truth.depth;
        for (idx_t id : sample) {
            sub_truth.ids.push_back(truth.ids[id]);
        }
        IterationResult run;
        Stopwatch watch;
        run.curve = recall_item_curve(index, resampled, sub_truth, counts);
        run.seconds = watch.seconds();
        runs.push_back(std::move(run));
    }
    return assemble(config, counts, depth_pos, runs);
}

void write_metrics_csv(std::ostream& out, std::span<const EvalReport> reports) {
    out << "method,dataset,items,recall,precision,f1,time_s,std\n";
    for (const auto& report : reports) {
        for (const auto& row : report.rows) {
            out << report.method << ',' << report.dataset_name << ',' << row.items << ',' << row.recall_mean << ','
                << row.precision_mean << ',' << row.f1_mean << ',' << report.time_mean << ',' << row.recall_std
                << '\n';
        }
    }
}

void write_curve_csv(std::ostream& out, const EvalReport& report) {
    out << "items,recall\n";
    for (const auto& row : report.rows) {
        out << row.items << ',' << row.recall_mean << '\n';
    }
}

} // namespace fneq
