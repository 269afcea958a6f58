#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fneq/neq.hpp"
#include "fneq/types.hpp"

namespace fneq {

/// Exact top-t item ids per query, by true inner product, ties by ascending id.
struct GroundTruth {
    std::size_t depth = 0;
    std::vector<std::vector<idx_t>> ids;
};

/// Exhaustive-scan oracle. Throws InvalidInputError when t > n or dimensions differ.
GroundTruth exact_topk(const Dataset& dataset, const QuerySet& queries, std::size_t t);
/// As above, restricted to the first `prefix` items.
GroundTruth exact_topk(const Dataset& dataset, const QuerySet& queries, std::size_t t, std::size_t prefix);

/// |retrieved ∩ relevant| / |relevant|. Throws InvalidInputError for empty `relevant`.
double recall(std::span<const idx_t> retrieved, std::span<const idx_t> relevant);
/// |retrieved ∩ relevant| / |retrieved|. Throws InvalidInputError for empty `retrieved`.
double precision(std::span<const idx_t> retrieved, std::span<const idx_t> relevant);
/// Harmonic mean of p and r; 0 when both are 0.
double f1(double p, double r);

/// Wall-clock seconds taken by `run`, from a monotonic clock.
double running_time(const std::function<void()>& run);

/// Scoped wall-clock timer.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// How the item axis of a recall-item curve is interpreted.
enum class CurveMode {
    /// N = number of top-ranked candidates retrieved from the whole index;
    /// recall = |top-N approximate ∩ exact top-t| / t.
    probe_depth,
    /// N = number of leading items searched; approximate top-t among them
    /// against the exact top-t among them.
    dataset_prefix,
};

struct CurvePoint {
    std::size_t items = 0;
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
};

/// Mean recall (and precision/F1) over queries for each item count.
/// `item_counts` must be ascending, non-empty and each in [1, n]; prefix mode also needs N >= t.
std::vector<CurvePoint> recall_item_curve(const IndexArtifact& index, const Dataset& dataset,
                                          const QuerySet& queries, std::span<const std::size_t> item_counts,
                                          std::size_t t, CurveMode mode = CurveMode::probe_depth);

/// Curve against a precomputed ground truth (probe-depth mode).
std::vector<CurvePoint> recall_item_curve(const IndexArtifact& index, const QuerySet& queries,
                                          const GroundTruth& truth, std::span<const std::size_t> item_counts);

/// Default item-count axis {2048, ..., 32768} clipped to n, or {n} when n < 2048.
std::vector<std::size_t> default_item_counts(std::size_t n);

struct EvalConfig {
    std::string method;
    std::string dataset_name = "dataset";
    IndexConfig index;
    std::size_t truth_depth = 20;
    std::vector<std::size_t> item_counts;
};

struct EvalRow {
    std::size_t items = 0;
    double recall_mean = 0.0;
    double precision_mean = 0.0;
    double f1_mean = 0.0;
    double recall_std = 0.0;
};

struct EvalReport {
    std::string method;
    std::string dataset_name;
    std::size_t iterations = 0;
    std::vector<EvalRow> rows;
    /// Mean recall of the top-t retrieval (N = t) and its std across iterations.
    double recall_at_t_mean = 0.0;
    double recall_at_t_std = 0.0;
    /// Per-iteration wall-clock seconds (train + evaluate).
    std::vector<double> running_time_seconds;
    double time_mean = 0.0;
    double time_std = 0.0;
    /// Per-iteration mean recall across the item-count axis.
    std::vector<double> iteration_recall;
};

/// Bootstrap protocol: each iteration resamples the training items with
/// replacement, retrains, encodes the full dataset and evaluates against the
/// exact oracle. Iteration i uses seed `seed + i` for resampling and training.
EvalReport bootstrap_eval(const Dataset& dataset, const QuerySet& queries, const EvalConfig& config,
                          std::size_t iterations = 10, std::uint64_t seed = 0);

/// Evaluates a fixed index; iterations resample the query set with replacement.
EvalReport evaluate_index(const IndexArtifact& index, const Dataset& dataset, const QuerySet& queries,
                          const EvalConfig& config, std::size_t iterations = 1, std::uint64_t seed = 0);

/// Mean and population standard deviation.
std::pair<double, double> mean_std(std::span<const double> values);

/// CSV `method,dataset,items,recall,precision,f1,time_s,std`.
void write_metrics_csv(std::ostream& out, std::span<const EvalReport> reports);
/// CSV `items,recall`.
void write_curve_csv(std::ostream& out, const EvalReport& report);

} // namespace fneq
