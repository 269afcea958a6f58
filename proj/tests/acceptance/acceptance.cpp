// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
// Optional: FNEQ_NETFLIX_ITEMS (fvecs) enables the real-embedding check of
// criterion 8; FNEQ_NETFLIX_QUERIES (fvecs) supplies its queries, otherwise 100
// items are sampled as queries.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fneq/clustering.hpp"
#include "fneq/eval.hpp"
#include "fneq/io.hpp"
#include "fneq/mips_transform.hpp"
#include "fneq/neq.hpp"
#include "fneq/sugeno.hpp"
#include "fneq/synthetic.hpp"
#include "fneq/tuner.hpp"
#include "fneq/vector_ops.hpp"
#include "oracles.hpp"

using namespace fneq;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void expect(bool ok, const std::string& what) {
        if (!ok && outcome_.pass) {
            outcome_.pass = false;
            outcome_.detail = what;
        }
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
    Outcome done() {
        if (outcome_.pass) {
            outcome_.detail = notes_;
        } else if (!notes_.empty()) {
            outcome_.detail += " [" + notes_ + "]";
        }
        return outcome_;
    }

private:
    Outcome outcome_;
    std::string notes_;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Relative agreement used wherever two computations of one quantity are compared.
bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

IndexConfig make_config(IndexMode mode, std::size_t m, std::size_t m_prime, std::size_t k_star, std::uint64_t seed) {
    IndexConfig c;
    c.mode = mode;
    c.m = m;
    c.m_prime = is_norm_explicit(mode) ? m_prime : 0;
    c.k_star = k_star;
    c.params.c = k_star;
    c.params.seed = seed;
    return c;
}

// The shared synthetic setup of criteria 7 and 8.
Dataset lognormal_items(std::uint64_t seed) {
    return Dataset(make_items({.n = 10000, .dim = 64, .clusters = 32, .cluster_spread = 0.3, .norm_mu = 0.0,
                               .norm_sigma = 0.5, .seed = seed}));
}

Outcome transform_identities() {
    Check check;
    const Matrix items = oracle::random_matrix(1000, 32, 101, 2.0);
    const Matrix queries = oracle::random_matrix(1000, 32, 102);
    const double phi = max_norm(items);
    double worst_norm = 0.0;
    for (std::size_t i = 0; i < items.rows(); ++i) {
        const auto z = augment_item(items.row(i), phi);
        const auto qz = augment_query(queries.row(i));
        worst_norm = std::max(worst_norm, std::abs(l2_norm(z) - phi));
        const double ip = oracle::dot(items.row(i), queries.row(i));
        check.expect(close_rel(dot(z, qz), ip, 1e-9), "inner product not preserved at pair " + std::to_string(i));
        // |q_z - z|^2 = |q|^2 + phi^2 - 2 <x, q>
        const double lhs = oracle::sqdist(qz, z);
        const double rhs = oracle::dot(queries.row(i), queries.row(i)) + phi * phi - 2.0 * ip;
        check.expect(close_rel(lhs, rhs, 1e-6), "distance identity broken at pair " + std::to_string(i));
    }
    check.expect(worst_norm <= 1e-7, "augmented norm off by " + fmt("%.3g", worst_norm));
    check.note("max |‖z‖-φ| = " + fmt("%.2g", worst_norm));
    return check.done();
}

Outcome lloyd_optimality() {
    Check check;
    const Matrix pts = oracle::random_matrix(2000, 8, 201);
    ClusteringParams p;
    p.c = 16;
    p.max_iters = 1000;
    p.seed = 7;
    const auto r = kmeans(pts, 16, p);
    check.expect(r.converged, "k-means did not converge");
    std::vector<std::vector<double>> sums(16, std::vector<double>(8, 0.0));
    std::vector<std::size_t> counts(16, 0);
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        const std::size_t nearest = oracle::brute_nearest(pts.row(i), r.centroids.codewords());
        check.expect(r.assignments[i] == nearest, "point " + std::to_string(i) + " not at its nearest centroid");
        for (std::size_t d = 0; d < 8; ++d) {
            sums[r.assignments[i]][d] += pts(i, d);
        }
        ++counts[r.assignments[i]];
    }
    double worst = 0.0;
    for (std::size_t c = 0; c < 16; ++c) {
        check.expect(counts[c] > 0, "empty cell");
        for (std::size_t d = 0; d < 8 && counts[c] > 0; ++d) {
            worst = std::max(worst, std::abs(r.centroids.codeword(c)[d] - sums[c][d] / static_cast<double>(counts[c])));
        }
    }
    check.expect(worst <= 1e-7, "centroid differs from cell mean by " + fmt("%.3g", worst));
    check.note(std::to_string(r.iterations) + " iterations");
    return check.done();
}

Outcome exact_recovery() {
    Check check;
    const Dataset data(make_items({.n = 256, .dim = 32, .clusters = 8, .seed = 301}));
    const QuerySet queries(make_queries(100, 32, 302));
    Stopwatch clock;
    const auto index = train_neq(data, make_config(IndexMode::neq_kmeans, 2, 1, 256, 303));
    const auto truth = exact_topk(data, queries, 10);
    double total = 0.0;
    for (std::size_t k = 0; k < queries.size(); ++k) {
        std::vector<idx_t> got;
        for (const auto& s : top_k(queries.query(k), index, 10)) {
            got.push_back(s.id);
        }
        check.expect(got == truth.ids[k], "query " + std::to_string(k) + " ranking differs from exact top-10");
        total += recall(got, truth.ids[k]);
    }
    const double seconds = clock.seconds();
    check.expect(total / 100.0 == 1.0, "recall " + fmt("%.4f", total / 100.0));
    check.expect(seconds < 10.0, "took " + fmt("%.2f s", seconds));
    check.note("recall " + fmt("%.4f", total / 100.0) + ", " + fmt("%.2f s", seconds));
    return check.done();
}

Outcome estimate_matches_reconstruction() {
    Check check;
    const IndexMode modes[] = {IndexMode::pq, IndexMode::rq, IndexMode::neq_kmeans, IndexMode::fuzzy2_neq};
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const IndexMode mode = modes[s % 4];
        const Dataset data(make_items({.n = 500, .dim = 16, .clusters = 6, .seed = 400 + s}));
        const std::size_t m = mode == IndexMode::rq ? 3 : (is_norm_explicit(mode) ? 3 + s % 3 : 4);
        const std::size_t m_prime = is_norm_explicit(mode) ? m - (m == 5 ? 4 : 2) : 0;
        const auto index = train_neq(data, make_config(mode, m, m_prime, 16, 410 + s));
        const Matrix queries = make_queries(5, 16, 420 + s);
        for (std::size_t k = 0; k < queries.rows(); ++k) {
            const auto table = build_query_table(queries.row(k), index);
            for (std::size_t i = 0; i < index.size(); ++i) {
                const double est = estimate_inner_product(index.codes.row(i), index, table);
                const double want = oracle::dot(queries.row(k), reconstruct(index.codes.row(i), index));
                worst = std::max(worst, std::abs(est - want) / std::max(1.0, std::abs(want)));
            }
        }
    }
    check.expect(worst <= 1e-9, "relative gap " + fmt("%.3g", worst));
    check.note("max relative gap " + fmt("%.2g", worst));
    return check.done();
}

Outcome sugeno_properties() {
    Check check;
    std::mt19937_64 rng(501);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const auto g = FuzzyMeasure::cardinality(n);
        const double v = u(rng);
        check.expect(sugeno_integral({std::vector<double>(n, v), std::vector<double>(n, 1.0)}, g) == v,
                     "not idempotent");
        SugenoInputs in;
        std::vector<double> combined;
        for (std::size_t i = 0; i < n; ++i) {
            in.h_values.push_back(u(rng));
            in.memberships.push_back(u(rng));
            combined.push_back(in.h_values.back() * in.memberships.back());
        }
        const double s = sugeno_integral(in, g);
        check.expect(s >= *std::ranges::min_element(combined) && s <= *std::ranges::max_element(combined),
                     "not internal");
        SugenoInputs raised = in;
        raised.h_values[trial % n] = std::min(1.0, raised.h_values[trial % n] + u(rng));
        check.expect(sugeno_integral(raised, g) >= s, "not monotone");
    }

    const Matrix pts = make_gaussian_mixture(300, 3, 4, 3.0, 502);
    ClusteringParams p;
    p.c = 4;
    p.seed = 503;
    p.max_iters = 1000;
    p.epsilon = 1e-10;
    p = p.with_xi(2.5, 2.5);
    const auto r = it2fpcm(pts, p);
    const auto t1 = oracle::type1_fpcm(pts, pts.gather_rows(kmeans_plus_plus(pts, 4, 503)), 2.5, 2.5, 1e-10, 1000);
    double worst = 0.0;
    for (std::size_t i = 0; i < t1.centroids.values().size(); ++i) {
        worst = std::max(worst, std::abs(r.centroids_lower.values()[i] - t1.centroids.values()[i]));
        worst = std::max(worst, std::abs(r.centroids_upper.values()[i] - t1.centroids.values()[i]));
    }
    const auto fused = fuse_codebooks(r);
    for (std::size_t i = 0; i < t1.centroids.values().size(); ++i) {
        worst = std::max(worst, std::abs(fused.codewords().values()[i] - t1.centroids.values()[i]));
    }
    check.expect(worst <= 1e-6, "collapsed interval differs from type-1 by " + fmt("%.3g", worst));
    check.note("10000 random inputs; collapse gap " + fmt("%.2g", worst));
    return check.done();
}

Outcome it2fpcm_invariants() {
    Check check;
    for (std::uint64_t s = 0; s < 3; ++s) {
        const Matrix pts = make_gaussian_mixture(400, 4, 5, 2.0 + static_cast<double>(s), 600 + s);
        ClusteringParams p;
        p.c = 5;
        p.seed = 610 + s;
        p.max_iters = 1000;
        p.epsilon = 1e-5;
        p = p.with_xi(2.0, 3.0);
        const auto a = it2fpcm(pts, p);
        const auto b = it2fpcm(pts, p);
        const std::string tag = "dataset " + std::to_string(s) + ": ";
        check.expect(a.converged, tag + "did not converge");
        const auto& h = a.objective_history;
        check.expect(h.size() >= 2 && std::abs(h[h.size() - 1] - h[h.size() - 2]) < 1e-5,
                     tag + "final objective change not below 1e-5");
        for (std::size_t i = 0; i < a.membership_lower.values().size(); ++i) {
            const double lo = a.membership_lower.values()[i];
            const double hi = a.membership_upper.values()[i];
            check.expect(lo <= hi, tag + "membership lower > upper");
            check.expect(lo >= 0.0 && hi <= 1.0, tag + "membership outside [0,1]");
            const double plo = a.possibility_lower.values()[i];
            const double phi = a.possibility_upper.values()[i];
            check.expect(plo <= phi && plo >= 0.0 && phi <= 1.0, tag + "possibility interval invalid");
        }
        check.expect(a.centroids_lower == b.centroids_lower && a.centroids_upper == b.centroids_upper &&
                         a.objective_history == b.objective_history,
                     tag + "not deterministic");
        check.note(std::to_string(a.iterations) + " iters");
    }
    return check.done();
}

double mean_relative_norm_error(const IndexArtifact& index, const Dataset& data) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double norm = l2_norm(data.item(i));
        total += std::abs(l2_norm(reconstruct(index.codes.row(i), index)) - norm) / norm;
    }
    return total / static_cast<double>(data.size());
}

Outcome norm_error_reduction() {
    Check check;
    Stopwatch clock;
    // 64 dims cannot be split into 7 blocks, so NEQ is compared at two budgets:
    // eight direction codebooks plus one norm codebook, and eight codebooks in
    // total (four direction, four norm stages).
    double neq_total = 0.0;
    double neq8_total = 0.0;
    double pq_total = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Dataset data = lognormal_items(700 + s);
        neq_total += mean_relative_norm_error(train_neq(data, make_config(IndexMode::neq_kmeans, 9, 1, 16, s)), data);
        neq8_total += mean_relative_norm_error(train_neq(data, make_config(IndexMode::neq_kmeans, 8, 4, 16, s)), data);
        pq_total += mean_relative_norm_error(train_neq(data, make_config(IndexMode::pq, 8, 0, 16, s)), data);
    }
    const double seconds = clock.seconds();
    check.expect(neq_total < pq_total, "NEQ norm error " + fmt("%.4f", neq_total / 10) + " not below PQ " +
                                           fmt("%.4f", pq_total / 10));
    check.expect(neq8_total < pq_total, "NEQ (8 codebooks) norm error " + fmt("%.4f", neq8_total / 10) +
                                            " not below PQ " + fmt("%.4f", pq_total / 10));
    check.expect(seconds < 120.0, "took " + fmt("%.1f s", seconds));
    check.note("NEQ 8+1 " + fmt("%.4f", neq_total / 10) + ", NEQ 4+4 " + fmt("%.4f", neq8_total / 10) + " vs PQ " +
               fmt("%.4f", pq_total / 10) + ", " + fmt("%.1f s", seconds));
    return check.done();
}

double mean_curve_recall(const EvalReport& report) {
    double total = 0.0;
    for (const auto& row : report.rows) {
        total += row.recall_mean;
    }
    return total / static_cast<double>(report.rows.size());
}

void netflix_check(Check& check) {
    const char* items_path = std::getenv("FNEQ_NETFLIX_ITEMS");
    if (items_path == nullptr) {
        check.note("real-embedding check skipped (FNEQ_NETFLIX_ITEMS unset)");
        return;
    }
    const Dataset data(load_fvecs(items_path));
    Matrix q;
    if (const char* qp = std::getenv("FNEQ_NETFLIX_QUERIES")) {
        q = load_fvecs(qp);
    } else {
        std::vector<idx_t> ids;
        std::mt19937_64 rng(901);
        std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
        for (int i = 0; i < 100; ++i) {
            ids.push_back(static_cast<idx_t>(pick(rng)));
        }
        q = data.items().gather_rows(ids);
    }
    const QuerySet queries(std::move(q));
    const std::vector<std::size_t> counts{std::min<std::size_t>(16384, data.size())};
    // Eight codebooks with 32 clusters: two norm codebooks and six direction codebooks.
    auto run = [&](IndexMode mode) {
        EvalConfig config;
        config.index = make_config(mode, 8, 2, 32, 0);
        config.item_counts = counts;
        return bootstrap_eval(data, queries, config, 10, 0).rows.front().recall_mean;
    };
    const double fuzzy = run(IndexMode::fuzzy2_neq);
    const double neq = run(IndexMode::neq_kmeans);
    check.expect(fuzzy >= neq, "real embeddings: Fuzzy-2 NEQ below NEQ");
    check.expect(std::abs(fuzzy - 0.9465) <= 0.03, "real embeddings: recall " + fmt("%.4f", fuzzy));
    check.note("real embeddings: Fuzzy-2 NEQ " + fmt("%.4f", fuzzy) + ", NEQ " + fmt("%.4f", neq));
}

// Fuzziness interval chosen by the GA and the regular grid on a quarter of the items.
Genome tune_xi(const Dataset& data) {
    std::vector<idx_t> ids;
    for (std::size_t i = 0; i < data.size(); i += 4) {
        ids.push_back(static_cast<idx_t>(i));
    }
    const Dataset sample(data.items().gather_rows(ids));
    ClusteringParams base;
    base.c = 16;
    const auto objective = make_mse_objective(sample, 8, 16, base, 0.2, 0);
    GAConfig ga;
    ga.lower_bound = 1.05;
    Genome best = ga_optimize(objective, ga).best;
    for (const auto& g : grid_costs(objective, ga.lower_bound, ga.upper_bound, 11)) {
        if (g.xi_lower <= g.xi_upper && g.cost < best.cost) {
            best = g;
        }
    }
    return best;
}

Outcome comparative_trend() {
    Check check;
    Stopwatch clock;
    const Dataset data = lognormal_items(800);
    const QuerySet queries(make_queries(100, 64, 801));
    auto run = [&](IndexMode mode, std::size_t m, double xi1, double xi2) {
        EvalConfig config;
        config.index = make_config(mode, m, 1, 16, 0);
        config.index.params = config.index.params.with_xi(xi1, xi2);
        config.truth_depth = 20;
        config.item_counts = {2048, 4096, 8192};
        return mean_curve_recall(bootstrap_eval(data, queries, config, 10, 810));
    };
    const Genome xi = tune_xi(data);
    const double fuzzy = run(IndexMode::fuzzy2_neq, 9, xi.xi_lower, xi.xi_upper);
    const double untuned = run(IndexMode::fuzzy2_neq, 9, 8.5, 9.1);
    const double neq = run(IndexMode::neq_kmeans, 9, 8.5, 9.1);
    const double pq = run(IndexMode::pq, 8, 8.5, 9.1);
    check.expect(fuzzy >= neq - 0.01, "Fuzzy-2 NEQ " + fmt("%.4f", fuzzy) + " < NEQ " + fmt("%.4f", neq) + " - 0.01");
    check.expect(fuzzy >= pq - 0.01 && neq >= pq - 0.01, "NEQ variant more than 0.01 below PQ " + fmt("%.4f", pq));
    check.note("recall Fuzzy-2 NEQ " + fmt("%.4f", fuzzy) + " at tuned xi (" + fmt("%.3g", xi.xi_lower) + ", " +
               fmt("%.3g", xi.xi_upper) + "), " + fmt("%.4f", untuned) + " at (8.5, 9.1); NEQ " + fmt("%.4f", neq) +
               ", PQ " + fmt("%.4f", pq) + ", " + fmt("%.1f s", clock.seconds()));
    netflix_check(check);
    return check.done();
}

Outcome query_cost_parity() {
    Check check;
    const Dataset data(make_items({.n = 20000, .dim = 56, .clusters = 32, .seed = 900}));
    const Matrix queries = make_queries(200, 56, 901);
    const auto pq = train_neq(data, make_config(IndexMode::pq, 8, 0, 16, 902));
    const auto fz = train_neq(data, make_config(IndexMode::fuzzy2_neq, 8, 1, 16, 902));

    auto time_scan = [&](const IndexArtifact& index) {
        double best = INFINITY;
        volatile double sink = 0.0;
        for (int rep = 0; rep < 7; ++rep) {
            Stopwatch clock;
            for (std::size_t k = 0; k < queries.rows(); ++k) {
                sink = sink + scan_scores(queries.row(k), index)[0];
            }
            best = std::min(best, clock.seconds());
        }
        return best / static_cast<double>(queries.rows());
    };
    time_scan(pq);
    const double t_pq = time_scan(pq);
    const double t_fz = time_scan(fz);
    check.expect(t_fz <= 1.25 * t_pq, "Fuzzy-2 NEQ scan " + fmt("%.3g", t_fz) + " s vs PQ " + fmt("%.3g", t_pq));

    ScanCounters c_fz;
    scan_scores(queries.row(0), fz, &c_fz);
    const std::uint64_t n = data.size();
    check.expect(c_fz.items == n && c_fz.lookups == 7 * n && c_fz.norm_adds == 1 * n && c_fz.multiplies == n,
                 "Fuzzy-2 NEQ operation counts differ from (m-m') lookups + m' adds + 1 multiply per item");
    ScanCounters c_pq;
    scan_scores(queries.row(0), pq, &c_pq);
    check.expect(c_pq.items == n && c_pq.lookups == 8 * n && c_pq.norm_adds == 0 && c_pq.multiplies == 0,
                 "PQ operation counts differ from m lookups per item");
    check.note("per query: Fuzzy-2 NEQ " + fmt("%.3g", t_fz * 1e3) + " ms, PQ " + fmt("%.3g", t_pq * 1e3) +
               " ms, ratio " + fmt("%.3f", t_fz / t_pq));
    return check.done();
}

Outcome metric_closed_forms() {
    Check check;
    const std::vector<idx_t> a{1, 2, 3, 4};
    const std::vector<idx_t> b{1, 2};
    const std::vector<idx_t> c{5, 6};
    check.expect(f1(1.0, 0.5) == 2.0 / 3.0, "f1(1, 0.5) != 2/3");
    check.expect(f1(0.4, 0.4) == 0.4, "f1(p, p) != p");
    check.expect(f1(0.0, 0.0) == 0.0, "f1(0, 0) != 0");
    check.expect(recall(a, b) == 1.0 && precision(a, b) == 0.5, "superset retrieval");
    check.expect(recall(b, a) == 0.5 && precision(b, a) == 1.0, "subset retrieval");
    check.expect(recall(c, b) == 0.0 && precision(c, b) == 0.0, "disjoint retrieval");
    check.expect(recall(a, a) == 1.0 && precision(a, a) == 1.0 && f1(1.0, 1.0) == 1.0, "identical sets");
    check.expect(f1(precision(a, b), recall(a, b)) == 2.0 / 3.0, "composed f1");
    return check.done();
}

Outcome persistence_round_trip() {
    Check check;
    const auto dir = std::filesystem::temp_directory_path() / "fneq_acceptance_indexes";
    std::filesystem::create_directories(dir);
    const IndexMode modes[] = {IndexMode::pq, IndexMode::rq, IndexMode::neq_kmeans, IndexMode::fuzzy2_neq,
                               IndexMode::fuzzy2_neq};
    for (std::uint64_t s = 0; s < 5; ++s) {
        const Dataset data(make_items({.n = 800, .dim = 24, .clusters = 6, .seed = 1100 + s}));
        const std::size_t m = modes[s] == IndexMode::rq ? 2 : (is_norm_explicit(modes[s]) ? 4 : 3);
        const auto index = train_neq(data, make_config(modes[s], m, 1, s == 4 ? 300 : 32, 1110 + s));
        const auto path = dir / ("index" + std::to_string(s) + ".fneq");
        save_index(path, index);
        const auto loaded = load_index(path);
        const Matrix queries = make_queries(20, 24, 1120 + s);
        for (std::size_t k = 0; k < queries.rows(); ++k) {
            check.expect(top_k(queries.row(k), index, 50) == top_k(queries.row(k), loaded, 50),
                         "index " + std::to_string(s) + " ranking changed after reload");
        }
    }
    std::filesystem::remove_all(dir);
    return check.done();
}

Outcome tuner_sanity() {
    Check check;
    GAConfig config;
    const auto result = ga_optimize(make_quadratic_objective(8.5, 9.1), config);
    check.expect(std::abs(result.best.xi_lower - 8.5) <= 0.1 && std::abs(result.best.xi_upper - 9.1) <= 0.1,
                 "optimum (" + fmt("%.3f", result.best.xi_lower) + ", " + fmt("%.3f", result.best.xi_upper) + ")");

    const auto grid = grid_costs(make_quadratic_objective(8.5, 9.1), config.lower_bound, config.upper_bound, 11);
    std::ostringstream out;
    write_grid_csv(out, grid);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    check.expect(line == "xi1,xi2,cost", "grid header '" + line + "'");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string cell;
        std::size_t cols = 0;
        while (std::getline(fields, cell, ',')) {
            std::size_t used = 0;
            std::stod(cell, &used);
            check.expect(used == cell.size(), "unparseable grid cell '" + cell + "'");
            ++cols;
        }
        check.expect(cols == 3, "grid row with " + std::to_string(cols) + " columns");
        ++rows;
    }
    check.expect(rows == 121, "grid has " + std::to_string(rows) + " rows");
    check.note("optimum (" + fmt("%.3f", result.best.xi_lower) + ", " + fmt("%.3f", result.best.xi_upper) + ") after " +
               std::to_string(result.generations) + " generations");
    return check.done();
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"transform identities", transform_identities},
        {"Lloyd optimality", lloyd_optimality},
        {"exact recovery", exact_recovery},
        {"fast estimate equals reconstruction", estimate_matches_reconstruction},
        {"Sugeno properties and interval collapse", sugeno_properties},
        {"IT2FPCM invariants", it2fpcm_invariants},
        {"norm error reduction", norm_error_reduction},
        {"comparative recall trend", comparative_trend},
        {"query cost parity", query_cost_parity},
        {"metric closed forms", metric_closed_forms},
        {"persistence round trip", persistence_round_trip},
        {"GA tuner sanity", tuner_sanity},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Stopwatch clock;
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s %2zu %s (%.2f s)%s%s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    clock.seconds(), outcome.detail.empty() ? "" : ": ", outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
