#pragma once

// Seeded Monte Carlo campaigns over random relator sets, with CSV and JSON
// reports and comparison against the closed-form predictions.
//
// Every campaign enumerates its trials globally: row i (relator count
// r_min + i) owns trials [i * trials, (i + 1) * trials), and global trial g
// draws all of its relators from RngStream(seed, g). Reports therefore do
// not depend on the number of workers.

#include "nilrand/error.hpp"
#include "nilrand/heiscalc.hpp"
#include "nilrand/integer.hpp"
#include "nilrand/parallel.hpp"
#include "nilrand/predict.hpp"
#include "nilrand/quotients.hpp"
#include "nilrand/randwalk.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#ifndef NILRAND_VERSION
#define NILRAND_VERSION "0.1.0"
#endif

namespace nilrand {

enum class ExperimentKind { rank_heatmap, heis_table, balanced_orders, dd_census };

inline const char* to_string(ExperimentKind kind) noexcept {
    switch (kind) {
    case ExperimentKind::rank_heatmap: return "heatmap";
    case ExperimentKind::heis_table: return "heis-table";
    case ExperimentKind::balanced_orders: return "balanced-orders";
    case ExperimentKind::dd_census: return "dd-census";
    }
    return "unknown";
}

inline ExperimentKind parse_experiment_kind(const std::string& name) {
    for (auto kind : {ExperimentKind::rank_heatmap, ExperimentKind::heis_table, ExperimentKind::balanced_orders,
                      ExperimentKind::dd_census})
        if (name == to_string(kind)) return kind;
    throw Error(ErrorCode::invalid_argument, "unknown experiment kind '" + name + "'");
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::rank_heatmap;
    int m = 2;
    int s = 2;
    int r_min = 1;
    int r_max = 1;
    std::size_t len = 1000;
    std::size_t trials = 1000; ///< per relator count
    std::uint64_t seed = 1;
    unsigned workers = default_workers();
    std::size_t table_cap = k_default_table_cap;

    /// Heisenberg kinds run on N_{2,2}; balanced orders use r = 2 and the
    /// one-relator census r = 1.
    ExperimentConfig normalized() const {
        ExperimentConfig c = *this;
        if (c.kind != ExperimentKind::rank_heatmap) c.m = 2, c.s = 2;
        if (c.kind == ExperimentKind::balanced_orders) c.r_min = c.r_max = 2;
        if (c.kind == ExperimentKind::dd_census) c.r_min = c.r_max = 1;
        return c;
    }

    void validate() const {
        if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
        if (len < 2) throw Error(ErrorCode::invalid_length, "relator length must be at least 2");
        if (m < 1) throw Error(ErrorCode::invalid_rank, "rank must be at least 1");
        if (r_min < 0 || r_max < r_min) throw Error(ErrorCode::invalid_argument, "bad relator-count range");
        if (kind != ExperimentKind::rank_heatmap && (m != 2 || s != 2))
            throw Error(ErrorCode::unsupported, "Heisenberg experiments need m = 2, s = 2");
    }
};

struct ReportRow {
    int r = 0;
    std::vector<std::int64_t> counts; ///< aligned with ExperimentReport::labels
    std::optional<Integer> largest_finite_order;
};

/// One predicted-vs-empirical comparison for an event in a report row.
struct ComparisonEntry {
    int r = 0;
    std::string event;
    ProbValue predicted;
    std::int64_t hits = 0;
    std::int64_t trials = 0;
    double empirical = 0.0;
    double z = 0.0;
    bool flagged = false; ///< |z| > 4
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<std::string> labels;
    std::vector<ReportRow> rows;
    std::map<std::string, std::int64_t> tallies;
    std::map<Integer, std::int64_t> order_histogram;                ///< balanced orders: finite nonabelian orders
    std::map<std::pair<Integer, Integer>, std::int64_t> dd_pairs;   ///< census: (d^2/D, d) -> count
    std::vector<ComparisonEntry> predicted;

    std::int64_t count(int r, const std::string& label) const {
        for (const ReportRow& row : rows) {
            if (row.r != r) continue;
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == label) return row.counts[i];
        }
        throw Error(ErrorCode::invalid_argument, "no cell (" + std::to_string(r) + ", " + label + ")");
    }

    double frequency(int r, const std::string& label) const {
        return static_cast<double>(count(r, label)) / static_cast<double>(config.trials);
    }

    std::int64_t tally(const std::string& key) const {
        auto it = tallies.find(key);
        return it == tallies.end() ? 0 : it->second;
    }
};

namespace detail {

inline std::vector<Word> draw_relators(int m, int r, std::size_t len, RngStream& rng) {
    std::vector<Word> R;
    R.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) R.push_back(random_relator(m, len, rng));
    return R;
}

inline std::vector<MalcevTriple> heis_coords(const std::vector<Word>& R) {
    std::vector<MalcevTriple> out;
    out.reserve(R.size());
    for (const Word& w : R) out.push_back(malcev_coords(w));
    return out;
}

inline std::uint64_t global_trial(const ExperimentConfig& c, int r, std::size_t t) {
    return static_cast<std::uint64_t>(r - c.r_min) * c.trials + t;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Rank heatmap: rank of Z^m / <R> (equivalently of N_{s,m}/<<R>>)

inline ExperimentReport run_rank_heatmap(const ExperimentConfig& input) {
    const ExperimentConfig cfg = input.normalized();
    if (cfg.kind != ExperimentKind::rank_heatmap) throw Error(ErrorCode::invalid_argument, "not a heatmap config");
    cfg.validate();
    ExperimentReport report{cfg, {}, {}, {}, {}, {}, {}};
    for (int k = 0; k <= cfg.m; ++k) report.labels.push_back("rank" + std::to_string(k));
    for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
        const auto ranks = run_trials<int>(cfg.trials, cfg.workers, [&](std::size_t t) {
            RngStream rng(cfg.seed, detail::global_trial(cfg, r, t));
            return static_cast<int>(nilpotent_quotient_profile(cfg.m, detail::draw_relators(cfg.m, r, cfg.len, rng)).rank);
        });
        ReportRow row{r, std::vector<std::int64_t>(static_cast<std::size_t>(cfg.m) + 1, 0), std::nullopt};
        for (int k : ranks) ++row.counts[static_cast<std::size_t>(k)];
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Multi-relator Heisenberg quotients

namespace heis_bucket {
inline constexpr int trivial = 0, cyclic_infinite = 1, cyclic_finite = 2, abelian_noncyclic_infinite = 3,
                     abelian_noncyclic_finite = 4, nonabelian_infinite = 5, nonabelian_finite = 6;
}

inline std::vector<std::string> heis_table_labels() {
    return {"trivial",           "cyclic_infinite",          "cyclic_finite",
            "abelian_noncyclic_infinite", "abelian_noncyclic_finite", "nonabelian_infinite",
            "nonabelian_finite"};
}

/// Bucket of H(Z)/<<R>>: nonabelian iff c survives (gamma != 1), cyclic iff
/// the abelianization has rank <= 1, finite iff Delta > 0.
inline int classify_heis_quotient(const QuotientOrder& q) {
    const std::size_t rank = rank_and_dim(q.abelian_invariants).rank;
    const bool finite = q.Delta > 0;
    const bool nonabelian = q.gamma != 1;
    const bool trivial = q.order && *q.order == 1;
    if (trivial && nonabelian) throw Error(ErrorCode::internal, "trivial quotient with surviving commutator");
    if (nonabelian && rank < 2) throw Error(ErrorCode::internal, "nonabelian quotient with cyclic abelianization");
    if (trivial != (rank == 0)) throw Error(ErrorCode::internal, "triviality disagrees with abelianization");
    if (trivial) return heis_bucket::trivial;
    if (nonabelian) return finite ? heis_bucket::nonabelian_finite : heis_bucket::nonabelian_infinite;
    if (rank <= 1) return finite ? heis_bucket::cyclic_finite : heis_bucket::cyclic_infinite;
    return finite ? heis_bucket::abelian_noncyclic_finite : heis_bucket::abelian_noncyclic_infinite;
}

inline ExperimentReport run_heis_table(const ExperimentConfig& input) {
    const ExperimentConfig cfg = input.normalized();
    if (cfg.kind != ExperimentKind::heis_table) throw Error(ErrorCode::invalid_argument, "not a heis-table config");
    cfg.validate();
    if (cfg.r_min < 1) throw Error(ErrorCode::invalid_argument, "Heisenberg table needs at least one relator");
    ExperimentReport report{cfg, heis_table_labels(), {}, {}, {}, {}, {}};
    struct Outcome {
        int bucket = 0;
        std::optional<Integer> order;
    };
    for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
        const auto outcomes = run_trials<Outcome>(cfg.trials, cfg.workers, [&](std::size_t t) {
            RngStream rng(cfg.seed, detail::global_trial(cfg, r, t));
            const QuotientOrder q = heis_quotient_order(detail::heis_coords(detail::draw_relators(2, r, cfg.len, rng)));
            return Outcome{classify_heis_quotient(q), q.order};
        });
        ReportRow row{r, std::vector<std::int64_t>(report.labels.size(), 0), std::nullopt};
        for (const Outcome& o : outcomes) {
            ++row.counts[static_cast<std::size_t>(o.bucket)];
            if (o.order && (!row.largest_finite_order || *o.order > *row.largest_finite_order))
                row.largest_finite_order = o.order;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Balanced (two-relator) quotients of H(Z) with short relators

inline ExperimentReport run_balanced_orders(const ExperimentConfig& input) {
    const ExperimentConfig cfg = input.normalized();
    if (cfg.kind != ExperimentKind::balanced_orders)
        throw Error(ErrorCode::invalid_argument, "not a balanced-orders config");
    cfg.validate();
    ExperimentReport report{cfg, {"infinite", "finite_abelian", "finite_nonabelian"}, {}, {}, {}, {}, {}};
    struct Outcome {
        int bucket = 0;
        std::optional<Integer> order;
        bool d_cubed_divides = true;
        std::string name; ///< isomorphism name for order 8
    };
    const auto outcomes = run_trials<Outcome>(cfg.trials, cfg.workers, [&](std::size_t t) {
        RngStream rng(cfg.seed, detail::global_trial(cfg, 2, t));
        const auto R = detail::heis_coords(detail::draw_relators(2, 2, cfg.len, rng));
        const QuotientOrder q = heis_quotient_order(R);
        Outcome o;
        if (!q.order) return o;
        o.order = q.order;
        if (q.gamma == 1) {
            o.bucket = 1;
            return o;
        }
        o.bucket = 2;
        o.d_cubed_divides = *q.order % (q.d * q.d * q.d) == 0;
        if (*q.order == 8) o.name = identify_small_group(build_finite_quotient(R, cfg.table_cap));
        return o;
    });
    ReportRow row{2, std::vector<std::int64_t>(3, 0), std::nullopt};
    report.tallies = {{"Q8", 0}, {"D4", 0}, {"order8_other", 0}, {"d3_exceptions", 0}};
    for (const Outcome& o : outcomes) {
        ++row.counts[static_cast<std::size_t>(o.bucket)];
        if (o.bucket != 2) continue;
        ++report.order_histogram[*o.order];
        if (!row.largest_finite_order || *o.order > *row.largest_finite_order) row.largest_finite_order = o.order;
        if (!o.d_cubed_divides) ++report.tallies["d3_exceptions"];
        if (*o.order == 8) ++report.tallies[o.name == "Q8" || o.name == "D4" ? o.name : "order8_other"];
    }
    report.rows.push_back(std::move(row));
    return report;
}

// ---------------------------------------------------------------------------
// One-relator census of (d^2/D, d)

inline ExperimentReport run_dd_census(const ExperimentConfig& input) {
    const ExperimentConfig cfg = input.normalized();
    if (cfg.kind != ExperimentKind::dd_census) throw Error(ErrorCode::invalid_argument, "not a dd-census config");
    cfg.validate();
    ExperimentReport report{cfg, {"cyclic_Z", "bs_type", "other_generic", "central", "trivial_relator"}, {}, {}, {}, {}, {}};
    struct Outcome {
        int bucket = 4;
        std::pair<Integer, Integer> pair;
    };
    const auto outcomes = run_trials<Outcome>(cfg.trials, cfg.workers, [&](std::size_t t) {
        RngStream rng(cfg.seed, detail::global_trial(cfg, 1, t));
        const MalcevTriple g = malcev_coords(random_relator(2, cfg.len, rng));
        Outcome o;
        if (g == heis_identity()) return o;
        const GroupDescriptor desc = classify_one_relator(g);
        if (desc.kind == RelatorKind::central_relator) {
            o.bucket = 3;
            return o;
        }
        o.pair = {desc.torsion_pair.first, desc.d};
        o.bucket = desc.is_cyclic_Z ? 0 : (desc.is_bs_type ? 1 : 2);
        return o;
    });
    ReportRow row{1, std::vector<std::int64_t>(report.labels.size(), 0), std::nullopt};
    for (const Outcome& o : outcomes) {
        ++row.counts[static_cast<std::size_t>(o.bucket)];
        if (o.bucket <= 2) ++report.dd_pairs[o.pair];
    }
    report.tallies["distinct_pairs"] = static_cast<std::int64_t>(report.dd_pairs.size());
    report.rows.push_back(std::move(row));
    return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
    case ExperimentKind::rank_heatmap: return run_rank_heatmap(cfg);
    case ExperimentKind::heis_table: return run_heis_table(cfg);
    case ExperimentKind::balanced_orders: return run_balanced_orders(cfg);
    case ExperimentKind::dd_census: return run_dd_census(cfg);
    }
    throw Error(ErrorCode::invalid_argument, "unknown experiment kind");
}

// ---------------------------------------------------------------------------
// Predictions

namespace detail {

inline ComparisonEntry compare_event(int r, std::string event, ProbValue predicted, std::int64_t hits,
                                     std::int64_t trials) {
    ComparisonEntry e{r, std::move(event), predicted, hits, trials, 0.0, 0.0, false};
    e.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    const double p = predicted.value;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    if (sigma > 0) e.z = (e.empirical - p) / sigma;
    else e.z = e.empirical == p ? 0.0 : INFINITY;
    e.flagged = std::abs(e.z) > 4.0;
    return e;
}

} // namespace detail

/// Predicted probabilities for every event of the report that has a
/// closed form, with empirical frequencies and z-scores.
inline std::vector<ComparisonEntry> compare_with_predictions(const ExperimentReport& report) {
    std::vector<ComparisonEntry> out;
    const auto n = static_cast<std::int64_t>(report.config.trials);
    const int m = report.config.m;
    for (const ReportRow& row : report.rows) {
        const int r = row.r;
        auto cell = [&](const std::string& label) { return report.count(r, label); };
        switch (report.config.kind) {
        case ExperimentKind::rank_heatmap: {
            if (m < 2) break;
            std::int64_t below = 0, cyclic = 0;
            for (int k = 0; k < m; ++k) below += row.counts[static_cast<std::size_t>(k)];
            cyclic = row.counts[0] + row.counts[1];
            if (r >= 1) out.push_back(detail::compare_event(r, "rank<m", prob_rank_drop(m, r), below, n));
            if (r == m - 1 || r == m) out.push_back(detail::compare_event(r, "cyclic", prob_cyclic(m, r), cyclic, n));
            if (r > m) out.push_back(detail::compare_event(r, "trivial", prob_trivial(m, r), row.counts[0], n));
            break;
        }
        case ExperimentKind::heis_table: {
            const std::int64_t cyclic = cell("trivial") + cell("cyclic_infinite") + cell("cyclic_finite");
            if (r == 1) out.push_back(detail::compare_event(r, "cyclic", prob_cyclic(2, 1), cyclic, n));
            if (r == 2) out.push_back(detail::compare_event(r, "cyclic", prob_cyclic(2, 2), cyclic, n));
            if (r > 2) out.push_back(detail::compare_event(r, "trivial", prob_trivial(2, r), cell("trivial"), n));
            break;
        }
        case ExperimentKind::dd_census: {
            out.push_back(detail::compare_event(r, "cyclic_Z", prob_primitive(2), cell("cyclic_Z"), n));
            const ProbValue z2 = prob_primitive(2), z3 = prob_primitive(3);
            const ProbValue bs{z3.value - z2.value, z3.err_bound + z2.err_bound};
            out.push_back(detail::compare_event(r, "bs_type", bs, cell("bs_type"), n));
            break;
        }
        case ExperimentKind::balanced_orders: break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

/// CSV: a header of bucket labels and one row per relator count; the
/// one-relator census instead lists (d2_over_D, d, count) sorted by pair.
inline void write_csv(const ExperimentReport& report, std::ostream& os) {
    if (report.config.kind == ExperimentKind::dd_census) {
        os << "d2_over_D,d,count\n";
        for (const auto& [pair, count] : report.dd_pairs) os << pair.first << ',' << pair.second << ',' << count << '\n';
        return;
    }
    const bool with_orders = report.config.kind != ExperimentKind::rank_heatmap;
    os << 'r';
    for (const std::string& label : report.labels) os << ',' << label;
    if (with_orders) os << ",largest_finite_order";
    os << '\n';
    for (const ReportRow& row : report.rows) {
        os << row.r;
        for (std::int64_t c : row.counts) os << ',' << c;
        if (with_orders) {
            os << ',';
            if (row.largest_finite_order) os << *row.largest_finite_order;
        }
        os << '\n';
    }
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
    return {{"kind", to_string(c.kind)}, {"m", c.m},       {"s", c.s},         {"r_min", c.r_min},
            {"r_max", c.r_max},          {"len", c.len},   {"trials", c.trials}, {"seed", c.seed},
            {"table_cap", c.table_cap}};
}

inline nlohmann::json to_json(const ExperimentReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& row : report.rows) {
        nlohmann::json cells = nlohmann::json::object();
        for (std::size_t i = 0; i < report.labels.size(); ++i) cells[report.labels[i]] = row.counts[i];
        nlohmann::json entry = {{"r", row.r}, {"cells", cells}};
        if (row.largest_finite_order) entry["largest_finite_order"] = row.largest_finite_order->str();
        rows.push_back(entry);
    }
    nlohmann::json j = {{"version", NILRAND_VERSION},
                        {"config", to_json(report.config)},
                        {"labels", report.labels},
                        {"rows", rows},
                        {"tallies", report.tallies}};
    if (!report.order_histogram.empty()) {
        nlohmann::json h = nlohmann::json::array();
        for (const auto& [order, count] : report.order_histogram) h.push_back({{"order", order.str()}, {"count", count}});
        j["order_histogram"] = h;
    }
    if (!report.dd_pairs.empty()) {
        nlohmann::json p = nlohmann::json::array();
        for (const auto& [pair, count] : report.dd_pairs)
            p.push_back({{"d2_over_D", pair.first.str()}, {"d", pair.second.str()}, {"count", count}});
        j["dd_pairs"] = p;
    }
    if (!report.predicted.empty()) {
        nlohmann::json p = nlohmann::json::array();
        for (const ComparisonEntry& e : report.predicted)
            p.push_back({{"r", e.r},
                         {"event", e.event},
                         {"predicted", e.predicted.value},
                         {"err_bound", e.predicted.err_bound},
                         {"hits", e.hits},
                         {"trials", e.trials},
                         {"empirical", e.empirical},
                         {"z", e.z},
                         {"flagged", e.flagged}});
        j["predicted"] = p;
    }
    return j;
}

} // namespace nilrand
