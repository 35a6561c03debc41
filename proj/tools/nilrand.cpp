// nilrand command-line interface.

#include "nilrand/nilrand.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nilrand;
using nlohmann::json;

namespace {

// Integers that fit in 64 bits are emitted as numbers, larger ones as strings.
json int_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

json to_json(const GroupDescriptor& g) {
    json j = {{"kind", to_string(g.kind)},
              {"d", int_json(g.d)},
              {"mu", int_json(g.mu)},
              {"DD", int_json(g.DD)},
              {"k", g.k ? int_json(*g.k) : json(nullptr)},
              {"torsion_pair", {int_json(g.torsion_pair.first), int_json(g.torsion_pair.second)}},
              {"is_abelian", g.is_abelian},
              {"is_cyclic_Z", g.is_cyclic_Z},
              {"is_bs_type", g.is_bs_type},
              {"description", describe(g)}};
    return j;
}

json to_json(const QuotientOrder& q) {
    json inv = json::array();
    for (const Integer& x : q.abelian_invariants) inv.push_back(int_json(x));
    return {{"d", int_json(q.d)},
            {"Delta", int_json(q.Delta)},
            {"K", int_json(q.K)},
            {"gamma", int_json(q.gamma)},
            {"order", q.order ? int_json(*q.order) : json("INFINITE")},
            {"finite", q.is_finite()},
            {"abelian_invariants", inv}};
}

Integer parse_integer(const std::string& text) {
    std::size_t start = 0;
    while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
    std::size_t end = text.size();
    while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    const std::string body = text.substr(start, end - start);
    const std::size_t digits = body.size() - ((!body.empty() && (body[0] == '-' || body[0] == '+')) ? 1 : 0);
    if (digits == 0 || body.find_first_not_of("0123456789", body.size() - digits) != std::string::npos)
        throw Error(ErrorCode::invalid_argument, "not an integer: '" + text + "'");
    return Integer(body[0] == '+' ? body.substr(1) : body);
}

std::vector<MalcevTriple> parse_relators(const std::string& text) {
    std::vector<MalcevTriple> R;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        if (group.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<Integer> parts;
        std::stringstream fields(group);
        std::string field;
        while (std::getline(fields, field, ',')) parts.push_back(parse_integer(field));
        if (parts.size() != 3) throw Error(ErrorCode::invalid_argument, "relator '" + group + "' needs i,j,k");
        R.push_back({parts[0], parts[1], parts[2]});
    }
    return R;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::invalid_argument, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorCode::invalid_argument, "write to '" + path + "' failed");
}

std::string predict_table(int max_m) {
    std::ostringstream os;
    os << "m\tr=m-1\tr=m\n";
    auto row = [&](int m) {
        os << m << '\t' << truncated_string(prob_cyclic(m, m - 1).value, 4) << '\t'
           << truncated_string(prob_cyclic(m, m).value, 4) << '\n';
    };
    for (int m = 2; m <= max_m; ++m) row(m);
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random nilpotent groups: Heisenberg quotients, predictions and Monte Carlo campaigns"};
    app.set_version_flag("--version", std::string(NILRAND_VERSION));
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand("classify", "Classify H(Z)/<<a^i b^j c^k>>");
    std::string ci, cj, ck;
    classify->add_option("--i", ci, "a-exponent")->required();
    classify->add_option("--j", cj, "b-exponent")->required();
    classify->add_option("--k", ck, "c-exponent")->required();

    // order
    auto* order = app.add_subcommand("order", "Order data of H(Z)/<<R>>");
    std::string relators;
    order->add_option("--relators", relators, "relators as \"i,j,k;i,j,k;...\"")->required();

    // predict
    auto* predict = app.add_subcommand("predict", "Closed-form predictions");
    predict->require_subcommand(1);
    auto* table = predict->add_subcommand("table", "Cyclic-quotient probabilities, truncated to 4 digits");
    int max_m = 10;
    table->add_option("--max-m", max_m, "largest rank")->check(CLI::Range(2, 1000));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo campaigns");
    std::string kind_name;
    ExperimentConfig cfg;
    std::string csv_path, json_path;
    simulate->add_option("kind", kind_name, "heatmap|heis-table|balanced-orders|dd-census")
        ->required()
        ->check(CLI::IsMember({"heatmap", "heis-table", "balanced-orders", "dd-census"}));
    simulate->add_option("--m", cfg.m, "rank (heatmap only)");
    simulate->add_option("--r-min", cfg.r_min, "smallest relator count");
    simulate->add_option("--r-max", cfg.r_max, "largest relator count");
    simulate->add_option("--len", cfg.len, "relator length");
    simulate->add_option("--trials", cfg.trials, "trials per relator count");
    simulate->add_option("--seed", cfg.seed, "64-bit seed");
    simulate->add_option("--out", csv_path, "CSV report")->required();
    simulate->add_option("--json", json_path, "JSON report");

    // appendix
    auto* appendix = app.add_subcommand("appendix", "Arithmetic statistics of random relators");
    std::string which;
    int am = 2, ak = 3, coords = 1;
    std::size_t alen = 1000, atrials = 10000, an = 5;
    std::uint64_t aseed = 1;
    std::string aout;
    appendix->add_option("which", which, "uniformity|primitivity|det-gcd|monotonicity")
        ->required()
        ->check(CLI::IsMember({"uniformity", "primitivity", "det-gcd", "monotonicity"}));
    appendix->add_option("--m", am, "rank");
    appendix->add_option("--len", alen, "relator length (walk length for monotonicity)");
    appendix->add_option("--trials", atrials, "trials");
    appendix->add_option("--seed", aseed, "64-bit seed");
    appendix->add_option("--n", an, "modulus (uniformity)");
    appendix->add_option("--coords", coords, "coordinates tested jointly (uniformity)");
    appendix->add_option("--k", ak, "number of matrices (det-gcd)");
    appendix->add_option("--out", aout, "CSV output (monotonicity: the exact distribution)");

    unsigned workers = default_workers();
    for (auto* sub : {simulate, appendix}) sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) {
            std::cout << to_json(classify_one_relator({parse_integer(ci), parse_integer(cj), parse_integer(ck)})).dump(2)
                      << '\n';
        } else if (*order) {
            std::cout << to_json(heis_quotient_order(parse_relators(relators))).dump(2) << '\n';
        } else if (*table) {
            std::cout << predict_table(max_m);
        } else if (*simulate) {
            cfg.kind = parse_experiment_kind(kind_name);
            cfg.workers = workers;
            ExperimentReport report = run_experiment(cfg);
            report.predicted = compare_with_predictions(report);
            std::ostringstream csv;
            write_csv(report, csv);
            write_file(csv_path, csv.str());
            if (!json_path.empty()) write_file(json_path, to_json(report).dump(2) + "\n");
            for (const ComparisonEntry& e : report.predicted) {
                char line[200];
                std::snprintf(line, sizeof line, "r=%d %s: empirical %.4f predicted %.4f z=%+.2f%s\n", e.r,
                              e.event.c_str(), e.empirical, e.predicted.value, e.z, e.flagged ? " FLAGGED" : "");
                std::cout << line;
            }
        } else if (*appendix) {
            json out = {{"which", which}, {"m", am}, {"seed", aseed}};
            if (which == "uniformity") {
                out["len"] = alen, out["n"] = an, out["trials"] = atrials, out["coords"] = coords;
                out["max_deviation"] = residue_deviation(am, alen, an, atrials, aseed, coords, workers);
            } else if (which == "primitivity") {
                out["len"] = alen, out["trials"] = atrials;
                out["frequency"] = primitivity_frequency(am, alen, atrials, aseed, workers);
                out["predicted"] = prob_primitive(am).value;
            } else if (which == "det-gcd") {
                const DetGcdStats s = det_gcd_frequency(am, ak, alen, atrials, aseed, workers);
                out["k"] = ak, out["len"] = alen, out["trials"] = atrials;
                out["frequency"] = s.frequency();
                out["singular_frequency"] = s.singular_frequency();
                out["predicted"] = prob_gcd_dets_one(am, ak).value;
            } else {
                out.erase("seed");
                const CoordDist d = exact_coord_dist(am, alen);
                out["len"] = alen;
                out["monotone"] = check_monotonicity(d);
                if (!aout.empty()) {
                    std::ostringstream csv;
                    csv << "x,numerator,denominator,probability\n";
                    const auto L = static_cast<std::int64_t>(alen);
                    for (std::int64_t x = -L; x <= L; ++x) {
                        char p[40];
                        std::snprintf(p, sizeof p, "%.17g", d.probability_value(x));
                        csv << x << ',' << d.count(x) << ',' << d.denominator << ',' << p << '\n';
                    }
                    write_file(aout, csv.str());
                }
            }
            std::cout << out.dump(2) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
        return 2;
    }
    return 0;
}
