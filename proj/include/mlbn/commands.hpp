#pragma once

#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mlbn/discovery.hpp"
#include "mlbn/io.hpp"
#include "mlbn/oracle.hpp"
#include "mlbn/random_models.hpp"
#include "mlbn/separation.hpp"
#include "mlbn/transitive_reduction.hpp"

namespace mlbn {

namespace detail {

inline void emit(const std::string& path, const std::string& content, std::ostream& fallback) {
    if (path.empty())
        fallback << content;
    else
        write_file(path, content);
}

}  // namespace detail

struct GenOptions {
    int nodes = 10;
    int max_indegree = 2;
    std::optional<uint64_t> seed;
    std::optional<double> edge_prob;
    double weight_min = 0.5;
    double weight_max = 2.0;
    std::string out;  // stdout when empty
};

/// Generate a random weighted DAG and write it as graph JSON. Without an
/// explicit seed one is drawn from system entropy and reported, so every run
/// stays replayable.
inline int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& diag) {
    GenConfig cfg;
    cfg.n = opt.nodes;
    cfg.max_in_degree = opt.max_indegree;
    cfg.edge_prob = opt.edge_prob;
    cfg.weight_min = opt.weight_min;
    cfg.weight_max = opt.weight_max;
    if (opt.seed) {
        cfg.seed = *opt.seed;
    } else {
        cfg.seed = (static_cast<uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
        diag << "seed: " << cfg.seed << "\n";
    }
    WeightedDag w = random_weighted_dag(cfg);
    detail::emit(opt.out, write_graph_json(graph_file_from(w)), out);
    return 0;
}

struct MarkovOptions {
    std::string graph;
    Criterion criterion = Criterion::cstar;
    std::optional<int> max_cond_size;
    std::string out;
};

/// Enumerate the global Markov property of a graph file under one criterion;
/// statements are emitted sorted by (i, j, |K|, K).
inline int cmd_markov(const MarkovOptions& opt, std::ostream& out, std::ostream&) {
    GraphFile f = load_graph_file(opt.graph);
    std::vector<CiStatement> statements;
    if (opt.criterion == Criterion::cstar) {
        statements = global_markov(to_weighted_dag(f), Criterion::cstar, opt.max_cond_size);
    } else {
        statements = global_markov(to_dag(f), opt.criterion, opt.max_cond_size);
    }
    detail::emit(opt.out, write_statements_json(statements), out);
    return 0;
}

struct DiscoverOptions {
    std::string graph;
    OracleKind oracle = OracleKind::cstar;
    std::optional<bool> cycles;
    std::optional<int> max_cycle_len;
    std::optional<int> max_cond;
    std::string format = "json";  // json | dot
    std::string out;
};

inline SeparationOracle make_oracle(const GraphFile& f, OracleKind kind) {
    switch (kind) {
        case OracleKind::d: return SeparationOracle::d_oracle(to_dag(f));
        case OracleKind::star: return SeparationOracle::star_oracle(to_dag(f));
        case OracleKind::cstar: return SeparationOracle::cstar_oracle(to_weighted_dag(f));
    }
    throw std::invalid_argument("unknown oracle kind");
}

/// Run the discovery pipeline against the chosen oracle and write the CPDAG.
inline int cmd_discover(const DiscoverOptions& opt, std::ostream& out, std::ostream& diag) {
    if (opt.format != "json" && opt.format != "dot")
        throw std::invalid_argument("discover: format must be json or dot");
    GraphFile f = load_graph_file(opt.graph);
    auto oracle = make_oracle(f, opt.oracle);
    DiscoveryOptions dopt;
    dopt.cycles = opt.cycles;
    dopt.max_cycle_len = opt.max_cycle_len;
    dopt.max_cond = opt.max_cond;
    DiscoveryResult r = pcstar(oracle, f.n, dopt);
    diag << "queries: " << r.stats.oracle_queries
         << "  max |K|: " << r.stats.max_cond_queried << "  ms: " << std::fixed
         << std::setprecision(1) << r.stats.wall_ms << "\n";
    detail::emit(opt.out,
                 opt.format == "dot" ? write_cpdag_dot(r.cpdag) : write_cpdag_json(r.cpdag), out);
    return 0;
}

struct CompareOptions {
    std::string graph;
    OracleKind first = OracleKind::d;
    OracleKind second = OracleKind::star;
};

/// Run PC (no cycle orientation) under two oracles; exit 0 iff the CPDAGs
/// coincide, otherwise report every differing edge and exit 1.
inline int cmd_compare(const CompareOptions& opt, std::ostream& out, std::ostream&) {
    GraphFile f = load_graph_file(opt.graph);
    DiscoveryOptions dopt;
    dopt.cycles = false;
    auto o1 = make_oracle(f, opt.first);
    auto o2 = make_oracle(f, opt.second);
    Pdag p1 = pcstar(o1, f.n, dopt).cpdag;
    Pdag p2 = pcstar(o2, f.n, dopt).cpdag;
    if (p1 == p2) {
        out << "identical CPDAGs under " << to_string(opt.first) << " and "
            << to_string(opt.second) << "\n";
        return 0;
    }
    out << "CPDAGs differ:\n";
    auto report = [&](const char* label, const std::vector<Edge>& a, const std::vector<Edge>& b) {
        for (auto e : a)
            if (std::find(b.begin(), b.end(), e) == b.end())
                out << "  " << label << " only in " << to_string(opt.first) << ": " << e.first
                    << (label[0] == 'd' ? " -> " : " - ") << e.second << "\n";
        for (auto e : b)
            if (std::find(a.begin(), a.end(), e) == a.end())
                out << "  " << label << " only in " << to_string(opt.second) << ": " << e.first
                    << (label[0] == 'd' ? " -> " : " - ") << e.second << "\n";
    };
    report("directed", p1.directed_edges(), p2.directed_edges());
    report("undirected", p1.undirected_edges(), p2.undirected_edges());
    return 1;
}

struct BenchOptions {
    std::vector<int> nodes{10, 15, 20};
    std::vector<int> degrees{2, 3, 4};
    int replicates = 50;
    uint64_t seed = 0;
    std::string csv;      // stdout when empty
    std::string details;  // optional per-replicate CSV
};

struct BenchRow {
    int n = 0, d = 0, replicates = 0;
    double mean_edges_g = 0, mean_edges_gtr = 0;
    double mean_recovered_plain = 0, mean_recovered_cycles = 0;
    double mean_queries = 0, mean_ms = 0;
    int failures = 0;
};

inline int count_recovered(const WeightedDag& ground_truth, const Pdag& cpdag) {
    int c = 0;
    for (auto [u, v] : ground_truth.dag().edges())
        if (cpdag.has_directed(u, v)) ++c;
    return c;
}

/// One benchmark replicate: paired discovery runs (cycle orientation off and
/// on) over the same model, sharing the skeleton and collider phases.
struct BenchReplicate {
    uint64_t seed = 0;
    int edges_g = 0, edges_gtr = 0;
    int recovered_plain = 0, recovered_cycles = 0;
    int directed_plain = 0, undirected_plain = 0;
    int directed_cycles = 0, undirected_cycles = 0;
    uint64_t queries = 0;
    double ms = 0;
};

inline BenchReplicate bench_replicate(const GenConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    BenchReplicate rep;
    rep.seed = cfg.seed;
    WeightedDag model = random_weighted_dag(cfg);
    ReducedModel red = weighted_transitive_reduction(model);
    rep.edges_g = model.dag().edge_count();
    rep.edges_gtr = red.reduced.dag().edge_count();

    auto oracle = SeparationOracle::cstar_oracle(model);
    auto skel_res = pc_skeleton(oracle, cfg.n);
    Pdag collided = orient_colliders(skel_res.skeleton, oracle, skel_res.sepsets);

    Pdag plain = meek_rules(collided);
    rep.recovered_plain = count_recovered(red.reduced, plain);
    rep.directed_plain = static_cast<int>(plain.directed_edges().size());
    rep.undirected_plain = static_cast<int>(plain.undirected_edges().size());

    Pdag cycled = collided;
    for (const auto& oc : find_orientable_cycles(collided, cfg.n))
        cycled = orient_cycle(std::move(cycled), oc, oracle).pdag;
    cycled = meek_rules(std::move(cycled));
    rep.recovered_cycles = count_recovered(red.reduced, cycled);
    rep.directed_cycles = static_cast<int>(cycled.directed_edges().size());
    rep.undirected_cycles = static_cast<int>(cycled.undirected_edges().size());

    rep.queries = oracle.stats().distinct_queries;
    rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    return rep;
}

inline std::string bench_csv_header() {
    return "n,d,replicates,mean_edges_G,mean_edges_Gtr,mean_recovered_plain,"
           "mean_recovered_cycles,mean_queries,mean_ms,failures";
}

inline std::string bench_details_header() {
    return "n,d,replicate,seed,edges_G,edges_Gtr,recovered_plain,recovered_cycles,"
           "directed_plain,undirected_plain,directed_cycles,undirected_cycles,queries,ms";
}

inline std::vector<BenchRow> run_bench(const BenchOptions& opt, std::ostream* details) {
    if (details) *details << bench_details_header() << "\n";
    std::vector<BenchRow> rows;
    uint64_t combo_index = 0;
    for (int n : opt.nodes)
        for (int d : opt.degrees) {
            const uint64_t combo_seed = derive_seed(opt.seed, combo_index++);
            BenchRow row;
            row.n = n;
            row.d = d;
            row.replicates = opt.replicates;
            int ok = 0;
            for (int r = 0; r < opt.replicates; ++r) {
                GenConfig cfg;
                cfg.n = n;
                cfg.max_in_degree = d;
                cfg.seed = derive_seed(combo_seed, static_cast<uint64_t>(r));
                try {
                    BenchReplicate rep = bench_replicate(cfg);
                    ++ok;
                    row.mean_edges_g += rep.edges_g;
                    row.mean_edges_gtr += rep.edges_gtr;
                    row.mean_recovered_plain += rep.recovered_plain;
                    row.mean_recovered_cycles += rep.recovered_cycles;
                    row.mean_queries += static_cast<double>(rep.queries);
                    row.mean_ms += rep.ms;
                    if (details)
                        *details << n << ',' << d << ',' << r << ',' << rep.seed << ','
                                 << rep.edges_g << ',' << rep.edges_gtr << ','
                                 << rep.recovered_plain << ',' << rep.recovered_cycles << ','
                                 << rep.directed_plain << ',' << rep.undirected_plain << ','
                                 << rep.directed_cycles << ',' << rep.undirected_cycles << ','
                                 << rep.queries << ',' << std::fixed << std::setprecision(2)
                                 << rep.ms << "\n";
                } catch (const generation_error&) {
                    ++row.failures;
                }
            }
            if (ok > 0) {
                row.mean_edges_g /= ok;
                row.mean_edges_gtr /= ok;
                row.mean_recovered_plain /= ok;
                row.mean_recovered_cycles /= ok;
                row.mean_queries /= ok;
                row.mean_ms /= ok;
            }
            rows.push_back(row);
        }
    return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << bench_csv_header() << "\n";
    out << std::fixed << std::setprecision(4);
    for (auto& r : rows)
        out << r.n << ',' << r.d << ',' << r.replicates << ',' << r.mean_edges_g << ','
            << r.mean_edges_gtr << ',' << r.mean_recovered_plain << ','
            << r.mean_recovered_cycles << ',' << r.mean_queries << ',' << r.mean_ms << ','
            << r.failures << "\n";
    return out.str();
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& diag) {
    std::optional<std::ofstream> details_file;
    std::ostream* details = nullptr;
    if (!opt.details.empty()) {
        details_file.emplace(opt.details);
        if (!*details_file) throw std::runtime_error("cannot write " + opt.details);
        details = &*details_file;
    }
    auto rows = run_bench(opt, details);
    detail::emit(opt.csv, bench_csv(rows), out);
    diag << "bench: " << rows.size() << " rows\n";
    return 0;
}

}  // namespace mlbn
