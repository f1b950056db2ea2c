// Command-line front end: graph generation, Markov-property enumeration,
// discovery runs, oracle comparison and the benchmark grid.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlbn/commands.hpp"
#include "mlbn/mlbn.hpp"

namespace {

// 0 success, 1 assertion/comparison failure, 2 usage error, 3 resource or
// genericity error.
template <class F>
int run_mapped(F&& f) {
    try {
        return f();
    } catch (const mlbn::genericity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mlbn::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mlbn::generation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const mlbn::inconsistency_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

mlbn::Criterion parse_criterion(const std::string& s) {
    auto c = mlbn::criterion_from_string(s);
    if (!c) throw CLI::ValidationError("criterion must be d, star or cstar");
    return *c;
}

mlbn::OracleKind parse_oracle(const std::string& s) {
    if (s == "d") return mlbn::OracleKind::d;
    if (s == "star") return mlbn::OracleKind::star;
    if (s == "cstar") return mlbn::OracleKind::cstar;
    throw CLI::ValidationError("oracle must be d, star or cstar");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal discovery for max-linear Bayesian networks"};
    app.require_subcommand(1);

    // gen
    mlbn::GenOptions gen;
    std::string gen_seed;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a random weighted DAG");
    cmd_gen->add_option("--nodes", gen.nodes, "Node count")->required();
    cmd_gen->add_option("--max-indegree", gen.max_indegree, "Maximum in-degree")->required();
    cmd_gen->add_option("--seed", gen_seed, "RNG seed (drawn and printed when absent)");
    double gen_edge_prob = -1;
    cmd_gen->add_option("--edge-prob", gen_edge_prob, "Bernoulli edge probability per candidate parent");
    cmd_gen->add_option("--weight-min", gen.weight_min, "Lower weight bound");
    cmd_gen->add_option("--weight-max", gen.weight_max, "Upper weight bound");
    cmd_gen->add_option("--out", gen.out, "Output file (stdout when absent)");

    // markov
    mlbn::MarkovOptions markov;
    std::string markov_criterion = "cstar";
    int markov_max_cond = -1;
    auto* cmd_markov = app.add_subcommand("markov", "Enumerate the global Markov property");
    cmd_markov->add_option("--graph", markov.graph, "Graph file (.json or edge list)")->required();
    cmd_markov->add_option("--criterion", markov_criterion, "d, star or cstar");
    cmd_markov->add_option("--max-cond-size", markov_max_cond, "Cap on |K|");
    cmd_markov->add_option("--out", markov.out, "Output file (stdout when absent)");

    // discover
    mlbn::DiscoverOptions discover;
    std::string discover_oracle = "cstar";
    int discover_max_cycle_len = -1, discover_max_cond = -1;
    auto* cmd_discover = app.add_subcommand("discover", "Run discovery against an oracle");
    cmd_discover->add_option("--graph", discover.graph, "Graph file")->required();
    cmd_discover->add_option("--oracle", discover_oracle, "d, star or cstar");
    auto* cycles_flag = cmd_discover->add_flag("--cycles", "Force cycle orientation on");
    auto* no_cycles_flag = cmd_discover->add_flag("--no-cycles", "Force cycle orientation off");
    cmd_discover->add_option("--max-cycle-len", discover_max_cycle_len, "Induced cycle length cap");
    cmd_discover->add_option("--max-cond", discover_max_cond, "Skeleton conditioning-set cap");
    cmd_discover->add_option("--format", discover.format, "json or dot");
    cmd_discover->add_option("--out", discover.out, "Output file (stdout when absent)");

    // compare
    mlbn::CompareOptions compare;
    std::string compare_oracles = "d,star";
    auto* cmd_compare = app.add_subcommand("compare", "Compare PC output under two oracles");
    cmd_compare->add_option("--graph", compare.graph, "Graph file")->required();
    cmd_compare->add_option("--oracles", compare_oracles, "Comma-separated pair, e.g. d,star");

    // bench
    mlbn::BenchOptions bench;
    std::string bench_nodes = "10,15,20", bench_degrees = "2,3,4", bench_seed;
    auto* cmd_bench = app.add_subcommand("bench", "Benchmark grid with CSV output");
    cmd_bench->add_option("--nodes", bench_nodes, "Comma-separated node counts");
    cmd_bench->add_option("--max-indegree", bench_degrees, "Comma-separated in-degree caps");
    cmd_bench->add_option("--replicates", bench.replicates, "Replicates per (n, d) cell");
    cmd_bench->add_option("--seed", bench_seed, "Master seed (drawn and printed when absent)");
    cmd_bench->add_option("--csv", bench.csv, "CSV output file (stdout when absent)");
    cmd_bench->add_option("--details", bench.details, "Optional per-replicate CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto parse_int_list = [](const std::string& s) {
        std::vector<int> out;
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
        if (out.empty()) throw std::invalid_argument("empty list");
        return out;
    };

    if (cmd_gen->parsed()) {
        return run_mapped([&] {
            if (!gen_seed.empty()) gen.seed = std::stoull(gen_seed);
            if (gen_edge_prob >= 0) gen.edge_prob = gen_edge_prob;
            return mlbn::cmd_gen(gen, std::cout, std::cerr);
        });
    }
    if (cmd_markov->parsed()) {
        return run_mapped([&] {
            markov.criterion = parse_criterion(markov_criterion);
            if (markov_max_cond >= 0) markov.max_cond_size = markov_max_cond;
            return mlbn::cmd_markov(markov, std::cout, std::cerr);
        });
    }
    if (cmd_discover->parsed()) {
        return run_mapped([&] {
            discover.oracle = parse_oracle(discover_oracle);
            if (cycles_flag->count() && no_cycles_flag->count())
                throw std::invalid_argument("--cycles and --no-cycles are mutually exclusive");
            if (cycles_flag->count()) discover.cycles = true;
            if (no_cycles_flag->count()) discover.cycles = false;
            if (discover_max_cycle_len >= 0) discover.max_cycle_len = discover_max_cycle_len;
            if (discover_max_cond >= 0) discover.max_cond = discover_max_cond;
            return mlbn::cmd_discover(discover, std::cout, std::cerr);
        });
    }
    if (cmd_compare->parsed()) {
        return run_mapped([&] {
            auto comma = compare_oracles.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("--oracles expects a pair like d,star");
            compare.first = parse_oracle(compare_oracles.substr(0, comma));
            compare.second = parse_oracle(compare_oracles.substr(comma + 1));
            return mlbn::cmd_compare(compare, std::cout, std::cerr);
        });
    }
    if (cmd_bench->parsed()) {
        return run_mapped([&] {
            bench.nodes = parse_int_list(bench_nodes);
            bench.degrees = parse_int_list(bench_degrees);
            if (!bench_seed.empty()) {
                bench.seed = std::stoull(bench_seed);
            } else {
                bench.seed = (static_cast<uint64_t>(std::random_device{}()) << 32) ^
                             std::random_device{}();
                std::cerr << "seed: " << bench.seed << "\n";
            }
            return mlbn::cmd_bench(bench, std::cout, std::cerr);
        });
    }
    return 2;
}
