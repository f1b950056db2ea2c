#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "mlbn/dag.hpp"
#include "mlbn/pdag.hpp"
#include "mlbn/separation.hpp"
#include "mlbn/weighted_dag.hpp"

namespace mlbn {

/// Canonical on-disk graph document. Weights are optional per edge; a graph
/// is usable for C*-separation only when every edge carries one.
struct GraphFile {
    int n = 0;
    std::vector<std::tuple<int, int, std::optional<double>>> edges;
    std::optional<std::vector<std::string>> labels;

    bool fully_weighted() const {
        for (auto& [u, v, w] : edges)
            if (!w) return false;
        return true;
    }

    bool operator==(const GraphFile& o) const {
        return n == o.n && edges == o.edges && labels == o.labels;
    }
};

inline GraphFile graph_file_from(const WeightedDag& w) {
    GraphFile f;
    f.n = w.node_count();
    for (auto [u, v] : w.dag().edges()) f.edges.emplace_back(u, v, w.weight(u, v));
    return f;
}

inline GraphFile graph_file_from(const Dag& g) {
    GraphFile f;
    f.n = g.node_count();
    for (auto [u, v] : g.edges()) f.edges.emplace_back(u, v, std::nullopt);
    return f;
}

inline Dag to_dag(const GraphFile& f) {
    std::vector<Edge> es;
    for (auto& [u, v, w] : f.edges) es.emplace_back(u, v);
    return Dag(f.n, std::move(es));
}

inline WeightedDag to_weighted_dag(const GraphFile& f) {
    if (!f.fully_weighted())
        throw std::invalid_argument("graph file has unweighted edges; weights are required");
    std::vector<WeightedEdge> es;
    for (auto& [u, v, w] : f.edges) es.emplace_back(u, v, *w);
    return WeightedDag(f.n, es);
}

inline std::string write_graph_json(const GraphFile& f) {
    nlohmann::json j;
    j["n"] = f.n;
    j["edges"] = nlohmann::json::array();
    for (auto& [u, v, w] : f.edges) {
        nlohmann::json e{{"from", u}, {"to", v}};
        if (w) e["weight"] = *w;
        j["edges"].push_back(std::move(e));
    }
    if (f.labels) j["labels"] = *f.labels;
    return j.dump(2) + "\n";
}

inline GraphFile parse_graph_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad graph JSON: ") + e.what());
    }
    GraphFile f;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("graph JSON: missing integer field \"n\"");
    f.n = j["n"].get<int>();
    if (j.contains("edges")) {
        for (auto& e : j["edges"]) {
            int u = e.at("from").get<int>();
            int v = e.at("to").get<int>();
            std::optional<double> w;
            if (e.contains("weight")) {
                w = e["weight"].get<double>();
                if (!(*w > 0)) throw std::invalid_argument("graph JSON: weights must be positive");
            }
            if (u < 0 || u >= f.n || v < 0 || v >= f.n)
                throw std::invalid_argument("graph JSON: edge endpoint out of range");
            f.edges.emplace_back(u, v, w);
        }
    }
    if (j.contains("labels")) f.labels = j["labels"].get<std::vector<std::string>>();
    to_dag(f);  // validates acyclicity and duplicates
    return f;
}

/// Plain "u v [w]" edge list, one edge per line, '#' comments; the node count
/// is one past the largest id mentioned.
inline GraphFile parse_edge_list(const std::string& text) {
    GraphFile f;
    std::istringstream in(text);
    std::string line;
    int max_id = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw std::invalid_argument("edge list: expected \"u v [w]\"");
        std::optional<double> w;
        double wv;
        if (ls >> wv) {
            if (!(wv > 0)) throw std::invalid_argument("edge list: weights must be positive");
            w = wv;
        }
        if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative node id");
        max_id = std::max({max_id, u, v});
        f.edges.emplace_back(u, v, w);
    }
    f.n = max_id + 1;
    to_dag(f);
    return f;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

/// JSON when the name ends in .json, edge list otherwise.
inline GraphFile load_graph_file(const std::string& path) {
    const std::string text = read_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_graph_json(text);
    return parse_edge_list(text);
}

inline std::string write_statements_json(const std::vector<CiStatement>& statements) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& s : statements) j.push_back({{"i", s.i}, {"j", s.j}, {"K", s.cond}});
    return j.dump(2) + "\n";
}

inline std::vector<CiStatement> parse_statements_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad statements JSON: ") + e.what());
    }
    std::vector<CiStatement> out;
    for (auto& s : j) {
        CiStatement st;
        st.i = s.at("i").get<int>();
        st.j = s.at("j").get<int>();
        st.cond = s.at("K").get<std::vector<int>>();
        out.push_back(std::move(st));
    }
    return out;
}

inline std::string write_cpdag_json(const Pdag& p) {
    nlohmann::json j;
    j["n"] = p.node_count();
    j["directed"] = nlohmann::json::array();
    for (auto [u, v] : p.directed_edges()) j["directed"].push_back({u, v});
    j["undirected"] = nlohmann::json::array();
    for (auto [u, v] : p.undirected_edges()) j["undirected"].push_back({u, v});
    j["possible_sources"] = nlohmann::json::array();
    for (auto& ps : p.possible_sources())
        j["possible_sources"].push_back(
            {{"cycle", ps.cycle}, {"candidates", {ps.candidates[0], ps.candidates[1]}}});
    return j.dump(2) + "\n";
}

inline Pdag parse_cpdag_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad CPDAG JSON: ") + e.what());
    }
    Pdag p(j.at("n").get<int>());
    for (auto& e : j.at("directed")) p.add_directed(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& e : j.at("undirected")) p.add_undirected(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("possible_sources"))
        for (auto& ps : j["possible_sources"]) {
            PossibleSources s;
            s.cycle = ps.at("cycle").get<std::vector<int>>();
            s.candidates = {ps.at("candidates").at(0).get<int>(),
                            ps.at("candidates").at(1).get<int>()};
            p.annotate_possible_sources(std::move(s));
        }
    return p;
}

/// DOT rendering: directed edges keep their arrowheads, undirected edges are
/// drawn with dir=none.
inline std::string write_cpdag_dot(const Pdag& p, const std::string& name = "cpdag") {
    std::ostringstream out;
    out << "digraph " << name << " {\n";
    for (int v = 0; v < p.node_count(); ++v) out << "  " << v << ";\n";
    for (auto [u, v] : p.directed_edges()) out << "  " << u << " -> " << v << ";\n";
    for (auto [u, v] : p.undirected_edges())
        out << "  " << u << " -> " << v << " [dir=none];\n";
    out << "}\n";
    return out.str();
}

}  // namespace mlbn
