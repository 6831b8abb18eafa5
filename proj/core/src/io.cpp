#include "homlab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace homlab {

namespace {

struct PendingGraph {
    int max_vertex = -1;
    std::vector<std::pair<int, int>> edges;
    std::map<int, std::string> labels;
};

Graph finish(const PendingGraph& p) {
    Graph g(p.max_vertex + 1);
    for (auto& [v, name] : p.labels) g.set_label(v, name);
    for (auto& [u, v] : p.edges) g.add_edge(u, v);
    return g;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    PendingGraph p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "label") {
            int v;
            std::string name;
            if (!(ls >> v >> name))
                throw Error("edge list line " + std::to_string(lineno) + ": bad label line");
            p.max_vertex = std::max(p.max_vertex, v);
            p.labels[v] = name;
            continue;
        }
        if (first == "vertices") {  // optional explicit vertex count
            int n;
            if (!(ls >> n)) throw Error("edge list: bad vertices line");
            p.max_vertex = std::max(p.max_vertex, n - 1);
            continue;
        }
        int u, v;
        try {
            u = std::stoi(first);
        } catch (...) {
            throw Error("edge list line " + std::to_string(lineno) + ": expected vertex id");
        }
        if (!(ls >> v))
            throw Error("edge list line " + std::to_string(lineno) + ": expected `u v`");
        p.max_vertex = std::max({p.max_vertex, u, v});
        p.edges.push_back({u, v});
    }
    return finish(p);
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_edge_list(in);
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "vertices " << g.vertex_count() << "\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!g.label(v).empty()) out << "label " << v << " " << g.label(v) << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

std::string to_dot(const Graph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        out << "  v" << v << " [label=\"" << g.display(v) << "\"];\n";
    }
    for (const Edge& e : g.edges()) out << "  v" << e.u << " -- v" << e.v << ";\n";
    out << "}\n";
    return out.str();
}

namespace {

Vertex resolve_vertex(const Graph& host, const std::string& token) {
    try {
        size_t pos = 0;
        int v = std::stoi(token, &pos);
        if (pos == token.size()) return v;
    } catch (...) {
    }
    if (auto v = host.find_label(token)) return *v;
    throw Error("unknown vertex token '" + token + "'");
}

}  // namespace

Walk parse_walk(const Graph& host, const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw Error("walk format is `start; v1 v2 ...`");
    std::vector<Vertex> verts;
    {
        std::istringstream head(text.substr(0, semi));
        std::string tok;
        if (!(head >> tok)) throw Error("walk: missing start vertex");
        verts.push_back(resolve_vertex(host, tok));
        if (head >> tok) throw Error("walk: one start vertex expected before ';'");
    }
    std::istringstream rest(text.substr(semi + 1));
    std::string tok;
    while (rest >> tok) verts.push_back(resolve_vertex(host, tok));
    return Walk(&host, std::move(verts));
}

std::string format_walk(const Walk& w) {
    std::ostringstream out;
    out << w.start() << ";";
    for (size_t i = 1; i < w.verts().size(); ++i) out << " " << w.verts()[i];
    return out.str();
}

std::string format_hom(const Hom& h) {
    std::ostringstream out;
    for (Vertex v = 0; v < h.source->vertex_count(); ++v)
        out << v << " -> " << h.map[v] << "\n";
    return out.str();
}

Hom parse_hom(const Graph& source, const Graph& target, std::istream& in) {
    Hom h{&source, &target, std::vector<Vertex>(source.vertex_count(), -1)};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string u, arrow, v;
        if (!(ls >> u)) continue;
        if (!(ls >> arrow >> v) || arrow != "->")
            throw Error("hom line must be `u -> k(u)`");
        h.map.at(resolve_vertex(source, u)) = resolve_vertex(target, v);
    }
    for (Vertex v = 0; v < source.vertex_count(); ++v)
        if (h.map[v] == -1) throw Error("hom misses vertex " + std::to_string(v));
    return h;
}

std::vector<Vertex> parse_table(const Graph& target, const std::string& text) {
    std::vector<Vertex> table;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        // trim
        auto b = token.find_first_not_of(" \t");
        auto e = token.find_last_not_of(" \t");
        if (b == std::string::npos) throw Error("table: empty entry");
        table.push_back(resolve_vertex(target, token.substr(b, e - b + 1)));
    }
    if (table.empty()) throw Error("table: no entries");
    return table;
}

std::string format_table(const std::vector<Vertex>& table) {
    std::ostringstream out;
    for (size_t i = 0; i < table.size(); ++i) {
        if (i) out << ",";
        out << table[i];
    }
    return out.str();
}

}  // namespace homlab
