#include "homlab/adjoint.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace homlab {

Graph p3(const Graph& g) {
    const int n = g.vertex_count();
    // boolean cube of the adjacency relation
    std::vector<std::vector<char>> a1(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) {
        a1[e.u][e.v] = 1;
        a1[e.v][e.u] = 1;
    }
    auto mul = [&](const std::vector<std::vector<char>>& x,
                   const std::vector<std::vector<char>>& y) {
        std::vector<std::vector<char>> out(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < n; ++t)
                if (x[i][t])
                    for (int j = 0; j < n; ++j)
                        if (y[t][j]) out[i][j] = 1;
        return out;
    };
    auto a3 = mul(mul(a1, a1), a1);
    Graph out(n);
    for (Vertex v = 0; v < n; ++v) out.set_label(v, g.label(v));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (a3[i][j]) out.add_edge(i, j);
    return out;
}

std::optional<int> P3Inverse::index_of(Vertex u, const std::vector<Vertex>& a) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i].u == u && labels[i].a == a) return static_cast<int>(i);
    return std::nullopt;
}

P3Inverse p3_inverse(const Graph& g, int degree_guard, bool force) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > degree_guard && !force)
            throw DegreeGuard("p3_inverse: vertex degree " + std::to_string(g.degree(v)) +
                              " exceeds the subset guard; pass force to override");

    P3Inverse out;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        const auto& nb = g.neighbors(u);
        const int deg = static_cast<int>(nb.size());
        for (unsigned mask = 1; mask < (1u << deg); ++mask) {
            AdjointVertex av{u, {}};
            for (int i = 0; i < deg; ++i)
                if (mask & (1u << i)) av.a.push_back(nb[i]);
            out.labels.push_back(std::move(av));
        }
    }
    const int n = static_cast<int>(out.labels.size());
    out.graph = Graph(n);
    for (int i = 0; i < n; ++i) {
        std::ostringstream label;
        label << g.display(out.labels[i].u) << ":{";
        for (size_t t = 0; t < out.labels[i].a.size(); ++t) {
            if (t) label << ",";
            label << g.display(out.labels[i].a[t]);
        }
        label << "}";
        out.graph.set_label(i, label.str());
    }
    auto joined = [&](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
        for (Vertex x : a)
            for (Vertex y : b)
                if (!g.has_edge(x, y)) return false;
        return true;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const auto& p = out.labels[i];
            const auto& q = out.labels[j];
            bool u_in_b = std::binary_search(q.a.begin(), q.a.end(), p.u);
            bool v_in_a = std::binary_search(p.a.begin(), p.a.end(), q.u);
            if (u_in_b && v_in_a && joined(p.a, q.a)) out.graph.add_edge(i, j);
        }
    return out;
}

Hom transpose(const Graph& g, const Graph& h, const Graph& p3g, const P3Inverse& p3ih,
              const Hom& f, TransposeDirection direction) {
    if (direction == TransposeDirection::right_to_left) {
        // f : G -> P3^-1(H)  ~>  first-coordinate map P3(G) -> H
        if (!(*f.source == g) || !(*f.target == p3ih.graph) || !f.valid())
            throw InvalidHom("transpose: f is not a valid hom G -> P3^-1(H)");
        Hom out{&p3g, &h, {}};
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            out.map.push_back(p3ih.labels[f.map[v]].u);
        if (!out.valid()) throw InvalidHom("transpose: first-coordinate map is not a hom");
        return out;
    }
    // f : P3(G) -> H  ~>  g |-> (f(g), f(N_G(g)))
    if (!(*f.source == p3g) || !(*f.target == h) || !f.valid())
        throw InvalidHom("transpose: f is not a valid hom P3(G) -> H");
    Hom out{&g, &p3ih.graph, {}};
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::vector<Vertex> image;
        for (Vertex w : g.neighbors(v)) image.push_back(f.map[w]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto idx = p3ih.index_of(f.map[v], image);
        if (!idx)
            throw InvalidHom("transpose: image neighbourhood is not a subset vertex (vertex " +
                             std::to_string(v) + ")");
        out.map.push_back(*idx);
    }
    if (!out.valid()) throw InvalidHom("transpose: subset map is not a hom");
    return out;
}

Hom unit_map(const Graph& g, const Graph& p3g, const P3Inverse& p3i_of_p3g) {
    Hom identity{&p3g, &p3g, {}};
    for (Vertex v = 0; v < p3g.vertex_count(); ++v) identity.map.push_back(v);
    return transpose(g, p3g, p3g, p3i_of_p3g, identity, TransposeDirection::left_to_right);
}

Hom girth13_psi(const Graph& k, const Graph& p3k, const P3Inverse& p3i) {
    std::vector<Vertex> witness;
    auto gr = girth(k, &witness);
    if (gr.has_value() && *gr < 13)
        throw GirthTooSmall("girth13_psi: girth " + std::to_string(*gr) + " < 13", witness);

    // BFS distances in K
    const int n = k.vertex_count();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (Vertex s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::deque<Vertex> q{s};
        while (!q.empty()) {
            Vertex v = q.front();
            q.pop_front();
            for (Vertex w : k.neighbors(v))
                if (dist[s][w] == -1) {
                    dist[s][w] = dist[s][v] + 1;
                    q.push_back(w);
                }
        }
    }

    Hom out{&p3i.graph, &k, {}};
    for (const auto& av : p3i.labels) {
        // common neighbourhood of A inside K
        std::vector<Vertex> cn;
        for (Vertex x = 0; x < n; ++x) {
            bool all = true;
            for (Vertex a : av.a)
                if (!k.has_edge(x, a)) {
                    all = false;
                    break;
                }
            if (all) cn.push_back(x);
        }
        if (cn.empty()) {
            out.map.push_back(av.u);
            continue;
        }
        // unique closest element of CN(A); ties would witness a girth bug
        Vertex best = -1;
        bool tie = false;
        for (Vertex x : cn) {
            if (dist[av.u][x] == -1) continue;
            if (best == -1 || dist[av.u][x] < dist[av.u][best]) {
                best = x;
                tie = false;
            } else if (dist[av.u][x] == dist[av.u][best]) {
                tie = true;
            }
        }
        if (best == -1 || tie)
            throw ConsistencyError("girth13_psi: closest common neighbour is not unique");
        out.map.push_back(best);
    }
    if (!out.valid()) throw ConsistencyError("girth13_psi: map failed validation");
    return out;
}

}  // namespace homlab
