#include "homlab/cover.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace homlab {

namespace {

// append one arc to a reduced word, keeping it reduced
void push_arc(std::vector<Vertex>& word, Vertex next) {
    if (word.size() >= 2 && word[word.size() - 2] == next)
        word.pop_back();
    else
        word.push_back(next);
}

std::vector<Vertex> concat_reduce(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    // requires a.back() == b.front()
    std::vector<Vertex> out = a;
    for (size_t i = 1; i < b.size(); ++i) push_arc(out, b[i]);
    return out;
}

std::vector<Vertex> invert_word(const std::vector<Vertex>& w) {
    return std::vector<Vertex>(w.rbegin(), w.rend());
}

}  // namespace

std::optional<int> CoverGraph::find_word(const std::vector<Vertex>& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> CoverGraph::locate(const Walk& walk_from_root) const {
    if (walk_from_root.iota() != root_)
        throw RootMismatch("locate: walk does not start at the cover root");
    Walk nf = reduce(rho_rewrite(*context_, walk_from_root));
    std::vector<Vertex> w = nf.verts();
    if (mode_ == Mode::unicyclic) w = canon(std::move(w));
    return find_word(w);
}

std::vector<Vertex> CoverGraph::detour_path(int step) const {
    const auto& st = context_->steps()[step];
    Walk w(&context_->source(),
           std::vector<Vertex>(st.detour.begin(), st.detour.end()));
    for (size_t j = step + 1; j < context_->steps().size(); ++j)
        w = rho_rewrite_step(context_->steps()[j], w);
    return w.verts();
}

std::vector<Vertex> CoverGraph::canon(std::vector<Vertex> word) const {
    if (mode_ != Mode::unicyclic) return word;
    const auto& q = cycle_word_.verts();
    const auto qi = invert_word(q);
    const int qlen = cycle_word_.length();
    int reach = static_cast<int>(word.size()) / qlen + radius_ / qlen + 3;
    std::vector<Vertex> best = word;
    auto better = [](const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    };
    std::vector<Vertex> fwd = word, bwd = word;
    for (int k = 1; k <= reach; ++k) {
        fwd = concat_reduce(q, fwd);
        bwd = concat_reduce(qi, bwd);
        if (better(fwd, best)) best = fwd;
        if (better(bwd, best)) best = bwd;
    }
    return best;
}

// Shared construction: BFS the kernel-word skeleton from the seed set, then
// add one edge per complete lift of each cascaded detour.
CoverGraph build_cover(const DismantlingSequence& d, Vertex root, int radius, bool unicyclic,
                       const Walk* cyc_core) {
    CoverGraph c;
    c.context_ = &d;
    c.mode_ = unicyclic ? CoverGraph::Mode::unicyclic : CoverGraph::Mode::universal;
    c.radius_ = radius;
    const Graph& kernel = d.kernel();

    c.margin_ = 3;
    std::vector<std::vector<Vertex>> detours;
    for (size_t i = 0; i < d.steps().size(); ++i) {
        Walk w(&d.source(), std::vector<Vertex>(d.steps()[i].detour.begin(),
                                                d.steps()[i].detour.end()));
        for (size_t j = i + 1; j < d.steps().size(); ++j)
            w = rho_rewrite_step(d.steps()[j], w);
        detours.push_back(w.verts());
        c.margin_ = std::max(c.margin_, w.length());
    }

    if (unicyclic) {
        c.cycle_word_ = *cyc_core;
        c.root_ = cyc_core->iota();
    } else {
        c.root_ = root;
    }

    auto canon = [&](std::vector<Vertex> w) { return c.canon(std::move(w)); };

    // seed set
    std::deque<int> frontier;
    bool rejected = false;
    auto add_vertex = [&](const std::vector<Vertex>& word, int dist) {
        int id = static_cast<int>(c.words_.size());
        c.words_.push_back(word);
        c.index_[word] = id;
        c.tau_.push_back(word.back());
        c.cycle_dist_.push_back(dist);
        return id;
    };

    if (unicyclic) {
        const auto& q = cyc_core->verts();
        std::vector<Vertex> prefix{c.root_};
        for (int i = 0; i < cyc_core->length(); ++i) {
            auto rep = canon(prefix);
            if (!c.index_.count(rep)) {
                int id = add_vertex(rep, 0);
                c.cycle_.push_back(id);
                frontier.push_back(id);
            } else {
                c.cycle_.push_back(c.index_[rep]);
            }
            prefix.push_back(q[i + 1]);
        }
    } else {
        frontier.push_back(add_vertex({c.root_}, 0));
    }

    // kernel-word BFS
    while (!frontier.empty()) {
        int id = frontier.front();
        frontier.pop_front();
        int dist = c.cycle_dist_[id];
        std::vector<Vertex> word = c.words_[id];  // copy: words_ may reallocate
        for (Vertex nb : kernel.neighbors(word.back())) {
            std::vector<Vertex> child = word;
            push_arc(child, nb);
            auto rep = canon(std::move(child));
            auto it = c.index_.find(rep);
            if (it != c.index_.end()) continue;
            int ndist = unicyclic ? dist + 1 : static_cast<int>(rep.size()) - 1;
            if (ndist > radius) {
                rejected = true;
                continue;
            }
            frontier.push_back(add_vertex(rep, ndist));
        }
    }

    // skeleton graphs
    const int n = static_cast<int>(c.words_.size());
    c.skeleton_ = Graph(n);
    c.kernel_skeleton_ = Graph(n);
    for (int id = 0; id < n; ++id) {
        const auto& word = c.words_[id];
        for (Vertex nb : kernel.neighbors(word.back())) {
            std::vector<Vertex> other = word;
            push_arc(other, nb);
            auto rep = canon(std::move(other));
            auto it = c.index_.find(rep);
            if (it == c.index_.end()) continue;
            if (it->second == id) continue;  // cannot happen for reduced words
            c.skeleton_.add_edge(id, it->second);
            c.kernel_skeleton_.add_edge(id, it->second);
        }
    }

    // one edge per complete lift of each cascaded detour
    for (const auto& path : detours) {
        for (int id = 0; id < n; ++id) {
            if (c.tau_[id] != path.front()) continue;
            std::vector<Vertex> cur = c.words_[id];
            bool ok = true;
            int end = -1;
            for (size_t j = 1; j < path.size() && ok; ++j) {
                push_arc(cur, path[j]);
                auto rep = canon(cur);
                auto it = c.index_.find(rep);
                if (it == c.index_.end()) {
                    ok = false;
                } else {
                    cur = rep;
                    end = it->second;
                }
            }
            if (ok && end != -1 && end != id) c.skeleton_.add_edge(id, end);
        }
    }

    // interior flags
    c.interior_.assign(n, 0);
    bool closed = !rejected;
    for (int id = 0; id < n; ++id) {
        int dist = c.cycle_dist_[id];
        c.interior_[id] = closed || dist <= radius - c.margin_;
    }

    // labels for quick inspection
    for (int id = 0; id < n; ++id)
        c.skeleton_.set_label(id, d.source().display(c.tau_[id]));
    return c;
}

CoverGraph CoverGraph::universal(const DismantlingSequence& d, Vertex root, int radius) {
    if (radius < 1) throw Error("universal cover: radius must be >= 1");
    if (root < 0 || root >= d.source().vertex_count())
        throw Error("universal cover: root out of range");
    return build_cover(d, root, radius, false, nullptr);
}

CoverGraph CoverGraph::unicyclic(const DismantlingSequence& d, const Walk& r, int window) {
    if (!r.closed()) throw NotClosed("unicyclic cover: walk must be closed");
    Walk nf = reduce(rho_rewrite(d, r));
    Walk kernel_nf(&d.kernel(), nf.verts());
    if (kernel_nf.empty())
        throw TrivialWinding("unicyclic cover: walk reduces to epsilon, use the universal cover");
    auto [core, prefix] = cyclic_reduce(kernel_nf);
    return build_cover(d, core.iota(), window, true, &core);
}

CoverReport verify_covering_map(const CoverGraph& c) {
    CoverReport rep;
    const Graph& base = c.base();
    std::vector<char> vhit(base.vertex_count(), 0);
    std::vector<Edge> ehit;
    for (int id = 0; id < c.vertex_count(); ++id) {
        vhit[c.tau(id)] = 1;
        if (!c.interior(id)) continue;
        std::vector<Vertex> images;
        for (int nb : c.skeleton().neighbors(id)) images.push_back(c.tau(nb));
        std::sort(images.begin(), images.end());
        std::vector<Vertex> expect = base.neighbors(c.tau(id));
        if (images != expect) {
            rep.local_ok = false;
            std::ostringstream msg;
            msg << "tau not locally bijective at interior vertex " << id << " (tau="
                << base.display(c.tau(id)) << ")";
            rep.violations.push_back({id, msg.str()});
        }
        bool dup = std::adjacent_find(images.begin(), images.end()) != images.end();
        if (dup) {
            rep.local_ok = false;
            rep.violations.push_back({id, "duplicate tau among neighbours"});
        }
    }
    for (const Edge& e : c.skeleton().edges()) ehit.push_back(Edge(c.tau(e.u), c.tau(e.v)));
    std::sort(ehit.begin(), ehit.end());
    rep.vertex_surjective = std::all_of(vhit.begin(), vhit.end(), [](char x) { return x; });
    rep.edge_surjective = true;
    for (const Edge& e : base.edges())
        if (!std::binary_search(ehit.begin(), ehit.end(), e)) {
            rep.edge_surjective = false;
            break;
        }
    return rep;
}

std::optional<std::vector<int>> lift_walk(const CoverGraph& c, int start, const Walk& w) {
    if (!(*w.host() == c.base())) throw WrongHost("lift_walk: walk is not in the base");
    if (c.tau(start) != w.iota())
        throw RootMismatch("lift_walk: tau(start) != iota(walk)");
    std::vector<int> lift{start};
    int cur = start;
    for (int i = 0; i < w.length(); ++i) {
        Vertex next = w[i + 1];
        int found = -1;
        for (int nb : c.skeleton().neighbors(cur)) {
            if (c.tau(nb) != next) continue;
            if (found != -1)
                throw ConsistencyError("lift_walk: tau not injective on a neighbourhood");
            found = nb;
        }
        if (found == -1) return std::nullopt;  // lift exits the truncation
        lift.push_back(found);
        cur = found;
    }
    return lift;
}

std::vector<std::optional<int>> deck_transform(const CoverGraph& c, const Walk& a) {
    if (!a.closed() || a.iota() != c.root())
        throw RootMismatch("deck_transform: walk must be closed at the cover root");
    Walk na = reduce(rho_rewrite(c.context(), a));
    std::vector<std::optional<int>> out(c.vertex_count());
    for (int id = 0; id < c.vertex_count(); ++id) {
        auto word = concat_reduce(na.verts(), c.word(id));
        out[id] = c.find_word(c.canon(std::move(word)));
    }
    return out;
}

Graph cover_to_graph(const CoverGraph& c) {
    Graph g = c.skeleton();
    for (int id = 0; id < c.vertex_count(); ++id)
        g.set_label(id, c.base().display(c.tau(id)));
    return g;
}

std::string format_cover(const CoverGraph& c) {
    std::ostringstream out;
    for (int id = 0; id < c.vertex_count(); ++id) {
        out << id << " : " << c.base().display(c.tau(id)) << " : ";
        const auto& w = c.word(id);
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out << " ";
            out << c.base().display(w[i]);
        }
        out << " : " << (c.interior(id) ? "interior" : "boundary") << "\n";
    }
    for (const Edge& e : c.skeleton().edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

std::string cover_to_dot(const CoverGraph& c) {
    static const char* palette[] = {"#88bbee", "#eebb88", "#bbee88", "#ee88bb",
                                    "#8888ee", "#bbbbbb", "#eeee88", "#88eeee",
                                    "#ee8888", "#bb88ee"};
    std::ostringstream out;
    out << "graph cover {\n  node [style=filled];\n";
    for (int id = 0; id < c.vertex_count(); ++id) {
        out << "  v" << id << " [label=\"" << c.base().display(c.tau(id)) << "\", fillcolor=\""
            << palette[c.tau(id) % 10] << "\"";
        if (!c.interior(id)) out << ", shape=box";
        out << "];\n";
    }
    for (const Edge& e : c.skeleton().edges()) out << "  v" << e.u << " -- v" << e.v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace homlab
