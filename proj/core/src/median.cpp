#include "homlab/median.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "homlab/exponential.hpp"

namespace homlab {

int WeightedTreeView::total() const {
    int t = 0;
    for (auto& [v, w] : weights) t += w;
    return t;
}

namespace {

int parity_of(const CoverGraph& c, int v) {
    return static_cast<int>(c.word(v).size() - 1) % 2;
}

bool word_prefix(const std::vector<Vertex>& prefix, const std::vector<Vertex>& word) {
    if (prefix.size() > word.size()) return false;
    return std::equal(prefix.begin(), prefix.end(), word.begin());
}

}  // namespace

int median(const WeightedTreeView& view) {
    const CoverGraph& c = *view.cover;
    if (c.mode() != CoverGraph::Mode::universal)
        throw ModeError("median: weights must live on a universal cover tree");
    const int total = view.total();
    if (total % 2 == 0 || total <= 0) throw Error("median: total weight must be odd");
    const int majority = total / 2 + 1;
    for (auto& [v, w] : view.weights) {
        if (w < 0) throw Error("median: negative weight");
        if (w > 0 && !c.interior(v))
            throw IndeterminateAtBoundary("median: support touches the truncation boundary");
    }

    // walk towards the majority side; the first step of the path from cur to
    // a support vertex is read off the word tree directly
    int cur = view.weights.begin()->first;
    while (true) {
        if (!c.interior(cur))
            throw IndeterminateAtBoundary("median: walk reached the truncation boundary");
        const auto& wc = c.word(cur);
        int parent_weight = 0;
        std::map<Vertex, int> child_weight;  // next tree vertex -> weight behind it
        for (auto& [s, w] : view.weights) {
            if (w == 0 || s == cur) continue;
            const auto& ws = c.word(s);
            if (ws.size() > wc.size() && word_prefix(wc, ws))
                child_weight[ws[wc.size()]] += w;
            else
                parent_weight += w;
        }
        if (parent_weight >= majority) {
            auto parent = wc;
            parent.pop_back();
            cur = *c.find_word(parent);
            continue;
        }
        bool moved = false;
        for (auto& [next, w] : child_weight) {
            if (w < majority) continue;
            auto child = wc;
            child.push_back(next);
            auto id = c.find_word(child);
            if (!id) throw IndeterminateAtBoundary("median: majority side leaves the truncation");
            cur = *id;
            moved = true;
            break;
        }
        if (!moved) return cur;
    }
}

bool monochromatic(const CoverGraph& c, const Tuple& x) {
    for (size_t i = 1; i < x.size(); ++i)
        if (parity_of(c, x[i]) != parity_of(c, x[0])) return false;
    return true;
}

int psi(const CoverGraph& c, const Tuple& x) {
    return psi(c, x, c.context().steps().empty() ? PsiMode::square_free : PsiMode::one_square);
}

int psi(const CoverGraph& c, const Tuple& x, PsiMode mode) {
    if (x.empty() || x.size() % 2 == 0) throw Error("psi: tuple size must be odd");
    if (!monochromatic(c, x)) {
        // project to the odd-size monochromatic sub-tuple
        Tuple zero, one;
        for (int v : x) (parity_of(c, v) == 0 ? zero : one).push_back(v);
        return psi(c, zero.size() % 2 == 1 ? zero : one, mode);
    }

    WeightedTreeView view{&c, {}};
    for (int v : x) ++view.weights[v];
    const int k = static_cast<int>(x.size()) / 2;
    int m = median(view);
    if (parity_of(c, m) == parity_of(c, x[0])) return m;  // correctly coloured

    // the median has the wrong colour class; move to a neighbour
    const auto& nbs = c.skeleton().neighbors(m);
    if (nbs.empty()) throw IndeterminateAtBoundary("psi: median has no neighbours");
    if (!c.interior(m)) throw IndeterminateAtBoundary("psi: median not interior");

    auto least_tau = [&](const std::vector<int>& cands) {
        int best = -1;
        for (int v : cands)
            if (best == -1 || c.tau(v) < c.tau(best) || (c.tau(v) == c.tau(best) && v < best))
                best = v;
        return best;
    };

    if (mode == PsiMode::square_free)
        return least_tau(std::vector<int>(nbs.begin(), nbs.end()));

    // one_square mode: components of the cover minus the median
    std::vector<int> comp(c.vertex_count(), -1);
    int nc = 0;
    for (int nb : nbs) {
        if (comp[nb] != -1) continue;
        std::deque<int> q{nb};
        comp[nb] = nc;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : c.skeleton().neighbors(v)) {
                if (w == m || comp[w] != -1) continue;
                comp[w] = nc;
                q.push_back(w);
            }
        }
        ++nc;
    }
    std::vector<int> comp_weight(nc, 0);
    for (int v : x) {
        if (v == m) throw ConsistencyError("psi: entry equals an incorrectly coloured median");
        comp_weight[comp[v]] += 1;
    }
    std::vector<int> winners;
    for (int nb : nbs)
        if (comp_weight[comp[nb]] >= k + 1) winners.push_back(nb);
    if (!winners.empty()) return least_tau(winners);
    return least_tau(std::vector<int>(nbs.begin(), nbs.end()));
}

namespace {

struct VertexAssignment {
    Vertex value;
    bool boundary;  // retry with a bigger radius
};

// value of one component vertex via the lift of the arc (tables[u],tables[v])
std::optional<VertexAssignment> assign_via_edge(const Graph& k, const DismantlingSequence& d,
                                                int n, const ExpTable& hu, const ExpTable& hv,
                                                bool u_side,
                                                std::map<Vertex, CoverGraph>& covers,
                                                int radius) {
    Walk w = arc_closed_walk(k, n, hu, hv);
    Vertex root = w.iota();
    auto it = covers.find(root);
    if (it == covers.end())
        it = covers.emplace(root, CoverGraph::universal(d, root, radius)).first;
    const CoverGraph& cov = it->second;
    auto root_id = cov.find_word({root});
    auto lift = lift_walk(cov, *root_id, w);
    if (!lift) return VertexAssignment{-1, true};
    if (lift->front() != lift->back()) return std::nullopt;  // walk not epsilon
    Tuple x(n);
    for (int t = 0; t <= 2 * n; ++t) {
        bool even = t % 2 == 0;
        if (even == u_side && t < 2 * n) x[t % n] = (*lift)[t];
    }
    try {
        int image = psi(cov, x);
        return VertexAssignment{cov.tau(image), false};
    } catch (const IndeterminateAtBoundary&) {
        return VertexAssignment{-1, true};
    }
}

}  // namespace

CyclicHomResult cyclic_hom(const Graph& k, const DismantlingSequence& d, int n,
                           const ExpComponent& component) {
    const Graph& cg = component.graph;
    // precondition: every component edge lies in the epsilon subgraph
    for (const Edge& e : cg.edges())
        if (!eps_membership(d, n, component.tables[e.u], component.tables[e.v]))
            throw NotInEpsilon("cyclic_hom: a component edge has a nontrivial normal form");

    for (int radius = n + 4; radius <= n + 24; radius += 4) {
        std::map<Vertex, CoverGraph> covers;
        std::vector<Vertex> value(cg.vertex_count(), -1);
        bool retry = false;
        for (int v = 0; v < cg.vertex_count() && !retry; ++v) {
            std::vector<int> incident;
            for (int nb : cg.neighbors(v)) incident.push_back(nb);
            if (incident.empty()) {
                value[v] = component.tables[v][0];
                continue;
            }
            // two independent lifts when available; they must agree
            int checks = std::min<int>(2, static_cast<int>(incident.size()));
            for (int i = 0; i < checks; ++i) {
                int other = incident[i];
                bool u_side = true;
                auto res = assign_via_edge(k, d, n, component.tables[v],
                                           component.tables[other], u_side, covers, radius);
                if (!res) throw NotInEpsilon("cyclic_hom: arc walk failed to lift closed");
                if (res->boundary) {
                    retry = true;
                    break;
                }
                if (value[v] == -1)
                    value[v] = res->value;
                else if (value[v] != res->value)
                    throw ConsistencyError("cyclic_hom: two lifts disagree on a vertex value");
            }
        }
        if (retry) continue;

        Hom h{&cg, &k, value};
        for (const Edge& e : cg.edges())
            if (!k.has_edge(value[e.u], value[e.v]))
                return {std::nullopt, ObstructionWitness{e.u, e.v, value[e.u], value[e.v]}};
        return {h, std::nullopt};
    }
    throw IndeterminateAtBoundary("cyclic_hom: radius budget exhausted");
}

Hom retract_unicyclic(const CoverGraph& c) {
    if (c.mode() != CoverGraph::Mode::unicyclic)
        throw ModeError("retract_unicyclic: cover is not unicyclic");
    for (const Edge& e : c.base().edges())
        if (squares_through_edge(c.base(), e).size() > 1)
            throw ModeError("retract_unicyclic: a base edge lies in more than one square");

    const int n = c.vertex_count();
    const auto& cycle = c.central_cycle();
    const int m = static_cast<int>(cycle.size());
    std::vector<int> cycle_pos(n, -1);
    for (int i = 0; i < m; ++i) cycle_pos[cycle[i]] = i;

    // anchor and the first vertex on the path towards it
    std::vector<int> anchor(n, -1), toward(n, -1);
    {
        std::deque<int> q;
        for (int cv : cycle) {
            anchor[cv] = cv;
            toward[cv] = cv;
            q.push_back(cv);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : c.kernel_skeleton().neighbors(v)) {
                if (anchor[w] != -1) continue;
                anchor[w] = anchor[v];
                toward[w] = (cycle_pos[v] != -1) ? w : toward[v];
                q.push_back(w);
            }
        }
    }

    // step 1: parity-anchor map into distance <= 1
    std::vector<int> phi(n);
    for (int v = 0; v < n; ++v)
        phi[v] = (c.distance_to_cycle(v) % 2 == 0) ? anchor[v] : toward[v];
    for (const Edge& e : c.skeleton().edges())
        if (!c.skeleton().has_edge(phi[e.u], phi[e.v]))
            throw ConsistencyError("retract_unicyclic: anchor-parity map broke an edge");

    // step 2: clockwise-link map onto the cycle
    std::vector<int> psi2(n, -1);
    for (int v = 0; v < n; ++v) {
        if (cycle_pos[v] != -1) {
            psi2[v] = v;
            continue;
        }
        if (c.distance_to_cycle(v) != 1) continue;  // not in the image of phi
        int i = cycle_pos[anchor[v]];
        bool clockwise = false;
        for (int w : c.skeleton().neighbors(v)) {
            int aw = anchor[w];
            if (aw == -1) continue;
            int j = cycle_pos[aw];
            int fwd = ((j - i) % m + m) % m;
            if (fwd == 1 || fwd == 2) clockwise = true;
        }
        psi2[v] = clockwise ? cycle[(i + 1) % m] : cycle[(i - 1 + m) % m];
    }

    std::vector<int> f(n);
    for (int v = 0; v < n; ++v) f[v] = psi2[phi[v]];

    // step 3: eliminate distance-3 chords among cycle vertices
    std::vector<int> remap(n, -1);
    for (int v = 0; v < n; ++v) remap[v] = v;
    std::set<int> dropped;
    for (const Edge& e : c.skeleton().edges()) {
        if (cycle_pos[e.u] == -1 || cycle_pos[e.v] == -1) continue;
        int i = cycle_pos[e.u], j = cycle_pos[e.v];
        int fwd = ((j - i) % m + m) % m;
        if (fwd != 3 && fwd != m - 3) continue;
        int a = (fwd == 3) ? i : j;  // chord u_a -- u_{a+3}
        int inner1 = (a + 1) % m, inner2 = (a + 2) % m;
        if (dropped.count(inner1) || dropped.count(inner2))
            throw ConsistencyError("retract_unicyclic: overlapping chords");
        remap[cycle[inner1]] = cycle[(a + 3) % m];
        remap[cycle[inner2]] = cycle[a];
        dropped.insert(inner1);
        dropped.insert(inner2);
    }
    for (int v = 0; v < n; ++v) f[v] = remap[f[v]];

    Hom out{&c.skeleton(), &c.skeleton(), f};
    if (!out.valid()) throw ConsistencyError("retract_unicyclic: result is not edge-preserving");
    // a retraction fixes its image pointwise
    std::set<int> image(f.begin(), f.end());
    for (int v : image)
        if (f[v] != v) throw ConsistencyError("retract_unicyclic: image not fixed");
    // the image must induce an odd cycle
    std::vector<int> img(image.begin(), image.end());
    Graph sub = induced_subgraph(c.skeleton(), img);
    if (img.size() % 2 == 0 || !is_connected(sub))
        throw ConsistencyError("retract_unicyclic: image is not an odd cycle");
    for (Vertex v = 0; v < sub.vertex_count(); ++v)
        if (sub.degree(v) != 2) throw ConsistencyError("retract_unicyclic: image is not a cycle");
    return out;
}

}  // namespace homlab
