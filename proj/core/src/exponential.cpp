#include "homlab/exponential.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "homlab/median.hpp"

namespace homlab {

bool exp_adjacent(const Graph& k, int n, const ExpTable& f, const ExpTable& g) {
    if (static_cast<int>(f.size()) != n || static_cast<int>(g.size()) != n) return false;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (!k.has_edge(f[i], g[j]) || !k.has_edge(g[i], f[j])) return false;
    }
    return true;
}

std::optional<int> ExpComponent::index_of(const ExpTable& t) const {
    for (size_t i = 0; i < tables.size(); ++i)
        if (tables[i] == t) return static_cast<int>(i);
    return std::nullopt;
}

namespace {

// all tables adjacent to f: entry i ranges over N(f(i-1)) & N(f(i+1))
void enumerate_exp_neighbors(const Graph& k, int n, const ExpTable& f,
                             const std::function<void(const ExpTable&)>& emit) {
    std::vector<std::vector<Vertex>> cand(n);
    for (int i = 0; i < n; ++i) {
        const auto& left = k.neighbors(f[(i + n - 1) % n]);
        const auto& right = k.neighbors(f[(i + 1) % n]);
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                              std::back_inserter(cand[i]));
        if (cand[i].empty()) return;
    }
    ExpTable g(n);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            emit(g);
            return;
        }
        for (Vertex v : cand[i]) {
            g[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

}  // namespace

ExpComponent exp_component(const Graph& k, int n, const ExpTable& start, int vertex_budget) {
    if (n % 2 == 0 || n < 3) throw Error("exp_component: n must be odd and >= 3");
    if (static_cast<int>(start.size()) != n) throw Error("exp_component: bad start table");
    for (Vertex v : start)
        if (v < 0 || v >= k.vertex_count()) throw Error("exp_component: table entry out of range");

    ExpComponent comp;
    comp.n = n;
    std::map<ExpTable, int> index;
    std::deque<int> frontier;
    std::vector<std::pair<int, int>> edges;

    auto add = [&](const ExpTable& t) {
        auto it = index.find(t);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(comp.tables.size());
        comp.tables.push_back(t);
        index[t] = id;
        frontier.push_back(id);
        return id;
    };
    add(start);

    while (!frontier.empty()) {
        if (static_cast<int>(comp.tables.size()) > vertex_budget) {
            comp.truncated = true;
            break;
        }
        int id = frontier.front();
        frontier.pop_front();
        ExpTable f = comp.tables[id];
        enumerate_exp_neighbors(k, n, f, [&](const ExpTable& g) {
            if (!index.count(g) && static_cast<int>(comp.tables.size()) > vertex_budget) {
                comp.truncated = true;
                return;
            }
            int gid = add(g);
            if (gid != id) edges.push_back({id, gid});
        });
    }
    if (!frontier.empty()) comp.truncated = true;

    comp.graph = Graph(static_cast<int>(comp.tables.size()));
    for (auto& [a, b] : edges) comp.graph.add_edge(a, b);
    // a table adjacent to itself is a looped vertex (a homomorphism C_n -> K)
    for (size_t i = 0; i < comp.tables.size(); ++i)
        if (exp_adjacent(k, n, comp.tables[i], comp.tables[i]))
            comp.graph.add_edge(static_cast<int>(i), static_cast<int>(i));
    return comp;
}

bool eps_membership(const DismantlingSequence& d, int n, const ExpTable& h, const ExpTable& h2) {
    Walk w = arc_closed_walk(d.source(), n, h, h2);
    return normal_form(d, w).empty();
}

std::optional<std::vector<RecolourStep>> recolour_path(const Graph& g, const Graph& k,
                                                       const Hom& a, const Hom& b,
                                                       const std::vector<Vertex>& rel,
                                                       std::uint64_t state_guard) {
    if (!a.valid() || !b.valid()) throw InvalidHom("recolour_path: endpoints must be valid homs");
    if (a.map.size() != static_cast<size_t>(g.vertex_count()) || a.map.size() != b.map.size())
        throw InvalidHom("recolour_path: map sizes");
    for (Vertex v : rel)
        if (a.map[v] != b.map[v])
            throw InvalidHom("recolour_path: endpoints disagree on a rel vertex");

    // refuse oversized state spaces outright
    long double space = 1;
    for (int i = 0; i < g.vertex_count(); ++i) {
        space *= k.vertex_count();
        if (space > static_cast<long double>(state_guard))
            throw BudgetExceeded("recolour_path: state space exceeds the guard");
    }

    std::vector<char> frozen(g.vertex_count(), 0);
    for (Vertex v : rel) frozen[v] = 1;

    std::map<std::vector<Vertex>, std::pair<std::vector<Vertex>, RecolourStep>> parent;
    std::deque<std::vector<Vertex>> queue;
    parent[a.map] = {a.map, {-1, -1, -1}};
    queue.push_back(a.map);
    bool reached = a.map == b.map;
    while (!queue.empty() && !reached) {
        auto cur = queue.front();
        queue.pop_front();
        for (Vertex v = 0; v < g.vertex_count() && !reached; ++v) {
            if (frozen[v]) continue;
            for (Vertex nv = 0; nv < k.vertex_count(); ++nv) {
                if (nv == cur[v]) continue;
                bool ok = true;
                for (Vertex w : g.neighbors(v)) {
                    Vertex img = (w == v) ? nv : cur[w];
                    if (!k.has_edge(nv, img)) {
                        ok = false;
                        break;
                    }
                }
                // a looped position moves along an edge of K
                if (ok && g.has_loop(v) && !k.has_edge(cur[v], nv)) ok = false;
                if (!ok) continue;
                auto next = cur;
                next[v] = nv;
                if (parent.count(next)) continue;
                parent[next] = {cur, {v, cur[v], nv}};
                queue.push_back(next);
                if (next == b.map) {
                    reached = true;
                    break;
                }
            }
        }
    }
    if (!parent.count(b.map)) return std::nullopt;
    std::vector<RecolourStep> steps;
    for (auto cur = b.map; cur != a.map;) {
        auto& [prev, step] = parent[cur];
        steps.push_back(step);
        cur = prev;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

Walk lengthen(const Walk& w, int m) {
    if (m < w.length()) throw TooShort("lengthen: m is shorter than the walk");
    if ((m - w.length()) % 2 != 0) throw ParityMismatch("lengthen: parity mismatch");
    Walk out = w;
    if (m == w.length()) return out;
    const auto& nb = w.host()->neighbors(w.tau());
    if (nb.empty()) throw Error("lengthen: endpoint has no neighbour");
    Vertex u = nb.front();
    Vertex end = w.tau();
    for (int i = 0; i < (m - w.length()) / 2; ++i) {
        out.append(u);
        out.append(end);
    }
    return out;
}

ExpTable lengthen_table(const ExpTable& h, int m) {
    const int n = static_cast<int>(h.size());
    if (m < n || (m - n) % 2 != 0) throw ParityMismatch("lengthen_table: bad target length");
    ExpTable out(m);
    for (int t = 0; t < m; ++t) out[t] = t < n ? h[t] : h[n - 1 - ((t - (n - 1)) % 2)];
    return out;
}

namespace {

// ---- conjugacy oracle internals --------------------------------------------
// States are cyclically reduced closed walks up to rotation, encoded by the
// lexicographically least rotation of the vertex sequence. The trivial class
// is the sentinel {-1}. Every move replaces a subword by a box-equivalent one
// (a backtracking or square relator application), so a state reachable from
// both inputs certifies box-conjugacy; failing to meet certifies nothing.

using CycState = std::vector<Vertex>;

const CycState kTrivial{-1};

CycState canon_state(std::vector<Vertex> verts) {
    std::vector<Vertex> red;
    for (Vertex v : verts) {
        if (red.size() >= 2 && red[red.size() - 2] == v)
            red.pop_back();
        else
            red.push_back(v);
    }
    while (red.size() >= 3 && red[1] == red[red.size() - 2]) {
        red.erase(red.begin());
        red.pop_back();
    }
    int len = static_cast<int>(red.size()) - 1;
    if (len <= 0) return kTrivial;
    CycState best = red;
    for (int r = 1; r < len; ++r) {
        CycState rot(len + 1);
        for (int i = 0; i <= len; ++i) rot[i] = red[(r + i) % len];
        if (rot < best) best = rot;
    }
    return best;
}

int state_len(const CycState& s) { return s == kTrivial ? 0 : static_cast<int>(s.size()) - 1; }

void state_moves(const Graph& k, const CycState& s, int max_len,
                 const std::function<void(CycState)>& emit) {
    if (s == kTrivial) {
        if (4 <= max_len)
            for (const auto& sq : all_squares(k))
                emit(canon_state({sq[0], sq[1], sq[2], sq[3], sq[0]}));
        return;
    }
    const int len = static_cast<int>(s.size()) - 1;
    // recolour one cyclic position
    for (int p = 0; p < len; ++p) {
        Vertex prev = s[(p + len - 1) % len];
        Vertex next = s[(p + 1) % len];
        const auto& np = k.neighbors(prev);
        const auto& nn = k.neighbors(next);
        std::vector<Vertex> common;
        std::set_intersection(np.begin(), np.end(), nn.begin(), nn.end(),
                              std::back_inserter(common));
        for (Vertex z : common) {
            if (z == s[p]) continue;
            CycState t = s;
            t[p] = z;
            if (p == 0) t[len] = z;
            emit(canon_state(std::move(t)));
        }
    }
    // expand an arc into the complementary path of a square through it
    if (len + 2 <= max_len) {
        for (int p = 0; p < len; ++p) {
            Vertex x = s[p], y = s[p + 1];
            for (Vertex a : k.neighbors(x)) {
                for (Vertex b : k.neighbors(y)) {
                    if (!k.has_edge(a, b)) continue;
                    CycState t(s.begin(), s.begin() + p + 1);
                    t.push_back(a);
                    t.push_back(b);
                    t.insert(t.end(), s.begin() + p + 1, s.end());
                    emit(canon_state(std::move(t)));
                }
            }
        }
    }
    // insert a square boundary at a visited vertex
    if (len + 4 <= max_len) {
        for (int p = 0; p < len; ++p) {
            Vertex x = s[p];
            for (Vertex a : k.neighbors(x)) {
                for (Vertex b : k.neighbors(a)) {
                    if (b == x) continue;
                    const auto& nb = k.neighbors(b);
                    const auto& nx = k.neighbors(x);
                    std::vector<Vertex> last;
                    std::set_intersection(nb.begin(), nb.end(), nx.begin(), nx.end(),
                                          std::back_inserter(last));
                    for (Vertex c : last) {
                        if (c == a) continue;
                        CycState t(s.begin(), s.begin() + p + 1);
                        t.push_back(a);
                        t.push_back(b);
                        t.push_back(c);
                        t.insert(t.end(), s.begin() + p, s.end());
                        emit(canon_state(std::move(t)));
                    }
                }
            }
        }
    }
}

}  // namespace

OracleVerdict conjugacy_oracle(const Graph& k, const Walk& c1, const Walk& c2, int m_max,
                               std::uint64_t state_budget) {
    if (!c1.closed() || !c2.closed()) throw NotClosed("conjugacy_oracle: walks must be closed");
    if ((c1.length() - c2.length()) % 2 != 0) return OracleUnresolved{};

    CycState s1 = canon_state(c1.verts());
    CycState s2 = canon_state(c2.verts());
    const int base_m = std::max(std::max(c1.length(), c2.length()), 2);

    if (s1 == kTrivial && s2 == kTrivial) {
        // trivial classes are conjugate iff the roots are connected in K
        std::vector<int> compid(k.vertex_count(), -1);
        int nc = 0;
        for (Vertex v = 0; v < k.vertex_count(); ++v) {
            if (compid[v] != -1) continue;
            std::deque<Vertex> q{v};
            compid[v] = nc;
            while (!q.empty()) {
                Vertex x = q.front();
                q.pop_front();
                for (Vertex y : k.neighbors(x))
                    if (compid[y] == -1) {
                        compid[y] = nc;
                        q.push_back(y);
                    }
            }
            ++nc;
        }
        if (compid[c1.iota()] != compid[c2.iota()]) return OracleUnresolved{};
        return OracleConfirmed{base_m};
    }
    if (s1 == s2) return OracleConfirmed{base_m};

    const int max_len = std::max({state_len(s1), state_len(s2), m_max - 4});

    struct Side {
        std::map<CycState, int> seen;  // state -> max core length along its path
        std::deque<CycState> frontier;
    };
    Side sides[2];
    sides[0].seen[s1] = state_len(s1);
    sides[0].frontier.push_back(s1);
    sides[1].seen[s2] = state_len(s2);
    sides[1].frontier.push_back(s2);

    std::uint64_t expanded = 0;
    auto meet_m = [&](const CycState& s) -> std::optional<int> {
        auto it0 = sides[0].seen.find(s);
        auto it1 = sides[1].seen.find(s);
        if (it0 == sides[0].seen.end() || it1 == sides[1].seen.end()) return std::nullopt;
        int lmax = std::max(it0->second, it1->second);
        int m = std::max(base_m, lmax + 4);
        if ((m - c1.length()) % 2 != 0) ++m;
        return m;
    };

    while ((!sides[0].frontier.empty() || !sides[1].frontier.empty()) &&
           expanded < state_budget) {
        int side;
        if (sides[0].frontier.empty())
            side = 1;
        else if (sides[1].frontier.empty())
            side = 0;
        else
            side = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
        CycState cur = sides[side].frontier.front();
        sides[side].frontier.pop_front();
        int cur_max = sides[side].seen[cur];
        std::optional<int> found;
        state_moves(k, cur, max_len, [&](CycState next) {
            if (found) return;
            ++expanded;
            int nmax = std::max(cur_max, state_len(next));
            auto it = sides[side].seen.find(next);
            if (it != sides[side].seen.end()) {
                if (nmax < it->second) it->second = nmax;
                return;
            }
            sides[side].seen[next] = nmax;
            sides[side].frontier.push_back(next);
            found = meet_m(next);
        });
        if (found) {
            if (*found <= m_max) return OracleConfirmed{*found};
            return OracleUnresolved{};  // met, but beyond the length budget
        }
    }
    return OracleUnresolved{};
}

// ---- trichotomy classifier --------------------------------------------------

namespace {

std::pair<Vertex, Vertex> least_cycle_arc(const std::vector<Vertex>& cycle) {
    std::pair<Vertex, Vertex> best{-1, -1};
    const int n = static_cast<int>(cycle.size());
    for (int i = 0; i < n; ++i) {
        Vertex a = cycle[i], b = cycle[(i + 1) % n];
        std::pair<Vertex, Vertex> fwd{a, b}, bwd{b, a};
        if (best.first == -1 || fwd < best) best = fwd;
        if (bwd < best) best = bwd;
    }
    return best;
}

Walk cycle_walk_from(const Graph& host, const std::vector<Vertex>& cycle, Vertex start) {
    const int n = static_cast<int>(cycle.size());
    int at = 0;
    while (cycle[at] != start) ++at;
    std::vector<Vertex> verts;
    for (int i = 0; i <= n; ++i) verts.push_back(cycle[(at + i) % n]);
    return Walk(&host, std::move(verts));
}

}  // namespace

TrichotomyResult classify_trichotomy(const Graph& g, const std::vector<Vertex>& c,
                                     const Graph& h, const std::vector<Vertex>& d,
                                     const Graph& k, const DismantlingSequence* dsm,
                                     const Hom& phi) {
    Graph up = union_subproduct(g, c, h, d);
    if (!(*phi.source == up) || !(*phi.target == k) || !phi.valid())
        throw InvalidHom("classify_trichotomy: phi is not a valid hom on the union subproduct");

    std::optional<DismantlingSequence> own;
    if (!dsm) {
        own = find_dismantling_sequence(k);
        if (!own) throw NotDismantlable("classify_trichotomy: target graph is not dismantlable");
        dsm = &*own;
    }
    if (!(dsm->source() == k))
        throw NotDismantlable("classify_trichotomy: dismantling sequence is for another graph");

    auto [g0, g1] = least_cycle_arc(c);
    auto [h0, h1] = least_cycle_arc(d);
    const int nh = h.vertex_count();

    Walk cw = cycle_walk_from(g, c, g0);
    Walk dw = cycle_walk_from(h, d, h0);
    Walk t1 = tensor_walk_left(up, nh, cw, h0, h1);
    Walk t2 = tensor_walk_right(up, nh, g0, g1, dw);
    NormalForm nf1 = normal_form(*dsm, walk_map(k, phi.map, t1));
    NormalForm nf2 = normal_form(*dsm, walk_map(k, phi.map, t2));

    if (nf1.empty()) {
        TrichotomyCase1 out;
        const int n = static_cast<int>(c.size());
        for (Vertex hv = 0; hv < h.vertex_count(); ++hv) {
            ExpTable t(n);
            for (int i = 0; i < n; ++i) t[i] = phi.map[pair_index(c[i], hv, nh)];
            out.h_tables.push_back(std::move(t));
        }
        for (const Edge& e : h.edges())
            if (!eps_membership(*dsm, n, out.h_tables[e.u], out.h_tables[e.v]))
                throw ConsistencyError("trichotomy case 1: an H-edge escapes the epsilon subgraph");
        return {1, std::move(out)};
    }
    if (nf2.empty()) {
        TrichotomyCase2 out;
        const int n = static_cast<int>(d.size());
        for (Vertex gv = 0; gv < g.vertex_count(); ++gv) {
            ExpTable t(n);
            for (int i = 0; i < n; ++i) t[i] = phi.map[pair_index(gv, d[i], nh)];
            out.g_tables.push_back(std::move(t));
        }
        for (const Edge& e : g.edges())
            if (!eps_membership(*dsm, n, out.g_tables[e.u], out.g_tables[e.v]))
                throw ConsistencyError("trichotomy case 2: a G-edge escapes the epsilon subgraph");
        return {2, std::move(out)};
    }

    // both wind: common primitive root and a lift into the unicyclic cover
    auto [core1, p1] = cyclic_reduce(nf1.word);
    auto [core2, p2] = cyclic_reduce(nf2.word);
    PrimitiveRoot pr = primitive_root_of_cyclic_word(core1);
    PrimitiveRoot pr2 = primitive_root_of_cyclic_word(core2);
    // the two roots must agree up to rotation and orientation
    CycState canon_r = canon_state(pr.root.verts());
    if (canon_state(pr2.root.verts()) != canon_r &&
        canon_state(pr2.root.inverse().verts()) != canon_r)
        throw ConsistencyError("trichotomy case 3: tensor walks wind around different roots");

    Walk r_kernel = p1.concat(pr.root).concat(p1.inverse());
    Walk r_in_k(&k, r_kernel.verts());

    TrichotomyCase3 out;
    out.primitive = r_in_k;
    out.exponent_c = pr.exponent;
    out.exponent_d = pr2.exponent;
    out.lift = unicyclic_lift(*dsm, r_in_k, phi, pair_index(g0, h0, nh)).lift;
    return {3, std::move(out)};
}

UnicyclicLift unicyclic_lift(const DismantlingSequence& dsm, const Walk& r, const Hom& phi,
                             Vertex base_vertex) {
    const Graph& src = *phi.source;
    const Graph& k = dsm.source();
    if (!phi.valid() || !(*phi.target == k))
        throw InvalidHom("unicyclic_lift: phi must be a valid hom into the dismantled graph");

    std::vector<int> par(src.vertex_count(), -2);
    std::deque<Vertex> q{base_vertex};
    par[base_vertex] = -1;
    std::vector<Vertex> order;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        order.push_back(v);
        for (Vertex w : src.neighbors(v))
            if (par[w] == -2) {
                par[w] = v;
                q.push_back(w);
            }
    }
    if (order.size() != static_cast<size_t>(src.vertex_count()))
        throw Error("unicyclic_lift: source graph is disconnected");

    int window = 4;
    for (int attempt = 0; attempt < 12; ++attempt, window += 4) {
        CoverGraph cover = CoverGraph::unicyclic(dsm, r, window);
        std::vector<int> lift(src.vertex_count(), -1);
        bool ok = true;
        for (Vertex v : order) {
            std::vector<Vertex> path;  // walk base_vertex -> v along the BFS tree
            for (Vertex x = v; x != -1; x = par[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());
            Walk in_src(&src, std::move(path));
            Walk image = walk_map(k, phi.map, in_src);
            Walk nf = reduce(rho_rewrite(dsm, image));
            auto id = cover.find_word(cover.canon(nf.verts()));
            if (!id) {
                ok = false;
                break;
            }
            lift[v] = *id;
        }
        if (!ok) continue;
        for (const Edge& e : src.edges())
            if (!cover.skeleton().has_edge(lift[e.u], lift[e.v]))
                throw ConsistencyError("unicyclic_lift: lift is not edge-preserving");
        for (Vertex v = 0; v < src.vertex_count(); ++v)
            if (cover.tau(lift[v]) != phi.map[v])
                throw ConsistencyError("unicyclic_lift: lift does not project to phi");
        return {std::move(cover), std::move(lift)};
    }
    throw Error("unicyclic_lift: lift did not stabilize within the window budget");
}

std::optional<Hom> constant_slice_hom(const Graph& g, const Graph& h, const Hom& phi,
                                      Vertex h0, const DismantlingSequence& dsm,
                                      int vertex_budget) {
    const Graph& k = dsm.source();
    if (!phi.valid() || !(*phi.source == tensor_product(g, h)) || !(*phi.target == k))
        throw InvalidHom("constant_slice_hom: phi must be a valid hom on G x H");
    if (!is_connected(h)) throw Error("constant_slice_hom: H must be connected");
    if (bipartition(g).has_value()) throw Bipartite("constant_slice_hom: G must be non-bipartite");
    const int nh = h.vertex_count();
    Vertex constant = phi.map[pair_index(0, h0, nh)];
    for (Vertex gv = 0; gv < g.vertex_count(); ++gv)
        if (phi.map[pair_index(gv, h0, nh)] != constant)
            throw NotConstantSlice("constant_slice_hom: phi(-,h0) is not constant");

    auto cyc = shortest_odd_cycle(g);
    if (!cyc) throw Bipartite("constant_slice_hom: no odd cycle in G");
    const int n = static_cast<int>(cyc->size());

    // curry phi on C x H into tables over the cycle positions
    std::vector<ExpTable> tables(h.vertex_count(), ExpTable(n));
    for (Vertex hv = 0; hv < h.vertex_count(); ++hv)
        for (int i = 0; i < n; ++i) tables[hv][i] = phi.map[pair_index((*cyc)[i], hv, nh)];

    // the slice at h0 is constant, so phi^*(H) lies in the component of the
    // constants; build that component by budgeted BFS
    ExpComponent comp = exp_component(k, n, tables[h0], vertex_budget);
    if (comp.truncated) return std::nullopt;
    for (const auto& t : tables)
        if (!comp.index_of(t).has_value())
            throw ConsistencyError("constant_slice_hom: phi^* leaves the component of constants");

    auto ch = cyclic_hom(k, dsm, n, comp);
    if (!ch.hom) return std::nullopt;
    Hom out{&h, &k, {}};
    for (const auto& t : tables) out.map.push_back(ch.hom->map[*comp.index_of(t)]);
    if (!out.valid()) throw ConsistencyError("constant_slice_hom: assembled map is invalid");
    return out;
}

}  // namespace homlab
