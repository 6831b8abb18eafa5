#include "homlab/walk.hpp"

#include <algorithm>

namespace homlab {

Walk::Walk(const Graph* host, std::vector<Vertex> verts) : host_(host), verts_(std::move(verts)) {
    if (verts_.empty()) throw Error("walk needs at least its start vertex");
    check_range(verts_[0]);
    for (size_t i = 0; i + 1 < verts_.size(); ++i)
        if (!host_->has_edge(verts_[i], verts_[i + 1]))
            throw Error("walk arc " + host_->display(verts_[i]) + "-" +
                        host_->display(verts_[i + 1]) + " is not an edge of the host");
}

void Walk::check_range(Vertex v) const {
    if (!host_ || v < 0 || v >= host_->vertex_count()) throw Error("walk vertex out of range");
}

Walk& Walk::append(Vertex next) {
    if (!host_->has_edge(tau(), next))
        throw Error("walk arc " + host_->display(tau()) + "-" + host_->display(next) +
                    " is not an edge of the host");
    verts_.push_back(next);
    return *this;
}

Walk Walk::concat(const Walk& other) const {
    if (host_ != other.host_ && !(*host_ == *other.host_))
        throw WrongHost("concat: walks in different hosts");
    if (tau() != other.iota()) throw Error("concat: endpoints do not chain");
    std::vector<Vertex> v = verts_;
    v.insert(v.end(), other.verts_.begin() + 1, other.verts_.end());
    return Walk(host_, std::move(v));
}

Walk Walk::inverse() const {
    std::vector<Vertex> v(verts_.rbegin(), verts_.rend());
    return Walk(host_, std::move(v));
}

Walk Walk::rotate(int arcs) const {
    if (!closed()) throw NotClosed("rotate: walk is not closed");
    const int len = length();
    if (len == 0) return *this;
    int r = ((arcs % len) + len) % len;
    std::vector<Vertex> v;
    v.reserve(verts_.size());
    for (int i = 0; i <= len; ++i) v.push_back(verts_[(r + i) % len]);
    return Walk(host_, std::move(v));
}

Walk Walk::subwalk(int from, int to) const {
    if (from < 0 || to >= static_cast<int>(verts_.size()) || from > to)
        throw Error("subwalk: bad range");
    return Walk(host_, std::vector<Vertex>(verts_.begin() + from, verts_.begin() + to + 1));
}

Walk reduce(const Walk& w) {
    std::vector<Vertex> stack;
    stack.reserve(w.verts().size());
    for (Vertex v : w.verts()) {
        if (stack.size() >= 2 && stack[stack.size() - 2] == v)
            stack.pop_back();
        else
            stack.push_back(v);
    }
    return Walk(w.host(), std::move(stack));
}

bool is_reduced(const Walk& w) {
    const auto& v = w.verts();
    for (size_t i = 2; i < v.size(); ++i)
        if (v[i] == v[i - 2]) return false;
    return true;
}

std::pair<Walk, Walk> cyclic_reduce(const Walk& w) {
    if (!w.closed()) throw NotClosed("cyclic_reduce: walk is not closed");
    Walk r = reduce(w);
    int lo = 0, hi = r.length();
    const auto& v = r.verts();
    // strip matching first/last inverse arcs: (a,b) ... (b,a)
    while (hi - lo >= 2 && v[lo + 1] == v[hi - 1] && v[lo] == v[hi]) {
        ++lo;
        --hi;
    }
    Walk core = r.subwalk(lo, hi);
    Walk prefix = r.subwalk(0, lo);
    return {core, prefix};
}

Walk rho_rewrite_step(const DismantlingStep& step, const Walk& w) {
    std::vector<Vertex> out;
    out.push_back(w[0]);
    for (int i = 0; i < w.length(); ++i) {
        Vertex a = w[i], b = w[i + 1];
        if (Edge(a, b) == step.removed) {
            if (a == step.detour[0]) {
                out.push_back(step.detour[1]);
                out.push_back(step.detour[2]);
            } else {
                out.push_back(step.detour[2]);
                out.push_back(step.detour[1]);
            }
        }
        out.push_back(b);
    }
    return Walk(w.host(), std::move(out));
}

Walk rho_rewrite(const DismantlingSequence& d, const Walk& w, int steps) {
    if (w.host() != &d.source() && !(*w.host() == d.source()))
        throw WrongHost("rho_rewrite: walk is not in the source graph");
    int count = steps < 0 ? static_cast<int>(d.steps().size()) : steps;
    // Walk validity is re-checked against the source; intermediate walks only
    // use edges still present after the applied prefix, so the source host is
    // a safe carrier throughout. The final result also lives in the kernel.
    Walk current = w;
    for (int i = 0; i < count; ++i) current = rho_rewrite_step(d.steps()[i], current);
    return current;
}

NormalForm normal_form(const DismantlingSequence& d, const Walk& w) {
    Walk kernel_word = reduce(rho_rewrite(d, w));
    // re-host on the kernel graph so normal forms cannot silently use removed edges
    Walk hosted(&d.kernel(), kernel_word.verts());
    return NormalForm{&d, std::move(hosted)};
}

bool box_equivalent(const DismantlingSequence& d, const Walk& a, const Walk& b) {
    return normal_form(d, a) == normal_form(d, b);
}

namespace {

std::vector<std::pair<Vertex, Vertex>> arcs_of(const Walk& w) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    for (int i = 0; i < w.length(); ++i) arcs.push_back({w[i], w[i + 1]});
    return arcs;
}

}  // namespace

std::optional<Walk> conjugacy(const DismantlingSequence& d, const Walk& c1, const Walk& c2) {
    if (!c1.closed() || !c2.closed()) throw NotClosed("conjugacy: walks must be closed");
    if (c1.host() != c2.host() && !(*c1.host() == *c2.host()))
        throw WrongHost("conjugacy: walks in different hosts");
    NormalForm n1 = normal_form(d, c1);
    NormalForm n2 = normal_form(d, c2);
    auto [core1, p1] = cyclic_reduce(n1.word);
    auto [core2, p2] = cyclic_reduce(n2.word);
    if (core1.length() != core2.length()) return std::nullopt;

    const Graph* kernel = &d.kernel();
    auto as_source = [&](const Walk& w) { return Walk(&d.source(), w.verts()); };

    if (core1.length() == 0) {
        // both trivial: any walk between the roots conjugates; empty if equal
        if (c1.iota() == c2.iota()) return Walk(&d.source(), c1.iota());
        // BFS path in the kernel between the two roots
        std::vector<int> par(kernel->vertex_count(), -2);
        std::vector<Vertex> q{c1.iota()};
        par[c1.iota()] = -1;
        for (size_t qi = 0; qi < q.size(); ++qi) {
            Vertex v = q[qi];
            for (Vertex w : kernel->neighbors(v))
                if (par[w] == -2) {
                    par[w] = v;
                    q.push_back(w);
                }
        }
        if (par[c2.iota()] == -2) return std::nullopt;  // disconnected hosts
        std::vector<Vertex> path;
        for (Vertex v = c2.iota(); v != -1; v = par[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return as_source(Walk(kernel, std::move(path)));
    }

    // cyclically reduced words are conjugate iff one is a rotation of the other
    auto a1 = arcs_of(core1);
    auto a2 = arcs_of(core2);
    const int len = static_cast<int>(a1.size());
    for (int r = 0; r < len; ++r) {
        bool match = true;
        for (int i = 0; i < len && match; ++i) match = a1[i] == a2[(i + r) % len];
        if (!match) continue;
        // core1 == rotate(core2, r) == A^-1 . core2 . A  with A = first r arcs
        // of core2; then n1 = p1 core1 p1^-1 and n2 = p2 core2 p2^-1 give
        // c1 ~ W c2 W^-1 with W = p1 . A^-1 . p2^-1.
        Walk a_prefix = core2.subwalk(0, r);
        Walk witness = p1.concat(a_prefix.inverse()).concat(p2.inverse());
        return as_source(witness);
    }
    return std::nullopt;
}

PrimitiveRoot primitive_root_of_cyclic_word(const Walk& w) {
    if (w.length() == 0) throw EmptyWord("primitive_root: empty word");
    if (!w.closed()) throw NotClosed("primitive_root: word must be closed");
    auto arcs = arcs_of(w);
    const int len = static_cast<int>(arcs.size());
    for (int p = 1; p <= len; ++p) {
        if (len % p != 0) continue;
        bool periodic = true;
        for (int i = 0; i < len && periodic; ++i) periodic = arcs[i] == arcs[i % p];
        if (periodic) return {w.subwalk(0, p), len / p};
    }
    return {w, 1};  // unreachable, p == len always matches
}

PrimitiveRoot primitive_root(const NormalForm& nf) {
    if (nf.empty()) throw EmptyWord("primitive_root: trivial class has no root");
    auto [core, prefix] = cyclic_reduce(nf.word);
    if (core.length() != nf.word.length())
        throw Error("primitive_root: word is not cyclically reduced");
    return primitive_root_of_cyclic_word(nf.word);
}

Walk arc_closed_walk(const Graph& k, int n, const std::vector<Vertex>& h,
                     const std::vector<Vertex>& h2) {
    if (n % 2 == 0 || n < 3) throw Error("arc_closed_walk: n must be odd and >= 3");
    if (static_cast<int>(h.size()) != n || static_cast<int>(h2.size()) != n)
        throw NotAnArc("arc_closed_walk: tables must have n entries");
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        if (!k.has_edge(h[i], h2[j]) || !k.has_edge(h2[i], h[j]))
            throw NotAnArc("arc_closed_walk: tables are not adjacent in the exponential graph");
    }
    std::vector<Vertex> verts;
    verts.reserve(2 * n + 1);
    for (int t = 0; t <= 2 * n; ++t) {
        int pos = t % n;
        verts.push_back(t % 2 == 0 ? h[pos] : h2[pos]);
    }
    return Walk(&k, std::move(verts));
}

Walk tensor_walk_left(const Graph& product, int n_right, const Walk& c, Vertex h0, Vertex h1) {
    if (!c.closed()) throw NotClosed("tensor_walk: left walk must be closed");
    const int len = c.length();
    std::vector<Vertex> verts;
    verts.reserve(2 * len + 1);
    for (int t = 0; t <= 2 * len; ++t) {
        Vertex g = c[t % len];
        Vertex h = (t % 2 == 0) ? h0 : h1;
        verts.push_back(pair_index(g, h, n_right));
    }
    return Walk(&product, std::move(verts));
}

Walk tensor_walk_right(const Graph& product, int n_right, Vertex g0, Vertex g1, const Walk& d) {
    if (!d.closed()) throw NotClosed("tensor_walk: right walk must be closed");
    const int len = d.length();
    std::vector<Vertex> verts;
    verts.reserve(2 * len + 1);
    for (int t = 0; t <= 2 * len; ++t) {
        Vertex h = d[t % len];
        Vertex g = (t % 2 == 0) ? g0 : g1;
        verts.push_back(pair_index(g, h, n_right));
    }
    return Walk(&product, std::move(verts));
}

Walk walk_project_left(const Graph& left, int n_right, const Walk& w) {
    std::vector<Vertex> verts;
    verts.reserve(w.verts().size());
    for (Vertex v : w.verts()) verts.push_back(pair_split(v, n_right).first);
    return Walk(&left, std::move(verts));
}

Walk walk_project_right(const Graph& right, int n_right, const Walk& w) {
    std::vector<Vertex> verts;
    verts.reserve(w.verts().size());
    for (Vertex v : w.verts()) verts.push_back(pair_split(v, n_right).second);
    return Walk(&right, std::move(verts));
}

Walk walk_map(const Graph& target, const std::vector<Vertex>& map, const Walk& w) {
    std::vector<Vertex> verts;
    verts.reserve(w.verts().size());
    for (Vertex v : w.verts()) verts.push_back(map.at(v));
    return Walk(&target, std::move(verts));
}

}  // namespace homlab
