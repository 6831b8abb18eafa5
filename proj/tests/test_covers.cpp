#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "homlab/cover.hpp"
#include "homlab/fixtures.hpp"
#include "homlab/hom.hpp"

using namespace homlab;

namespace {

Walk random_closed_walk(std::mt19937& rng, const Graph& g, Vertex root, int length) {
    while (true) {
        std::vector<Vertex> verts{root};
        for (int i = 0; i < length; ++i) {
            const auto& nb = g.neighbors(verts.back());
            verts.push_back(nb[std::uniform_int_distribution<int>(0, (int)nb.size() - 1)(rng)]);
        }
        if (verts.back() == root) return Walk(&g, std::move(verts));
    }
}

// random cover walk from a start vertex, staying anywhere in the truncation
std::vector<int> random_cover_walk(std::mt19937& rng, const CoverGraph& c, int start, int len) {
    std::vector<int> out{start};
    for (int i = 0; i < len; ++i) {
        const auto& nb = c.skeleton().neighbors(out.back());
        if (nb.empty()) break;
        out.push_back(nb[std::uniform_int_distribution<int>(0, (int)nb.size() - 1)(rng)]);
    }
    return out;
}

Walk tau_projection(const CoverGraph& c, const std::vector<int>& cover_walk) {
    std::vector<Vertex> verts;
    for (int id : cover_walk) verts.push_back(c.tau(id));
    return Walk(&c.base(), std::move(verts));
}

}  // namespace

TEST_CASE("universal cover of C5 at radius 8 is a 17-vertex path") {
    Graph c5 = cycle_graph(5);
    auto d = fixtures::trivial_dismantling(c5);
    auto cov = CoverGraph::universal(d, 0, 8);
    CHECK(cov.vertex_count() == 17);
    // path: two endpoints of degree 1, the rest degree 2, no cycle
    int deg1 = 0, deg2 = 0;
    for (int v = 0; v < cov.vertex_count(); ++v) {
        int deg = cov.skeleton().degree(v);
        if (deg == 1) ++deg1;
        if (deg == 2) ++deg2;
    }
    CHECK(deg1 == 2);
    CHECK(deg2 == 15);
    CHECK(bipartition(cov.skeleton()).has_value());
    auto rep = verify_covering_map(cov);
    CHECK(rep.local_ok);
    CHECK(rep.vertex_surjective);
    CHECK(rep.edge_surjective);
}

TEST_CASE("bowtie cover is the 4-regular tree with each edge subdivided twice") {
    Graph bt = fixtures::bowtie();
    auto d = fixtures::trivial_dismantling(bt);
    Vertex hub = *bt.find_label("x");
    auto cov = CoverGraph::universal(d, hub, 6);
    int hub_lifts = 0, other_lifts = 0;
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (!cov.interior(v)) continue;
        if (cov.tau(v) == hub) {
            ++hub_lifts;
            CHECK(cov.skeleton().degree(v) == 4);
        } else {
            ++other_lifts;
            CHECK(cov.skeleton().degree(v) == 2);
        }
    }
    CHECK(hub_lifts > 1);
    CHECK(other_lifts > 4);
    CHECK(verify_covering_map(cov).local_ok);
}

TEST_CASE("unicyclic covers of C5") {
    Graph c5 = cycle_graph(5);
    auto d = fixtures::trivial_dismantling(c5);
    Walk once(&c5, {0, 1, 2, 3, 4, 0});

    auto cov1 = CoverGraph::unicyclic(d, once, 3);
    CHECK(find_isomorphism(cover_to_graph(cov1), c5).has_value());

    Walk thrice = once.concat(once).concat(once);
    auto cov3 = CoverGraph::unicyclic(d, thrice, 3);
    CHECK(cov3.central_cycle().size() == 15);
    CHECK(find_isomorphism(cover_to_graph(cov3), cycle_graph(15)).has_value());
    auto rep = verify_covering_map(cov3);
    CHECK(rep.pass());

    Walk eps(&c5, {0, 1, 0});
    CHECK_THROWS_AS(CoverGraph::unicyclic(d, eps, 3), TrivialWinding);
}

TEST_CASE("moser cover matches the local picture at hub lifts") {
    auto d = fixtures::moser_dismantling();
    auto cov = CoverGraph::universal(d, 0, 5);
    const Graph& m = d.source();
    auto rep = verify_covering_map(cov);
    CHECK(rep.local_ok);
    CHECK(rep.vertex_surjective);
    CHECK(rep.edge_surjective);
    int hubs = 0;
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (!cov.interior(v) || cov.tau(v) != 0) continue;
        ++hubs;
        CHECK(cov.skeleton().degree(v) == m.degree(0));
        // each interior hub lift sits in exactly two lifted squares
        int squares = 0;
        const auto& nbs = cov.skeleton().neighbors(v);
        for (size_t i = 0; i < nbs.size(); ++i)
            for (size_t j = i + 1; j < nbs.size(); ++j)
                for (int x : cov.skeleton().neighbors(nbs[i])) {
                    if (x == v) continue;
                    if (cov.skeleton().has_edge(x, nbs[j])) ++squares;
                }
        CHECK(squares == 2);
    }
    CHECK(hubs > 0);
}

TEST_CASE("lifting walks") {
    auto d = fixtures::moser_dismantling();
    auto cov = CoverGraph::universal(d, 0, 6);
    const Graph& m = d.source();
    Vertex a = *m.find_label("a");

    // lift of the empty walk
    auto root_id = cov.find_word({0});
    REQUIRE(root_id.has_value());
    auto l0 = lift_walk(cov, *root_id, Walk(&m, {0}));
    REQUIRE(l0.has_value());
    CHECK(l0->size() == 1);

    // lift of a square boundary closes up
    Walk sq(&m, {0, 1, 2, a, 0});
    auto lsq = lift_walk(cov, *root_id, sq);
    REQUIRE(lsq.has_value());
    CHECK(lsq->front() == lsq->back());

    // box-trivial walks lift closed; the outer cycle does not
    Walk outer(&m, {0, 1, 2, 3, 4, 0});
    auto lout = lift_walk(cov, *root_id, outer);
    REQUIRE(lout.has_value());
    CHECK(lout->front() != lout->back());

    // a long walk out of a small cover exits the truncation
    auto tiny = CoverGraph::universal(d, 0, 1);
    Walk wander(&m, {0, 1, 2, 3, 4, 0, 1, 2});
    CHECK(!lift_walk(tiny, *tiny.find_word({0}), wander).has_value());
}

TEST_CASE("the central obstruction walk lifts closed") {
    Graph ka = fixtures::ka();
    auto d = fixtures::ka_dismantling();
    auto cov = CoverGraph::universal(d, 0, 6);
    std::vector<Vertex> x(9, 0), y{6, 2, 6, 4, 6, 4, 2, 4, 2};
    Walk w = arc_closed_walk(ka, 9, x, y);
    auto root_id = cov.find_word({0});
    REQUIRE(root_id.has_value());
    auto lift = lift_walk(cov, *root_id, w);
    REQUIRE(lift.has_value());
    CHECK(lift->size() == 19);
    CHECK(lift->front() == lift->back());
}

TEST_CASE("deck transforms") {
    Graph c5 = cycle_graph(5);
    auto d = fixtures::trivial_dismantling(c5);
    auto cov = CoverGraph::universal(d, 0, 8);

    // trivial walk gives the identity on the whole truncation
    Walk back_forth(&c5, {0, 1, 0});
    auto id_map = deck_transform(cov, back_forth);
    for (int v = 0; v < cov.vertex_count(); ++v) {
        REQUIRE(id_map[v].has_value());
        CHECK(*id_map[v] == v);
    }

    // one winding shifts the path by 5
    Walk once(&c5, {0, 1, 2, 3, 4, 0});
    auto shift = deck_transform(cov, once);
    int defined = 0;
    for (int v = 0; v < cov.vertex_count(); ++v) {
        if (!shift[v]) continue;
        ++defined;
        CHECK(cov.tau(*shift[v]) == cov.tau(v));
    }
    CHECK(defined == 12);  // 17 vertices, shift-by-5 stays inside for 12

    // composition law on the common domain
    Walk twice = once.concat(once);
    auto shift2 = deck_transform(cov, twice);
    for (int v = 0; v < cov.vertex_count(); ++v)
        if (shift[v] && shift2[v] && shift[*shift[v]])
            CHECK(*shift2[v] == *shift[*shift[v]]);

    // injectivity on its domain
    std::set<int> images;
    for (int v = 0; v < cov.vertex_count(); ++v)
        if (shift[v]) CHECK(images.insert(*shift[v]).second);
}

TEST_CASE("deck transform is the identity on the quotient by its own walk") {
    Graph c5 = cycle_graph(5);
    auto d = fixtures::trivial_dismantling(c5);
    Walk once(&c5, {0, 1, 2, 3, 4, 0});
    auto cov = CoverGraph::unicyclic(d, once, 4);
    auto m = deck_transform(cov, once);
    for (int v = 0; v < cov.vertex_count(); ++v) {
        REQUIRE(m[v].has_value());
        CHECK(*m[v] == v);
    }
}

TEST_CASE("corrupted cover fails certification") {
    Graph c5 = cycle_graph(5);
    auto d = fixtures::trivial_dismantling(c5);
    Walk thrice(&c5, {0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0, 1, 2, 3, 4, 0});
    auto cov = CoverGraph::unicyclic(d, thrice, 2);
    auto rep = verify_covering_map(cov);
    CHECK(rep.pass());
    // drop one edge from a hand-made copy and re-certify via a fake report:
    // emulate by checking that the degree defect is detected
    Graph broken = cov.skeleton();
    // remove edge by rebuilding
    Graph rebuilt(broken.vertex_count());
    bool skipped = false;
    for (const Edge& e : broken.edges()) {
        if (!skipped) {
            skipped = true;
            continue;
        }
        rebuilt.add_edge(e.u, e.v);
    }
    // the covering condition now fails at some vertex
    bool defect = false;
    for (int v = 0; v < cov.vertex_count() && !defect; ++v)
        defect = rebuilt.degree(v) != cov.base().degree(cov.tau(v));
    CHECK(defect);
}

TEST_CASE("tau-projection of cover walks from the root has the endpoint's normal form") {
    std::mt19937 rng(55);
    auto d = fixtures::moser_dismantling();
    auto cov = CoverGraph::universal(d, 0, 7);
    auto root_id = *cov.find_word({0});
    for (int it = 0; it < 100; ++it) {
        auto cw = random_cover_walk(rng, cov, root_id, 5);
        Walk proj = tau_projection(cov, cw);
        auto nf = normal_form(d, proj);
        CHECK(nf.word.verts() == cov.word(cw.back()));
    }
}

TEST_CASE("same-endpoint cover walks have box-equivalent projections") {
    std::mt19937 rng(66);
    auto d = fixtures::moser_dismantling();
    auto cov = CoverGraph::universal(d, 0, 7);
    auto root_id = *cov.find_word({0});
    std::map<int, std::vector<std::vector<int>>> by_endpoint;
    for (int it = 0; it < 600; ++it) {
        auto w = random_cover_walk(rng, cov, root_id, 6);
        by_endpoint[w.back()].push_back(w);
    }
    int tested = 0;
    for (auto& [end, walks] : by_endpoint)
        for (size_t i = 1; i < walks.size() && tested < 100; ++i) {
            ++tested;
            CHECK(normal_form(d, tau_projection(cov, walks[0])) ==
                  normal_form(d, tau_projection(cov, walks[i])));
        }
    CHECK(tested == 100);
}

TEST_CASE("box-equivalent base walks have lifts with equal endpoints") {
    std::mt19937 rng(77);
    auto d = fixtures::ka_dismantling();
    const Graph& g = d.source();
    auto cov = CoverGraph::universal(d, 0, 9);
    auto root_id = *cov.find_word({0});
    for (int it = 0; it < 100; ++it) {
        Walk w = random_closed_walk(rng, g, 0, 6);
        // a second representative of the same class: rewrite through rho and back
        Walk w2 = reduce(rho_rewrite(d, w));
        Walk w2_in_g(&g, w2.verts());
        auto l1 = lift_walk(cov, root_id, w);
        auto l2 = lift_walk(cov, root_id, w2_in_g);
        REQUIRE(l1.has_value());
        REQUIRE(l2.has_value());
        CHECK(l1->back() == l2->back());
    }
}

TEST_CASE("every truncated universal cover is bipartite") {
    for (const char* name : {"moser", "bowtie", "ka", "kb", "c5", "c7"}) {
        Graph g = fixtures::by_name(name);
        auto dopt = find_dismantling_sequence(g);
        REQUIRE(dopt.has_value());
        auto cov = CoverGraph::universal(*dopt, 0, 5);
        CHECK(bipartition(cov.skeleton()).has_value());
    }
}

TEST_CASE("graphs with every edge in several squares are not dismantled") {
    // the 7/2 circular clique has every edge in at least three squares, so
    // the search has no candidate edge to start from
    CHECK(!find_dismantling_sequence(fixtures::k72()).has_value());
}

TEST_CASE("locate finds the class of a base walk") {
    auto d = fixtures::moser_dismantling();
    auto cov = CoverGraph::universal(d, 0, 6);
    const Graph& m = d.source();
    Walk w(&m, {0, 1, 2, 3});
    auto id = cov.locate(w);
    REQUIRE(id.has_value());
    CHECK(cov.tau(*id) == 3);
    // a box-equivalent rewrite locates at the same vertex
    Walk w2(&m, {0, 5, 2, 1, 2, 3});  // reroute through the square and wobble
    auto id2 = cov.locate(w2);
    REQUIRE(id2.has_value());
    CHECK(*id2 == *id);
    CHECK_THROWS_AS(cov.locate(Walk(&m, {1, 2})), RootMismatch);
}

TEST_CASE("a truncated unicyclic cover retracts onto its central cycle") {
    Graph c7 = cycle_graph(7);
    auto d = fixtures::trivial_dismantling(c7);
    Walk once(&c7, {0, 1, 2, 3, 4, 5, 6, 0});
    auto cov = CoverGraph::unicyclic(d, once, 3);
    Graph skel = cov.skeleton();
    auto r = find_retraction(skel, cov.central_cycle());
    REQUIRE(r.has_value());
    CHECK(r->valid());
    for (int v : cov.central_cycle()) CHECK(r->map[v] == v);
}
