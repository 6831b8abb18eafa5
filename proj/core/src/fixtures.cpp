#include "homlab/fixtures.hpp"

#include "homlab/io.hpp"

namespace homlab {
namespace fixtures {

namespace {

// outer 5-cycle 0..4, hub-adjacent a and b, tips 2,3 joined
constexpr const char* kMoser = R"(# moser spindle: 7 vertices, 11 edges, every edge in <= 1 square
label 5 a
label 6 b
0 1
1 2
2 3
3 4
4 0
0 5
5 1
4 6
6 0
2 5
3 6
)";

constexpr const char* kBowtie = R"(# bowtie: two triangles sharing the hub x
label 0 x
label 1 a
label 2 b
label 3 c
label 4 d
0 1
1 2
2 0
0 3
3 4
4 0
)";

// hub 0 with star to 2,4,6; matching edges 1-2, 3-4, 5-6; ring closures
// 2-3, 4-5, 6-1 (each square shares a star edge with the next); pendant
// stubs on 1,3,5 into an outer 9-cycle
constexpr const char* kKa = R"(# 16-vertex subcubic core; square-dismantles to a star-plus-9-cycle kernel
label 7 p1
label 8 p3
label 9 p5
label 10 p13
label 11 p31
label 12 p35
label 13 p53
label 14 p51
label 15 p15
0 2
0 4
0 6
1 2
3 4
5 6
2 3
4 5
6 1
1 7
3 8
5 9
7 10
10 11
11 8
8 12
12 13
13 9
9 14
14 15
15 7
)";

// thick outer cycle a..e (0..4), inner cycle 1..5 (5..9), two spoke
// families; inner-cycle edges each lie in a unique square
constexpr const char* kKb = R"(# 10-vertex 4-regular graph; inner-cycle edges each in a unique square
label 0 a
label 1 b
label 2 c
label 3 d
label 4 e
label 5 1
label 6 2
label 7 3
label 8 4
label 9 5
0 1
1 2
2 3
3 4
4 0
5 6
6 7
7 8
8 9
9 5
5 3
6 1
7 4
8 2
9 0
5 0
6 3
7 1
8 4
9 2
)";

void check(bool ok, const char* what) {
    if (!ok) throw Error(std::string("fixture validation failed: ") + what);
}

}  // namespace

Graph moser() {
    Graph g = parse_edge_list(kMoser);
    check(g.vertex_count() == 7, "moser has 7 vertices");
    check(g.edge_count() == 11, "moser has 11 edges");
    for (const Edge& e : g.edges())
        check(squares_through_edge(g, e).size() <= 1, "moser edge in more than one square");
    return g;
}

Graph bowtie() {
    Graph g = parse_edge_list(kBowtie);
    check(g.vertex_count() == 5 && g.edge_count() == 6, "bowtie shape");
    check(is_square_free(g), "bowtie is square-free");
    return g;
}

Graph ka() {
    Graph g = parse_edge_list(kKa);
    check(g.vertex_count() == 16 && g.edge_count() == 21, "ka shape");
    for (Vertex v = 0; v < g.vertex_count(); ++v) check(g.degree(v) <= 3, "ka is subcubic");
    return g;
}

Graph kb() {
    Graph g = parse_edge_list(kKb);
    check(g.vertex_count() == 10 && g.edge_count() == 20, "kb shape");
    for (Vertex v = 0; v < g.vertex_count(); ++v) check(g.degree(v) == 4, "kb is 4-regular");
    // every inner-cycle edge is contained in a unique square
    for (int i = 0; i < 5; ++i) {
        Edge red(5 + i, 5 + (i + 1) % 5);
        check(squares_through_edge(g, red).size() == 1, "kb inner edge in a unique square");
    }
    return g;
}

Graph k72() {
    Graph g(7);
    for (int i = 0; i < 7; ++i) {
        g.add_edge(i, (i + 2) % 7);
        g.add_edge(i, (i + 3) % 7);
    }
    check(g.edge_count() == 14, "k72 has 14 edges");
    return g;
}

Graph by_name(const std::string& name) {
    if (name == "moser") return moser();
    if (name == "bowtie") return bowtie();
    if (name == "ka") return ka();
    if (name == "kb") return kb();
    if (name == "k72") return k72();
    if (name.size() >= 2 && name[0] == 'c') {
        int n = std::stoi(name.substr(1));
        if (n >= 3) return cycle_graph(n);
    }
    throw Error("unknown fixture '" + name + "'");
}

std::vector<std::string> names() {
    std::vector<std::string> out{"moser", "bowtie", "ka", "kb", "k72"};
    for (int n = 3; n <= 15; n += 2) out.push_back("c" + std::to_string(n));
    return out;
}

DismantlingSequence moser_dismantling() {
    Graph g = moser();
    return DismantlingSequence::build(g, {Edge(5, 2), Edge(6, 3)});
}

DismantlingSequence ka_dismantling() {
    Graph g = ka();
    return DismantlingSequence::build(g, {Edge(2, 3), Edge(4, 5), Edge(6, 1)});
}

DismantlingSequence kb_dismantling() {
    Graph g = kb();
    std::vector<Edge> order;
    for (int i = 0; i < 5; ++i) order.push_back(Edge(5 + i, 5 + (i + 1) % 5));  // inner cycle
    order.push_back(Edge(5, 0));  // second spoke family
    order.push_back(Edge(6, 3));
    order.push_back(Edge(7, 1));
    order.push_back(Edge(8, 4));
    order.push_back(Edge(9, 2));
    return DismantlingSequence::build(g, order);
}

DismantlingSequence trivial_dismantling(const Graph& square_free) {
    return DismantlingSequence::build(square_free, {});
}

std::vector<Vertex> moser_outer_cycle() { return {0, 1, 2, 3, 4}; }
std::vector<Vertex> kb_thick_cycle() { return {0, 1, 2, 3, 4}; }

}  // namespace fixtures
}  // namespace homlab
