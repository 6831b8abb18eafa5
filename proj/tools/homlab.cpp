// homlab: exact experiments on graph multiplicativity from the command line.
//
// Subcommands: product, expgraph, hom, cover, median-hom, p3, p3inv,
// classify, verify-paper. Graphs are edge-list files or bundled fixture
// names. Exit codes: 0 found/true, 1 absent/false, 2 usage or input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homlab/adjoint.hpp"
#include "homlab/cover.hpp"
#include "homlab/exponential.hpp"
#include "homlab/fixtures.hpp"
#include "homlab/hom.hpp"
#include "homlab/io.hpp"
#include "homlab/median.hpp"
#include "homlab/verify.hpp"
#include "homlab/walk.hpp"

using namespace homlab;

namespace {

Graph load_graph(const std::string& spec) {
    std::ifstream in(spec);
    if (in) return parse_edge_list(in);
    return fixtures::by_name(spec);
}

std::vector<Vertex> parse_vertex_list(const Graph& g, const std::string& text) {
    std::istringstream in(text);
    std::vector<Vertex> out;
    std::string tok;
    while (in >> tok) {
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos == tok.size()) {
                out.push_back(v);
                continue;
            }
        } catch (...) {
        }
        auto v = g.find_label(tok);
        if (!v) throw Error("unknown vertex '" + tok + "'");
        out.push_back(*v);
    }
    return out;
}

int default_budget() {
    if (const char* env = std::getenv("HOMLAB_BUDGET")) return std::max(1, atoi(env));
    return 200000;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact graph-multiplicativity experiments"};
    app.require_subcommand(1);

    // product
    std::string left, right, cycle_left, cycle_right;
    bool want_dot = false;
    auto* prod = app.add_subcommand("product", "tensor product or union subproduct");
    prod->add_option("--left", left, "left factor (file or fixture)")->required();
    prod->add_option("--right", right, "right factor")->required();
    prod->add_option("--cycle-left", cycle_left, "odd cycle in the left factor (vertex list)");
    prod->add_option("--cycle-right", cycle_right, "odd cycle in the right factor");
    prod->add_flag("--dot", want_dot, "emit DOT instead of an edge list");

    // expgraph
    std::string eg_graph, eg_start;
    int eg_n = 3, eg_budget = 0;
    auto* eg = app.add_subcommand("expgraph", "component of the exponential graph K^{C_n}");
    eg->add_option("--graph", eg_graph)->required();
    eg->add_option("--n", eg_n, "odd cycle length")->required();
    eg->add_option("--start", eg_start, "start table, e.g. 0,0,0 (default all-0)");
    eg->add_option("--budget", eg_budget, "vertex budget (default HOMLAB_BUDGET or 200000)");

    // hom
    std::string hom_from, hom_to, hom_retract;
    bool hom_iso = false;
    auto* hs = app.add_subcommand("hom", "homomorphism / retraction / isomorphism search");
    hs->add_option("--from", hom_from)->required();
    hs->add_option("--to", hom_to, "target (for hom and iso)");
    hs->add_option("--retract-onto", hom_retract, "vertex subset of --from to retract onto");
    hs->add_flag("--iso", hom_iso, "search for an isomorphism instead");

    // cover
    std::string cov_graph, cov_walk;
    int cov_radius = 6, cov_window = 4, cov_root = 0;
    bool cov_dot = false;
    auto* cv = app.add_subcommand("cover", "truncated universal or unicyclic cover");
    cv->add_option("--graph", cov_graph)->required();
    cv->add_option("--radius", cov_radius, "truncation radius (universal mode)");
    cv->add_option("--root", cov_root, "root vertex (universal mode)");
    cv->add_option("--unicyclic", cov_walk, "closed walk `start; v1 v2 ...` for quotient mode");
    cv->add_option("--window", cov_window, "distance window (unicyclic mode)");
    cv->add_flag("--dot", cov_dot, "emit DOT coloured by the endpoint map");

    // median-hom
    std::string mh_graph;
    int mh_n = 3, mh_budget = 0;
    auto* mh = app.add_subcommand("median-hom",
                                  "median homomorphism from the component of constants");
    mh->add_option("--graph", mh_graph)->required();
    mh->add_option("--n", mh_n, "odd cycle length");
    mh->add_option("--budget", mh_budget, "component vertex budget");

    // p3 / p3inv
    std::string p3_graph;
    bool p3_force = false;
    auto* p3c = app.add_subcommand("p3", "third power of a graph");
    p3c->add_option("--graph", p3_graph)->required();
    p3c->add_flag("--dot", want_dot);
    auto* p3i = app.add_subcommand("p3inv", "right adjoint of the third power");
    p3i->add_option("--graph", p3_graph)->required();
    p3i->add_flag("--force", p3_force, "override the degree guard");
    p3i->add_flag("--dot", want_dot);

    // classify
    std::string cl_left, cl_right, cl_cl, cl_cr, cl_target, cl_hom;
    auto* cl = app.add_subcommand("classify", "trichotomy of a hom on (GxD) | (CxH)");
    cl->add_option("--left", cl_left)->required();
    cl->add_option("--cycle-left", cl_cl)->required();
    cl->add_option("--right", cl_right)->required();
    cl->add_option("--cycle-right", cl_cr)->required();
    cl->add_option("--target", cl_target)->required();
    cl->add_option("--hom", cl_hom, "file of `u -> k` lines on the union subproduct")->required();

    // verify-paper
    std::string vp_only;
    bool vp_jsonl = false, vp_timings = false;
    auto* vp = app.add_subcommand("verify-paper", "run the acceptance criteria");
    vp->add_option("--only", vp_only, "criterion ids (comma separated) or a tag");
    vp->add_flag("--jsonl", vp_jsonl, "machine-readable JSON lines");
    vp->add_flag("--timings", vp_timings, "include wall-clock timings (not byte-stable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (prod->parsed()) {
            Graph g = load_graph(left), h = load_graph(right);
            Graph out;
            if (!cycle_left.empty() || !cycle_right.empty()) {
                if (cycle_left.empty() || cycle_right.empty())
                    throw Error("union subproduct needs both cycles");
                out = union_subproduct(g, parse_vertex_list(g, cycle_left), h,
                                       parse_vertex_list(h, cycle_right));
            } else {
                out = tensor_product(g, h);
            }
            std::cout << (want_dot ? to_dot(out) : format_edge_list(out));
            return 0;
        }

        if (eg->parsed()) {
            Graph k = load_graph(eg_graph);
            ExpTable start(eg_n, 0);
            if (!eg_start.empty()) start = parse_table(k, eg_start);
            int budget = eg_budget > 0 ? eg_budget : default_budget();
            auto comp = exp_component(k, eg_n, start, budget);
            for (size_t i = 0; i < comp.tables.size(); ++i)
                std::cout << i << " : " << format_table(comp.tables[i]) << "\n";
            for (const Edge& e : comp.graph.edges()) std::cout << e.u << " " << e.v << "\n";
            if (comp.truncated) std::cout << "# truncated at budget " << budget << "\n";
            return 0;
        }

        if (hs->parsed()) {
            Graph g = load_graph(hom_from);
            if (!hom_retract.empty()) {
                auto r = find_retraction(g, parse_vertex_list(g, hom_retract));
                if (!r) return 1;
                std::cout << format_hom(*r);
                return 0;
            }
            if (hom_to.empty()) throw Error("--to is required unless --retract-onto is given");
            Graph k = load_graph(hom_to);
            auto h = hom_iso ? find_isomorphism(g, k) : find_hom(g, k);
            if (!h) return 1;
            std::cout << format_hom(*h);
            return 0;
        }

        if (cv->parsed()) {
            Graph g = load_graph(cov_graph);
            auto dopt = find_dismantling_sequence(g);
            if (!dopt) throw Error("graph is not square-dismantlable within the step budget");
            if (cov_walk.empty()) {
                auto cov = CoverGraph::universal(*dopt, cov_root, cov_radius);
                std::cout << (cov_dot ? cover_to_dot(cov) : format_cover(cov));
            } else {
                Walk r = parse_walk(g, cov_walk);
                auto cov = CoverGraph::unicyclic(*dopt, r, cov_window);
                std::cout << (cov_dot ? cover_to_dot(cov) : format_cover(cov));
            }
            return 0;
        }

        if (mh->parsed()) {
            Graph k = load_graph(mh_graph);
            auto dopt = find_dismantling_sequence(k);
            if (!dopt) throw Error("graph is not square-dismantlable within the step budget");
            int budget = mh_budget > 0 ? mh_budget : default_budget();
            auto comp = exp_component(k, mh_n, ExpTable(mh_n, 0), budget);
            if (comp.truncated) throw Error("component budget exceeded; raise --budget");
            auto res = cyclic_hom(k, *dopt, mh_n, comp);
            if (res.hom) {
                std::cout << format_hom(*res.hom);
                return 0;
            }
            std::cout << "obstruction: component edge {" << res.obstruction->u << ","
                      << res.obstruction->v << "} maps to non-adjacent {" << res.obstruction->fu
                      << "," << res.obstruction->fv << "}\n";
            return 1;
        }

        if (p3c->parsed()) {
            Graph g = load_graph(p3_graph);
            Graph out = p3(g);
            std::cout << (want_dot ? to_dot(out) : format_edge_list(out));
            return 0;
        }

        if (p3i->parsed()) {
            Graph g = load_graph(p3_graph);
            auto out = p3_inverse(g, 12, p3_force);
            std::cout << (want_dot ? to_dot(out.graph) : format_edge_list(out.graph));
            return 0;
        }

        if (cl->parsed()) {
            Graph g = load_graph(cl_left), h = load_graph(cl_right), k = load_graph(cl_target);
            auto c = parse_vertex_list(g, cl_cl);
            auto d = parse_vertex_list(h, cl_cr);
            Graph up = union_subproduct(g, c, h, d);
            std::ifstream in(cl_hom);
            if (!in) throw Error("cannot open " + cl_hom);
            Hom phi = parse_hom(up, k, in);
            auto res = classify_trichotomy(g, c, h, d, k, nullptr, phi);
            std::cout << "case " << res.which << "\n";
            if (res.which == 3) {
                const auto& c3 = std::get<TrichotomyCase3>(res.detail);
                std::cout << "primitive root length " << c3.primitive.length()
                          << ", exponents " << c3.exponent_c << " and " << c3.exponent_d << "\n";
            }
            return 0;
        }

        if (vp->parsed()) {
            std::vector<int> only;
            if (!vp_only.empty()) {
                only = criteria_matching(vp_only);
                if (only.empty()) {
                    std::istringstream in(vp_only);
                    std::string tok;
                    while (std::getline(in, tok, ',')) only.push_back(std::stoi(tok));
                }
            }
            auto results = run_paper_criteria(only);
            std::cout << (vp_jsonl ? format_report_jsonl(results, vp_timings)
                                   : format_report(results, vp_timings));
            for (const auto& r : results)
                if (!r.pass) return 1;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
