#include <filesystem>
#include <string>
#include <system_error>
#include <vector>

#include <doctest.h>

#include "preeb/cli.hpp"
#include "preeb/io.hpp"
#include "preeb/poly.hpp"
#include "preeb/reeb_graph.hpp"

namespace fs = std::filesystem;
using namespace preeb;

namespace {

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / "preeb_cli_test";
        fs::create_directories(dir);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

Polynomial cli_circle(double cx, double r) {
    Polynomial x1 = Polynomial::variable(2, 0);
    Polynomial x2 = Polynomial::variable(2, 1);
    Polynomial dx = x1 - Polynomial::constant(2, cx);
    return Polynomial::constant(2, r * r) - dx * dx - x2 * x2;
}

}  // namespace

TEST_CASE("command line pipeline end to end") {
    TempDir tmp;
    std::string dom = tmp.file("dom.json");
    std::string graph = tmp.file("graph.json");
    std::string dot = tmp.file("graph.dot");
    std::string svg = tmp.file("graph.svg");
    std::string lift = tmp.file("lift.jsonl");
    std::string est = tmp.file("est.json");

    CHECK(run_cli({"example", "chain", "--l", "2", "-o", dom}) == 0);
    REQUIRE(fs::exists(dom));
    CHECK(run_cli({"validate", dom}) == 0);

    CHECK(run_cli({"preeb", dom, "-o", graph, "--dot", dot, "--svg", svg}) == 0);
    REQUIRE(fs::exists(graph));
    CHECK(fs::exists(dot));
    CHECK(fs::exists(svg));
    ReebGraph g = graph_from_json(read_text_file(graph));
    CHECK(g.vertices().size() == 4);
    CHECK(g.edges().size() == 4);

    CHECK(run_cli({"lift", dom, "--k0", "4", "--n-base", "6400", "--n-fiber", "4",
                   "-o", lift}) == 0);
    REQUIRE(fs::exists(lift));
    CHECK(run_cli({"verify-regularity", lift}) == 0);

    CHECK(run_cli({"mapper", lift, "-o", est}) == 0);
    REQUIRE(fs::exists(est));
    CHECK(run_cli({"compare", graph, est}) == 0);

    std::string dom3 = tmp.file("dom3.json");
    std::string graph3 = tmp.file("graph3.json");
    CHECK(run_cli({"example", "chain", "--l", "3", "-o", dom3}) == 0);
    CHECK(run_cli({"preeb", dom3, "-o", graph3}) == 0);
    CHECK(run_cli({"compare", graph, graph3}) == 1);

    CHECK(run_cli({"check-theorem", dom, "--k0", "4", "--n-base", "6400"}) == 0);
}

TEST_CASE("stack example with vertex merging") {
    TempDir tmp;
    std::string dom = tmp.file("stack.json");
    std::string graph = tmp.file("stack_graph.json");
    CHECK(run_cli({"example", "stack", "--l", "3", "-o", dom}) == 0);
    CHECK(run_cli({"preeb", dom, "--merge-window", "1e-2", "-o", graph}) == 0);
    ReebGraph g = graph_from_json(read_text_file(graph));
    CHECK(g.vertices().size() == 4);
    CHECK(g.edges().size() == 5);
    CHECK(g.count_degree(4) == 2);
}

TEST_CASE("regularity check fails on a crossed-boundary domain") {
    TempDir tmp;
    AlgebraicDomain lens(2, {cli_circle(0.0, 1.0), cli_circle(1.0, 1.0)}, 2.5);
    std::string dom = tmp.file("lens.json");
    write_text_file(dom, domain_to_json(lens));

    CHECK(run_cli({"validate", dom}) == 1);

    std::string lift = tmp.file("lens.jsonl");
    CHECK(run_cli({"lift", dom, "--k0", "4", "--n-base", "4096", "-o", lift}) == 0);
    CHECK(run_cli({"verify-regularity", lift}) == 1);
}

TEST_CASE("usage errors and help") {
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"preeb"}) == 2);             // missing required argument
    CHECK(run_cli({"example", "chain"}) == 2);  // missing --l
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"preeb", "--help"}) == 0);
    CHECK(run_cli({"validate", "no_such_file_2718.json"}) == 1);
}
