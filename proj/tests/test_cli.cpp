#include "doctest.h"
#include "siltlab/cli.hpp"
#include "siltlab/parallel.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace siltlab;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string spec(const std::string& f) { return std::string(SILTLAB_SPEC_DIR) + "/" + f; }

} // namespace

TEST_CASE("verify thm1 on kA2") {
    Run r = cli({"verify", "thm1", spec("ka2.yaml")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("2 <-> 2") != std::string::npos);
}

TEST_CASE("no silting over the dual numbers from the command line") {
    Run r = cli({"enumerate", "silting", spec("dual_numbers.yaml"), "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"count\": 0") != std::string::npos);
}

TEST_CASE("hat of the projectives over kA2") {
    Run r = cli({"closure", "hat", spec("ka2.yaml"), "--members", "P1,P2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("result: {P1,S1,S2}") != std::string::npos);
}

TEST_CASE("cotorsion filters") {
    Run all = cli({"enumerate", "cotorsion", spec("dual_numbers.yaml")});
    CHECK(all.out.rfind("2 cotorsion pairs", 0) == 0);
    Run bounded = cli({"enumerate", "cotorsion", spec("dual_numbers.yaml"), "--bounded"});
    CHECK(bounded.code == kExitOk);
    CHECK(bounded.out.rfind("0 cotorsion pairs", 0) == 0);
    Run her = cli({"enumerate", "cotorsion", spec("dual_numbers.yaml"), "--hereditary"});
    CHECK(her.out.rfind("2 cotorsion pairs", 0) == 0);
}

TEST_CASE("poset DOT output") {
    Run r = cli({"poset", spec("ka3.yaml"), "--emit-dot"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("digraph", 0) == 0);
    CHECK(r.out.find("->") != std::string::npos);
}

TEST_CASE("structured output is byte-identical across runs and thread counts") {
    for (const char* cmd : {"thm2", "frobenius", "lemmas"}) {
        INFO(cmd);
        Run a = cli({"verify", cmd, spec("ka3.yaml"), "--format", "json", "--threads", "1"});
        Run b = cli({"verify", cmd, spec("ka3.yaml"), "--format", "json", "--threads", "4"});
        Run c = cli({"verify", cmd, spec("ka3.yaml"), "--format", "json"});
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        CHECK(a.out == c.out);
    }
    Run x = cli({"enumerate", "cotorsion", spec("cyclic22.yaml"), "--format", "json", "--threads", "1"});
    Run y = cli({"enumerate", "cotorsion", spec("cyclic22.yaml"), "--format", "json", "--threads", "3"});
    CHECK(x.out == y.out);
    set_thread_count(0);
}

TEST_CASE("input errors exit with 2") {
    const std::string path = "siltlab_bad_spec.yaml";
    {
        std::ofstream f(path);
        f << "field_modulus: 2\nvertices: 2\narrows:\n  - \"1 -> 3 : a\"\n";
    }
    Run bad = cli({"info", path});
    CHECK(bad.code == kExitInput);
    CHECK(bad.err.find(":4:") != std::string::npos);
    std::remove(path.c_str());

    CHECK(cli({"info", "does-not-exist.yaml"}).code == kExitInput);
    CHECK(cli({"frobnicate"}).code == kExitInput);
    CHECK(cli({"verify", "thm9", spec("ka2.yaml")}).code == kExitInput);
    CHECK(cli({"closure", "hat", spec("ka2.yaml"), "--members", "Q7"}).code == kExitInput);
    CHECK(cli({"info", spec("ka2.yaml"), "--max-skeleton", "2"}).code == kExitInput);
    CHECK(cli({"info", spec("ka2.yaml"), "--max-skeleton", "25"}).code == kExitInput);
    CHECK(cli({"info", spec("ka2.yaml"), "--mult-bound", "0"}).code == kExitInput);
    CHECK(cli({"info", spec("ka2.yaml"), "--format", "dot"}).code == kExitInput);
    CHECK(cli({"verify", "ar", spec("dual_numbers.yaml")}).code == kExitInput);
}

TEST_CASE("info and ext-table") {
    Run r = cli({"info", spec("dual_numbers.yaml"), "--format", "json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"global_dimension\": \"inf\"") != std::string::npos);
    Run e = cli({"ext-table", spec("ka2.yaml")});
    CHECK(e.code == kExitOk);
    CHECK(e.out.find("pd/id:") != std::string::npos);
}
