#include "doctest.h"
#include "corpus.hpp"

using namespace siltlab;

TEST_CASE("path algebra of A2 has dimension 3") {
    Quiver q(2, {Arrow{0, 1, "a"}});
    auto alg = build_path_algebra(q, {}, 2);
    CHECK(alg.dimension() == 3);
    CHECK(alg.paths_between(0, 1).size() == 1);
    CHECK(alg.paths_between(1, 0).empty());
}

TEST_CASE("Nakayama series build") {
    auto a3 = nakayama({3, 2, 1}, false, 2);
    CHECK(a3.dimension() == 6);
    CHECK(a3.is_nakayama());
    auto cyc = nakayama({2, 2}, true, 3);
    CHECK(cyc.dimension() == 4);
    CHECK(cyc.cyclic());
    CHECK_THROWS_AS(nakayama({1, 2}, false, 2), ConstructionError);
    CHECK_THROWS_AS(nakayama({3, 1}, true, 2), ConstructionError);
}

TEST_CASE("dual numbers") {
    auto alg = corpus::alg("dual_numbers.yaml");
    CHECK(alg->dimension() == 2);
    Path aa = path_from_labels(alg->quiver(), {"a", "a"});
    CHECK_FALSE(alg->is_nonzero(aa));
}

TEST_CASE("non-admissible presentations are rejected") {
    Quiver loop(1, {Arrow{0, 0, "a"}});
    CHECK_THROWS_AS(build_path_algebra(loop, {}, 2), ConstructionError);
    Quiver q(2, {Arrow{0, 1, "a"}});
    CHECK_THROWS_AS(build_path_algebra(q, {path_from_labels(q, {"a"})}, 2), ConstructionError);
    CHECK_THROWS(build_path_algebra(q, {}, 6));
}

TEST_CASE("paths must be composable") {
    Quiver q(3, {Arrow{0, 1, "a"}, Arrow{1, 2, "b"}});
    CHECK_NOTHROW(path_from_labels(q, {"a", "b"}));
    CHECK_THROWS_AS(path_from_labels(q, {"b", "a"}), ConstructionError);
    CHECK_THROWS_AS(path_from_labels(q, {"c"}), ConstructionError);
}

TEST_CASE("spec files report line numbers") {
    const std::string bad = "field_modulus: 2\nvertices: 2\narrows:\n  - \"1 -> 3 : a\"\n";
    try {
        parse_spec(bad, "bad.yaml");
        FAIL("expected a SpecError");
    } catch (const SpecError& e) {
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("bad.yaml:4") == 0);
    }
    CHECK_THROWS_AS(parse_spec("field_modulus: 4\nvertices: 1\n"), SpecError);
    CHECK_THROWS_AS(parse_spec("field_modulus: 2\nvertices: 1\ncolour: red\n"), SpecError);
}

TEST_CASE("all corpus files load") {
    for (const auto& f : corpus::files()) {
        CAPTURE(f);
        CHECK_NOTHROW(corpus::alg(f));
    }
}
