#include "doctest.h"
#include "corpus.hpp"

using namespace siltlab;

TEST_CASE("skeleton sizes and names") {
    auto ka2 = corpus::core("ka2.yaml");
    CHECK(ka2->size() == 3);
    CHECK(ka2->index_of("P1").has_value());
    CHECK(ka2->index_of("S1").has_value());
    CHECK(ka2->index_of("P2") == ka2->index_of("S2"));
    CHECK(ka2->index_of("#0") == std::optional<int>(0));
    CHECK_FALSE(ka2->index_of("Q").has_value());
    CHECK(corpus::core("ka3.yaml")->size() == 6);
    CHECK(corpus::core("dual_numbers.yaml")->size() == 2);
    CHECK(corpus::core("semisimple.yaml")->size() == 2);
    CHECK(corpus::core("cyclic22.yaml")->size() == 4);
}

TEST_CASE("declared skeleton matches the enumerated one") {
    auto declared = corpus::core("ka2_declared.yaml");
    auto enumerated = corpus::core("ka2.yaml");
    REQUIRE(declared->size() == 3);
    for (int i = 0; i < 3; ++i) {
        auto j = enumerated->index_of(declared->name(i));
        REQUIRE(j.has_value());
        CHECK(is_isomorphic(declared->module(i), enumerated->module(*j)));
    }
}

TEST_CASE("incomplete declared skeletons are rejected") {
    auto alg = corpus::alg("ka2.yaml");
    std::vector<Indecomposable> only_simples{{"S1", simple_module(alg, 0), {}}, {"S2", simple_module(alg, 1), {}}};
    CHECK_THROWS_AS(make_core(alg, only_simples), ValidationError);
    std::vector<Indecomposable> dup{{"S1", simple_module(alg, 0), {}},
                                    {"T", simple_module(alg, 0), {}},
                                    {"S2", simple_module(alg, 1), {}},
                                    {"P1", projective_module(alg, 0), {}}};
    CHECK_THROWS_AS(make_core(alg, dup), ValidationError);
}

TEST_CASE("global dimensions") {
    CHECK(corpus::core("ka2.yaml")->global_dimension() == Dim(1));
    CHECK(corpus::core("ka3.yaml")->global_dimension() == Dim(1));
    CHECK(corpus::core("semisimple.yaml")->global_dimension() == Dim(0));
    CHECK_FALSE(corpus::core("dual_numbers.yaml")->global_dimension().has_value());
    CHECK_FALSE(corpus::core("cyclic22.yaml")->global_dimension().has_value());
    CHECK(dim_string(std::nullopt) == "inf");
}

TEST_CASE("decompositions agree") {
    auto core = corpus::core("ka3.yaml");
    auto alg = core->algebra();
    auto m = direct_sum(power(projective_module(alg, 0), 2), injective_module(alg, 2));
    auto slow = core->decompose(m);
    auto fast = core->decompose_fast(m);
    CHECK(slow == fast);
    int sum = 0;
    for (int x : slow) {
        sum += x;
    }
    CHECK(sum == 3);
}

TEST_CASE("atlas of kA2 is exact") {
    auto core = corpus::core("ka2.yaml");
    Context ctx(core);
    CHECK(ctx.closures_exact());
    int s1 = *core->index_of("S1");
    int s2 = *core->index_of("S2");
    int p1 = *core->index_of("P1");
    CHECK(ctx.star(singleton(s2), singleton(s1)) == (singleton(s1) | singleton(s2) | singleton(p1)));
    CHECK(ctx.star(singleton(s1), singleton(s2)) == (singleton(s1) | singleton(s2)));
    CHECK(ctx.cone(singleton(s2), singleton(p1)) == (singleton(s1) | singleton(p1)));
    CHECK(ctx.cocone(singleton(p1), singleton(s1)) == (singleton(s2) | singleton(p1)));
}

TEST_CASE("dual numbers atlas has a single Ext edge") {
    auto core = corpus::core("dual_numbers.yaml");
    Context ctx(core);
    CHECK(ctx.closures_exact());
    int s = *core->index_of("S");
    int p = *core->index_of("P");
    CHECK(contains(ctx.star(singleton(s), singleton(s)), p));
}

TEST_CASE("restriction requires extension closure") {
    auto core = corpus::core("ka2.yaml");
    Context ctx(core);
    IndexSet simples = corpus::set_of(*core, {"S1", "S2"});
    CHECK_THROWS_AS(ctx.restrict(simples), ValidationError);
    auto r = ctx.restrict(corpus::set_of(*core, {"S1", "P1"}));
    CHECK(r.is_restricted());
    CHECK(ctx.names(simples) == "{S1,S2}");
}

TEST_CASE("serial and parallel cores agree") {
    for (const auto& f : corpus::files()) {
        auto a = corpus::core(f, Exec::serial);
        auto b = corpus::core(f, Exec::parallel);
        REQUIRE(a->size() == b->size());
        for (int i = 0; i < a->size(); ++i) {
            CHECK(a->name(i) == b->name(i));
            for (int j = 0; j < a->size(); ++j) {
                CHECK(a->ext().hom(i, j) == b->ext().hom(i, j));
                CHECK(a->ext().ext1(i, j) == b->ext().ext1(i, j));
            }
        }
        CHECK(build_atlas(*a, 3, Exec::serial).pieces == build_atlas(*b, 3, Exec::parallel).pieces);
    }
}
