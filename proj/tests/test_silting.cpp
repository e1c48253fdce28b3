#include "doctest.h"
#include "corpus.hpp"
#include "siltlab/silting.hpp"

using namespace siltlab;

namespace {

std::vector<IndexSet> sets_of(const std::vector<SiltingRecord>& recs) {
    std::vector<IndexSet> out;
    for (const auto& r : recs) {
        out.push_back(r.m);
    }
    return out;
}

} // namespace

TEST_CASE("presilting examples") {
    auto k = corpus::core("ka2.yaml");
    Context ctx(k);
    CHECK(is_presilting(ctx, k->projectives()));
    CHECK(is_presilting(ctx, corpus::set_of(*k, {"S1"})));
    CHECK_FALSE(is_presilting(ctx, k->all()));
    auto d = corpus::core("dual_numbers.yaml");
    CHECK_FALSE(is_presilting(Context(d), corpus::set_of(*d, {"S"})));
}

TEST_CASE("silting over kA2") {
    auto k = corpus::core("ka2.yaml");
    Context ctx(k);
    IndexSet proj = k->projectives();
    IndexSet t = corpus::set_of(*k, {"P1", "S1"});
    auto a = is_silting(ctx, proj);
    REQUIRE(a.has_value());
    CHECK(a->route == "silt-char");
    CHECK(a->generator.dims() == std::vector<int>{1, 2});
    auto b = is_silting(ctx, t);
    REQUIRE(b.has_value());
    CHECK(b->pd == Dim(1));
    auto recs = enumerate_silting(ctx);
    CHECK(sets_of(recs) == std::vector<IndexSet>{std::min(proj, t), std::max(proj, t)});
    CHECK(silting_ge(ctx, proj, t));
    CHECK_FALSE(silting_ge(ctx, t, proj));
    CHECK(silting_ge(ctx, t, t));
}

TEST_CASE("no silting over the dual numbers") {
    auto d = corpus::core("dual_numbers.yaml");
    Context ctx(d);
    CHECK_FALSE(is_silting(ctx, d->projectives()).has_value());
    CHECK(enumerate_silting(ctx).empty());
    CHECK_FALSE(is_tilting_module(ctx, projective_module(d->algebra(), 0)));
}

TEST_CASE("semisimple silting") {
    auto s = corpus::core("semisimple.yaml");
    Context ctx(s);
    auto recs = enumerate_silting(ctx);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].m == s->all());
}

TEST_CASE("the regular module is silting iff the global dimension is finite") {
    for (const auto& f : corpus::files()) {
        auto core = corpus::core(f);
        Context ctx(core);
        INFO(f);
        CHECK(is_silting(ctx, core->projectives()).has_value() == core->global_dimension().has_value());
    }
}

TEST_CASE("theorem 1 psi examples over kA2") {
    auto k = corpus::core("ka2.yaml");
    Context ctx(k);
    auto p = thm1_psi(ctx, corpus::set_of(*k, {"P1", "S1"}));
    CHECK(p.x == k->all());
    CHECK(p.y == corpus::set_of(*k, {"P1", "S1"}));
    auto poset = enumerate_cotorsion_pairs(ctx);
    const auto& top = poset.pairs[static_cast<std::size_t>(poset.index_of(k->projectives(), k->all()))];
    CHECK(thm1_phi(top) == k->projectives());
}

TEST_CASE("verifiers on the corpus") {
    for (const auto& f : corpus::files()) {
        auto core = corpus::core(f);
        Context ctx(core);
        INFO(f);
        auto t1 = verify_thm1(ctx);
        INFO(t1.to_text());
        CHECK(t1.passed());
        auto ord = verify_silting_order(ctx);
        INFO(ord.to_text());
        CHECK(ord.passed());
        auto t3 = verify_thm3(ctx);
        INFO(t3.to_text());
        CHECK(t3.passed());
        auto fr = verify_frobenius(ctx);
        INFO(fr.to_text());
        CHECK(fr.passed());
        if (core->global_dimension()) {
            auto ar = verify_ar(ctx);
            INFO(ar.to_text());
            CHECK(ar.passed());
        } else {
            CHECK_THROWS_AS(verify_ar(ctx), UnsupportedError);
        }
    }
}

TEST_CASE("kA3 has five silting subcategories") {
    auto core = corpus::core("ka3.yaml");
    Context ctx(core);
    CHECK(enumerate_silting(ctx).size() == 5);
    CHECK(verify_thm1(ctx).summary == "5 <-> 5");
}

TEST_CASE("tilting certificates") {
    auto k = corpus::core("ka2.yaml");
    Context ctx(k);
    auto alg = k->algebra();
    auto t = direct_sum(projective_module(alg, 0), simple_module(alg, 0));
    auto c = tilting_certificate(ctx, t);
    CHECK(c.tilting);
    CHECK(c.self_orthogonal);
    CHECK(c.coresolves_algebra);
    CHECK(c.pd == Dim(1));
    CHECK(is_tilting_module(ctx, direct_sum(projective_module(alg, 0), projective_module(alg, 1))));
    CHECK_FALSE(is_tilting_module(ctx, simple_module(alg, 0)));
}

TEST_CASE("left Frobenius pairs") {
    auto d = corpus::core("dual_numbers.yaml");
    Context ctx(d);
    IndexSet p = d->projectives();
    auto fp = is_left_frobenius(ctx, p, p);
    REQUIRE(fp.has_value());
    CHECK(tilde(ctx, p) == p);
    CHECK(fp->witnesses.size() == 1);

    auto k = corpus::core("ka2.yaml");
    Context kc(k);
    for (const auto& rec : enumerate_silting(kc)) {
        CHECK(is_left_frobenius(kc, check(kc, rec.m), rec.m).has_value());
    }
}

TEST_CASE("resolving classes and hereditary pairs") {
    for (const auto& f : corpus::files()) {
        INFO(f);
        Context ctx(corpus::core(f));
        Report r = verify_res_hcotors(ctx);
        CHECK(r.passed());
    }
    auto k = corpus::core("ka3.yaml");
    CHECK(verify_res_hcotors(Context(k)).summary == "5 <-> 5 <-> 5");
    auto d = corpus::core("dual_numbers.yaml");
    CHECK(verify_res_hcotors(Context(d)).summary == "2 <-> 2 <-> 2");
}
