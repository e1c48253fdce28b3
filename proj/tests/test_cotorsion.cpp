#include "doctest.h"
#include "corpus.hpp"
#include "siltlab/cotorsion.hpp"

using namespace siltlab;

namespace {

// Oracle: (CP2) plus Cone/Cocone membership read directly from the pieces.
bool oracle_pair(const Context& ctx, IndexSet x, IndexSet y) {
    const auto& ext = ctx.core().ext();
    for (int i : members_of(x)) {
        for (int j : members_of(y)) {
            if (ext.ext1(i, j) != 0) {
                return false;
            }
        }
    }
    IndexSet u = ctx.universe();
    return ctx.cone(y, x) == u && ctx.cocone(y, x) == u && left_perp1(ctx, y) == x && right_perp1(ctx, x) == y;
}

} // namespace

TEST_CASE("kA2 cotorsion pairs") {
    auto core = corpus::core("ka2.yaml");
    Context ctx(core);
    IndexSet all = core->all();
    IndexSet proj = core->projectives();
    IndexSet inj = corpus::set_of(*core, {"P1", "S1"});
    CHECK(is_cotorsion_pair(ctx, proj, all).has_value());
    CHECK(is_cotorsion_pair(ctx, all, inj).has_value());
    CHECK_FALSE(is_cotorsion_pair(ctx, corpus::set_of(*core, {"S1", "S2"}), all).has_value());

    auto poset = enumerate_cotorsion_pairs(ctx);
    REQUIRE(poset.pairs.size() == 2);
    for (const auto& p : poset.pairs) {
        CHECK(p.hereditary == Tri::yes);
        CHECK(p.bounded == Tri::yes);
        CHECK(p.cp3.size() == 3);
        for (const auto& w : p.cp3) {
            CHECK(w.conflation.is_valid());
        }
        for (const auto& w : p.cp4) {
            CHECK(w.conflation.is_valid());
        }
    }
    CHECK(poset.index_of(proj, all) >= 0);
    CHECK(poset.index_of(all, inj) >= 0);
}

TEST_CASE("counts on the corpus match the oracle") {
    for (const auto& f : corpus::files()) {
        auto core = corpus::core(f);
        Context ctx(core);
        auto poset = enumerate_cotorsion_pairs(ctx);
        std::size_t expected = 0;
        for (IndexSet x = 0; x <= core->all(); ++x) {
            for (IndexSet y = 0; y <= core->all(); ++y) {
                if (oracle_pair(ctx, x, y)) {
                    ++expected;
                    CHECK(poset.index_of(x, y) >= 0);
                }
            }
        }
        INFO(f);
        CHECK(poset.pairs.size() == expected);
        for (const auto& p : poset.pairs) {
            CHECK(subset_of(core->projectives(), p.x));
            CHECK(subset_of(core->injectives(), p.y));
        }
    }
}

TEST_CASE("flags over the dual numbers and the semisimple algebra") {
    auto d = corpus::core("dual_numbers.yaml");
    Context dctx(d);
    auto poset = enumerate_cotorsion_pairs(dctx);
    REQUIRE(poset.pairs.size() == 2);
    for (const auto& p : poset.pairs) {
        CHECK(p.hereditary == Tri::yes);
        CHECK(p.bounded == Tri::no);
    }
    auto s = corpus::core("semisimple.yaml");
    Context sctx(s);
    auto sp = enumerate_cotorsion_pairs(sctx);
    REQUIRE(sp.pairs.size() == 1);
    CHECK(sp.pairs[0].hereditary == Tri::yes);
    CHECK(sp.pairs[0].bounded == Tri::yes);
}

TEST_CASE("poset axioms") {
    auto core = corpus::core("ka3.yaml");
    Context ctx(core);
    auto poset = enumerate_cotorsion_pairs(ctx);
    const std::size_t n = poset.pairs.size();
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(poset.le[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                CHECK_FALSE((poset.le[i][j] && poset.le[j][i]));
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (poset.le[i][j] && poset.le[j][k]) {
                    CHECK(poset.le[i][k]);
                }
            }
        }
    }
}

TEST_CASE("intervals and cohearts over kA2") {
    auto core = corpus::core("ka2.yaml");
    Context ctx(core);
    auto poset = enumerate_cotorsion_pairs(ctx);
    const auto& bottom = poset.pairs[static_cast<std::size_t>(poset.index_of(core->all(), core->injectives()))];
    const auto& top = poset.pairs[static_cast<std::size_t>(poset.index_of(core->projectives(), core->all()))];
    CHECK(interval(poset, bottom, top).size() == 2);
    CHECK(coheart(ctx, bottom, top).universe() == core->all());
    CHECK(coheart(ctx, top, top).universe() == core->projectives());
    CHECK(interval(poset, top, top).size() == 1);
    CHECK_THROWS_AS(interval(poset, top, bottom), ContractError);

    auto [a, b] = thm2_phi(top, bottom, top);
    CHECK(a == core->projectives());
    CHECK(b == core->all());

    auto rep = verify_thm2(ctx, bottom, top);
    CHECK(rep.passed());
    CHECK(rep.summary == "2 <-> 2");
}

TEST_CASE("theorem 2 over kA3 and the cyclic algebra") {
    for (const auto& f : {"ka3.yaml", "cyclic22.yaml", "ka2.yaml"}) {
        auto core = corpus::core(f);
        Context ctx(core);
        auto rep = verify_thm2_all(ctx);
        INFO(rep.to_text());
        CHECK(rep.passed());
    }
}

TEST_CASE("serial and parallel enumeration agree") {
    auto a = corpus::core("ka3.yaml", Exec::serial);
    auto b = corpus::core("ka3.yaml", Exec::parallel);
    auto pa = enumerate_cotorsion_pairs(Context(a));
    auto pb = enumerate_cotorsion_pairs(Context(b));
    REQUIRE(pa.pairs.size() == pb.pairs.size());
    for (std::size_t i = 0; i < pa.pairs.size(); ++i) {
        CHECK(pa.pairs[i].x == pb.pairs[i].x);
        CHECK(pa.pairs[i].y == pb.pairs[i].y);
        CHECK(pa.pairs[i].bounded == pb.pairs[i].bounded);
    }
    CHECK(poset_json(Context(a), pa).dump() == poset_json(Context(b), pb).dump());
}

TEST_CASE("DOT output") {
    auto core = corpus::core("ka2.yaml");
    Context ctx(core);
    auto dot = poset_dot(ctx, enumerate_cotorsion_pairs(ctx));
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("oversized scans are refused") {
    auto core = corpus::core("ka3.yaml");
    CHECK_THROWS_AS(enumerate_cotorsion_pairs(Context(core), 4), UnsupportedError);
}
