#include "doctest.h"
#include "corpus.hpp"
#include "siltlab/subcat.hpp"

using namespace siltlab;

namespace {
// Some g with g o f = h.
bool extends_through(const Morphism& f, const Morphism& h) {
    auto gs = hom_basis(f.target(), h.target());
    const int amb = ambient_hom_dim(f.source(), h.target());
    const int p = h.source().modulus();
    Mat a(amb, static_cast<int>(gs.size()), p);
    for (std::size_t k = 0; k < gs.size(); ++k) {
        auto v = compose(gs[k], f).flatten();
        for (int r = 0; r < amb; ++r) {
            a.set(r, static_cast<int>(k), v[static_cast<std::size_t>(r)]);
        }
    }
    auto hv = h.flatten();
    Mat b(amb, 1, p, hv);
    if (gs.empty()) {
        return h.is_zero();
    }
    return solve(a, b).has_value();
}

struct Fixture {
    CorePtr core;
    Context ctx;
    explicit Fixture(const std::string& f) : core(corpus::core(f)), ctx(core) {}
    IndexSet s(std::initializer_list<const char*> names) const { return corpus::set_of(*core, names); }
};
} // namespace

TEST_CASE("perps over kA2") {
    Fixture k("ka2.yaml");
    IndexSet all = k.core->all();
    CHECK(right_perp1(k.ctx, k.core->projectives()) == all);
    CHECK(right_perp1(k.ctx, all) == k.s({"P1", "S1"}));
    CHECK(k.s({"P1", "S1"}) == k.core->injectives());
    CHECK(left_perp1(k.ctx, all) == k.core->projectives());
    CHECK(right_perp(k.ctx, 0) == all);
}

TEST_CASE("left perp of the projective over dual numbers") {
    Fixture k("dual_numbers.yaml");
    CHECK(left_perp(k.ctx, k.s({"P"})) == k.core->all());
    CHECK(right_perp(k.ctx, k.s({"S"})) == k.s({"P"}));
}

TEST_CASE("perps are antitone and Galois") {
    for (const auto& f : corpus::files()) {
        Fixture k(f);
        IndexSet all = k.core->all();
        for (IndexSet x = 0; x <= all; ++x) {
            CHECK(subset_of(x, left_perp1(k.ctx, right_perp1(k.ctx, x))));
            CHECK(subset_of(x, right_perp1(k.ctx, left_perp1(k.ctx, x))));
            for (int i = 0; i < k.core->size(); ++i) {
                IndexSet y = x | singleton(i);
                CHECK(subset_of(right_perp1(k.ctx, y), right_perp1(k.ctx, x)));
                CHECK(subset_of(left_perp(k.ctx, y), left_perp(k.ctx, x)));
            }
        }
    }
}

TEST_CASE("approximations over kA2") {
    Fixture k("ka2.yaml");
    const Module& s1 = k.core->module(*k.core->index_of("S1"));
    auto a = minimal_right_approximation(k.ctx, k.core->projectives(), s1);
    CHECK(a.map.is_surjective());
    CHECK(is_isomorphic(a.object, k.core->module(*k.core->index_of("P1"))));
    auto z = right_approximation(k.ctx, k.s({"S2"}), s1);
    CHECK(z.object.is_zero());
    CHECK(z.map.is_zero());
    // m in x: split epi.
    auto self = minimal_right_approximation(k.ctx, k.s({"S1"}), s1);
    CHECK(self.map.is_iso());
}

TEST_CASE("every map from x factors through the approximation") {
    for (const auto& f : {"ka3.yaml", "cyclic22.yaml"}) {
        Fixture k(f);
        IndexSet all = k.core->all();
        for (IndexSet x = 1; x <= all; x += 5) {
            for (int m = 0; m < k.core->size(); ++m) {
                const Module& mm = k.core->module(m);
                auto minimal = minimal_right_approximation(k.ctx, x, mm);
                auto universal = right_approximation(k.ctx, x, mm);
                for (int i : members_of(x)) {
                    for (const auto& h : hom_basis(k.core->module(i), mm)) {
                        CHECK(lift_through(minimal.map, h).has_value());
                    }
                }
                auto lmin = minimal_left_approximation(k.ctx, x, mm);
                for (int i : members_of(x)) {
                    for (const auto& h : hom_basis(mm, k.core->module(i))) {
                        CHECK(extends_through(lmin.map, h));
                    }
                }
                // The minimal approximation is a summand of the universal one.
                for (std::size_t t = 0; t < minimal.mult.size(); ++t) {
                    CHECK(minimal.mult[t] <= universal.mult[t]);
                }
            }
        }
    }
}

TEST_CASE("closures from the spec") {
    Fixture k("ka2.yaml");
    IndexSet all = k.core->all();
    for (IndexSet x = 0; x <= all; ++x) {
        CHECK(k.ctx.star(x, 0) == x);
    }
    CHECK(contains(k.ctx.cone(k.s({"S2"}), k.s({"P1"})), *k.core->index_of("S1")));
    CHECK(hat_n(k.ctx, all, -1) == 0);
    CHECK(hat(k.ctx, k.core->projectives()) == all);
    CHECK(thick_closure(k.ctx, all) == all);
    CHECK(thick_closure(k.ctx, k.s({"P1", "S1"})) == all);

    Fixture d("dual_numbers.yaml");
    IndexSet p = d.s({"P"});
    CHECK(d.ctx.cocone(p, p) == p);
    CHECK(hat(d.ctx, p) == p);
    CHECK(thick_closure(d.ctx, p) == p);
}

TEST_CASE("resolving subcategories") {
    Fixture k("ka2.yaml");
    IndexSet all = k.core->all();
    CHECK(is_resolving(k.ctx, k.core->projectives()));
    CHECK(is_resolving(k.ctx, all));
    CHECK_FALSE(is_resolving(k.ctx, k.s({"P1", "S1"})));
    CHECK(is_coresolving(k.ctx, k.s({"P1", "S1"})));
    CHECK_FALSE(is_coresolving(k.ctx, k.core->projectives()));
    auto r = k.ctx.restrict(k.s({"P1", "S1"}));
    CHECK_THROWS_AS(is_resolving(r, k.s({"P1"})), UnsupportedError);
    CHECK_THROWS_AS(right_perp(r, k.s({"P1"})), UnsupportedError);
}

TEST_CASE("projective dimensions of subcategories") {
    Fixture k("ka2.yaml");
    CHECK(subcat_pd(k.ctx, k.core->projectives()) == Dim(0));
    CHECK(subcat_pd(k.ctx, k.core->all()) == Dim(1));
    Fixture d("dual_numbers.yaml");
    CHECK_FALSE(subcat_pd(d.ctx, d.s({"S"})).has_value());
    CHECK(subcat_id(d.ctx, d.s({"P"})) == Dim(0));
}

TEST_CASE("towers stabilise and grow monotonically") {
    for (const auto& f : corpus::files()) {
        Fixture k(f);
        IndexSet all = k.core->all();
        for (IndexSet x = 0; x <= all; ++x) {
            auto t = hat_tower(k.ctx, x);
            CHECK(t.steps <= k.core->size());
            IndexSet prev = 0;
            for (int n = -1; n <= t.steps + 1; ++n) {
                IndexSet cur = hat_n(k.ctx, x, n);
                CHECK(subset_of(prev, cur));
                prev = cur;
            }
            CHECK(prev == t.result);
            CHECK(subset_of(x, t.result));
        }
    }
}
