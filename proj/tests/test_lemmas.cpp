#include "doctest.h"
#include "corpus.hpp"
#include "siltlab/lemmas.hpp"
#include "siltlab/subcat.hpp"

using namespace siltlab;

namespace {

// Presilting classes from module-level Ext, independent of the syzygy table.
// Degrees up to 2n + 2 suffice on the corpus: supports of syzygies repeat
// within n steps.
int presilting_oracle(const Core& k) {
    const int n = k.size();
    int count = 0;
    for (IndexSet m = 1; m <= k.all(); ++m) {
        bool ok = true;
        for (int i : members_of(m)) {
            for (int j : members_of(m)) {
                for (int d = 1; d <= 2 * n + 2 && ok; ++d) {
                    ok = ext_dim(k.module(i), k.module(j), d) == 0;
                }
            }
        }
        count += ok ? 1 : 0;
    }
    return count;
}

} // namespace

TEST_CASE("lemma suites pass on the corpus") {
    for (const auto& f : corpus::files()) {
        INFO(f);
        auto k = corpus::core(f);
        Context ctx(k);
        Report r = verify_lemmas(ctx);
        CHECK(r.passed());
        CHECK(r.failures.empty());
        CHECK(r.checks > 500);
        CHECK(r.data["prop_longex"]["checks"].get<long long>() >= 300);
    }
}

TEST_CASE("lem_basic scans every triple") {
    auto k = corpus::core("ka3.yaml");
    Report r = verify_lem_basic(Context(k));
    CHECK(r.passed());
    CHECK(r.summary == "all 262144 triples");
    CHECK(r.data["(7)"]["checks"].get<long long>() == 262144);
    // (8) and (9) are gated on Ext^2(z, x) = 0, which always holds at gldim 1.
    CHECK(r.data["(8)"]["checks"].get<long long>() == 262144);
}

TEST_CASE("lem_basic gating is live on the dual numbers") {
    auto d = corpus::core("dual_numbers.yaml");
    Report r = verify_lem_basic(Context(d));
    CHECK(r.passed());
    CHECK(r.data["(8)"]["checks"].get<long long>() < 64);
}

TEST_CASE("the reverse of lem_basic(1) is strict on kA3") {
    // Keeps the containments honest: the closure data is not degenerate.
    auto k = corpus::core("ka3.yaml");
    Context ctx(k);
    long long strict = 0;
    for (IndexSet x = 0; x <= k->all(); ++x) {
        for (IndexSet y = 0; y <= k->all(); ++y) {
            for (IndexSet z = 0; z <= k->all(); ++z) {
                strict += subset_of(ctx.cone(ctx.star(y, x), z), ctx.cone(x, ctx.cone(y, z))) ? 0 : 1;
            }
        }
    }
    CHECK(strict > 0);
}

TEST_CASE("lem_basic(8) needs its Ext^2 hypothesis on the cyclic algebra") {
    auto k = corpus::core("cyclic22.yaml");
    Context ctx(k);
    long long ungated = 0;
    for (IndexSet x = 0; x <= k->all(); ++x) {
        for (IndexSet y = 0; y <= k->all(); ++y) {
            for (IndexSet z = 0; z <= k->all(); ++z) {
                ungated += subset_of(ctx.star(ctx.cone(x, y), z), ctx.cone(x, ctx.star(y, z))) ? 0 : 1;
            }
        }
    }
    CHECK(ungated > 0);
    CHECK(verify_lem_basic(ctx).passed());
}

TEST_CASE("presilting tower suite counts match a module-level oracle") {
    for (const auto& f : corpus::files()) {
        INFO(f);
        auto k = corpus::core(f);
        Report r = verify_presilting_towers(Context(k));
        CHECK(r.passed());
        const int expect = presilting_oracle(*k);
        CHECK(r.summary.rfind(std::to_string(expect) + " presilting classes", 0) == 0);
    }
}

TEST_CASE("Wakamatsu over kA2") {
    auto k = corpus::core("ka2.yaml");
    Report r = verify_wakamatsu(Context(k));
    CHECK(r.passed());
    CHECK(r.summary == "2 resolving classes");
    CHECK(r.checks == 2 * 2 * 3);
}

TEST_CASE("long exact samples are deterministic across execution modes") {
    auto a = corpus::core("cyclic22.yaml", Exec::serial);
    auto b = corpus::core("cyclic22.yaml", Exec::parallel);
    LemmaOptions opt;
    opt.random_conflations = 40;
    CHECK(verify_long_exact(Context(a), opt).to_json() == verify_long_exact(Context(b), opt).to_json());
    opt.seed = 7;
    Report r = verify_long_exact(Context(a), opt);
    CHECK(r.passed());
}

TEST_CASE("kernels and bound stability") {
    for (const auto& f : corpus::files()) {
        INFO(f);
        Context ctx(corpus::core(f));
        Report kr = verify_kernels(ctx);
        CHECK(kr.passed());
        Report br = verify_bound_stability(ctx);
        CHECK(br.passed());
        CHECK_FALSE(br.indeterminate);
    }
}

TEST_CASE("lemma suites refuse restricted contexts") {
    auto k = corpus::core("ka2.yaml");
    Context ctx(k);
    Context sub = ctx.restrict(k->projectives());
    CHECK_THROWS_AS(verify_lemmas(sub), UnsupportedError);
    CHECK_THROWS_AS(verify_lem_basic(sub), UnsupportedError);
}
