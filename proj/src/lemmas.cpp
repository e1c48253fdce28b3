#include "siltlab/lemmas.hpp"

#include "siltlab/subcat.hpp"

#include <array>
#include <random>

namespace siltlab {

namespace {

void require_full(const Context& ctx, const char* what) {
    if (ctx.is_restricted()) {
        throw UnsupportedError(std::string(what) + " is only available in the full category");
    }
}

// Failure messages kept per statement; the rest are only counted.
constexpr int kKeepFailures = 4;

struct Tally {
    long long checks = 0;
    long long failed = 0;
    std::vector<std::string> first;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            if (static_cast<int>(first.size()) < kKeepFailures) {
                first.push_back(what);
            }
            ++failed;
        }
    }
    template <class F>
    void expect_lazy(bool cond, F&& what) {
        ++checks;
        if (!cond) {
            if (static_cast<int>(first.size()) < kKeepFailures) {
                first.push_back(what());
            }
            ++failed;
        }
    }
    void absorb(const Tally& t) {
        checks += t.checks;
        failed += t.failed;
        for (const auto& f : t.first) {
            if (static_cast<int>(first.size()) < kKeepFailures) {
                first.push_back(f);
            }
        }
    }
    void into(Report& r, const std::string& label) const {
        r.checks += checks;
        for (const auto& f : first) {
            r.failures.push_back(label + ": " + f);
        }
        if (failed > static_cast<long long>(first.size())) {
            r.failures.push_back(label + ": " + std::to_string(failed - static_cast<long long>(first.size())) +
                                 " further failures");
        }
        r.data[label] = {{"checks", checks}, {"failures", failed}};
    }
};

// Binary operation tables over every subset pair of a full skeleton.
struct Tables {
    int n = 0;
    std::vector<IndexSet> star, cone, cocone;

    IndexSet s(IndexSet x, IndexSet y) const { return star[at(x, y)]; }
    IndexSet cn(IndexSet x, IndexSet y) const { return cone[at(x, y)]; }
    IndexSet cc(IndexSet x, IndexSet y) const { return cocone[at(x, y)]; }
    std::size_t at(IndexSet x, IndexSet y) const { return (static_cast<std::size_t>(x) << n) | y; }
};

Tables build_tables(const Context& ctx) {
    Tables t;
    t.n = ctx.size();
    const std::size_t side = std::size_t{1} << t.n;
    t.star.resize(side * side);
    t.cone.resize(side * side);
    t.cocone.resize(side * side);
    for_each_index(static_cast<int>(side), ctx.core().exec(), [&](int xi) {
        const auto x = static_cast<IndexSet>(xi);
        for (std::size_t yi = 0; yi < side; ++yi) {
            const auto y = static_cast<IndexSet>(yi);
            t.star[t.at(x, y)] = ctx.star(x, y);
            t.cone[t.at(x, y)] = ctx.cone(x, y);
            t.cocone[t.at(x, y)] = ctx.cocone(x, y);
        }
    });
    return t;
}

std::vector<IndexSet> all_subsets(const Context& ctx) {
    return scan_subsets(ctx.universe(), Exec::serial, [](IndexSet) { return true; });
}

std::vector<IndexSet> presilting_sets(const Context& ctx) {
    return scan_subsets(ctx.universe(), ctx.core().exec(),
                        [&](IndexSet m) { return m != 0 && is_presilting(ctx, m); });
}

Module sum_of(const Context& ctx, const std::vector<int>& idx) {
    std::vector<Module> parts;
    for (int i : idx) {
        parts.push_back(ctx.core().module(i));
    }
    return parts.empty() ? Module::zero(ctx.core().algebra()) : direct_sum(parts).sum;
}

bool dims_add_up(const Conflation& conf) {
    for (int v = 0; v < conf.b.vertex_count(); ++v) {
        if (conf.b.dim(v) != conf.a.dim(v) + conf.c.dim(v)) {
            return false;
        }
    }
    return true;
}

void mark_inexact(const Context& ctx, Report& r) {
    if (!ctx.closures_exact()) {
        r.indeterminate = true;
        r.notes.push_back("conflation atlas is not exact at mult_bound " + std::to_string(ctx.mult_bound()));
    }
}

} // namespace

Report verify_lem_basic(const Context& ctx, const LemmaOptions& opt) {
    require_full(ctx, "verify_lem_basic");
    Report r;
    r.title = "lem_basic";
    const int n = ctx.size();
    const auto& ext = ctx.core().ext();
    // e2[i]: members j with Ext^2(X_i, X_j) != 0.
    std::vector<IndexSet> e2(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (ext.ext_dim(i, j, 2) != 0) {
                e2[static_cast<std::size_t>(i)] |= singleton(j);
            }
        }
    }
    auto e2_clear = [&](IndexSet z, IndexSet x) {
        for (int i : members_of(z)) {
            if (e2[static_cast<std::size_t>(i)] & x) {
                return false;
            }
        }
        return true;
    };
    auto tag = [&](IndexSet x, IndexSet y, IndexSet z) {
        return "x=" + ctx.names(x) + " y=" + ctx.names(y) + " z=" + ctx.names(z);
    };

    using Ops = std::array<Tally, 9>;
    auto run = [&](auto&& S, auto&& Cn, auto&& Cc, IndexSet x, IndexSet y, IndexSet z, Ops& t) {
        auto msg = [&] { return tag(x, y, z); };
        t[0].expect_lazy(subset_of(Cn(x, Cn(y, z)), Cn(S(y, x), z)), msg);
        t[1].expect_lazy(subset_of(Cc(Cc(x, y), z), Cc(x, S(z, y))), msg);
        t[2].expect_lazy(subset_of(Cn(Cc(x, y), z), Cn(x, S(z, y))), msg);
        t[3].expect_lazy(subset_of(Cc(x, Cn(y, z)), Cc(S(y, x), z)), msg);
        t[4].expect_lazy(subset_of(S(x, Cn(y, z)), Cn(y, S(x, z))), msg);
        t[5].expect_lazy(subset_of(S(Cc(x, y), z), Cc(S(x, z), y)), msg);
        t[6].expect_lazy(Cn(x, Cc(y, z)) == Cc(Cn(x, y), z), msg);
        if (e2_clear(z, x)) {
            t[7].expect_lazy(subset_of(S(Cn(x, y), z), Cn(x, S(y, z))), msg);
            t[8].expect_lazy(subset_of(S(x, Cc(y, z)), Cc(S(x, y), z)), msg);
        }
    };

    Ops total;
    if (n <= opt.max_table_skeleton) {
        const Tables tb = build_tables(ctx);
        auto S = [&](IndexSet a, IndexSet b) { return tb.s(a, b); };
        auto Cn = [&](IndexSet a, IndexSet b) { return tb.cn(a, b); };
        auto Cc = [&](IndexSet a, IndexSet b) { return tb.cc(a, b); };
        const int side = 1 << n;
        std::vector<Ops> per(static_cast<std::size_t>(side));
        for_each_index(side, ctx.core().exec(), [&](int xi) {
            auto& t = per[static_cast<std::size_t>(xi)];
            for (int yi = 0; yi < side; ++yi) {
                for (int zi = 0; zi < side; ++zi) {
                    run(S, Cn, Cc, static_cast<IndexSet>(xi), static_cast<IndexSet>(yi), static_cast<IndexSet>(zi), t);
                }
            }
        });
        for (const auto& t : per) {
            for (std::size_t k = 0; k < 9; ++k) {
                total[k].absorb(t[k]);
            }
        }
        r.summary = "all " + std::to_string(static_cast<long long>(side) * side * side) + " triples";
    } else {
        auto S = [&](IndexSet a, IndexSet b) { return ctx.star(a, b); };
        auto Cn = [&](IndexSet a, IndexSet b) { return ctx.cone(a, b); };
        auto Cc = [&](IndexSet a, IndexSet b) { return ctx.cocone(a, b); };
        std::mt19937 rng(opt.seed);
        std::uniform_int_distribution<IndexSet> pick(0, ctx.universe());
        for (int s = 0; s < opt.sampled_triples; ++s) {
            IndexSet x = pick(rng) & ctx.universe();
            IndexSet y = pick(rng) & ctx.universe();
            IndexSet z = pick(rng) & ctx.universe();
            run(S, Cn, Cc, x, y, z, total);
        }
        r.summary = std::to_string(opt.sampled_triples) + " sampled triples";
        r.notes.push_back("skeleton too large for the exhaustive triple scan");
    }
    for (std::size_t k = 0; k < 9; ++k) {
        total[k].into(r, "(" + std::to_string(k + 1) + ")");
    }
    mark_inexact(ctx, r);
    return r;
}

Report verify_lem_perp(const Context& ctx) {
    require_full(ctx, "verify_lem_perp");
    Report r;
    r.title = "lem_perp";
    const auto xs = all_subsets(ctx);
    std::vector<Tally> per(xs.size());
    for_each_index(static_cast<int>(xs.size()), ctx.core().exec(), [&](int k) {
        const IndexSet x = xs[static_cast<std::size_t>(k)];
        const IndexSet lp = left_perp(ctx, x);
        const IndexSet rp = right_perp(ctx, x);
        for (int m = 0; m <= ctx.size(); ++m) {
            const std::string t = ctx.names(x) + " n=" + std::to_string(m);
            per[static_cast<std::size_t>(k)].expect(left_perp(ctx, hat_n(ctx, x, m)) == lp, "left perp of hat_n " + t);
            per[static_cast<std::size_t>(k)].expect(right_perp(ctx, check_n(ctx, x, m)) == rp,
                                                    "right perp of check_n " + t);
        }
    });
    Tally all;
    for (const auto& t : per) {
        all.absorb(t);
    }
    all.into(r, "perp");
    r.summary = std::to_string(xs.size()) + " classes, n <= " + std::to_string(ctx.size());
    mark_inexact(ctx, r);
    return r;
}

Report verify_lem_conecl(const Context& ctx) {
    require_full(ctx, "verify_lem_conecl");
    Report r;
    r.title = "lem_conecl";
    const auto xs = all_subsets(ctx);
    std::vector<IndexSet> hats(xs.size());
    std::vector<IndexSet> checks(xs.size());
    std::vector<char> cone_cl(xs.size());
    std::vector<char> cocone_cl(xs.size());
    for_each_index(static_cast<int>(xs.size()), ctx.core().exec(), [&](int k) {
        const auto u = static_cast<std::size_t>(k);
        hats[u] = hat(ctx, xs[u]);
        checks[u] = check(ctx, xs[u]);
        cone_cl[u] = is_cone_closed(ctx, xs[u]);
        cocone_cl[u] = is_cocone_closed(ctx, xs[u]);
    });
    // xs is all subsets in numeric order, so xs[s] == s.
    Tally t;
    int closed = 0;
    for (IndexSet y : xs) {
        if (!cone_cl[y] && !cocone_cl[y]) {
            continue;
        }
        ++closed;
        for (IndexSet x = y;; x = (x - 1) & y) {
            if (cone_cl[y]) {
                t.expect(subset_of(hats[x], y), "hat " + ctx.names(x) + " escapes " + ctx.names(y));
            }
            if (cocone_cl[y]) {
                t.expect(subset_of(checks[x], y), "check " + ctx.names(x) + " escapes " + ctx.names(y));
            }
            if (x == 0) {
                break;
            }
        }
    }
    t.into(r, "conecl");
    r.summary = std::to_string(closed) + " closed classes";
    mark_inexact(ctx, r);
    return r;
}

Report verify_presilting_towers(const Context& ctx) {
    require_full(ctx, "verify_presilting_towers");
    Report r;
    r.title = "presilting towers";
    const auto ms = presilting_sets(ctx);
    const auto& ext = ctx.core().ext();
    std::vector<std::array<Tally, 9>> per(ms.size());
    std::vector<char> cldir_applies(ms.size(), 0);
    for_each_index(static_cast<int>(ms.size()), ctx.core().exec(), [&](int k) {
        const IndexSet m = ms[static_cast<std::size_t>(k)];
        auto& t = per[static_cast<std::size_t>(k)];
        const std::string mn = ctx.names(m);
        const Tower ht = hat_tower(ctx, m);
        const Tower ct = check_tower(ctx, m);
        const int top = std::max(ht.steps, ct.steps) + 1;
        // H[n + 1] = hat_n(m, n), C[k + 1] = check_n(m, k), from n = -1.
        std::vector<IndexSet> H;
        std::vector<IndexSet> C;
        for (int i = -1; i <= top + 1; ++i) {
            H.push_back(hat_n(ctx, m, i));
            C.push_back(check_n(ctx, m, i));
        }
        auto h = [&](int i) { return H[static_cast<std::size_t>(i + 1)]; };
        auto c = [&](int i) { return C[static_cast<std::size_t>(i + 1)]; };

        t[0].expect(is_extension_closed(ctx, m), mn + " not extension-closed");
        for (int a = 0; a <= top; ++a) {
            const std::string at = mn + " n=" + std::to_string(a);
            t[1].expect(subset_of(m, h(a) & left_perp(ctx, h(a))), "m outside hat_n & left perp " + at);
            t[1].expect(subset_of(h(a), ctx.cone(h(a), m)), "hat_n not in Cone(hat_n, m) " + at);
            t[2].expect(subset_of(m, c(a) & right_perp(ctx, c(a))), "m outside check_n & right perp " + at);
            t[2].expect(subset_of(c(a), ctx.cocone(m, c(a))), "check_n not in Cocone(m, check_n) " + at);
            t[5].expect(ctx.cone(h(a), h(a)) == h(a + 1), "Cone(hat_n, hat_n) != hat_{n+1} " + at);
            t[5].expect(ctx.cocone(c(a), c(a)) == c(a + 1), "Cocone(check_n, check_n) != check_{n+1} " + at);
            t[5].expect(is_extension_closed(ctx, h(a)) && is_extension_closed(ctx, c(a)),
                        "tower term not extension-closed " + at);
            for (int b = 0; b <= top; ++b) {
                const std::string ab = at + " m=" + std::to_string(b);
                t[3].expect(subset_of(h(a), right_perp(ctx, c(b))), "Ext(check_m, hat_n) != 0 " + ab);
                const IndexSet lhs = check_n(ctx, h(a), b);
                t[4].expect(lhs == ctx.cocone(h(a), c(b - 1)), "(hat_n)check_m != Cocone(hat_n, check_{m-1}) " + ab);
                t[4].expect(lhs == ctx.cone(h(a - 1), c(b)), "(hat_n)check_m != Cone(hat_{n-1}, check_m) " + ab);
                t[4].expect(lhs == hat_n(ctx, c(b), a), "(hat_n)check_m != (check_m)hat_n " + ab);
            }
        }
        const IndexSet th = thick_closure(ctx, m);
        t[4].expect(check(ctx, ht.result) == hat(ctx, ct.result), "tilde differs by order " + mn);
        t[6].expect((th & right_perp(ctx, m)) == ht.result, "thick & right perp != hat " + mn);
        t[6].expect((th & left_perp(ctx, m)) == ct.result, "thick & left perp != check " + mn);
        t[7].expect(tilde(ctx, m) == th, "tilde != thick " + mn);

        // hat_n as the members whose Ext into the right perp dies above n,
        // valid once hat(m) sits in Cone(right perp, m).
        const IndexSet rp = right_perp(ctx, m);
        if (subset_of(ht.result, ctx.cone(rp, m))) {
            cldir_applies[static_cast<std::size_t>(k)] = 1;
            for (int a = 0; a <= top; ++a) {
                IndexSet alt = 0;
                for (int i : members_of(ht.result)) {
                    bool ok = true;
                    for (int j : members_of(rp)) {
                        ok = ok && ext.vanishes_from(i, j, a + 1);
                    }
                    if (ok) {
                        alt |= singleton(i);
                    }
                }
                t[8].expect(alt == h(a), "hat_n route mismatch " + mn + " n=" + std::to_string(a));
            }
        }
    });
    static const std::array<const char*, 9> labels{"selfort(1)", "selfort(2)", "selfort(3)",
                                                   "selfort(4)", "selfort(5)", "prop_htt",
                                                   "thick-htt",  "presilt(3)", "cldir(1)"};
    std::array<Tally, 9> total;
    for (const auto& t : per) {
        for (std::size_t k = 0; k < 9; ++k) {
            total[k].absorb(t[k]);
        }
    }
    for (std::size_t k = 0; k < 9; ++k) {
        total[k].into(r, labels[k]);
    }
    int cl = 0;
    for (char c : cldir_applies) {
        cl += c;
    }
    r.summary = std::to_string(ms.size()) + " presilting classes, cldir hypothesis on " + std::to_string(cl);
    mark_inexact(ctx, r);
    return r;
}

Report verify_wakamatsu(const Context& ctx) {
    require_full(ctx, "verify_wakamatsu");
    Report r;
    r.title = "lem_wak";
    const Core& core = ctx.core();
    auto xs = scan_subsets(ctx.universe(), core.exec(), [&](IndexSet x) { return is_resolving(ctx, x); });
    std::vector<Tally> per(xs.size());
    for_each_index(static_cast<int>(xs.size()), core.exec(), [&](int k) {
        const IndexSet x = xs[static_cast<std::size_t>(k)];
        const IndexSet rp = right_perp(ctx, x);
        auto& t = per[static_cast<std::size_t>(k)];
        for (int i : members_of(ctx.universe())) {
            const std::string tag = ctx.names(x) + " at " + core.name(i);
            const Approximation ap = minimal_right_approximation(ctx, x, core.module(i));
            t.expect(ap.map.is_surjective(), "approximation not surjective " + tag);
            if (!ap.map.is_surjective()) {
                continue;
            }
            const IndexSet ker = support_of(core.decompose_fast(kernel(ap.map).module));
            t.expect(subset_of(ker, rp), "kernel " + ctx.names(ker) + " outside the right perp " + tag);
        }
    });
    Tally all;
    for (const auto& t : per) {
        all.absorb(t);
    }
    all.into(r, "wak");
    r.summary = std::to_string(xs.size()) + " resolving classes";
    return r;
}

Report verify_pd_ext(const Context& ctx) {
    require_full(ctx, "verify_pd_ext");
    Report r;
    r.title = "lem_pd-ext";
    const auto xs = all_subsets(ctx);
    int finite = 0;
    Tally t;
    for (IndexSet x : xs) {
        if (Dim pd = subcat_pd(ctx, x)) {
            ++finite;
            t.expect(right_perp_gt(ctx, x, *pd) == ctx.universe(), "pd " + ctx.names(x) + " = " + std::to_string(*pd));
        }
        if (Dim id = subcat_id(ctx, x)) {
            t.expect(left_perp_gt(ctx, x, *id) == ctx.universe(), "id " + ctx.names(x) + " = " + std::to_string(*id));
        }
    }
    t.into(r, "pd-ext");
    r.summary = std::to_string(finite) + " classes of finite pd";
    return r;
}

namespace {

struct Sample {
    std::vector<int> c;
    std::vector<int> a;
    std::vector<int> coeff_seed;
    int test = 0;
};

std::vector<Sample> draw_samples(const Context& ctx, const LemmaOptions& opt) {
    const int n = ctx.size();
    const auto& ext = ctx.core().ext();
    std::vector<std::pair<int, int>> live; // (c, a) with Ext^1(X_c, X_a) != 0
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (ext.ext1(j, i) > 0) {
                live.emplace_back(j, i);
            }
        }
    }
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> obj(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 3);
    std::vector<Sample> out;
    for (int s = 0; s < opt.random_conflations; ++s) {
        Sample sm;
        if (!live.empty() && coin(rng) != 0) {
            auto [j, i] = live[std::uniform_int_distribution<std::size_t>(0, live.size() - 1)(rng)];
            sm.c.push_back(j);
            sm.a.push_back(i);
        } else {
            sm.c.push_back(obj(rng));
            sm.a.push_back(obj(rng));
        }
        if (coin(rng) == 0) {
            sm.c.push_back(obj(rng));
        }
        if (coin(rng) == 0) {
            sm.a.push_back(obj(rng));
        }
        for (int k = 0; k < 16; ++k) {
            sm.coeff_seed.push_back(static_cast<int>(rng() & 0x7fffffff));
        }
        sm.test = obj(rng);
        out.push_back(std::move(sm));
    }
    return out;
}

} // namespace

Report verify_long_exact(const Context& ctx, const LemmaOptions& opt) {
    require_full(ctx, "verify_long_exact");
    Report r;
    r.title = "prop_longex";
    const int p = ctx.core().algebra()->modulus();
    const auto samples = draw_samples(ctx, opt);
    std::vector<Tally> per(samples.size());
    std::vector<char> nonsplit(samples.size(), 0);
    for_each_index(static_cast<int>(samples.size()), ctx.core().exec(), [&](int k) {
        const Sample& sm = samples[static_cast<std::size_t>(k)];
        auto& t = per[static_cast<std::size_t>(k)];
        const Module c = sum_of(ctx, sm.c);
        const Module a = sum_of(ctx, sm.a);
        const auto basis = ext1_basis(c, a);
        Conflation conf;
        std::string tag = "sample " + std::to_string(k);
        if (basis.empty()) {
            conf = split_conflation(a, c);
        } else {
            std::vector<int> coeffs;
            bool any = false;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                int v = sm.coeff_seed[b % sm.coeff_seed.size()] % p;
                any = any || v != 0;
                coeffs.push_back(v);
            }
            if (!any) {
                coeffs[0] = 1;
            }
            const ExtClass delta = combine(basis, coeffs);
            conf = middle_term(delta);
            nonsplit[static_cast<std::size_t>(k)] = 1;
            t.expect(class_of(conf) == delta, "class round trip " + tag);
        }
        t.expect(conf.is_valid(), "invalid conflation " + tag);
        t.expect(dims_add_up(conf), "middle term dimensions " + tag);
        t.expect(check_long_exact(conf, ctx.core().module(sm.test), 2),
                 "long exact sequence against " + ctx.core().name(sm.test) + " " + tag);
    });
    Tally all;
    for (const auto& t : per) {
        all.absorb(t);
    }
    all.into(r, "longex");
    int ns = 0;
    for (char c : nonsplit) {
        ns += c;
    }
    r.summary = std::to_string(samples.size()) + " conflations, " + std::to_string(ns) + " non-split";
    return r;
}

Report verify_silting_lemmas(const Context& ctx) {
    require_full(ctx, "verify_silting_lemmas");
    Report r;
    r.title = "silting lemmas";
    const auto recs = enumerate_silting(ctx);
    const auto pre = presilting_sets(ctx);
    Tally psi;
    Tally maximal;
    for (const auto& rec : recs) {
        const IndexSet m = rec.m;
        psi.expect((check(ctx, m) & hat(ctx, m)) == m, "check & hat != m at " + ctx.names(m));
        for (IndexSet n : pre) {
            if (subset_of(m, n)) {
                maximal.expect(n == m, ctx.names(n) + " is presilting and contains " + ctx.names(m));
            }
        }
    }
    psi.into(r, "prop_Psi");
    maximal.into(r, "lem_silt");
    r.merge(verify_silting_order(ctx));
    r.summary = std::to_string(recs.size()) + " silting";
    return r;
}

Report verify_kernels(const Context& ctx, const LemmaOptions& opt) {
    require_full(ctx, "verify_kernels");
    Report r;
    r.title = "kernels";
    const Core& core = ctx.core();
    const int n = ctx.size();
    const auto& ext = core.ext();
    constexpr int kDeg = 3;
    std::vector<std::array<Tally, 4>> per(static_cast<std::size_t>(n));
    for_each_index(n, core.exec(), [&](int i) {
        auto& t = per[static_cast<std::size_t>(i)];
        const Module& xi = core.module(i);
        const Module om = syzygy(xi);
        for (int j = 0; j < n; ++j) {
            const Module& xj = core.module(j);
            const std::string ij = core.name(i) + "," + core.name(j);
            for (int k = 1; k <= kDeg; ++k) {
                const int e = ext_dim(xi, xj, k);
                t[0].expect(e == ext.ext_dim(i, j, k), "table vs module Ext^" + std::to_string(k) + " " + ij);
                t[1].expect(ext_dim(om, xj, k) == ext_dim(xi, xj, k + 1), "shift law k=" + std::to_string(k) + " " + ij);
                for (int l = 0; l < n; ++l) {
                    const int sum = ext_dim(direct_sum(xi, core.module(l)), xj, k);
                    const int sum2 = ext_dim(xj, direct_sum(xi, core.module(l)), k);
                    t[2].expect(sum == e + ext_dim(core.module(l), xj, k),
                                "additivity (first) k=" + std::to_string(k) + " " + ij + "," + core.name(l));
                    t[2].expect(sum2 == ext_dim(xj, xi, k) + ext_dim(xj, core.module(l), k),
                                "additivity (second) k=" + std::to_string(k) + " " + ij + "," + core.name(l));
                }
            }
            // Middle terms of every basis class of Ext^1(X_i, X_j) and of their sum.
            const auto basis = ext1_basis(xi, xj);
            std::vector<int> ones(basis.size(), 1);
            for (std::size_t b = 0; b <= basis.size() && !basis.empty(); ++b) {
                std::vector<int> coeffs(basis.size(), 0);
                if (b < basis.size()) {
                    coeffs[b] = 1;
                } else {
                    coeffs = ones;
                }
                const Conflation conf = middle_term(combine(basis, coeffs));
                t[3].expect(conf.is_valid() && dims_add_up(conf), "middle term " + ij + " class " + std::to_string(b));
            }
            t[3].expect(dims_add_up(split_conflation(xj, xi)), "split middle term " + ij);
        }
    });
    static const std::array<const char*, 4> labels{"table", "shift", "additivity", "middle"};
    std::array<Tally, 4> total;
    for (const auto& t : per) {
        for (std::size_t k = 0; k < 4; ++k) {
            total[k].absorb(t[k]);
        }
    }
    for (std::size_t k = 0; k < 4; ++k) {
        total[k].into(r, labels[k]);
    }
    (void)opt;
    r.summary = std::to_string(n * n) + " ordered pairs";
    return r;
}

Report verify_bound_stability(const Context& ctx) {
    require_full(ctx, "verify_bound_stability");
    Report r;
    const int b = ctx.mult_bound();
    const Context up = ctx.with_bound(b + 1);
    r.title = "bound " + std::to_string(b) + " vs " + std::to_string(b + 1);
    r.data["exact"] = {{"low", ctx.closures_exact()}, {"high", up.closures_exact()}};
    if (!ctx.closures_exact() || !up.closures_exact()) {
        r.indeterminate = true;
        r.notes.push_back("atlas not exact at one of the bounds");
    }
    const auto xs = all_subsets(ctx);
    std::vector<Tally> per(xs.size());
    for_each_index(static_cast<int>(xs.size()), ctx.core().exec(), [&](int k) {
        const IndexSet x = xs[static_cast<std::size_t>(k)];
        auto& t = per[static_cast<std::size_t>(k)];
        const std::string xn = ctx.names(x);
        t.expect(hat(ctx, x) == hat(up, x), "hat " + xn);
        t.expect(check(ctx, x) == check(up, x), "check " + xn);
        t.expect(tilde(ctx, x) == tilde(up, x), "tilde " + xn);
        t.expect(thick_closure(ctx, x) == thick_closure(up, x), "thick " + xn);
        for (IndexSet y : xs) {
            const std::string xy = xn + "," + ctx.names(y);
            t.expect(ctx.star(x, y) == up.star(x, y), "star " + xy);
            t.expect(ctx.cone(x, y) == up.cone(x, y), "cone " + xy);
            t.expect(ctx.cocone(x, y) == up.cocone(x, y), "cocone " + xy);
        }
    });
    Tally all;
    for (const auto& t : per) {
        all.absorb(t);
    }
    all.into(r, "closures");
    r.summary = std::to_string(xs.size()) + " classes";
    return r;
}

Report verify_lemmas(const Context& ctx, const LemmaOptions& opt) {
    require_full(ctx, "verify_lemmas");
    Report r;
    r.title = "lemmas";
    std::vector<Report> parts;
    parts.push_back(verify_lem_basic(ctx, opt));
    parts.push_back(verify_lem_perp(ctx));
    parts.push_back(verify_lem_conecl(ctx));
    parts.push_back(verify_presilting_towers(ctx));
    parts.push_back(verify_wakamatsu(ctx));
    parts.push_back(verify_pd_ext(ctx));
    parts.push_back(verify_long_exact(ctx, opt));
    parts.push_back(verify_silting_lemmas(ctx));
    parts.push_back(verify_kernels(ctx, opt));
    parts.push_back(verify_bound_stability(ctx));
    int failing = 0;
    for (const auto& p : parts) {
        r.merge(p);
        r.data[p.title] = p.to_json();
        failing += p.passed() ? 0 : 1;
    }
    r.summary = std::to_string(parts.size() - static_cast<std::size_t>(failing)) + "/" + std::to_string(parts.size()) +
                " suites clean";
    return r;
}

} // namespace siltlab
