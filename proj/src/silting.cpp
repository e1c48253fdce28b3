#include "siltlab/silting.hpp"

#include <algorithm>
#include <set>

namespace siltlab {

namespace {

void require_full(const Context& ctx, const char* what) {
    if (ctx.is_restricted()) {
        throw UnsupportedError(std::string(what) + " is only available in the full category");
    }
}

Module generator_of(const Context& ctx, IndexSet m) {
    std::vector<Module> parts;
    for (int i : members_of(m)) {
        parts.push_back(ctx.core().module(i));
    }
    if (parts.empty()) {
        return Module::zero(ctx.core().algebra());
    }
    return direct_sum(parts).sum;
}

bool contains_set(const std::vector<IndexSet>& v, IndexSet s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::vector<IndexSet> silting_sets(const std::vector<SiltingRecord>& recs) {
    std::vector<IndexSet> out;
    for (const auto& r : recs) {
        out.push_back(r.m);
    }
    return out;
}

Json names_json(const Context& ctx, IndexSet s) { return member_names(ctx, s); }

} // namespace

bool is_presilting(const Context& ctx, IndexSet m) {
    require_full(ctx, "is_presilting");
    const auto& ext = ctx.core().ext();
    for (int i : members_of(m)) {
        for (int j : members_of(m)) {
            if (!ext.vanishes_from(i, j, 1)) {
                return false;
            }
        }
    }
    return true;
}

std::optional<std::vector<Coresolution>> coresolve_projectives(const Context& ctx, IndexSet m) {
    require_full(ctx, "coresolve_projectives");
    const Core& core = ctx.core();
    Dim pd = subcat_pd(ctx, m);
    if (!pd) {
        return std::nullopt;
    }
    const int cap = *pd + core.size() + 1;
    std::vector<Coresolution> out;
    for (int v : members_of(core.projectives())) {
        Coresolution res;
        res.projective = v;
        Module cur = core.module(v);
        bool done = false;
        for (int step = 0; step < cap && !done; ++step) {
            auto approx = minimal_left_approximation(ctx, m, cur);
            if (!approx.map.is_injective()) {
                return std::nullopt;
            }
            res.terms.push_back(approx.mult);
            auto q = cokernel(approx.map);
            if (q.module.is_zero()) {
                done = true;
                break;
            }
            auto mult = core.decompose_fast(q.module);
            if (subset_of(support_of(mult), m)) {
                res.terms.push_back(mult);
                done = true;
                break;
            }
            cur = q.module;
        }
        if (!done) {
            return std::nullopt;
        }
        out.push_back(std::move(res));
    }
    return out;
}

std::optional<SiltingRecord> is_silting(const Context& ctx, IndexSet m) {
    require_full(ctx, "is_silting");
    if (!is_presilting(ctx, m)) {
        return std::nullopt;
    }
    SiltingRecord rec;
    rec.m = m;
    rec.pd = subcat_pd(ctx, m);
    if (ctx.core().global_dimension()) {
        // proj is silting, so the four-condition characterisation applies.
        rec.route = "silt-char";
        if (!rec.pd) {
            return std::nullopt;
        }
        auto cores = coresolve_projectives(ctx, m);
        if (!cores) {
            return std::nullopt;
        }
        rec.coresolutions = std::move(*cores);
    } else {
        rec.route = "thick";
        if (thick_closure(ctx, m) != ctx.universe()) {
            if (!ctx.closures_exact()) {
                throw IndeterminateError("is_silting: thick closure of " + ctx.names(m) +
                                         " is incomplete at multiplicity bound " +
                                         std::to_string(ctx.mult_bound()));
            }
            return std::nullopt;
        }
    }
    rec.generator = generator_of(ctx, m);
    return rec;
}

std::vector<SiltingRecord> enumerate_silting(const Context& ctx, int max_skeleton) {
    require_full(ctx, "enumerate_silting");
    require_scannable(ctx, max_skeleton);
    const Exec exec = ctx.core().exec();
    auto cands = scan_subsets(ctx.universe(), exec, [&](IndexSet m) { return m != 0 && is_presilting(ctx, m); });
    std::vector<std::optional<SiltingRecord>> found(cands.size());
    for_each_index(static_cast<int>(cands.size()), exec,
                   [&](int k) { found[static_cast<std::size_t>(k)] = is_silting(ctx, cands[static_cast<std::size_t>(k)]); });
    std::vector<SiltingRecord> out;
    for (auto& f : found) {
        if (f) {
            out.push_back(std::move(*f));
        }
    }
    return out;
}

IndexSet thm1_phi(const CotorsionPair& pair) { return pair.x & pair.y; }

CotorsionPair thm1_psi(const Context& ctx, IndexSet m) {
    require_full(ctx, "thm1_psi");
    IndexSet l = left_perp(ctx, m);
    IndexSet r = right_perp(ctx, m);
    IndexSet c = check(ctx, m);
    IndexSet h = hat(ctx, m);
    if (l != c || r != h) {
        throw ValidationError("thm1_psi(" + ctx.names(m) + "): perps (" + ctx.names(l) + ", " + ctx.names(r) +
                              ") disagree with towers (" + ctx.names(c) + ", " + ctx.names(h) +
                              "); the multiplicity bound " + std::to_string(ctx.mult_bound()) +
                              " may be too small");
    }
    auto pair = is_cotorsion_pair(ctx, l, r);
    if (!pair) {
        throw ValidationError("thm1_psi(" + ctx.names(m) + ") is not a cotorsion pair");
    }
    return classify(ctx, std::move(*pair));
}

Report verify_thm1(const Context& ctx) {
    Report r;
    r.title = "thm1";
    auto poset = enumerate_cotorsion_pairs(ctx);
    auto silt = enumerate_silting(ctx);
    auto sets = silting_sets(silt);
    std::vector<const CotorsionPair*> bh;
    for (const auto& p : poset.pairs) {
        if (p.hereditary == Tri::unknown || p.bounded == Tri::unknown) {
            r.indeterminate = true;
            r.notes.push_back("flags of " + ctx.names(p.x) + " are undecided");
        }
        if (p.hereditary == Tri::yes && p.bounded == Tri::yes) {
            bh.push_back(&p);
        }
    }
    for (const auto* p : bh) {
        IndexSet m = thm1_phi(*p);
        r.expect(contains_set(sets, m), "phi(" + ctx.names(p->x) + ") = " + ctx.names(m) + " is not silting");
        try {
            auto back = thm1_psi(ctx, m);
            r.expect(back.x == p->x && back.y == p->y, "psi(phi(" + ctx.names(p->x) + ")) differs");
        } catch (const ValidationError& e) {
            r.expect(false, e.what());
        }
    }
    for (IndexSet m : sets) {
        try {
            auto p = thm1_psi(ctx, m);
            r.expect(p.hereditary == Tri::yes && p.bounded == Tri::yes,
                     "psi(" + ctx.names(m) + ") is not bounded hereditary");
            r.expect(thm1_phi(p) == m, "phi(psi(" + ctx.names(m) + ")) differs");
        } catch (const ValidationError& e) {
            r.expect(false, e.what());
        }
    }
    r.expect(bh.size() == sets.size(), "bounded hereditary pairs and silting subcategories differ in number");
    r.summary = std::to_string(bh.size()) + " <-> " + std::to_string(sets.size());
    r.data["bounded_hereditary"] = bh.size();
    r.data["silting"] = sets.size();
    return r;
}

bool silting_ge(const Context& ctx, IndexSet m, IndexSet n) {
    require_full(ctx, "silting_ge");
    const auto& ext = ctx.core().ext();
    for (int i : members_of(m)) {
        for (int j : members_of(n)) {
            if (!ext.vanishes_from(i, j, 1)) {
                return false;
            }
        }
    }
    return true;
}

Report verify_silting_order(const Context& ctx) {
    Report r;
    r.title = "silting order";
    auto sets = silting_sets(enumerate_silting(ctx));
    std::vector<IndexSet> hats;
    std::vector<IndexSet> checks;
    for (IndexSet m : sets) {
        hats.push_back(hat(ctx, m));
        checks.push_back(check(ctx, m));
    }
    const std::size_t n = sets.size();
    for (std::size_t i = 0; i < n; ++i) {
        r.expect(silting_ge(ctx, sets[i], sets[i]), "not reflexive at " + ctx.names(sets[i]));
        for (std::size_t j = 0; j < n; ++j) {
            bool ge = silting_ge(ctx, sets[i], sets[j]);
            const std::string tag = ctx.names(sets[i]) + " >= " + ctx.names(sets[j]);
            r.expect(ge == subset_of(hats[j], hats[i]), tag + " disagrees with hat containment");
            r.expect(ge == subset_of(checks[i], checks[j]), tag + " disagrees with check containment");
            if (i != j) {
                r.expect(!(ge && silting_ge(ctx, sets[j], sets[i])), tag + " breaks antisymmetry");
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (ge && silting_ge(ctx, sets[j], sets[k])) {
                    r.expect(silting_ge(ctx, sets[i], sets[k]), tag + " breaks transitivity");
                }
            }
        }
    }
    r.summary = std::to_string(n) + " silting subcategories";
    return r;
}

TiltingCertificate tilting_certificate(const Context& ctx, const Module& t) {
    require_full(ctx, "tilting_certificate");
    IndexSet m = support_of(ctx.core().decompose(t));
    TiltingCertificate c;
    c.pd = subcat_pd(ctx, m);
    c.self_orthogonal = is_presilting(ctx, m);
    c.coresolves_algebra = coresolve_projectives(ctx, m).has_value();
    c.tilting = is_silting(ctx, m).has_value();
    return c;
}

bool is_tilting_module(const Context& ctx, const Module& t) { return tilting_certificate(ctx, t).tilting; }

Report verify_res_hcotors(const Context& ctx) {
    require_full(ctx, "verify_res_hcotors");
    Report r;
    r.title = "res-hcotors";
    const Exec exec = ctx.core().exec();
    require_scannable(ctx, 20);
    const IndexSet u = ctx.universe();
    auto res = scan_subsets(u, exec, [&](IndexSet x) { return is_resolving(ctx, x); });
    auto cores = scan_subsets(u, exec, [&](IndexSet y) { return is_coresolving(ctx, y); });
    std::vector<std::pair<IndexSet, IndexSet>> hpairs;
    for (const auto& p : enumerate_cotorsion_pairs(ctx).pairs) {
        if (p.hereditary == Tri::yes) {
            hpairs.emplace_back(p.x, p.y);
        }
    }
    auto has_pair = [&](IndexSet x, IndexSet y) {
        return std::find(hpairs.begin(), hpairs.end(), std::make_pair(x, y)) != hpairs.end();
    };
    for (IndexSet x : res) {
        const IndexSet y = right_perp(ctx, x);
        r.expect(contains_set(cores, y), "F(" + ctx.names(x) + ") is not coresolving");
        r.expect(left_perp(ctx, y) == x, "G(F(" + ctx.names(x) + ")) differs");
        r.expect(has_pair(x, y), "F1(" + ctx.names(x) + ") is not a hereditary cotorsion pair");
    }
    for (IndexSet y : cores) {
        const IndexSet x = left_perp(ctx, y);
        r.expect(contains_set(res, x), "G(" + ctx.names(y) + ") is not resolving");
        r.expect(right_perp(ctx, x) == y, "F(G(" + ctx.names(y) + ")) differs");
        r.expect(has_pair(x, y), "G2(" + ctx.names(y) + ") is not a hereditary cotorsion pair");
    }
    for (auto [x, y] : hpairs) {
        r.expect(contains_set(res, x) && contains_set(cores, y), "G1/F2 of " + ctx.names(x) + " leave the classes");
    }
    r.expect(res.size() == hpairs.size() && cores.size() == hpairs.size(), "the three classes differ in number");
    r.summary = std::to_string(res.size()) + " <-> " + std::to_string(hpairs.size()) + " <-> " +
                std::to_string(cores.size());
    return r;
}

Report verify_thm3(const Context& ctx) {
    require_full(ctx, "verify_thm3");
    Report r;
    r.title = "thm3";
    r.notes.push_back("full module category: Krull-Schmidt and (WIC) hold, every subcategory is functorially finite");
    const Exec exec = ctx.core().exec();
    require_scannable(ctx, 20);
    auto sets = silting_sets(enumerate_silting(ctx));
    const IndexSet u = ctx.universe();
    auto res = scan_subsets(u, exec, [&](IndexSet x) {
        return is_resolving(ctx, x) && hat(ctx, x) == u && subcat_pd(ctx, x).has_value();
    });
    auto cores = scan_subsets(u, exec, [&](IndexSet y) {
        return is_coresolving(ctx, y) && check(ctx, y) == u && subcat_id(ctx, y).has_value();
    });
    for (IndexSet x : res) {
        // Contravariant finiteness witness: the approximation of every object.
        for (int v : members_of(u)) {
            auto a = minimal_right_approximation(ctx, x, ctx.core().module(v));
            r.expect(a.map.is_surjective(), "right approximation by resolving " + ctx.names(x) + " is not onto");
        }
        IndexSet m = x & right_perp(ctx, x);
        r.expect(contains_set(sets, m), "Phi1(" + ctx.names(x) + ") = " + ctx.names(m) + " is not silting");
        r.expect(left_perp(ctx, m) == x, "Psi1(Phi1(" + ctx.names(x) + ")) differs");
    }
    for (IndexSet m : sets) {
        IndexSet x = left_perp(ctx, m);
        r.expect(contains_set(res, x), "Psi1(" + ctx.names(m) + ") is not a bounded resolving class of finite pd");
        r.expect((x & right_perp(ctx, x)) == m, "Phi1(Psi1(" + ctx.names(m) + ")) differs");
        IndexSet y = right_perp(ctx, m);
        r.expect(contains_set(cores, y), "Phi2(" + ctx.names(m) + ") is not a bounded coresolving class of finite id");
        r.expect((left_perp(ctx, y) & y) == m, "Psi2(Phi2(" + ctx.names(m) + ")) differs");
    }
    for (IndexSet y : cores) {
        IndexSet m = left_perp(ctx, y) & y;
        r.expect(contains_set(sets, m), "Psi2(" + ctx.names(y) + ") is not silting");
        r.expect(right_perp(ctx, m) == y, "Phi2(Psi2(" + ctx.names(y) + ")) differs");
    }
    r.expect(res.size() == sets.size() && cores.size() == sets.size(), "the three classes differ in number");
    r.summary = std::to_string(res.size()) + " <-> " + std::to_string(sets.size()) + " <-> " +
                std::to_string(cores.size());
    r.data["resolving"] = res.size();
    r.data["silting"] = sets.size();
    r.data["coresolving"] = cores.size();
    Report fg = verify_res_hcotors(ctx);
    r.data["res-hcotors"] = fg.summary;
    r.merge(fg);
    return r;
}

Report verify_ar(const Context& ctx) {
    require_full(ctx, "verify_ar");
    if (!ctx.core().global_dimension()) {
        throw UnsupportedError("verify_ar needs an algebra of finite global dimension");
    }
    Report r;
    r.title = "ar";
    const Exec exec = ctx.core().exec();
    require_scannable(ctx, 20);
    const IndexSet u = ctx.universe();
    // Basic tilting modules: one per silting subcategory, via the generator.
    std::vector<IndexSet> tilting;
    for (const auto& rec : enumerate_silting(ctx)) {
        r.expect(is_tilting_module(ctx, rec.generator), "generator of " + ctx.names(rec.m) + " is not tilting");
        tilting.push_back(rec.m);
    }
    auto res = scan_subsets(u, exec, [&](IndexSet x) { return is_resolving(ctx, x); });
    auto cores = scan_subsets(u, exec, [&](IndexSet y) { return is_coresolving(ctx, y); });
    std::set<IndexSet> left_images;
    std::set<IndexSet> right_images;
    for (IndexSet t : tilting) {
        IndexSet x = left_perp(ctx, t);
        IndexSet y = right_perp(ctx, t);
        r.expect(contains_set(res, x), "perp-left of " + ctx.names(t) + " is not resolving");
        r.expect(contains_set(cores, y), "perp-right of " + ctx.names(t) + " is not coresolving");
        left_images.insert(x);
        right_images.insert(y);
    }
    r.expect(left_images.size() == tilting.size(), "T -> perp-left T is not injective");
    r.expect(right_images.size() == tilting.size(), "T -> perp-right T is not injective");
    r.expect(left_images.size() == res.size(), "T -> perp-left T misses resolving subcategories");
    r.expect(right_images.size() == cores.size(), "T -> perp-right T misses coresolving subcategories");
    r.summary = std::to_string(tilting.size()) + " tilting <-> " + std::to_string(res.size()) + " resolving, " +
                std::to_string(cores.size()) + " coresolving";
    r.data["tilting"] = tilting.size();
    r.data["resolving"] = res.size();
    r.data["coresolving"] = cores.size();
    return r;
}

std::optional<FrobeniusPair> is_left_frobenius(const Context& ctx, IndexSet x, IndexSet omega) {
    require_full(ctx, "is_left_frobenius");
    if (!subset_of(omega, x) || !is_extension_closed(ctx, x) || !is_cocone_closed(ctx, x)) {
        return std::nullopt;
    }
    if (!subset_of(omega, right_perp(ctx, x))) {
        return std::nullopt;
    }
    const Core& core = ctx.core();
    FrobeniusPair fp;
    fp.x = x;
    fp.omega = omega;
    for (int v : members_of(x)) {
        auto approx = minimal_left_approximation(ctx, omega, core.module(v));
        if (!approx.map.is_injective()) {
            return std::nullopt;
        }
        auto q = cokernel(approx.map);
        auto mult = core.decompose_fast(q.module);
        if (!subset_of(support_of(mult), x)) {
            return std::nullopt;
        }
        Witness w;
        w.object = v;
        w.a.assign(static_cast<std::size_t>(core.size()), 0);
        w.a[static_cast<std::size_t>(v)] = 1;
        w.b = approx.mult;
        w.c = mult;
        w.conflation = Conflation{core.module(v), approx.object, q.module, approx.map, q.projection};
        fp.witnesses.push_back(std::move(w));
    }
    return fp;
}

FrobeniusPair frob_phi(const Context& ctx, IndexSet x, IndexSet y) {
    auto fp = is_left_frobenius(ctx, x, x & y);
    if (!fp) {
        throw ValidationError("frob_phi: (" + ctx.names(x) + ", " + ctx.names(x & y) +
                              ") is not a left Frobenius pair");
    }
    return *fp;
}

std::pair<IndexSet, IndexSet> frob_psi(const Context& ctx, const FrobeniusPair& fp) {
    return {fp.x, hat(ctx, fp.omega)};
}

Report verify_frobenius(const Context& ctx) {
    require_full(ctx, "verify_frobenius");
    require_scannable(ctx, 20);
    Report r;
    r.title = "frobenius";
    const Exec exec = ctx.core().exec();
    const IndexSet u = ctx.universe();
    const auto& ext = ctx.core().ext();

    // Source side: cotorsion pairs (x, y) in thick x with full Ext-orthogonality.
    auto source_y = [&](IndexSet x) -> std::optional<IndexSet> {
        IndexSet t = thick_closure(ctx, x);
        Context tctx = ctx.restrict(t);
        IndexSet y = right_perp1(tctx, x);
        if (!is_cotorsion_pair(tctx, x, y)) {
            return std::nullopt;
        }
        for (int i : members_of(x)) {
            for (int j : members_of(y)) {
                if (!ext.vanishes_from(i, j, 1)) {
                    return std::nullopt;
                }
            }
        }
        return y;
    };
    auto xs = scan_subsets(u, exec, [&](IndexSet x) { return source_y(x).has_value(); });
    std::vector<std::pair<IndexSet, IndexSet>> sources;
    for (IndexSet x : xs) {
        sources.emplace_back(x, *source_y(x));
    }

    // Target side: all left Frobenius pairs.
    std::vector<std::pair<IndexSet, IndexSet>> frob;
    auto closed = scan_subsets(u, exec, [&](IndexSet x) {
        return is_extension_closed(ctx, x) && is_cocone_closed(ctx, x);
    });
    for (IndexSet x : closed) {
        IndexSet room = x & right_perp(ctx, x);
        auto oms = scan_subsets(room, Exec::serial, [&](IndexSet w) { return is_left_frobenius(ctx, x, w).has_value(); });
        for (IndexSet w : oms) {
            frob.emplace_back(x, w);
        }
    }
    auto in = [](const std::vector<std::pair<IndexSet, IndexSet>>& v, std::pair<IndexSet, IndexSet> p) {
        return std::find(v.begin(), v.end(), p) != v.end();
    };
    for (const auto& [x, y] : sources) {
        const std::string tag = "(" + ctx.names(x) + ", " + ctx.names(y) + ")";
        try {
            auto fp = frob_phi(ctx, x, y);
            r.expect(in(frob, {fp.x, fp.omega}), "phi" + tag + " missing from the Frobenius scan");
            r.expect(frob_psi(ctx, fp) == std::make_pair(x, y), "psi(phi" + tag + ") differs");
        } catch (const ValidationError& e) {
            r.expect(false, e.what());
        }
    }
    for (const auto& [x, w] : frob) {
        const std::string tag = "(" + ctx.names(x) + ", " + ctx.names(w) + ")";
        auto fp = is_left_frobenius(ctx, x, w);
        auto back = frob_psi(ctx, *fp);
        r.expect(in(sources, back), "psi" + tag + " is not an orthogonal cotorsion pair in thick x");
        r.expect((back.first & back.second) == w, "phi(psi" + tag + ") differs");
    }
    r.expect(sources.size() == frob.size(), "cotorsion side and Frobenius side differ in number");

    // Hereditary cotorsion pairs of the whole category, cut down to thick x.
    auto poset = enumerate_cotorsion_pairs(ctx);
    int hereditary = 0;
    for (const auto& p : poset.pairs) {
        if (p.hereditary != Tri::yes) {
            continue;
        }
        ++hereditary;
        IndexSet y = p.y & thick_closure(ctx, p.x);
        const std::string tag = "hereditary (" + ctx.names(p.x) + ", " + ctx.names(p.y) + ")";
        r.expect(in(sources, {p.x, y}), tag + " does not restrict to thick x");
        auto fp = is_left_frobenius(ctx, p.x, p.x & p.y);
        r.expect(fp.has_value(), tag + ": phi is not a left Frobenius pair");
        if (fp) {
            r.expect(frob_psi(ctx, *fp) == std::make_pair(p.x, y), tag + ": psi(phi) differs");
        }
    }

    // Silting m <-> left Frobenius pairs with tilde(omega) everything.
    auto sets = silting_sets(enumerate_silting(ctx));
    std::vector<std::pair<IndexSet, IndexSet>> generating;
    for (const auto& [x, w] : frob) {
        if (tilde(ctx, w) == u) {
            generating.emplace_back(x, w);
        }
    }
    for (IndexSet m : sets) {
        std::pair<IndexSet, IndexSet> img{check(ctx, m), m};
        r.expect(is_left_frobenius(ctx, img.first, img.second).has_value(),
                 "(check m, m) is not a left Frobenius pair for " + ctx.names(m));
        r.expect(in(generating, img), "(check m, m) for " + ctx.names(m) + " is not a generating pair");
    }
    for (const auto& [x, w] : generating) {
        r.expect(contains_set(sets, w), "omega = " + ctx.names(w) + " of a generating pair is not silting");
        r.expect(x == check(ctx, w), "generating pair with x != check(omega)");
    }
    r.expect(generating.size() == sets.size(), "silting and generating Frobenius pairs differ in number");
    r.summary = std::to_string(sources.size()) + " <-> " + std::to_string(frob.size()) + ", " +
                std::to_string(sets.size()) + " silting <-> " + std::to_string(generating.size()) + " generating";
    r.data["orthogonal_pairs"] = sources.size();
    r.data["frobenius_pairs"] = frob.size();
    r.data["hereditary_pairs"] = hereditary;
    r.data["generating_pairs"] = generating.size();
    return r;
}

Json silting_json(const Context& ctx, const SiltingRecord& r) {
    Json j;
    j["members"] = names_json(ctx, r.m);
    j["generator_dims"] = r.generator.dims();
    j["pd"] = dim_string(r.pd);
    j["route"] = r.route;
    Json cores = Json::array();
    for (const auto& c : r.coresolutions) {
        Json terms = Json::array();
        for (const auto& t : c.terms) {
            Json term = Json::object();
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t[i] > 0) {
                    term[ctx.core().name(static_cast<int>(i))] = t[i];
                }
            }
            terms.push_back(term);
        }
        cores.push_back({{"projective", ctx.core().name(c.projective)}, {"terms", terms}});
    }
    j["coresolutions"] = cores;
    return j;
}

} // namespace siltlab
