#include "siltlab/subcat.hpp"

namespace siltlab {

namespace {

void require_full(const Context& ctx, const char* what) {
    if (ctx.is_restricted()) {
        throw UnsupportedError(std::string(what) + " needs higher Ext, which is only available in the full category");
    }
}

void require_inside(const Context& ctx, IndexSet x) {
    if (!subset_of(x, ctx.universe())) {
        throw ContractError("subcategory " + ctx.names(x) + " is not inside the universe " + ctx.names(ctx.universe()));
    }
}

Mat columns_of(const std::vector<Morphism>& fs, const Module& s, const Module& t) {
    const int amb = ambient_hom_dim(s, t);
    Mat out(amb, static_cast<int>(fs.size()), s.modulus());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        auto v = fs[j].flatten();
        for (int r = 0; r < amb; ++r) {
            out.set(r, static_cast<int>(j), v[static_cast<std::size_t>(r)]);
        }
    }
    return out;
}

int safe_rank(const Mat& m) { return m.empty() ? 0 : rank(m); }

// Greedily keeps the candidates that are independent modulo `span`.
std::vector<Morphism> top_modulo(const std::vector<Morphism>& candidates, const std::vector<Morphism>& span,
                                 const Module& s, const Module& t) {
    std::vector<Morphism> kept;
    std::vector<Morphism> acc = span;
    int r = safe_rank(columns_of(acc, s, t));
    for (const auto& c : candidates) {
        acc.push_back(c);
        int r2 = safe_rank(columns_of(acc, s, t));
        if (r2 > r) {
            kept.push_back(c);
            r = r2;
        } else {
            acc.pop_back();
        }
    }
    return kept;
}

// maps[k] : parts[k] -> m, summed into one map from the direct sum.
Approximation assemble_right(const Core& core, const std::vector<int>& mult, const std::vector<Module>& parts,
                             const std::vector<Morphism>& maps, const Module& m) {
    Approximation out;
    out.mult = mult;
    if (parts.empty()) {
        out.object = Module::zero(core.algebra());
        out.map = Morphism::zero(out.object, m);
        return out;
    }
    auto ds = direct_sum(parts);
    out.object = ds.sum;
    Morphism acc = Morphism::zero(ds.sum, m);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        acc = acc + compose(maps[k], ds.projections[k]);
    }
    out.map = acc;
    return out;
}

Approximation assemble_left(const Core& core, const std::vector<int>& mult, const std::vector<Module>& parts,
                            const std::vector<Morphism>& maps, const Module& m) {
    Approximation out;
    out.mult = mult;
    if (parts.empty()) {
        out.object = Module::zero(core.algebra());
        out.map = Morphism::zero(m, out.object);
        return out;
    }
    auto ds = direct_sum(parts);
    out.object = ds.sum;
    Morphism acc = Morphism::zero(m, ds.sum);
    for (std::size_t k = 0; k < parts.size(); ++k) {
        acc = acc + compose(ds.injections[k], maps[k]);
    }
    out.map = acc;
    return out;
}

} // namespace

IndexSet support_of(const std::vector<int>& mult) {
    IndexSet s = 0;
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] > 0) {
            s |= singleton(static_cast<int>(i));
        }
    }
    return s;
}

std::vector<std::string> member_names(const Context& ctx, IndexSet s) {
    std::vector<std::string> out;
    for (int i : members_of(s)) {
        out.push_back(ctx.core().name(i));
    }
    return out;
}

IndexSet right_perp1(const Context& ctx, IndexSet x) {
    const auto& ext = ctx.core().ext();
    IndexSet out = 0;
    for (int j : members_of(ctx.universe())) {
        bool ok = true;
        for (int i : members_of(x)) {
            ok = ok && ext.ext1(i, j) == 0;
        }
        if (ok) {
            out |= singleton(j);
        }
    }
    return out;
}

IndexSet left_perp1(const Context& ctx, IndexSet x) {
    const auto& ext = ctx.core().ext();
    IndexSet out = 0;
    for (int i : members_of(ctx.universe())) {
        bool ok = true;
        for (int j : members_of(x)) {
            ok = ok && ext.ext1(i, j) == 0;
        }
        if (ok) {
            out |= singleton(i);
        }
    }
    return out;
}

IndexSet right_perp_gt(const Context& ctx, IndexSet x, int n) {
    require_full(ctx, "right_perp");
    const auto& ext = ctx.core().ext();
    IndexSet out = 0;
    for (int j : members_of(ctx.universe())) {
        bool ok = true;
        for (int i : members_of(x)) {
            ok = ok && ext.vanishes_from(i, j, n + 1);
        }
        if (ok) {
            out |= singleton(j);
        }
    }
    return out;
}

IndexSet left_perp_gt(const Context& ctx, IndexSet x, int n) {
    require_full(ctx, "left_perp");
    const auto& ext = ctx.core().ext();
    IndexSet out = 0;
    for (int i : members_of(ctx.universe())) {
        bool ok = true;
        for (int j : members_of(x)) {
            ok = ok && ext.vanishes_from(i, j, n + 1);
        }
        if (ok) {
            out |= singleton(i);
        }
    }
    return out;
}

IndexSet right_perp(const Context& ctx, IndexSet x) { return right_perp_gt(ctx, x, 0); }
IndexSet left_perp(const Context& ctx, IndexSet x) { return left_perp_gt(ctx, x, 0); }

Approximation right_approximation(const Context& ctx, IndexSet x, const Module& m) {
    require_inside(ctx, x);
    const Core& core = ctx.core();
    std::vector<int> mult(static_cast<std::size_t>(core.size()), 0);
    std::vector<Module> parts;
    std::vector<Morphism> maps;
    for (int i : members_of(x)) {
        for (const auto& h : hom_basis(core.module(i), m)) {
            parts.push_back(core.module(i));
            maps.push_back(h);
            ++mult[static_cast<std::size_t>(i)];
        }
    }
    return assemble_right(core, mult, parts, maps, m);
}

Approximation left_approximation(const Context& ctx, IndexSet x, const Module& m) {
    require_inside(ctx, x);
    const Core& core = ctx.core();
    std::vector<int> mult(static_cast<std::size_t>(core.size()), 0);
    std::vector<Module> parts;
    std::vector<Morphism> maps;
    for (int i : members_of(x)) {
        for (const auto& h : hom_basis(m, core.module(i))) {
            parts.push_back(core.module(i));
            maps.push_back(h);
            ++mult[static_cast<std::size_t>(i)];
        }
    }
    return assemble_left(core, mult, parts, maps, m);
}

Approximation minimal_right_approximation(const Context& ctx, IndexSet x, const Module& m) {
    require_inside(ctx, x);
    const Core& core = ctx.core();
    const auto members = members_of(x);
    std::vector<std::vector<Morphism>> homs(static_cast<std::size_t>(core.size()));
    for (int l : members) {
        homs[static_cast<std::size_t>(l)] = hom_basis(core.module(l), m);
    }
    std::vector<int> mult(static_cast<std::size_t>(core.size()), 0);
    std::vector<Module> parts;
    std::vector<Morphism> maps;
    for (int i : members) {
        const auto& hi = homs[static_cast<std::size_t>(i)];
        if (hi.empty()) {
            continue;
        }
        std::vector<Morphism> rad;
        for (int l : members) {
            for (const auto& r : core.radical_basis(i, l)) {
                for (const auto& h : homs[static_cast<std::size_t>(l)]) {
                    rad.push_back(compose(h, r));
                }
            }
        }
        for (const auto& h : top_modulo(hi, rad, core.module(i), m)) {
            parts.push_back(core.module(i));
            maps.push_back(h);
            ++mult[static_cast<std::size_t>(i)];
        }
    }
    return assemble_right(core, mult, parts, maps, m);
}

Approximation minimal_left_approximation(const Context& ctx, IndexSet x, const Module& m) {
    require_inside(ctx, x);
    const Core& core = ctx.core();
    const auto members = members_of(x);
    std::vector<std::vector<Morphism>> homs(static_cast<std::size_t>(core.size()));
    for (int l : members) {
        homs[static_cast<std::size_t>(l)] = hom_basis(m, core.module(l));
    }
    std::vector<int> mult(static_cast<std::size_t>(core.size()), 0);
    std::vector<Module> parts;
    std::vector<Morphism> maps;
    for (int i : members) {
        const auto& hi = homs[static_cast<std::size_t>(i)];
        if (hi.empty()) {
            continue;
        }
        std::vector<Morphism> rad;
        for (int l : members) {
            for (const auto& r : core.radical_basis(l, i)) {
                for (const auto& h : homs[static_cast<std::size_t>(l)]) {
                    rad.push_back(compose(r, h));
                }
            }
        }
        for (const auto& h : top_modulo(hi, rad, m, core.module(i))) {
            parts.push_back(core.module(i));
            maps.push_back(h);
            ++mult[static_cast<std::size_t>(i)];
        }
    }
    return assemble_left(core, mult, parts, maps, m);
}

IndexSet hat_n(const Context& ctx, IndexSet x, int n) {
    if (n < -1) {
        throw ContractError("hat_n: n must be at least -1");
    }
    IndexSet cur = 0;
    for (int k = 0; k <= n; ++k) {
        cur = ctx.cone(cur, x);
    }
    return cur;
}

IndexSet check_n(const Context& ctx, IndexSet x, int n) {
    if (n < -1) {
        throw ContractError("check_n: n must be at least -1");
    }
    IndexSet cur = 0;
    for (int k = 0; k <= n; ++k) {
        cur = ctx.cocone(x, cur);
    }
    return cur;
}

Tower hat_tower(const Context& ctx, IndexSet x) {
    require_inside(ctx, x);
    IndexSet cur = ctx.cone(0, x);
    for (int n = 0;; ++n) {
        IndexSet next = ctx.cone(cur, x) | cur;
        if (next == cur) {
            return {cur, n};
        }
        cur = next;
    }
}

Tower check_tower(const Context& ctx, IndexSet x) {
    require_inside(ctx, x);
    IndexSet cur = ctx.cocone(x, 0);
    for (int n = 0;; ++n) {
        IndexSet next = ctx.cocone(x, cur) | cur;
        if (next == cur) {
            return {cur, n};
        }
        cur = next;
    }
}

IndexSet hat(const Context& ctx, IndexSet x) { return hat_tower(ctx, x).result; }
IndexSet check(const Context& ctx, IndexSet x) { return check_tower(ctx, x).result; }
IndexSet tilde(const Context& ctx, IndexSet x) { return check(ctx, hat(ctx, x)); }

IndexSet thick_closure(const Context& ctx, IndexSet x) {
    require_inside(ctx, x);
    IndexSet cur = x;
    while (true) {
        IndexSet next = cur | ctx.star(cur, cur) | ctx.cone(cur, cur) | ctx.cocone(cur, cur);
        if (next == cur) {
            return cur;
        }
        cur = next;
    }
}

bool is_extension_closed(const Context& ctx, IndexSet x) { return subset_of(ctx.star(x, x), x); }
bool is_cone_closed(const Context& ctx, IndexSet x) { return subset_of(ctx.cone(x, x), x); }
bool is_cocone_closed(const Context& ctx, IndexSet x) { return subset_of(ctx.cocone(x, x), x); }

bool is_resolving(const Context& ctx, IndexSet x) {
    if (ctx.is_restricted()) {
        throw UnsupportedError("is_resolving: a restricted context need not have enough projectives");
    }
    return subset_of(ctx.core().projectives(), x) && is_extension_closed(ctx, x) && is_cocone_closed(ctx, x);
}

bool is_coresolving(const Context& ctx, IndexSet x) {
    if (ctx.is_restricted()) {
        throw UnsupportedError("is_coresolving: a restricted context need not have enough injectives");
    }
    return subset_of(ctx.core().injectives(), x) && is_extension_closed(ctx, x) && is_cone_closed(ctx, x);
}

Dim subcat_pd(const Context& ctx, IndexSet x) {
    require_full(ctx, "subcat_pd");
    int best = 0;
    for (int i : members_of(x)) {
        auto d = ctx.core().ext().projective_dimension(i);
        if (!d) {
            return std::nullopt;
        }
        best = std::max(best, *d);
    }
    return best;
}

Dim subcat_id(const Context& ctx, IndexSet x) {
    require_full(ctx, "subcat_id");
    int best = 0;
    for (int i : members_of(x)) {
        auto d = ctx.core().ext().injective_dimension(i);
        if (!d) {
            return std::nullopt;
        }
        best = std::max(best, *d);
    }
    return best;
}

} // namespace siltlab
