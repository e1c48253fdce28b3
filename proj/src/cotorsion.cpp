#include "siltlab/cotorsion.hpp"

#include <sstream>

namespace siltlab {

namespace {

std::vector<int> unit(int n, int i) {
    std::vector<int> v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

Json mult_json(const Context& ctx, const std::vector<int>& mult) {
    Json j = Json::object();
    for (std::size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] > 0) {
            j[ctx.core().name(static_cast<int>(i))] = mult[i];
        }
    }
    return j;
}

std::optional<Witness> right_witness(const Context& ctx, IndexSet x, IndexSet y, int m) {
    const Core& core = ctx.core();
    auto approx = minimal_right_approximation(ctx, x, core.module(m));
    if (!approx.map.is_surjective()) {
        return std::nullopt;
    }
    auto k = kernel(approx.map);
    auto kmult = core.decompose_fast(k.module);
    if (!subset_of(support_of(kmult), y)) {
        return std::nullopt;
    }
    Witness w;
    w.object = m;
    w.a = kmult;
    w.b = approx.mult;
    w.c = unit(core.size(), m);
    w.conflation = Conflation{k.module, approx.object, core.module(m), k.inclusion, approx.map};
    return w;
}

std::optional<Witness> left_witness(const Context& ctx, IndexSet x, IndexSet y, int m) {
    const Core& core = ctx.core();
    auto approx = minimal_left_approximation(ctx, y, core.module(m));
    if (!approx.map.is_injective()) {
        return std::nullopt;
    }
    auto q = cokernel(approx.map);
    auto cmult = core.decompose_fast(q.module);
    if (!subset_of(support_of(cmult), x)) {
        return std::nullopt;
    }
    Witness w;
    w.object = m;
    w.a = unit(core.size(), m);
    w.b = approx.mult;
    w.c = cmult;
    w.conflation = Conflation{core.module(m), approx.object, q.module, approx.map, q.projection};
    return w;
}

bool perp_shape(const Context& ctx, IndexSet x, IndexSet y) {
    return right_perp1(ctx, x) == y && left_perp1(ctx, y) == x;
}

Report verify_thm2_with(const Context& ctx, const CotorsionPoset& poset, const CotorsionPair& x1,
                        const CotorsionPair& x2) {
    Report r;
    r.title = "thm2 [" + ctx.names(x1.x) + "," + ctx.names(x1.y) + "] <= [" + ctx.names(x2.x) + "," +
              ctx.names(x2.y) + "]";
    if (x1.is_s != Tri::yes || x2.is_s != Tri::yes) {
        throw ContractError("verify_thm2: both endpoints must be s-cotorsion pairs");
    }
    if (!pair_le(x1, x2)) {
        throw ContractError("verify_thm2: the endpoints are not ordered");
    }
    auto members = interval(poset, x1, x2);
    Context h = coheart(ctx, x1, x2);
    auto hposet = enumerate_cotorsion_pairs(h);
    r.data["coheart"] = member_names(ctx, h.universe());
    r.data["interval_size"] = members.size();
    r.data["coheart_pairs"] = hposet.pairs.size();
    r.summary = std::to_string(members.size()) + " <-> " + std::to_string(hposet.pairs.size());

    r.expect(members.size() == hposet.pairs.size(), "interval and coheart pair counts differ");

    std::vector<int> image(members.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& p = members[i];
        auto [a, b] = thm2_phi(p, x1, x2);
        int k = hposet.index_of(a, b);
        r.expect(k >= 0, "phi(" + ctx.names(p.x) + ") is not a cotorsion pair in the coheart");
        image[i] = k;
        auto [bx, by] = thm2_psi(ctx, a, b, x1, x2);
        r.expect(bx == p.x && by == p.y, "psi(phi(" + ctx.names(p.x) + ")) differs");
    }
    for (const auto& q : hposet.pairs) {
        auto [bx, by] = thm2_psi(ctx, q.x, q.y, x1, x2);
        int k = poset.index_of(bx, by);
        bool inside = k >= 0 && pair_le(x1, poset.pairs[static_cast<std::size_t>(k)]) &&
                      pair_le(poset.pairs[static_cast<std::size_t>(k)], x2);
        r.expect(inside, "psi(" + ctx.names(q.x) + ") is not in the interval");
        CotorsionPair back;
        back.x = bx;
        back.y = by;
        auto [a, b] = thm2_phi(back, x1, x2);
        r.expect(a == q.x && b == q.y, "phi(psi(" + ctx.names(q.x) + ")) differs");
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (image[i] < 0 || image[j] < 0) {
                continue;
            }
            bool le_src = pair_le(members[i], members[j]);
            bool le_dst = pair_le(hposet.pairs[static_cast<std::size_t>(image[i])],
                                  hposet.pairs[static_cast<std::size_t>(image[j])]);
            r.expect(le_src == le_dst, "phi does not preserve and reflect the order");
        }
    }
    const auto& ext = ctx.core().ext();
    bool e2 = true;
    for (int i : members_of(x1.x)) {
        for (int j : members_of(x2.y)) {
            e2 = e2 && ext.ext_dim(i, j, 2) == 0;
        }
    }
    r.data["e2_clause"] = e2;
    if (e2) {
        for (const auto& p : members) {
            r.expect(p.is_s == Tri::yes, "E^2(X1,Y2)=0 but " + ctx.names(p.x) + " is not an s-cotorsion pair");
        }
    }
    return r;
}

} // namespace

void require_scannable(const Context& ctx, int max_skeleton) {
    int n = popcount(ctx.universe());
    if (n > max_skeleton || n > kMaxSkeleton) {
        throw UnsupportedError("subset scan refused: " + std::to_string(n) + " indecomposables exceed the limit of " +
                               std::to_string(std::min(max_skeleton, kMaxSkeleton)));
    }
}

std::optional<CotorsionPair> is_cotorsion_pair(const Context& ctx, IndexSet x, IndexSet y) {
    if (!subset_of(x, ctx.universe()) || !subset_of(y, ctx.universe())) {
        throw ContractError("is_cotorsion_pair: subcategories must lie in the universe");
    }
    const auto& ext = ctx.core().ext();
    for (int i : members_of(x)) {
        for (int j : members_of(y)) {
            if (ext.ext1(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    if (!perp_shape(ctx, x, y)) {
        return std::nullopt;
    }
    CotorsionPair pair;
    pair.x = x;
    pair.y = y;
    for (int m : members_of(ctx.universe())) {
        auto w3 = right_witness(ctx, x, y, m);
        if (!w3) {
            return std::nullopt;
        }
        auto w4 = left_witness(ctx, x, y, m);
        if (!w4) {
            return std::nullopt;
        }
        pair.cp3.push_back(std::move(*w3));
        pair.cp4.push_back(std::move(*w4));
    }
    return pair;
}

CotorsionPair classify(const Context& ctx, CotorsionPair pair) {
    const auto& ext = ctx.core().ext();
    if (ctx.is_restricted()) {
        pair.is_s = Tri::unknown;
        pair.hereditary = Tri::unknown;
    } else {
        bool s = true;
        bool h = true;
        for (int i : members_of(pair.x)) {
            for (int j : members_of(pair.y)) {
                s = s && ext.ext_dim(i, j, 2) == 0;
                h = h && ext.vanishes_from(i, j, 2);
            }
        }
        pair.is_s = tri(s);
        pair.hereditary = tri(h);
    }
    bool bounded = hat(ctx, pair.x) == ctx.universe() && check(ctx, pair.y) == ctx.universe();
    pair.bounded = bounded ? Tri::yes : (ctx.closures_exact() ? Tri::no : Tri::unknown);
    return pair;
}

int CotorsionPoset::index_of(IndexSet x, IndexSet y) const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].x == x && pairs[i].y == y) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

CotorsionPoset enumerate_cotorsion_pairs(const Context& ctx, int max_skeleton) {
    require_scannable(ctx, max_skeleton);
    const Exec exec = ctx.core().exec();
    auto xs = scan_subsets(ctx.universe(), exec,
                           [&](IndexSet x) { return perp_shape(ctx, x, right_perp1(ctx, x)); });
    std::vector<std::optional<CotorsionPair>> found(xs.size());
    for_each_index(static_cast<int>(xs.size()), exec, [&](int k) {
        IndexSet x = xs[static_cast<std::size_t>(k)];
        auto p = is_cotorsion_pair(ctx, x, right_perp1(ctx, x));
        if (p) {
            found[static_cast<std::size_t>(k)] = classify(ctx, std::move(*p));
        }
    });
    CotorsionPoset poset;
    for (auto& p : found) {
        if (p) {
            poset.pairs.push_back(std::move(*p));
        }
    }
    const std::size_t n = poset.pairs.size();
    poset.le.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            poset.le[i][j] = pair_le(poset.pairs[i], poset.pairs[j]);
        }
    }
    return poset;
}

std::vector<CotorsionPair> interval(const CotorsionPoset& poset, const CotorsionPair& x1, const CotorsionPair& x2) {
    if (!pair_le(x1, x2)) {
        throw ContractError("interval: order violation, the lower endpoint is not below the upper one");
    }
    std::vector<CotorsionPair> out;
    for (const auto& p : poset.pairs) {
        if (pair_le(x1, p) && pair_le(p, x2)) {
            out.push_back(p);
        }
    }
    return out;
}

Context coheart(const Context& ctx, const CotorsionPair& x1, const CotorsionPair& x2) {
    if (!pair_le(x1, x2)) {
        throw ContractError("coheart: order violation, the lower endpoint is not below the upper one");
    }
    return ctx.restrict(x1.x & x2.y);
}

std::pair<IndexSet, IndexSet> thm2_phi(const CotorsionPair& pair, const CotorsionPair& x1, const CotorsionPair& x2) {
    if (!pair_le(x1, pair) || !pair_le(pair, x2)) {
        throw ContractError("thm2_phi: the pair is outside the interval");
    }
    return {pair.x & x2.y, x1.x & pair.y};
}

std::pair<IndexSet, IndexSet> thm2_psi(const Context& ambient, IndexSet a, IndexSet b, const CotorsionPair& x1,
                                       const CotorsionPair& x2) {
    IndexSet h = x1.x & x2.y;
    if (!subset_of(a, h) || !subset_of(b, h)) {
        throw ContractError("thm2_psi: the pair does not live in the coheart");
    }
    return {ambient.star(x2.x, a), ambient.star(b, x1.y)};
}

Report verify_thm2(const Context& ctx, const CotorsionPair& x1, const CotorsionPair& x2) {
    return verify_thm2_with(ctx, enumerate_cotorsion_pairs(ctx), x1, x2);
}

Report verify_thm2_all(const Context& ctx) {
    Report total;
    total.title = "thm2";
    auto poset = enumerate_cotorsion_pairs(ctx);
    int intervals = 0;
    for (const auto& p : poset.pairs) {
        for (const auto& q : poset.pairs) {
            if (p.is_s == Tri::yes && q.is_s == Tri::yes && pair_le(p, q)) {
                total.merge(verify_thm2_with(ctx, poset, p, q));
                ++intervals;
            }
        }
    }
    total.summary = std::to_string(intervals) + " intervals";
    total.data["intervals"] = intervals;
    return total;
}

Json pair_json(const Context& ctx, const CotorsionPair& p) {
    Json j;
    j["x"] = member_names(ctx, p.x);
    j["y"] = member_names(ctx, p.y);
    j["s"] = tri_string(p.is_s);
    j["hereditary"] = tri_string(p.hereditary);
    j["bounded"] = tri_string(p.bounded);
    auto wit = [&](const std::vector<Witness>& ws) {
        Json arr = Json::array();
        for (const auto& w : ws) {
            arr.push_back({{"object", ctx.core().name(w.object)},
                           {"a", mult_json(ctx, w.a)},
                           {"b", mult_json(ctx, w.b)},
                           {"c", mult_json(ctx, w.c)}});
        }
        return arr;
    };
    j["cp3"] = wit(p.cp3);
    j["cp4"] = wit(p.cp4);
    return j;
}

Json poset_json(const Context& ctx, const CotorsionPoset& poset) {
    Json j;
    j["pairs"] = Json::array();
    for (const auto& p : poset.pairs) {
        j["pairs"].push_back(pair_json(ctx, p));
    }
    Json edges = Json::array();
    const std::size_t n = poset.pairs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i != k && poset.le[i][k]) {
                edges.push_back({i, k});
            }
        }
    }
    j["order"] = edges;
    return j;
}

std::string poset_dot(const Context& ctx, const CotorsionPoset& poset) {
    std::ostringstream out;
    out << "digraph cotors {\n  rankdir=BT;\n  node [shape=box];\n";
    const std::size_t n = poset.pairs.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << "  p" << i << " [label=\"X=" << ctx.names(poset.pairs[i].x) << "\\nY=" << ctx.names(poset.pairs[i].y)
            << "\"];\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k || !poset.le[i][k]) {
                continue;
            }
            bool cover = true;
            for (std::size_t m = 0; m < n && cover; ++m) {
                if (m != i && m != k && poset.le[i][m] && poset.le[m][k]) {
                    cover = false;
                }
            }
            if (cover) {
                out << "  p" << i << " -> p" << k << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace siltlab
