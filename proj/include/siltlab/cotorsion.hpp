#pragma once

#include "siltlab/report.hpp"
#include "siltlab/subcat.hpp"

namespace siltlab {

/// The conflation witnessing (CP3) or (CP4) for one object.
struct Witness {
    int object = 0;
    std::vector<int> a; // multiplicities of the three terms
    std::vector<int> b;
    std::vector<int> c;
    Conflation conflation;
};

struct CotorsionPair {
    IndexSet x = 0;
    IndexSet y = 0;
    Tri is_s = Tri::unknown;
    Tri hereditary = Tri::unknown;
    Tri bounded = Tri::unknown;
    std::vector<Witness> cp3; // Y -> X -> M
    std::vector<Witness> cp4; // M -> Y -> X
};

/// (X1, Y1) <= (X2, Y2) iff Y1 is contained in Y2.
inline bool pair_le(const CotorsionPair& p, const CotorsionPair& q) { return subset_of(p.y, q.y); }

/// Validates (CP2) together with the perp equalities. (CP3)/(CP4) are
/// witnessed per object through minimal approximations. Flags stay unknown.
std::optional<CotorsionPair> is_cotorsion_pair(const Context& ctx, IndexSet x, IndexSet y);

/// Resolves the classification flags. Higher Ext is out of reach
/// in restricted contexts, where is_s and hereditary stay unknown.
CotorsionPair classify(const Context& ctx, CotorsionPair pair);

struct CotorsionPoset {
    std::vector<CotorsionPair> pairs; // sorted by (x, y)
    std::vector<std::vector<bool>> le;

    int index_of(IndexSet x, IndexSet y) const;
};

/// Every pair (x, x^perp1) passing is_cotorsion_pair, classified.
CotorsionPoset enumerate_cotorsion_pairs(const Context& ctx, int max_skeleton = 20);

std::vector<CotorsionPair> interval(const CotorsionPoset& poset, const CotorsionPair& x1, const CotorsionPair& x2);
/// X1 cap Y2 as a restricted context.
Context coheart(const Context& ctx, const CotorsionPair& x1, const CotorsionPair& x2);

std::pair<IndexSet, IndexSet> thm2_phi(const CotorsionPair& pair, const CotorsionPair& x1, const CotorsionPair& x2);
/// Star closures computed in the ambient context.
std::pair<IndexSet, IndexSet> thm2_psi(const Context& ambient, IndexSet a, IndexSet b, const CotorsionPair& x1,
                                       const CotorsionPair& x2);

Report verify_thm2(const Context& ctx, const CotorsionPair& x1, const CotorsionPair& x2);
/// verify_thm2 over every comparable ordered pair of s-cotorsion pairs.
Report verify_thm2_all(const Context& ctx);

Json pair_json(const Context& ctx, const CotorsionPair& p);
Json poset_json(const Context& ctx, const CotorsionPoset& poset);
/// Hasse diagram in DOT syntax.
std::string poset_dot(const Context& ctx, const CotorsionPoset& poset);

/// Refuses scans over more than max_skeleton indecomposables.
void require_scannable(const Context& ctx, int max_skeleton);

} // namespace siltlab
