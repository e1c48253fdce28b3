#pragma once

#include "siltlab/context.hpp"

namespace siltlab {

/// A summand-closed subcategory is add of an IndexSet of the context's
/// skeleton; all operators below stay inside ctx.universe().

IndexSet right_perp1(const Context& ctx, IndexSet x);
IndexSet left_perp1(const Context& ctx, IndexSet x);
/// Vanishing of Ext^k for every k >= 1 (resp. k > n). Higher Ext is only
/// defined for the full category; restricted contexts throw UnsupportedError.
IndexSet right_perp(const Context& ctx, IndexSet x);
IndexSet left_perp(const Context& ctx, IndexSet x);
IndexSet right_perp_gt(const Context& ctx, IndexSet x, int n);
IndexSet left_perp_gt(const Context& ctx, IndexSet x, int n);

/// A map between m and an object of add x; mult[i] counts copies of X_i.
struct Approximation {
    std::vector<int> mult;
    Module object;
    Morphism map; // object -> m (right) or m -> object (left)
};

/// Universal approximations assembled from full Hom bases.
Approximation right_approximation(const Context& ctx, IndexSet x, const Module& m);
Approximation left_approximation(const Context& ctx, IndexSet x, const Module& m);
/// Minimal versions: one copy of X_i per basis element of Hom(X_i, m) modulo
/// maps factoring through the radical of add x.
Approximation minimal_right_approximation(const Context& ctx, IndexSet x, const Module& m);
Approximation minimal_left_approximation(const Context& ctx, IndexSet x, const Module& m);

struct Tower {
    IndexSet result = 0;
    int steps = 0; // first n with hat_n = hat_{n+1}
};

IndexSet hat_n(const Context& ctx, IndexSet x, int n);
IndexSet check_n(const Context& ctx, IndexSet x, int n);
Tower hat_tower(const Context& ctx, IndexSet x);
Tower check_tower(const Context& ctx, IndexSet x);
IndexSet hat(const Context& ctx, IndexSet x);
IndexSet check(const Context& ctx, IndexSet x);
IndexSet tilde(const Context& ctx, IndexSet x);
IndexSet thick_closure(const Context& ctx, IndexSet x);

bool is_extension_closed(const Context& ctx, IndexSet x);
bool is_cone_closed(const Context& ctx, IndexSet x);
bool is_cocone_closed(const Context& ctx, IndexSet x);
/// Full contexts only (UnsupportedError otherwise).
bool is_resolving(const Context& ctx, IndexSet x);
bool is_coresolving(const Context& ctx, IndexSet x);

/// Largest projective (injective) dimension over members; full contexts only.
Dim subcat_pd(const Context& ctx, IndexSet x);
Dim subcat_id(const Context& ctx, IndexSet x);

/// Multiplicity vector to its support.
IndexSet support_of(const std::vector<int>& mult);

/// Member names in index order.
std::vector<std::string> member_names(const Context& ctx, IndexSet s);

} // namespace siltlab
