#pragma once

#include "siltlab/module.hpp"

#include <vector>

namespace siltlab {

/// A short exact sequence a -f-> b -g-> c.
struct Conflation {
    Module a;
    Module b;
    Module c;
    Morphism f;
    Morphism g;

    /// f injective, g surjective, im f = ker g at every vertex, g f = 0.
    bool is_valid() const;
};

/// Throws ContractError describing the first violated invariant.
void require_valid(const Conflation& conf);

Conflation split_conflation(const Module& a, const Module& c);

struct ProjectiveCover {
    Module p;
    Morphism d;            // p -> m, surjective
    std::vector<int> top;  // multiplicity of P_v in p
};

/// Minimal projective cover; the zero module gets the zero cover.
ProjectiveCover projective_cover(const Module& m);

struct InjectiveEnvelope {
    Module i;
    Morphism e;            // m -> i, injective
    std::vector<int> socle;
};

InjectiveEnvelope injective_envelope(const Module& m);

/// Kernel of the projective cover, with its inclusion into the cover.
struct Syzygy {
    ProjectiveCover cover;
    SubmoduleResult kernel;

    /// Omega(m) -> P -> m as a conflation.
    Conflation conflation(const Module& m) const;
};

Syzygy syzygy_data(const Module& m);
Module syzygy(const Module& m);
/// Cokernel of the injective envelope.
Module cosyzygy(const Module& m);

/// dim Ext^k(m, n) via the minimal projective resolution of m.
int ext_dim(const Module& m, const Module& n, int k);
/// Same number computed from the explicit cokernel of the restriction map
/// Hom(P_{k-1}, n) -> Hom(Omega^k m, n).
int ext_dim_cokernel(const Module& m, const Module& n, int k);
/// Same number via the injective coresolution of n.
int ext_dim_coresolution(const Module& m, const Module& n, int k);

/// delta in Ext^1(c, a), stored as a cocycle Omega(c) -> a in canonical form.
class ExtClass {
public:
    ExtClass(Module c, Module a, Syzygy syz, Morphism cocycle);

    const Module& c_module() const { return c_; }
    const Module& a_module() const { return a_; }
    const Syzygy& syzygy() const { return syz_; }
    const Morphism& cocycle() const { return cocycle_; }
    int degree() const { return 1; }

    /// Coordinates in the fixed complement of the coboundaries; equal
    /// coordinates mean equal classes.
    const std::vector<int>& coords() const { return coords_; }
    bool is_zero() const;

    friend bool operator==(const ExtClass& x, const ExtClass& y) { return x.coords_ == y.coords_; }

private:
    Module c_;
    Module a_;
    Syzygy syz_;
    Morphism cocycle_;
    std::vector<int> coords_;
};

/// Basis of Ext^1(c, a); representatives live in a fixed complement of the
/// coboundary space.
std::vector<ExtClass> ext1_basis(const Module& c, const Module& a);

/// Linear combination of classes sharing (c, a).
ExtClass combine(const std::vector<ExtClass>& basis, const std::vector<int>& coeffs);

/// Realisation of delta: pushout of Omega(c) -> P -> c along the cocycle.
Conflation middle_term(const ExtClass& delta);

/// The class of a conflation, found by lifting the projective cover of c.
ExtClass class_of(const Conflation& conf);

/// h_* and h^* of a conflation: pushout along h: a -> a', pullback along h: c' -> c.
Conflation pushout_conflation(const Conflation& conf, const Morphism& h);
Conflation pullback_conflation(const Conflation& conf, const Morphism& h);

/// Checks the covariant and contravariant long exact Hom/Ext sequences of the
/// conflation against x up to Ext^degrees, as rank bookkeeping.
bool check_long_exact(const Conflation& conf, const Module& x, int degrees);

/// Some g with g o epi = h (h must vanish on ker epi); throws otherwise.
Morphism factor_through_epi(const Morphism& epi, const Morphism& h);
/// Some g with mono o g = h (h must land in im mono); throws otherwise.
Morphism factor_through_mono(const Morphism& mono, const Morphism& h);
/// Some x: src -> g.source() with g o x = t, when one exists.
std::optional<Morphism> lift_through(const Morphism& g, const Morphism& t);

} // namespace siltlab
