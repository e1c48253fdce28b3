#pragma once

#include "siltlab/cotorsion.hpp"

namespace siltlab {

/// An m-coresolution 0 -> P -> M^0 -> ... -> M^n -> 0 of an indecomposable
/// projective, built from minimal left approximations.
struct Coresolution {
    int projective = 0;
    std::vector<std::vector<int>> terms; // multiplicity vectors of M^0, ..., M^n
};

struct SiltingRecord {
    IndexSet m = 0;
    Module generator; // each member once
    Dim pd;
    std::string route; // "silt-char" or "thick"
    std::vector<Coresolution> coresolutions;
};

/// Ext^k(m, m) = 0 for all k >= 1. Full contexts only.
bool is_presilting(const Context& ctx, IndexSet m);

/// Coresolves every indecomposable projective by add m, or returns nullopt
/// when some step is not an inflation or the step cap is hit.
std::optional<std::vector<Coresolution>> coresolve_projectives(const Context& ctx, IndexSet m);

/// Exact characterisation when the global dimension is finite; otherwise
/// thick closure, throwing IndeterminateError if the atlas is not exact.
std::optional<SiltingRecord> is_silting(const Context& ctx, IndexSet m);
std::vector<SiltingRecord> enumerate_silting(const Context& ctx, int max_skeleton = 20);

IndexSet thm1_phi(const CotorsionPair& pair);
/// (left perp, right perp) of m, cross-checked against (check m, hat m) and
/// classified. Throws ValidationError when the two routes disagree.
CotorsionPair thm1_psi(const Context& ctx, IndexSet m);
Report verify_thm1(const Context& ctx);

/// Ext^k(m, n) = 0 for all k >= 1.
bool silting_ge(const Context& ctx, IndexSet m, IndexSet n);
Report verify_silting_order(const Context& ctx);

/// Classical certificates reported next to the silting verdict on add t.
struct TiltingCertificate {
    bool tilting = false;
    Dim pd;
    bool self_orthogonal = false;
    bool coresolves_algebra = false;
};
TiltingCertificate tilting_certificate(const Context& ctx, const Module& t);
bool is_tilting_module(const Context& ctx, const Module& t);

/// Resolving <-> hereditary cotorsion <-> coresolving via perpendiculars.
Report verify_res_hcotors(const Context& ctx);
/// Includes verify_res_hcotors.
Report verify_thm3(const Context& ctx);
/// Finite global dimension only; UnsupportedError otherwise.
Report verify_ar(const Context& ctx);

struct FrobeniusPair {
    IndexSet x = 0;
    IndexSet omega = 0;
    std::vector<Witness> witnesses; // X -> W -> X' for each member X
};

std::optional<FrobeniusPair> is_left_frobenius(const Context& ctx, IndexSet x, IndexSet omega);
FrobeniusPair frob_phi(const Context& ctx, IndexSet x, IndexSet y);
std::pair<IndexSet, IndexSet> frob_psi(const Context& ctx, const FrobeniusPair& fp);
Report verify_frobenius(const Context& ctx);

Json silting_json(const Context& ctx, const SiltingRecord& r);

} // namespace siltlab
