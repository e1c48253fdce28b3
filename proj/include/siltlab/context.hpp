#pragma once

#include "siltlab/homology.hpp"
#include "siltlab/parallel.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace siltlab {

/// Subsets of the skeleton as bitmasks over indecomposable indices.
using IndexSet = std::uint32_t;
constexpr int kMaxSkeleton = 24;

inline bool contains(IndexSet set, int i) { return (set >> i) & 1u; }
inline bool subset_of(IndexSet a, IndexSet b) { return (a & ~b) == 0; }
inline IndexSet singleton(int i) { return IndexSet{1} << i; }
int popcount(IndexSet s);
std::vector<int> members_of(IndexSet s);
IndexSet full_set(int n);

/// Raised when a declared skeleton is wrong or a module has a summand
/// missing from it.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is not available in the given context.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bound-limited search could not decide the question.
class IndeterminateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Three-valued verdicts for flags that may be out of reach.
enum class Tri { no, yes, unknown };
std::string tri_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::yes : Tri::no; }

/// nullopt stands for infinity.
using Dim = std::optional<int>;
std::string dim_string(const Dim& d);

struct Indecomposable {
    std::string name;
    Module module;
    std::vector<std::string> aliases;
};

/// Quivers with in- and out-degree at most one: every indecomposable is a
/// quotient of an indecomposable projective by a radical power.
bool has_nakayama_shape(const Algebra& alg);

/// P_v / rad^t P_v for all v and 1 <= t <= length(P_v), or the verified
/// declared list.
std::vector<Indecomposable> enumerate_indecomposables(const AlgebraPtr& alg);
std::vector<Indecomposable> verify_declared(const AlgebraPtr& alg, std::vector<Indecomposable> declared);

/// Cached homological data of the skeleton.
class ExtTable {
public:
    ExtTable() = default;
    ExtTable(std::vector<std::vector<int>> hom, std::vector<std::vector<int>> ext1,
             std::vector<std::vector<int>> omega_mult);

    int size() const { return static_cast<int>(hom_.size()); }
    int hom(int i, int j) const { return hom_[idx(i)][idx(j)]; }
    int ext1(int i, int j) const { return ext1_[idx(i)][idx(j)]; }
    /// Multiplicities of the skeleton in Omega(X_i).
    const std::vector<int>& omega_mult(int i) const { return omega_[idx(i)]; }
    IndexSet omega_support(int i) const { return omega_supp_[idx(i)]; }

    /// dim Ext^k(X_i, X_j), by dimension shifting through syzygy multiplicities.
    long long ext_dim(int i, int j, int k) const;
    /// Ext^k(X_i, X_j) = 0 for all k >= k0, decided on the periodic support orbit.
    bool vanishes_from(int i, int j, int k0) const;

    /// Supports of Omega^t X_i for t = 0, 1, ... until the first repeat.
    struct Orbit {
        std::vector<IndexSet> supports;
        int preperiod = 0;
        int period = 1;
        IndexSet at(long long t) const;
    };
    const Orbit& orbit(int i) const { return orbits_[idx(i)]; }

    Dim projective_dimension(int i) const;
    Dim injective_dimension(int j) const;

private:
    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
    std::vector<std::vector<int>> hom_;
    std::vector<std::vector<int>> ext1_;
    std::vector<std::vector<int>> omega_;
    std::vector<IndexSet> omega_supp_;
    std::vector<Orbit> orbits_;
};

/// A conflation piece: multiplicity vectors of the three terms.
struct Piece {
    std::vector<int> a;
    std::vector<int> b;
    std::vector<int> c;
    IndexSet a_set = 0;
    IndexSet b_set = 0;
    IndexSet c_set = 0;

    friend bool operator<(const Piece& x, const Piece& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    }
    friend bool operator==(const Piece& x, const Piece& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

/// Every conflation is a direct sum of conflations whose class is an
/// indecomposable representation of the bipartite Ext quiver (C-side node j,
/// A-side node i, dim Ext^1(X_j, X_i) arrows). Those have connected support
/// and Tits form at most 1, so enumerating them up to mult_bound captures
/// all add-level closure data.
struct ConflationAtlas {
    int mult_bound = 3;
    std::vector<Piece> pieces;
    bool complete = true;     // every candidate class was enumerated
    bool bound_binds = false; // a root with an entry above the bound exists
    long long dimension_vectors = 0;
    long long classes = 0;

    bool exact() const { return complete && !bound_binds; }
};

struct AtlasLimits {
    int exhaustive_log2 = 14;     // p^D <= 2^14 classes per vector: enumerate all
    int samples = 2048;           // otherwise sample this many
    long long max_vectors = 200000;
};

class Core;
ConflationAtlas build_atlas(const Core& core, int mult_bound, Exec exec, const AtlasLimits& limits = {});

/// Skeleton plus everything cached about it. Immutable after construction
/// except for the atlas cache, which is guarded.
class Core {
public:
    static std::shared_ptr<const Core> build(AlgebraPtr alg, std::vector<Indecomposable> skeleton,
                                             Exec exec = Exec::parallel);

    const AlgebraPtr& algebra() const { return alg_; }
    int size() const { return static_cast<int>(skel_.size()); }
    const std::vector<Indecomposable>& skeleton() const { return skel_; }
    const Module& module(int i) const { return skel_[static_cast<std::size_t>(i)].module; }
    const std::string& name(int i) const { return skel_[static_cast<std::size_t>(i)].name; }
    std::optional<int> index_of(const std::string& name) const;

    const ExtTable& ext() const { return ext_; }
    const std::vector<Morphism>& hom_basis_between(int i, int j) const {
        return homs_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    /// Basis of rad(X_i, X_j): all of Hom for i != j, nilpotents for i == j.
    const std::vector<Morphism>& radical_basis(int i, int j) const;

    IndexSet projectives() const { return proj_; }
    IndexSet injectives() const { return inj_; }
    IndexSet all() const { return full_set(size()); }
    Exec exec() const { return exec_; }

    /// Fitting splitting plus isomorphism matching against the skeleton.
    std::vector<int> decompose(const Module& m) const;
    /// Hom-profile solve (h = H m) verified exactly; falls back to decompose.
    std::vector<int> decompose_fast(const Module& m) const;

    const ConflationAtlas& atlas(int mult_bound) const;

    Dim global_dimension() const;

private:
    Core() = default;
    AlgebraPtr alg_;
    std::vector<Indecomposable> skel_;
    ExtTable ext_;
    std::vector<std::vector<std::vector<Morphism>>> homs_;
    std::vector<std::vector<Morphism>> rad_end_;
    IndexSet proj_ = 0;
    IndexSet inj_ = 0;
    Exec exec_ = Exec::parallel;
    mutable std::mutex atlas_mu_;
    mutable std::map<int, std::shared_ptr<const ConflationAtlas>> atlases_;
};

using CorePtr = std::shared_ptr<const Core>;

/// The ambient category seen through a universe (an extension-closed set of
/// indecomposables) at a fixed multiplicity bound.
class Context {
public:
    Context(CorePtr core, int mult_bound = 3);

    const Core& core() const { return *core_; }
    const CorePtr& core_ptr() const { return core_; }
    IndexSet universe() const { return universe_; }
    bool is_restricted() const { return universe_ != core_->all(); }
    int mult_bound() const { return bound_; }
    int size() const { return core_->size(); }

    /// Same core, restricted to an extension-closed universe. Throws
    /// ValidationError if the universe is not extension-closed.
    Context restrict(IndexSet universe) const;
    Context with_bound(int mult_bound) const;

    /// Pieces whose three terms lie in the universe.
    const std::vector<Piece>& pieces() const { return *pieces_; }
    const ConflationAtlas& atlas() const { return core_->atlas(bound_); }
    bool closures_exact() const { return atlas().exact(); }

    /// Add-level closures computed from the atlas pieces.
    IndexSet star(IndexSet x, IndexSet y) const;
    IndexSet cone(IndexSet x, IndexSet y) const;
    IndexSet cocone(IndexSet x, IndexSet y) const;

    std::string names(IndexSet s) const;

private:
    CorePtr core_;
    IndexSet universe_;
    int bound_;
    std::shared_ptr<const std::vector<Piece>> pieces_;
};

/// Loads the skeleton (enumerated or declared) and builds the core.
CorePtr make_core(const AlgebraPtr& alg, std::vector<Indecomposable> declared = {}, Exec exec = Exec::parallel);

} // namespace siltlab
