#pragma once

#include "siltlab/algebra.hpp"
#include "siltlab/linalg.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace siltlab {

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A quiver representation satisfying the algebra's monomial relations.
/// maps[a] has dims[target(a)] rows and dims[source(a)] columns.
class Module {
public:
    Module() = default;
    Module(AlgebraPtr alg, std::vector<int> dims, std::vector<Mat> maps);

    static Module zero(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return alg_; }
    int modulus() const { return alg_->modulus(); }
    int vertex_count() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int v) const { return dims_[static_cast<std::size_t>(v)]; }
    int total_dim() const;
    bool is_zero() const { return total_dim() == 0; }
    const std::vector<Mat>& maps() const { return maps_; }
    const Mat& map(int a) const { return maps_[static_cast<std::size_t>(a)]; }

    /// Composite action of a path (identity for trivial paths).
    Mat path_action(const Path& path) const;

    friend bool operator==(const Module& a, const Module& b) { return a.dims_ == b.dims_ && a.maps_ == b.maps_; }

private:
    AlgebraPtr alg_;
    std::vector<int> dims_;
    std::vector<Mat> maps_;
};

/// Vertexwise linear maps commuting with the arrow actions.
class Morphism {
public:
    Morphism() = default;
    Morphism(Module source, Module target, std::vector<Mat> components);

    static Morphism zero(const Module& source, const Module& target);
    static Morphism identity(const Module& m);

    const Module& source() const { return source_; }
    const Module& target() const { return target_; }
    const std::vector<Mat>& components() const { return comps_; }
    const Mat& component(int v) const { return comps_[static_cast<std::size_t>(v)]; }

    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const { return is_injective() && is_surjective(); }
    /// Naturality squares commute for every arrow.
    bool is_natural() const;

    Morphism scaled(int s) const;
    /// Flattened coordinates (vertex-major, row-major) in the ambient space of
    /// all vertexwise maps.
    std::vector<int> flatten() const;

    friend Morphism operator+(const Morphism& a, const Morphism& b);
    friend Morphism operator-(const Morphism& a, const Morphism& b);
    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.source_.dims() == b.source_.dims() && a.target_.dims() == b.target_.dims() && a.comps_ == b.comps_;
    }

private:
    Module source_;
    Module target_;
    std::vector<Mat> comps_;
};

/// g after f.
Morphism compose(const Morphism& g, const Morphism& f);

/// Dimension of the ambient space of vertexwise maps m -> n.
int ambient_hom_dim(const Module& m, const Module& n);
Morphism unflatten(const Module& source, const Module& target, const std::vector<int>& coords);

/// Basis of Hom(m, n); the solution space of all naturality constraints.
std::vector<Morphism> hom_basis(const Module& m, const Module& n);
int hom_dim(const Module& m, const Module& n);
/// Columns: flattened basis of Hom(m, n).
Mat hom_basis_matrix(const Module& m, const Module& n);

/// Direct sums with canonical injections and projections.
struct DirectSum {
    Module sum;
    std::vector<Morphism> injections;
    std::vector<Morphism> projections;
};
DirectSum direct_sum(const std::vector<Module>& parts);
Module direct_sum(const Module& a, const Module& b);
Module power(const Module& m, int copies);

/// Morphism between direct sums given by a block matrix of morphisms
/// blocks[i][j] : sources[j] -> targets[i].
Morphism block_morphism(const DirectSum& source, const DirectSum& target,
                        const std::vector<std::vector<Morphism>>& blocks);

/// A subrepresentation described by vertexwise column bases, or a quotient.
struct SubmoduleResult {
    Module module;
    Morphism inclusion;
};
struct QuotientResult {
    Module module;
    Morphism projection;
};

SubmoduleResult kernel(const Morphism& f);
SubmoduleResult image(const Morphism& f);
QuotientResult cokernel(const Morphism& f);
/// Submodule spanned vertexwise by the columns of `bases` (must be stable).
SubmoduleResult submodule(const Module& m, const std::vector<Mat>& bases);
QuotientResult quotient(const Module& m, const std::vector<Mat>& bases);

/// Simple, indecomposable projective (paths starting at v) and
/// indecomposable injective (dual of paths ending at v) representations.
Module simple_module(const AlgebraPtr& alg, int v);
Module projective_module(const AlgebraPtr& alg, int v);
Module injective_module(const AlgebraPtr& alg, int v);

/// Builds a module from dims and arrow matrices, checking relations.
Module make_module(const AlgebraPtr& alg, std::vector<int> dims, std::vector<Mat> maps);

constexpr int kMaxIsoHomDim = 16;

bool is_isomorphic(const Module& m, const Module& n);
/// An explicit isomorphism when one exists.
std::optional<Morphism> find_isomorphism(const Module& m, const Module& n);

/// End(m) is local. Throws ContractError for the zero module.
bool is_indecomposable(const Module& m);

/// An endomorphism that is neither nilpotent nor invertible, when one exists.
std::optional<Morphism> find_splitting_endomorphism(const Module& m);

/// Fitting decomposition m = ker(f^N) + im(f^N) for an endomorphism f.
std::pair<SubmoduleResult, SubmoduleResult> fitting_split(const Morphism& f);

/// Splits m into indecomposable summands (up to isomorphism).
std::vector<Module> split_into_indecomposables(const Module& m);

std::string dims_string(const std::vector<int>& dims);

} // namespace siltlab
