#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siltlab {

/// Raised when an algebra cannot be built from its presentation.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Arrow {
    int source = 0;
    int target = 0;
    std::string label;
};

class Quiver {
public:
    Quiver() = default;
    Quiver(int vertex_count, std::vector<Arrow> arrows);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int a) const { return arrows_[static_cast<std::size_t>(a)]; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    std::optional<int> arrow_index(const std::string& label) const;

private:
    int vertex_count_ = 0;
    std::vector<Arrow> arrows_;
};

/// A path is a vertex plus a (possibly empty) sequence of composable arrows,
/// read left to right: {a, b} means first a, then b.
struct Path {
    int source = 0;
    int target = 0;
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    friend bool operator==(const Path&, const Path&) = default;
};

constexpr std::size_t kPathBasisCap = 10000;

/// Path algebra of a quiver modulo an admissible ideal generated by paths.
class Algebra {
public:
    const Quiver& quiver() const { return quiver_; }
    int vertex_count() const { return quiver_.vertex_count(); }
    int modulus() const { return modulus_; }
    const std::vector<Path>& relations() const { return relations_; }
    /// Nonzero paths in length-lexicographic order.
    const std::vector<Path>& path_basis() const { return basis_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    bool is_nakayama() const { return nakayama_; }
    bool declared_rep_finite() const { return declared_rep_finite_; }
    /// Kupisch series when built as a Nakayama algebra.
    const std::vector<int>& kupisch_series() const { return kupisch_; }
    bool cyclic() const { return cyclic_; }

    /// True when no relation occurs as a contiguous subpath.
    bool is_nonzero(const Path& path) const;
    /// Index into path_basis(), or nullopt for a zero path.
    std::optional<int> basis_index(const Path& path) const;
    /// Concatenation x*y (x first) or nullopt when zero or not composable.
    std::optional<Path> multiply(const Path& x, const Path& y) const;

    /// Basis paths from `from` to `to`.
    std::vector<int> paths_between(int from, int to) const;

    std::string path_name(const Path& path) const;

    void set_declared_rep_finite(bool v) { declared_rep_finite_ = v; }

    friend Algebra build_path_algebra(const Quiver& q, const std::vector<Path>& relations, int p);
    friend Algebra nakayama(const std::vector<int>& series, bool cyclic, int p);

private:
    Quiver quiver_;
    int modulus_ = 2;
    std::vector<Path> relations_;
    std::vector<Path> basis_;
    bool nakayama_ = false;
    bool declared_rep_finite_ = false;
    std::vector<int> kupisch_;
    bool cyclic_ = false;
};

Path trivial_path(int vertex);
/// Parses a path from arrow labels, validating composability.
Path path_from_labels(const Quiver& q, const std::vector<std::string>& labels);

Algebra build_path_algebra(const Quiver& q, const std::vector<Path>& relations, int p);

/// Linear (A_n) or cyclic Nakayama algebra realising a Kupisch series; the
/// projective at vertex i has length series[i].
Algebra nakayama(const std::vector<int>& series, bool cyclic, int p);

} // namespace siltlab
