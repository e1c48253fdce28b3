#include "siltlab/algebra.hpp"

#include "siltlab/linalg.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace siltlab {

Quiver::Quiver(int vertex_count, std::vector<Arrow> arrows) : vertex_count_(vertex_count), arrows_(std::move(arrows)) {
    if (vertex_count < 1) {
        throw ConstructionError("quiver needs at least one vertex");
    }
    std::set<std::string> labels;
    for (const auto& a : arrows_) {
        if (a.source < 0 || a.source >= vertex_count || a.target < 0 || a.target >= vertex_count) {
            throw ConstructionError("arrow '" + a.label + "' has an endpoint outside the vertex range");
        }
        if (a.label.empty()) {
            throw ConstructionError("arrow labels must be non-empty");
        }
        if (!labels.insert(a.label).second) {
            throw ConstructionError("duplicate arrow label '" + a.label + "'");
        }
    }
}

std::optional<int> Quiver::arrow_index(const std::string& label) const {
    for (int i = 0; i < arrow_count(); ++i) {
        if (arrows_[static_cast<std::size_t>(i)].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

Path trivial_path(int vertex) { return Path{vertex, vertex, {}}; }

Path path_from_labels(const Quiver& q, const std::vector<std::string>& labels) {
    if (labels.empty()) {
        throw ConstructionError("empty path");
    }
    Path path;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto idx = q.arrow_index(labels[i]);
        if (!idx) {
            throw ConstructionError("unknown arrow label '" + labels[i] + "'");
        }
        const Arrow& a = q.arrow(*idx);
        if (i == 0) {
            path.source = a.source;
        } else if (a.source != path.target) {
            throw ConstructionError("arrows '" + labels[i - 1] + "' and '" + labels[i] + "' are not composable");
        }
        path.target = a.target;
        path.arrows.push_back(*idx);
    }
    return path;
}

bool Algebra::is_nonzero(const Path& path) const {
    for (const auto& rel : relations_) {
        const auto& r = rel.arrows;
        if (r.size() > path.arrows.size()) {
            continue;
        }
        if (std::search(path.arrows.begin(), path.arrows.end(), r.begin(), r.end()) != path.arrows.end()) {
            return false;
        }
    }
    return true;
}

std::optional<int> Algebra::basis_index(const Path& path) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i] == path) {
            return static_cast<int>(i);
        }
    }
    return std::nullopt;
}

std::optional<Path> Algebra::multiply(const Path& x, const Path& y) const {
    if (x.target != y.source) {
        return std::nullopt;
    }
    Path out{x.source, y.target, x.arrows};
    out.arrows.insert(out.arrows.end(), y.arrows.begin(), y.arrows.end());
    if (!is_nonzero(out)) {
        return std::nullopt;
    }
    return out;
}

std::vector<int> Algebra::paths_between(int from, int to) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_[i].source == from && basis_[i].target == to) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

std::string Algebra::path_name(const Path& path) const {
    if (path.arrows.empty()) {
        return "e" + std::to_string(path.source + 1);
    }
    std::string s;
    for (std::size_t i = 0; i < path.arrows.size(); ++i) {
        s += (i ? "*" : "") + quiver_.arrow(path.arrows[i]).label;
    }
    return s;
}

Algebra build_path_algebra(const Quiver& q, const std::vector<Path>& relations, int p) {
    if (p > kMaxModulus || !is_prime(p)) {
        throw ConstructionError("field modulus " + std::to_string(p) + " is not a prime <= 97");
    }
    Algebra alg;
    alg.quiver_ = q;
    alg.modulus_ = p;
    for (const auto& r : relations) {
        if (r.length() < 2) {
            throw ConstructionError("relations must be paths of length >= 2");
        }
        for (std::size_t i = 0; i + 1 < r.arrows.size(); ++i) {
            if (q.arrow(r.arrows[i]).target != q.arrow(r.arrows[i + 1]).source) {
                throw ConstructionError("relation is not a composable path");
            }
        }
    }
    alg.relations_ = relations;

    // Breadth-first growth gives length-lexicographic order directly.
    std::vector<Path> layer;
    for (int v = 0; v < q.vertex_count(); ++v) {
        layer.push_back(trivial_path(v));
    }
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end(), [](const Path& a, const Path& b) {
            if (a.source != b.source) {
                return a.source < b.source;
            }
            return a.arrows < b.arrows;
        });
        for (const auto& path : layer) {
            alg.basis_.push_back(path);
            if (alg.basis_.size() > kPathBasisCap) {
                throw ConstructionError("path basis exceeds " + std::to_string(kPathBasisCap) +
                                        " elements; the relation ideal is not admissible");
            }
        }
        std::vector<Path> next;
        for (const auto& path : layer) {
            for (int a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).source != path.target) {
                    continue;
                }
                Path ext{path.source, q.arrow(a).target, path.arrows};
                ext.arrows.push_back(a);
                if (alg.is_nonzero(ext)) {
                    next.push_back(std::move(ext));
                }
            }
        }
        layer = std::move(next);
    }
    return alg;
}

Algebra nakayama(const std::vector<int>& series, bool cyclic, int p) {
    const int n = static_cast<int>(series.size());
    if (n == 0) {
        throw ConstructionError("Kupisch series must be non-empty");
    }
    for (int i = 0; i < n; ++i) {
        int c = series[static_cast<std::size_t>(i)];
        if (c < 1 || (cyclic && c < 2)) {
            throw ConstructionError("Kupisch series entry " + std::to_string(i + 1) + " is too small");
        }
        bool has_next = cyclic || i + 1 < n;
        if (has_next) {
            int next = series[static_cast<std::size_t>((i + 1) % n)];
            if (c >= 2 && next < c - 1) {
                throw ConstructionError("Kupisch series violates c[i+1] >= c[i] - 1 at position " +
                                        std::to_string(i + 1));
            }
        }
        if (!cyclic && c > n - i) {
            throw ConstructionError("Kupisch series entry " + std::to_string(i + 1) +
                                    " exceeds the length of the linear quiver");
        }
    }
    if (!cyclic && series.back() != 1) {
        throw ConstructionError("linear Kupisch series must end in 1");
    }

    // An arrow i -> i+1 exists exactly when the projective at i has length >= 2.
    std::vector<Arrow> arrows;
    std::vector<int> arrow_from(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (!cyclic && i + 1 == n) {
            break;
        }
        if (series[static_cast<std::size_t>(i)] >= 2) {
            arrow_from[static_cast<std::size_t>(i)] = static_cast<int>(arrows.size());
            arrows.push_back(Arrow{i, (i + 1) % n, "a" + std::to_string(i + 1)});
        }
    }
    Quiver q(n, arrows);
    std::vector<Path> rels;
    for (int i = 0; i < n; ++i) {
        int c = series[static_cast<std::size_t>(i)];
        if (c < 2) {
            continue;
        }
        // The path of length c starting at i must vanish, unless a shorter
        // relation starting at i+1 already kills it.
        int next = series[static_cast<std::size_t>((i + 1) % n)];
        if (!cyclic && i + c >= n) {
            continue;
        }
        if (next < c) {
            continue;
        }
        Path r{i, i, {}};
        int v = i;
        bool ok = true;
        for (int s = 0; s < c; ++s) {
            int a = arrow_from[static_cast<std::size_t>(v)];
            if (a < 0) {
                ok = false;
                break;
            }
            r.arrows.push_back(a);
            v = arrows[static_cast<std::size_t>(a)].target;
        }
        if (!ok) {
            continue;
        }
        r.target = v;
        rels.push_back(std::move(r));
    }
    Algebra alg = build_path_algebra(q, rels, p);
    alg.nakayama_ = true;
    alg.declared_rep_finite_ = true;
    alg.kupisch_ = series;
    alg.cyclic_ = cyclic;
    // Sanity: each projective must have the requested length.
    for (int i = 0; i < n; ++i) {
        int len = 0;
        for (const auto& path : alg.basis_) {
            len += path.source == i ? 1 : 0;
        }
        if (len != series[static_cast<std::size_t>(i)]) {
            throw ConstructionError("Kupisch series is not realisable at vertex " + std::to_string(i + 1));
        }
    }
    return alg;
}

} // namespace siltlab
