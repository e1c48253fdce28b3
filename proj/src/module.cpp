#include "siltlab/module.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace siltlab {

namespace {

void require_same_algebra(const Module& a, const Module& b, const char* what) {
    if (a.algebra().get() != b.algebra().get() && a.algebra() && b.algebra()) {
        if (a.vertex_count() != b.vertex_count() || a.maps().size() != b.maps().size()) {
            throw ContractError(std::string(what) + ": modules over different algebras");
        }
    }
}

bool is_nilpotent_at(const Mat& m) {
    if (m.rows() == 0) {
        return true;
    }
    return power(m, m.rows()).is_zero();
}

bool is_nilpotent(const Morphism& f) {
    for (const auto& c : f.components()) {
        if (!is_nilpotent_at(c)) {
            return false;
        }
    }
    return true;
}

Morphism shifted(const Morphism& f, int lambda) {
    return f - Morphism::identity(f.source()).scaled(lambda);
}

} // namespace

std::string dims_string(const std::vector<int>& dims) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dims.size(); ++i) {
        os << (i ? "," : "") << dims[i];
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- Module

Module::Module(AlgebraPtr alg, std::vector<int> dims, std::vector<Mat> maps)
    : alg_(std::move(alg)), dims_(std::move(dims)), maps_(std::move(maps)) {
    if (!alg_) {
        throw ContractError("Module: null algebra");
    }
    const Quiver& q = alg_->quiver();
    if (static_cast<int>(dims_.size()) != q.vertex_count()) {
        throw ContractError("Module: dimension vector length does not match vertex count");
    }
    if (static_cast<int>(maps_.size()) != q.arrow_count()) {
        throw ContractError("Module: one matrix per arrow is required");
    }
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        const Mat& m = maps_[static_cast<std::size_t>(a)];
        if (m.rows() != dim(ar.target) || m.cols() != dim(ar.source) || m.modulus() != alg_->modulus()) {
            throw ContractError("Module: matrix for arrow '" + ar.label + "' has the wrong shape");
        }
    }
}

Module Module::zero(AlgebraPtr alg) {
    const Quiver& q = alg->quiver();
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        maps.emplace_back(0, 0, alg->modulus());
    }
    return Module(alg, std::vector<int>(static_cast<std::size_t>(q.vertex_count()), 0), std::move(maps));
}

int Module::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

Mat Module::path_action(const Path& path) const {
    Mat acc = Mat::identity(dim(path.source), modulus());
    for (int a : path.arrows) {
        acc = map(a) * acc;
    }
    return acc;
}

Module make_module(const AlgebraPtr& alg, std::vector<int> dims, std::vector<Mat> maps) {
    Module m(alg, std::move(dims), std::move(maps));
    for (const auto& rel : alg->relations()) {
        if (!m.path_action(rel).is_zero()) {
            throw ContractError("module does not satisfy relation " + alg->path_name(rel));
        }
    }
    return m;
}

// -------------------------------------------------------------- Morphism

Morphism::Morphism(Module source, Module target, std::vector<Mat> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    if (static_cast<int>(comps_.size()) != source_.vertex_count()) {
        throw ContractError("Morphism: one component per vertex is required");
    }
    for (int v = 0; v < source_.vertex_count(); ++v) {
        const Mat& c = comps_[static_cast<std::size_t>(v)];
        if (c.rows() != target_.dim(v) || c.cols() != source_.dim(v)) {
            throw ContractError("Morphism: component shape mismatch at vertex " + std::to_string(v + 1));
        }
    }
}

Morphism Morphism::zero(const Module& source, const Module& target) {
    std::vector<Mat> comps;
    for (int v = 0; v < source.vertex_count(); ++v) {
        comps.emplace_back(target.dim(v), source.dim(v), source.modulus());
    }
    return Morphism(source, target, std::move(comps));
}

Morphism Morphism::identity(const Module& m) {
    std::vector<Mat> comps;
    for (int v = 0; v < m.vertex_count(); ++v) {
        comps.push_back(Mat::identity(m.dim(v), m.modulus()));
    }
    return Morphism(m, m, std::move(comps));
}

bool Morphism::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Mat& c) { return c.is_zero(); });
}

bool Morphism::is_injective() const {
    for (int v = 0; v < source_.vertex_count(); ++v) {
        if (rank(component(v)) != source_.dim(v)) {
            return false;
        }
    }
    return true;
}

bool Morphism::is_surjective() const {
    for (int v = 0; v < source_.vertex_count(); ++v) {
        if (rank(component(v)) != target_.dim(v)) {
            return false;
        }
    }
    return true;
}

bool Morphism::is_natural() const {
    const Quiver& q = source_.algebra()->quiver();
    for (int a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (!(component(ar.target) * source_.map(a) == target_.map(a) * component(ar.source))) {
            return false;
        }
    }
    return true;
}

Morphism Morphism::scaled(int s) const {
    Morphism out = *this;
    for (auto& c : out.comps_) {
        c = c.scaled(s);
    }
    return out;
}

std::vector<int> Morphism::flatten() const {
    std::vector<int> out;
    for (const auto& c : comps_) {
        out.insert(out.end(), c.entries().begin(), c.entries().end());
    }
    return out;
}

Morphism operator+(const Morphism& a, const Morphism& b) {
    Morphism out = a;
    for (std::size_t v = 0; v < out.comps_.size(); ++v) {
        out.comps_[v] = a.comps_[v] + b.comps_[v];
    }
    return out;
}

Morphism operator-(const Morphism& a, const Morphism& b) {
    Morphism out = a;
    for (std::size_t v = 0; v < out.comps_.size(); ++v) {
        out.comps_[v] = a.comps_[v] - b.comps_[v];
    }
    return out;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    if (f.target().dims() != g.source().dims()) {
        throw ContractError("compose: morphisms are not composable");
    }
    std::vector<Mat> comps;
    for (int v = 0; v < f.source().vertex_count(); ++v) {
        comps.push_back(g.component(v) * f.component(v));
    }
    return Morphism(f.source(), g.target(), std::move(comps));
}

int ambient_hom_dim(const Module& m, const Module& n) {
    int total = 0;
    for (int v = 0; v < m.vertex_count(); ++v) {
        total += m.dim(v) * n.dim(v);
    }
    return total;
}

Morphism unflatten(const Module& source, const Module& target, const std::vector<int>& coords) {
    std::vector<Mat> comps;
    std::size_t off = 0;
    const int p = source.modulus();
    for (int v = 0; v < source.vertex_count(); ++v) {
        int r = target.dim(v);
        int c = source.dim(v);
        std::vector<int> data(coords.begin() + static_cast<std::ptrdiff_t>(off),
                              coords.begin() + static_cast<std::ptrdiff_t>(off + static_cast<std::size_t>(r * c)));
        comps.emplace_back(r, c, p, std::move(data));
        off += static_cast<std::size_t>(r * c);
    }
    return Morphism(source, target, std::move(comps));
}

// ------------------------------------------------------------ Hom spaces

namespace {

Mat naturality_system(const Module& m, const Module& n) {
    const Quiver& q = m.algebra()->quiver();
    const int p = m.modulus();
    std::vector<int> offset(static_cast<std::size_t>(m.vertex_count()) + 1, 0);
    for (int v = 0; v < m.vertex_count(); ++v) {
        offset[static_cast<std::size_t>(v) + 1] = offset[static_cast<std::size_t>(v)] + n.dim(v) * m.dim(v);
    }
    const int vars = offset.back();
    int eqs = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        eqs += n.dim(q.arrow(a).target) * m.dim(q.arrow(a).source);
    }
    Mat sys(eqs, vars, p);
    int row = 0;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const int s = q.arrow(a).source;
        const int t = q.arrow(a).target;
        const Mat& ma = m.map(a);
        const Mat& na = n.map(a);
        const int ms = m.dim(s);
        const int mt = m.dim(t);
        const int ns = n.dim(s);
        const int nt = n.dim(t);
        for (int r = 0; r < nt; ++r) {
            for (int c = 0; c < ms; ++c) {
                // (phi_t * M_a)[r][c] - (N_a * phi_s)[r][c]
                for (int k = 0; k < mt; ++k) {
                    int coef = ma(k, c);
                    if (coef != 0) {
                        int var = offset[static_cast<std::size_t>(t)] + r * mt + k;
                        sys.set(row, var, mod_add(sys(row, var), coef, p));
                    }
                }
                for (int k = 0; k < ns; ++k) {
                    int coef = na(r, k);
                    if (coef != 0) {
                        int var = offset[static_cast<std::size_t>(s)] + k * ms + c;
                        sys.set(row, var, mod_sub(sys(row, var), coef, p));
                    }
                }
                ++row;
            }
        }
    }
    return sys;
}

} // namespace

Mat hom_basis_matrix(const Module& m, const Module& n) {
    require_same_algebra(m, n, "hom_basis");
    const int vars = ambient_hom_dim(m, n);
    if (vars == 0) {
        return Mat(0, 0, m.modulus());
    }
    Mat sys = naturality_system(m, n);
    if (sys.rows() == 0) {
        return Mat::identity(vars, m.modulus());
    }
    return kernel_basis(sys);
}

int hom_dim(const Module& m, const Module& n) {
    const int vars = ambient_hom_dim(m, n);
    if (vars == 0) {
        return 0;
    }
    Mat sys = naturality_system(m, n);
    return vars - (sys.rows() == 0 ? 0 : rank(sys));
}

std::vector<Morphism> hom_basis(const Module& m, const Module& n) {
    Mat basis = hom_basis_matrix(m, n);
    std::vector<Morphism> out;
    for (int c = 0; c < basis.cols(); ++c) {
        std::vector<int> coords(static_cast<std::size_t>(basis.rows()));
        for (int r = 0; r < basis.rows(); ++r) {
            coords[static_cast<std::size_t>(r)] = basis(r, c);
        }
        out.push_back(unflatten(m, n, coords));
    }
    return out;
}

// ----------------------------------------------------------- Direct sums

DirectSum direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) {
        throw ContractError("direct_sum: no summands");
    }
    const AlgebraPtr& alg = parts.front().algebra();
    const Quiver& q = alg->quiver();
    const int p = alg->modulus();
    const int nv = q.vertex_count();
    std::vector<int> dims(static_cast<std::size_t>(nv), 0);
    for (const auto& part : parts) {
        for (int v = 0; v < nv; ++v) {
            dims[static_cast<std::size_t>(v)] += part.dim(v);
        }
    }
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        Mat acc(0, 0, p);
        for (const auto& part : parts) {
            acc = block_diag(acc, part.map(a));
        }
        maps.push_back(std::move(acc));
    }
    DirectSum out{Module(alg, dims, std::move(maps)), {}, {}};
    std::vector<int> offset(static_cast<std::size_t>(nv), 0);
    for (const auto& part : parts) {
        std::vector<Mat> inj;
        std::vector<Mat> proj;
        for (int v = 0; v < nv; ++v) {
            Mat i(dims[static_cast<std::size_t>(v)], part.dim(v), p);
            Mat pr(part.dim(v), dims[static_cast<std::size_t>(v)], p);
            for (int k = 0; k < part.dim(v); ++k) {
                i.set(offset[static_cast<std::size_t>(v)] + k, k, 1);
                pr.set(k, offset[static_cast<std::size_t>(v)] + k, 1);
            }
            inj.push_back(std::move(i));
            proj.push_back(std::move(pr));
            offset[static_cast<std::size_t>(v)] += part.dim(v);
        }
        out.injections.emplace_back(part, out.sum, std::move(inj));
        out.projections.emplace_back(out.sum, part, std::move(proj));
    }
    return out;
}

Module direct_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}).sum; }

Module power(const Module& m, int copies) {
    if (copies <= 0) {
        return Module::zero(m.algebra());
    }
    return direct_sum(std::vector<Module>(static_cast<std::size_t>(copies), m)).sum;
}

Morphism block_morphism(const DirectSum& source, const DirectSum& target,
                        const std::vector<std::vector<Morphism>>& blocks) {
    Morphism acc = Morphism::zero(source.sum, target.sum);
    for (std::size_t i = 0; i < target.injections.size(); ++i) {
        for (std::size_t j = 0; j < source.projections.size(); ++j) {
            const Morphism& b = blocks[i][j];
            acc = acc + compose(target.injections[i], compose(b, source.projections[j]));
        }
    }
    return acc;
}

// ------------------------------------------------ Submodules & quotients

SubmoduleResult submodule(const Module& m, const std::vector<Mat>& bases) {
    const Quiver& q = m.algebra()->quiver();
    const int p = m.modulus();
    std::vector<int> dims;
    for (const auto& b : bases) {
        dims.push_back(b.cols());
    }
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const int s = q.arrow(a).source;
        const int t = q.arrow(a).target;
        const Mat& us = bases[static_cast<std::size_t>(s)];
        const Mat& ut = bases[static_cast<std::size_t>(t)];
        if (us.cols() == 0 || ut.cols() == 0) {
            maps.emplace_back(ut.cols(), us.cols(), p);
            if (us.cols() > 0 && !(m.map(a) * us).is_zero()) {
                throw ContractError("submodule: subspace is not stable under arrow " + q.arrow(a).label);
            }
            continue;
        }
        auto x = solve(ut, m.map(a) * us);
        if (!x) {
            throw ContractError("submodule: subspace is not stable under arrow " + q.arrow(a).label);
        }
        maps.push_back(*x);
    }
    Module sub(m.algebra(), dims, std::move(maps));
    return {sub, Morphism(sub, m, bases)};
}

QuotientResult quotient(const Module& m, const std::vector<Mat>& bases) {
    const Quiver& q = m.algebra()->quiver();
    const int p = m.modulus();
    const int nv = m.vertex_count();
    std::vector<Mat> proj;
    std::vector<Mat> section;
    std::vector<int> dims;
    for (int v = 0; v < nv; ++v) {
        const int n = m.dim(v);
        const Mat& u = bases[static_cast<std::size_t>(v)];
        Mat comp = complement_basis(u.cols() == 0 ? Mat(n, 0, p) : u, n);
        Mat full = u.cols() == 0 ? comp : (comp.cols() == 0 ? u : hstack(u, comp));
        const int k = comp.cols();
        dims.push_back(k);
        if (n == 0) {
            proj.emplace_back(0, 0, p);
            section.emplace_back(0, 0, p);
            continue;
        }
        Mat inv = *inverse(full);
        std::vector<int> rows;
        for (int r = n - k; r < n; ++r) {
            rows.push_back(r);
        }
        proj.push_back(inv.rows_subset(rows));
        section.push_back(comp);
    }
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const int s = q.arrow(a).source;
        const int t = q.arrow(a).target;
        maps.push_back(proj[static_cast<std::size_t>(t)] * m.map(a) * section[static_cast<std::size_t>(s)]);
    }
    Module quo(m.algebra(), dims, std::move(maps));
    Morphism pi(m, quo, std::move(proj));
    if (!pi.is_natural()) {
        throw ContractError("quotient: subspace is not a submodule");
    }
    return {quo, pi};
}

SubmoduleResult kernel(const Morphism& f) {
    std::vector<Mat> bases;
    for (int v = 0; v < f.source().vertex_count(); ++v) {
        const Mat& c = f.component(v);
        if (f.source().dim(v) == 0) {
            bases.emplace_back(0, 0, f.source().modulus());
        } else if (f.target().dim(v) == 0) {
            bases.push_back(Mat::identity(f.source().dim(v), f.source().modulus()));
        } else {
            bases.push_back(kernel_basis(c));
        }
    }
    return submodule(f.source(), bases);
}

SubmoduleResult image(const Morphism& f) {
    std::vector<Mat> bases;
    for (int v = 0; v < f.source().vertex_count(); ++v) {
        const Mat& c = f.component(v);
        if (f.source().dim(v) == 0 || f.target().dim(v) == 0) {
            bases.emplace_back(f.target().dim(v), 0, f.source().modulus());
        } else {
            bases.push_back(image_basis(c));
        }
    }
    return submodule(f.target(), bases);
}

QuotientResult cokernel(const Morphism& f) {
    std::vector<Mat> bases;
    for (int v = 0; v < f.source().vertex_count(); ++v) {
        const Mat& c = f.component(v);
        if (f.source().dim(v) == 0 || f.target().dim(v) == 0) {
            bases.emplace_back(f.target().dim(v), 0, f.source().modulus());
        } else {
            bases.push_back(image_basis(c));
        }
    }
    return quotient(f.target(), bases);
}

// --------------------------------------------- Simples, projectives, ...

Module simple_module(const AlgebraPtr& alg, int v) {
    const Quiver& q = alg->quiver();
    if (v < 0 || v >= q.vertex_count()) {
        throw ContractError("simple_module: vertex out of range");
    }
    std::vector<int> dims(static_cast<std::size_t>(q.vertex_count()), 0);
    dims[static_cast<std::size_t>(v)] = 1;
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        maps.emplace_back(dims[static_cast<std::size_t>(q.arrow(a).target)],
                          dims[static_cast<std::size_t>(q.arrow(a).source)], alg->modulus());
    }
    return Module(alg, dims, std::move(maps));
}

Module projective_module(const AlgebraPtr& alg, int v) {
    const Quiver& q = alg->quiver();
    const int nv = q.vertex_count();
    if (v < 0 || v >= nv) {
        throw ContractError("projective_module: vertex out of range");
    }
    std::vector<std::vector<int>> paths(static_cast<std::size_t>(nv));
    std::vector<int> dims;
    for (int w = 0; w < nv; ++w) {
        paths[static_cast<std::size_t>(w)] = alg->paths_between(v, w);
        dims.push_back(static_cast<int>(paths[static_cast<std::size_t>(w)].size()));
    }
    const auto& basis = alg->path_basis();
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const int s = q.arrow(a).source;
        const int t = q.arrow(a).target;
        Mat m(dims[static_cast<std::size_t>(t)], dims[static_cast<std::size_t>(s)], alg->modulus());
        const auto& src = paths[static_cast<std::size_t>(s)];
        const auto& tgt = paths[static_cast<std::size_t>(t)];
        for (std::size_t j = 0; j < src.size(); ++j) {
            Path ext = basis[static_cast<std::size_t>(src[j])];
            ext.arrows.push_back(a);
            ext.target = t;
            if (!alg->is_nonzero(ext)) {
                continue;
            }
            for (std::size_t i = 0; i < tgt.size(); ++i) {
                if (basis[static_cast<std::size_t>(tgt[i])] == ext) {
                    m.set(static_cast<int>(i), static_cast<int>(j), 1);
                }
            }
        }
        maps.push_back(std::move(m));
    }
    return Module(alg, dims, std::move(maps));
}

Module injective_module(const AlgebraPtr& alg, int v) {
    const Quiver& q = alg->quiver();
    const int nv = q.vertex_count();
    if (v < 0 || v >= nv) {
        throw ContractError("injective_module: vertex out of range");
    }
    std::vector<std::vector<int>> paths(static_cast<std::size_t>(nv));
    std::vector<int> dims;
    for (int w = 0; w < nv; ++w) {
        paths[static_cast<std::size_t>(w)] = alg->paths_between(w, v);
        dims.push_back(static_cast<int>(paths[static_cast<std::size_t>(w)].size()));
    }
    const auto& basis = alg->path_basis();
    std::vector<Mat> maps;
    for (int a = 0; a < q.arrow_count(); ++a) {
        const int s = q.arrow(a).source;
        const int t = q.arrow(a).target;
        // Prepending a: paths(t -> v) -> paths(s -> v); the arrow acts by the transpose.
        const auto& from = paths[static_cast<std::size_t>(t)];
        const auto& to = paths[static_cast<std::size_t>(s)];
        Mat m(dims[static_cast<std::size_t>(t)], dims[static_cast<std::size_t>(s)], alg->modulus());
        for (std::size_t i = 0; i < from.size(); ++i) {
            const Path& qp = basis[static_cast<std::size_t>(from[i])];
            Path ext{s, v, {a}};
            ext.arrows.insert(ext.arrows.end(), qp.arrows.begin(), qp.arrows.end());
            if (!alg->is_nonzero(ext)) {
                continue;
            }
            for (std::size_t j = 0; j < to.size(); ++j) {
                if (basis[static_cast<std::size_t>(to[j])] == ext) {
                    m.set(static_cast<int>(i), static_cast<int>(j), 1);
                }
            }
        }
        maps.push_back(std::move(m));
    }
    return Module(alg, dims, std::move(maps));
}

// ------------------------------------------------------------ Isomorphism

namespace {

std::mt19937_64& rng() {
    thread_local std::mt19937_64 gen(0x5eed5eedULL);
    return gen;
}

Morphism combination(const std::vector<Morphism>& basis, const std::vector<int>& coeffs) {
    Morphism acc = Morphism::zero(basis.front().source(), basis.front().target());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coeffs[i] != 0) {
            acc = acc + basis[i].scaled(coeffs[i]);
        }
    }
    return acc;
}

bool next_coeffs(std::vector<int>& c, int p) {
    for (auto& x : c) {
        if (++x < p) {
            return true;
        }
        x = 0;
    }
    return false;
}

double search_space(int p, int d) {
    double s = 1.0;
    for (int i = 0; i < d; ++i) {
        s *= p;
    }
    return s;
}

constexpr double kExhaustiveLimit = 1 << 20;
constexpr int kRandomTries = 256;

} // namespace

std::optional<Morphism> find_isomorphism(const Module& m, const Module& n) {
    if (m.dims() != n.dims()) {
        return std::nullopt;
    }
    if (m.is_zero()) {
        return Morphism::zero(m, n);
    }
    auto basis = hom_basis(m, n);
    if (basis.empty()) {
        return std::nullopt;
    }
    if (static_cast<int>(basis.size()) > kMaxIsoHomDim) {
        throw ContractError("is_isomorphic: dim Hom = " + std::to_string(basis.size()) + " exceeds the cap of " +
                            std::to_string(kMaxIsoHomDim));
    }
    const int p = m.modulus();
    for (const auto& b : basis) {
        if (b.is_iso()) {
            return b;
        }
    }
    std::uniform_int_distribution<int> dist(0, p - 1);
    std::vector<int> coeffs(basis.size());
    for (int t = 0; t < kRandomTries; ++t) {
        for (auto& c : coeffs) {
            c = dist(rng());
        }
        Morphism f = combination(basis, coeffs);
        if (f.is_iso()) {
            return f;
        }
    }
    if (search_space(p, static_cast<int>(basis.size())) <= kExhaustiveLimit) {
        std::fill(coeffs.begin(), coeffs.end(), 0);
        while (next_coeffs(coeffs, p)) {
            Morphism f = combination(basis, coeffs);
            if (f.is_iso()) {
                return f;
            }
        }
    }
    return std::nullopt;
}

bool is_isomorphic(const Module& m, const Module& n) { return find_isomorphism(m, n).has_value(); }

// -------------------------------------------------------- Decomposition

namespace {

bool splits(const Morphism& f) { return !is_nilpotent(f) && !f.is_iso(); }

// Unique lambda in F_p with f - lambda nilpotent, if any.
std::optional<int> residue(const Morphism& f) {
    const int p = f.source().modulus();
    for (int lambda = 0; lambda < p; ++lambda) {
        if (is_nilpotent(shifted(f, lambda))) {
            return lambda;
        }
    }
    return std::nullopt;
}

Mat flat_columns(const std::vector<Morphism>& ms, int ambient, int p) {
    Mat out(ambient, static_cast<int>(ms.size()), p);
    for (std::size_t j = 0; j < ms.size(); ++j) {
        auto v = ms[j].flatten();
        for (int r = 0; r < ambient; ++r) {
            out.set(r, static_cast<int>(j), v[static_cast<std::size_t>(r)]);
        }
    }
    return out;
}

} // namespace

bool is_indecomposable(const Module& m) {
    if (m.is_zero()) {
        throw ContractError("is_indecomposable: zero module");
    }
    const int p = m.modulus();
    auto basis = hom_basis(m, m);
    std::vector<Morphism> nil_parts;
    for (const auto& b : basis) {
        auto lambda = residue(b);
        if (!lambda) {
            for (int mu = 0; mu < p; ++mu) {
                if (splits(shifted(b, mu))) {
                    return false;
                }
            }
            throw ContractError("is_indecomposable: endomorphism ring has a residue field larger than F_p");
        }
        Morphism n = shifted(b, *lambda);
        if (!n.is_zero()) {
            nil_parts.push_back(n);
        }
    }
    if (nil_parts.empty()) {
        return true;
    }
    // End(m) is local iff the span N of the nilpotent parts is a nilpotent
    // (non-unital) subalgebra.
    const int ambient = ambient_hom_dim(m, m);
    Mat span = image_basis(flat_columns(nil_parts, ambient, p));
    std::vector<Morphism> nbasis;
    for (int c = 0; c < span.cols(); ++c) {
        std::vector<int> coords(static_cast<std::size_t>(ambient));
        for (int r = 0; r < ambient; ++r) {
            coords[static_cast<std::size_t>(r)] = span(r, c);
        }
        nbasis.push_back(unflatten(m, m, coords));
    }
    const int span_rank = span.cols();
    std::vector<Morphism> products;
    for (const auto& x : nbasis) {
        for (const auto& y : nbasis) {
            products.push_back(compose(x, y));
        }
    }
    Mat with_products = hstack(span, flat_columns(products, ambient, p));
    if (rank(with_products) != span_rank) {
        return false;
    }
    std::vector<Morphism> layer = nbasis;
    for (int step = 0; step <= m.total_dim() + 1; ++step) {
        if (layer.empty()) {
            return true;
        }
        std::vector<Morphism> next;
        for (const auto& x : layer) {
            for (const auto& y : nbasis) {
                Morphism z = compose(x, y);
                if (!z.is_zero()) {
                    next.push_back(z);
                }
            }
        }
        if (next.empty()) {
            return true;
        }
        Mat nb = image_basis(flat_columns(next, ambient, p));
        if (nb.cols() >= static_cast<int>(layer.size()) && step > 0 &&
            nb.cols() == rank(flat_columns(layer, ambient, p))) {
            return false;
        }
        layer.clear();
        for (int c = 0; c < nb.cols(); ++c) {
            std::vector<int> coords(static_cast<std::size_t>(ambient));
            for (int r = 0; r < ambient; ++r) {
                coords[static_cast<std::size_t>(r)] = nb(r, c);
            }
            layer.push_back(unflatten(m, m, coords));
        }
    }
    return false;
}

std::optional<Morphism> find_splitting_endomorphism(const Module& m) {
    if (m.is_zero()) {
        return std::nullopt;
    }
    const int p = m.modulus();
    auto basis = hom_basis(m, m);
    std::vector<Morphism> nil_parts;
    for (const auto& b : basis) {
        for (int mu = 0; mu < p; ++mu) {
            Morphism s = shifted(b, mu);
            if (splits(s)) {
                return s;
            }
        }
        if (auto lambda = residue(b)) {
            nil_parts.push_back(shifted(b, *lambda));
        }
    }
    for (const auto& x : nil_parts) {
        for (const auto& y : nil_parts) {
            Morphism xy = compose(x, y);
            for (int mu = 0; mu < p; ++mu) {
                Morphism s = shifted(xy, mu);
                if (splits(s)) {
                    return s;
                }
            }
            Morphism sum = x + y;
            if (splits(sum)) {
                return sum;
            }
        }
    }
    std::uniform_int_distribution<int> dist(0, p - 1);
    std::vector<int> coeffs(basis.size());
    for (int t = 0; t < kRandomTries; ++t) {
        for (auto& c : coeffs) {
            c = dist(rng());
        }
        Morphism f = combination(basis, coeffs);
        if (splits(f)) {
            return f;
        }
    }
    if (is_indecomposable(m)) {
        return std::nullopt;
    }
    if (search_space(p, static_cast<int>(basis.size())) <= kExhaustiveLimit) {
        std::fill(coeffs.begin(), coeffs.end(), 0);
        while (next_coeffs(coeffs, p)) {
            Morphism f = combination(basis, coeffs);
            if (splits(f)) {
                return f;
            }
        }
    }
    throw ContractError("find_splitting_endomorphism: module is decomposable but no splitting element was found");
}

std::pair<SubmoduleResult, SubmoduleResult> fitting_split(const Morphism& f) {
    std::vector<Mat> powered;
    for (const auto& c : f.components()) {
        powered.push_back(power(c, std::max(1, c.rows())));
    }
    Morphism g(f.source(), f.target(), std::move(powered));
    return {kernel(g), image(g)};
}

std::vector<Module> split_into_indecomposables(const Module& m) {
    if (m.is_zero()) {
        return {};
    }
    auto f = find_splitting_endomorphism(m);
    if (!f) {
        return {m};
    }
    auto [ker, im] = fitting_split(*f);
    auto left = split_into_indecomposables(ker.module);
    auto right = split_into_indecomposables(im.module);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

} // namespace siltlab
