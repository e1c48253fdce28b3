#include "siltlab/context.hpp"

#include <bit>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <sstream>

namespace siltlab {

int popcount(IndexSet s) { return std::popcount(s); }

std::vector<int> members_of(IndexSet s) {
    std::vector<int> out;
    for (int i = 0; s != 0; ++i, s >>= 1) {
        if (s & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

IndexSet full_set(int n) { return n >= 32 ? ~IndexSet{0} : (IndexSet{1} << n) - 1; }

std::string tri_string(Tri t) {
    switch (t) {
    case Tri::yes:
        return "yes";
    case Tri::no:
        return "no";
    default:
        return "unknown";
    }
}

std::string dim_string(const Dim& d) { return d ? std::to_string(*d) : "inf"; }

// ------------------------------------------------------------- Skeleton

bool has_nakayama_shape(const Algebra& alg) {
    const Quiver& q = alg.quiver();
    std::vector<int> in(static_cast<std::size_t>(q.vertex_count()), 0);
    std::vector<int> out(static_cast<std::size_t>(q.vertex_count()), 0);
    for (const auto& a : q.arrows()) {
        ++out[static_cast<std::size_t>(a.source)];
        ++in[static_cast<std::size_t>(a.target)];
    }
    for (int v = 0; v < q.vertex_count(); ++v) {
        if (in[static_cast<std::size_t>(v)] > 1 || out[static_cast<std::size_t>(v)] > 1) {
            return false;
        }
    }
    return true;
}

std::vector<Indecomposable> enumerate_indecomposables(const AlgebraPtr& alg) {
    if (!has_nakayama_shape(*alg)) {
        throw UnsupportedError("indecomposables can only be enumerated for Nakayama algebras; "
                               "declare them explicitly");
    }
    const int nv = alg->vertex_count();
    const int p = alg->modulus();
    const auto& basis = alg->path_basis();
    std::vector<Indecomposable> out;
    for (int v = 0; v < nv; ++v) {
        Module proj = projective_module(alg, v);
        const int len = proj.total_dim();
        const std::string tag = std::to_string(v + 1);
        for (int t = len; t >= 1; --t) {
            std::vector<Mat> sub;
            for (int w = 0; w < nv; ++w) {
                auto paths = alg->paths_between(v, w);
                std::vector<int> keep;
                for (std::size_t k = 0; k < paths.size(); ++k) {
                    if (basis[static_cast<std::size_t>(paths[k])].length() >= t) {
                        keep.push_back(static_cast<int>(k));
                    }
                }
                Mat m(static_cast<int>(paths.size()), static_cast<int>(keep.size()), p);
                for (std::size_t c = 0; c < keep.size(); ++c) {
                    m.set(keep[c], static_cast<int>(c), 1);
                }
                sub.push_back(std::move(m));
            }
            Indecomposable ind;
            ind.module = t == len ? proj : quotient(proj, sub).module;
            if (t == 1) {
                ind.name = "S" + tag;
                if (len == 1) {
                    ind.aliases.push_back("P" + tag);
                }
            } else if (t == len) {
                ind.name = "P" + tag;
            } else {
                ind.name = "M" + tag + "_" + std::to_string(t);
            }
            if (nv == 1) {
                ind.aliases.push_back(ind.name.substr(0, 1) == "M" ? ind.name : ind.name.substr(0, 1));
                if (len == 1) {
                    ind.aliases.push_back("P");
                }
            }
            out.push_back(std::move(ind));
        }
    }
    return out;
}

std::vector<Indecomposable> verify_declared(const AlgebraPtr& alg, std::vector<Indecomposable> declared) {
    std::vector<std::string> offenders;
    for (const auto& d : declared) {
        if (d.module.algebra().get() != alg.get()) {
            throw ContractError("declared module '" + d.name + "' belongs to another algebra");
        }
        if (d.module.is_zero() || !is_indecomposable(d.module)) {
            offenders.push_back(d.name + " is not indecomposable");
        }
    }
    for (std::size_t i = 0; i < declared.size(); ++i) {
        for (std::size_t j = i + 1; j < declared.size(); ++j) {
            if (declared[i].name == declared[j].name) {
                offenders.push_back("duplicate name " + declared[i].name);
            } else if (is_isomorphic(declared[i].module, declared[j].module)) {
                offenders.push_back(declared[i].name + " is isomorphic to " + declared[j].name);
            }
        }
    }
    // Every indecomposable projective and injective must be listed.
    for (int v = 0; v < alg->vertex_count(); ++v) {
        for (const auto& [kind, m] : {std::pair<const char*, Module>{"P", projective_module(alg, v)},
                                      std::pair<const char*, Module>{"I", injective_module(alg, v)}}) {
            bool found = false;
            for (const auto& d : declared) {
                found = found || is_isomorphic(d.module, m);
            }
            if (!found) {
                offenders.push_back(std::string(kind) + std::to_string(v + 1) + " is missing");
            }
        }
    }
    if (!offenders.empty()) {
        std::string msg = "incomplete skeleton: declared indecomposables rejected:";
        for (const auto& o : offenders) {
            msg += " [" + o + "]";
        }
        throw ValidationError(msg);
    }
    return declared;
}

// ------------------------------------------------------------- ExtTable

namespace {

long long saturating(long long v) { return std::min<long long>(v, 1'000'000'000'000'000LL); }

} // namespace

ExtTable::ExtTable(std::vector<std::vector<int>> hom, std::vector<std::vector<int>> ext1,
                   std::vector<std::vector<int>> omega_mult)
    : hom_(std::move(hom)), ext1_(std::move(ext1)), omega_(std::move(omega_mult)) {
    const int n = size();
    for (int i = 0; i < n; ++i) {
        IndexSet s = 0;
        for (int l = 0; l < n; ++l) {
            if (omega_[idx(i)][idx(l)] > 0) {
                s |= singleton(l);
            }
        }
        omega_supp_.push_back(s);
    }
    for (int i = 0; i < n; ++i) {
        Orbit orb;
        std::map<IndexSet, int> seen;
        IndexSet cur = singleton(i);
        while (true) {
            auto it = seen.find(cur);
            if (it != seen.end()) {
                orb.preperiod = it->second;
                orb.period = static_cast<int>(orb.supports.size()) - it->second;
                break;
            }
            seen[cur] = static_cast<int>(orb.supports.size());
            orb.supports.push_back(cur);
            IndexSet next = 0;
            for (int l : members_of(cur)) {
                next |= omega_supp_[idx(l)];
            }
            cur = next;
        }
        orbits_.push_back(std::move(orb));
    }
}

IndexSet ExtTable::Orbit::at(long long t) const {
    if (t < static_cast<long long>(supports.size())) {
        return supports[static_cast<std::size_t>(t)];
    }
    long long k = preperiod + (t - preperiod) % period;
    return supports[static_cast<std::size_t>(k)];
}

long long ExtTable::ext_dim(int i, int j, int k) const {
    if (k < 0) {
        throw ContractError("ext_dim: negative degree");
    }
    if (k == 0) {
        return hom(i, j);
    }
    const int n = size();
    std::vector<long long> mult(static_cast<std::size_t>(n), 0);
    mult[idx(i)] = 1;
    for (int t = 1; t < k; ++t) {
        std::vector<long long> next(static_cast<std::size_t>(n), 0);
        for (int l = 0; l < n; ++l) {
            if (mult[idx(l)] == 0) {
                continue;
            }
            for (int r = 0; r < n; ++r) {
                next[idx(r)] = saturating(next[idx(r)] + mult[idx(l)] * omega_[idx(l)][idx(r)]);
            }
        }
        mult = std::move(next);
    }
    long long total = 0;
    for (int l = 0; l < n; ++l) {
        total = saturating(total + mult[idx(l)] * ext1(l, j));
    }
    return total;
}

bool ExtTable::vanishes_from(int i, int j, int k0) const {
    if (k0 < 1) {
        throw ContractError("vanishes_from: k0 must be >= 1");
    }
    const Orbit& orb = orbit(i);
    const long long span = static_cast<long long>(orb.supports.size());
    for (long long t = k0 - 1; t <= k0 - 1 + span; ++t) {
        for (int l : members_of(orb.at(t))) {
            if (ext1(l, j) != 0) {
                return false;
            }
        }
    }
    return true;
}

Dim ExtTable::projective_dimension(int i) const {
    const Orbit& orb = orbit(i);
    for (std::size_t t = 0; t < orb.supports.size(); ++t) {
        if (orb.supports[t] == 0) {
            return static_cast<int>(t) - 1;
        }
    }
    return std::nullopt;
}

Dim ExtTable::injective_dimension(int j) const {
    int best = 0;
    for (int i = 0; i < size(); ++i) {
        const Orbit& orb = orbit(i);
        for (std::size_t t = 0; t < orb.supports.size(); ++t) {
            bool nonzero = false;
            for (int l : members_of(orb.supports[t])) {
                nonzero = nonzero || ext1(l, j) != 0;
            }
            if (!nonzero) {
                continue;
            }
            if (static_cast<int>(t) >= orb.preperiod) {
                return std::nullopt;
            }
            best = std::max(best, static_cast<int>(t) + 1);
        }
    }
    return best;
}

// ----------------------------------------------------------------- Core

std::shared_ptr<const Core> Core::build(AlgebraPtr alg, std::vector<Indecomposable> skeleton, Exec exec) {
    if (static_cast<int>(skeleton.size()) > kMaxSkeleton) {
        throw UnsupportedError("skeleton has " + std::to_string(skeleton.size()) +
                               " indecomposables; at most " + std::to_string(kMaxSkeleton) + " are supported");
    }
    std::shared_ptr<Core> core(new Core());
    core->alg_ = std::move(alg);
    core->skel_ = std::move(skeleton);
    core->exec_ = exec;
    const int n = core->size();
    const auto un = static_cast<std::size_t>(n);
    core->homs_.assign(un, std::vector<std::vector<Morphism>>(un));
    core->rad_end_.assign(un, {});
    std::vector<std::vector<int>> hom(un, std::vector<int>(un, 0));
    std::vector<std::vector<int>> ext1(un, std::vector<int>(un, 0));
    std::vector<std::vector<int>> omega(un, std::vector<int>(un, 0));
    std::vector<Syzygy> syz(un);
    std::vector<bool> injective(un, false);

    for_each_index(n, exec, [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        const Module& xi = core->module(i);
        for (int j = 0; j < n; ++j) {
            core->homs_[ui][static_cast<std::size_t>(j)] = hom_basis(xi, core->module(j));
            hom[ui][static_cast<std::size_t>(j)] = static_cast<int>(core->homs_[ui][static_cast<std::size_t>(j)].size());
        }
        // Nilpotent parts of the endomorphism basis span rad End(X_i).
        const int p = xi.modulus();
        std::vector<Morphism> nil;
        for (const auto& b : core->homs_[ui][ui]) {
            for (int lambda = 0; lambda < p; ++lambda) {
                Morphism s = b - Morphism::identity(xi).scaled(lambda);
                bool nilpotent = true;
                for (const auto& c : s.components()) {
                    nilpotent = nilpotent && (c.rows() == 0 || power(c, c.rows()).is_zero());
                }
                if (nilpotent) {
                    if (!s.is_zero()) {
                        nil.push_back(s);
                    }
                    break;
                }
            }
        }
        if (!nil.empty()) {
            const int amb = ambient_hom_dim(xi, xi);
            Mat cols(amb, static_cast<int>(nil.size()), p);
            for (std::size_t k = 0; k < nil.size(); ++k) {
                auto v = nil[k].flatten();
                for (int r = 0; r < amb; ++r) {
                    cols.set(r, static_cast<int>(k), v[static_cast<std::size_t>(r)]);
                }
            }
            auto piv = rref(cols).pivots;
            for (int k : piv) {
                core->rad_end_[ui].push_back(nil[static_cast<std::size_t>(k)]);
            }
        }
        syz[ui] = syzygy_data(xi);
        injective[ui] = injective_envelope(xi).i.dims() == xi.dims();
    });
    for_each_index(n, exec, [&](int i) {
        const auto ui = static_cast<std::size_t>(i);
        const Syzygy& s = syz[ui];
        for (int j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            ext1[ui][uj] = hom_dim(s.kernel.module, core->module(j)) - hom_dim(s.cover.p, core->module(j)) + hom[ui][uj];
        }
        omega[ui] = core->decompose(s.kernel.module);
    });
    for (int i = 0; i < n; ++i) {
        if (syz[static_cast<std::size_t>(i)].kernel.module.is_zero()) {
            core->proj_ |= singleton(i);
        }
        if (injective[static_cast<std::size_t>(i)]) {
            core->inj_ |= singleton(i);
        }
    }
    core->ext_ = ExtTable(std::move(hom), std::move(ext1), std::move(omega));
    return core;
}

std::optional<int> Core::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
        const auto& s = skel_[static_cast<std::size_t>(i)];
        if (s.name == name || std::find(s.aliases.begin(), s.aliases.end(), name) != s.aliases.end()) {
            return i;
        }
    }
    if (name.size() > 1 && name[0] == '#') {
        try {
            int k = std::stoi(name.substr(1));
            if (k >= 0 && k < size()) {
                return k;
            }
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

const std::vector<Morphism>& Core::radical_basis(int i, int j) const {
    if (i == j) {
        return rad_end_[static_cast<std::size_t>(i)];
    }
    return hom_basis_between(i, j);
}

std::vector<int> Core::decompose(const Module& m) const {
    std::vector<int> mult(static_cast<std::size_t>(size()), 0);
    if (m.is_zero()) {
        return mult;
    }
    for (const auto& part : split_into_indecomposables(m)) {
        bool found = false;
        for (int j = 0; j < size() && !found; ++j) {
            if (module(j).dims() == part.dims() && is_isomorphic(module(j), part)) {
                ++mult[static_cast<std::size_t>(j)];
                found = true;
            }
        }
        if (!found) {
            throw ValidationError("incomplete skeleton: a summand with dimension vector " +
                                  dims_string(part.dims()) + " matches no listed indecomposable");
        }
    }
    return mult;
}

std::vector<int> Core::decompose_fast(const Module& m) const {
    const int n = size();
    const auto un = static_cast<std::size_t>(n);
    if (m.is_zero()) {
        return std::vector<int>(un, 0);
    }
    // h_k = dim Hom(X_k, m) = sum_l mult_l * dim Hom(X_k, X_l)
    std::vector<int> h(un);
    for (int k = 0; k < n; ++k) {
        h[static_cast<std::size_t>(k)] = hom_dim(module(k), m);
    }
    std::vector<std::vector<double>> a(un, std::vector<double>(un + 1));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            a[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = ext_.hom(k, l);
        }
        a[static_cast<std::size_t>(k)][un] = h[static_cast<std::size_t>(k)];
    }
    bool ok = true;
    for (std::size_t c = 0; c < un && ok; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < un; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) {
                piv = r;
            }
        }
        if (std::fabs(a[piv][c]) < 1e-9) {
            ok = false;
            break;
        }
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < un; ++r) {
            if (r == c) {
                continue;
            }
            double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= un; ++k) {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    std::vector<int> mult(un, 0);
    if (ok) {
        for (std::size_t l = 0; l < un && ok; ++l) {
            double v = a[l][un] / a[l][l];
            long r = std::lround(v);
            if (std::fabs(v - static_cast<double>(r)) > 1e-6 || r < 0) {
                ok = false;
            }
            mult[l] = static_cast<int>(r);
        }
    }
    if (ok) {
        for (int k = 0; k < n && ok; ++k) {
            long long s = 0;
            for (int l = 0; l < n; ++l) {
                s += static_cast<long long>(ext_.hom(k, l)) * mult[static_cast<std::size_t>(l)];
            }
            ok = s == h[static_cast<std::size_t>(k)];
        }
        std::vector<int> dims(static_cast<std::size_t>(m.vertex_count()), 0);
        for (int l = 0; l < n; ++l) {
            for (int v = 0; v < m.vertex_count(); ++v) {
                dims[static_cast<std::size_t>(v)] += mult[static_cast<std::size_t>(l)] * module(l).dim(v);
            }
        }
        ok = ok && dims == m.dims();
    }
    return ok ? mult : decompose(m);
}

Dim Core::global_dimension() const {
    int best = 0;
    for (int i = 0; i < size(); ++i) {
        Dim d = ext_.projective_dimension(i);
        if (!d) {
            return std::nullopt;
        }
        best = std::max(best, *d);
    }
    return best;
}

const ConflationAtlas& Core::atlas(int mult_bound) const {
    if (mult_bound < 1) {
        throw ContractError("mult_bound must be >= 1");
    }
    std::lock_guard<std::mutex> lock(atlas_mu_);
    auto it = atlases_.find(mult_bound);
    if (it == atlases_.end()) {
        auto built = std::make_shared<const ConflationAtlas>(build_atlas(*this, mult_bound, exec_));
        it = atlases_.emplace(mult_bound, std::move(built)).first;
    }
    return *it->second;
}

CorePtr make_core(const AlgebraPtr& alg, std::vector<Indecomposable> declared, Exec exec) {
    std::vector<Indecomposable> skel =
        declared.empty() ? enumerate_indecomposables(alg) : verify_declared(alg, std::move(declared));
    return Core::build(alg, std::move(skel), exec);
}

// ---------------------------------------------------------------- Atlas

namespace {

struct ExtQuiver {
    int n = 0; // nodes 0..n-1 are C-side (j), n..2n-1 are A-side (i)
    std::vector<std::vector<int>> weight; // weight[j][i] = dim Ext^1(X_j, X_i)
    std::vector<std::vector<int>> adj;

    int edge(int u, int v) const {
        if (u < n && v >= n) {
            return weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v - n)];
        }
        if (v < n && u >= n) {
            return weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(u - n)];
        }
        return 0;
    }
};

// Tits form of the bipartite quiver restricted to a component.
long long tits_form(const ExtQuiver& g, const std::vector<int>& nodes, const std::vector<int>& d) {
    long long q = 0;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        q += static_cast<long long>(d[s]) * d[s];
    }
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        for (std::size_t t = 0; t < nodes.size(); ++t) {
            if (nodes[s] < g.n && nodes[t] >= g.n) {
                q -= static_cast<long long>(g.edge(nodes[s], nodes[t])) * d[s] * d[t];
            }
        }
    }
    return q;
}

bool connected_support(const ExtQuiver& g, const std::vector<int>& nodes, const std::vector<int>& d) {
    std::vector<std::size_t> supp;
    for (std::size_t s = 0; s < nodes.size(); ++s) {
        if (d[s] > 0) {
            supp.push_back(s);
        }
    }
    if (supp.empty()) {
        return false;
    }
    std::vector<bool> seen(nodes.size(), false);
    std::deque<std::size_t> queue{supp.front()};
    seen[supp.front()] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t t : supp) {
            if (!seen[t] && g.edge(nodes[s], nodes[t]) > 0) {
                seen[t] = true;
                ++reached;
                queue.push_back(t);
            }
        }
    }
    return reached == supp.size();
}

struct Candidate {
    std::vector<int> c; // multiplicities of C-side skeleton objects
    std::vector<int> a; // multiplicities of A-side skeleton objects
};

Module sum_of(const Core& core, const std::vector<int>& mult) {
    std::vector<Module> parts;
    for (int l = 0; l < core.size(); ++l) {
        for (int k = 0; k < mult[static_cast<std::size_t>(l)]; ++k) {
            parts.push_back(core.module(l));
        }
    }
    if (parts.empty()) {
        return Module::zero(core.algebra());
    }
    return direct_sum(parts).sum;
}

IndexSet support_of(const std::vector<int>& mult) {
    IndexSet s = 0;
    for (std::size_t l = 0; l < mult.size(); ++l) {
        if (mult[l] > 0) {
            s |= singleton(static_cast<int>(l));
        }
    }
    return s;
}

Piece make_piece(std::vector<int> a, std::vector<int> b, std::vector<int> c) {
    Piece pc;
    pc.a_set = support_of(a);
    pc.b_set = support_of(b);
    pc.c_set = support_of(c);
    pc.a = std::move(a);
    pc.b = std::move(b);
    pc.c = std::move(c);
    return pc;
}

} // namespace

ConflationAtlas build_atlas(const Core& core, int mult_bound, Exec exec, const AtlasLimits& limits) {
    const int n = core.size();
    const auto un = static_cast<std::size_t>(n);
    const int p = core.algebra()->modulus();
    ConflationAtlas atlas;
    atlas.mult_bound = mult_bound;

    ExtQuiver g;
    g.n = n;
    g.weight.assign(un, std::vector<int>(un, 0));
    g.adj.assign(2 * un, {});
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            int w = core.ext().ext1(j, i);
            g.weight[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = w;
            if (w > 0) {
                g.adj[static_cast<std::size_t>(j)].push_back(n + i);
                g.adj[static_cast<std::size_t>(n + i)].push_back(j);
            }
        }
    }

    // Connected components with at least one edge.
    std::vector<std::vector<int>> components;
    std::vector<bool> seen(2 * un, false);
    for (int s = 0; s < 2 * n; ++s) {
        if (seen[static_cast<std::size_t>(s)] || g.adj[static_cast<std::size_t>(s)].empty()) {
            continue;
        }
        std::vector<int> comp;
        std::deque<int> queue{s};
        seen[static_cast<std::size_t>(s)] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v : g.adj[static_cast<std::size_t>(u)]) {
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }

    // Grow roots from simple roots one unit at a time; every positive root
    // in the box is reachable this way through roots in the box.
    std::vector<Candidate> candidates;
    for (const auto& comp : components) {
        std::set<std::vector<int>> visited;
        std::deque<std::vector<int>> queue;
        for (std::size_t s = 0; s < comp.size(); ++s) {
            std::vector<int> d(comp.size(), 0);
            d[s] = 1;
            visited.insert(d);
            queue.push_back(d);
        }
        while (!queue.empty()) {
            std::vector<int> d = queue.front();
            queue.pop_front();
            for (std::size_t s = 0; s < comp.size(); ++s) {
                std::vector<int> e = d;
                ++e[s];
                if (!connected_support(g, comp, e) || tits_form(g, comp, e) > 1) {
                    continue;
                }
                if (e[s] > mult_bound) {
                    atlas.bound_binds = true;
                    continue;
                }
                if (visited.insert(e).second) {
                    if (static_cast<long long>(visited.size()) > limits.max_vectors) {
                        atlas.complete = false;
                        break;
                    }
                    queue.push_back(e);
                }
            }
            if (!atlas.complete) {
                break;
            }
        }
        for (const auto& d : visited) {
            int support = 0;
            for (int x : d) {
                support += x > 0 ? 1 : 0;
            }
            if (support < 2) {
                continue;
            }
            Candidate cand{std::vector<int>(un, 0), std::vector<int>(un, 0)};
            for (std::size_t s = 0; s < comp.size(); ++s) {
                int node = comp[s];
                if (node < n) {
                    cand.c[static_cast<std::size_t>(node)] = d[s];
                } else {
                    cand.a[static_cast<std::size_t>(node - n)] = d[s];
                }
            }
            candidates.push_back(std::move(cand));
        }
    }
    atlas.dimension_vectors = static_cast<long long>(candidates.size());

    std::set<Piece> pieces;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(un, 0);
        e[static_cast<std::size_t>(i)] = 1;
        std::vector<int> z(un, 0);
        pieces.insert(make_piece(e, e, z));
        pieces.insert(make_piece(z, e, e));
    }

    std::vector<std::set<Piece>> found(candidates.size());
    std::vector<char> sampled(candidates.size(), 0);
    std::vector<long long> counts(candidates.size(), 0);
    for_each_index(static_cast<int>(candidates.size()), exec, [&](int idx) {
        const Candidate& cand = candidates[static_cast<std::size_t>(idx)];
        Module c = sum_of(core, cand.c);
        Module a = sum_of(core, cand.a);
        auto basis = ext1_basis(c, a);
        const int dim = static_cast<int>(basis.size());
        if (dim == 0) {
            return;
        }
        Conflation base = basis.front().syzygy().conflation(c);
        auto realise = [&](const std::vector<int>& coeffs) {
            Morphism cocycle = Morphism::zero(basis.front().cocycle().source(), a);
            for (int k = 0; k < dim; ++k) {
                if (coeffs[static_cast<std::size_t>(k)] != 0) {
                    cocycle = cocycle + basis[static_cast<std::size_t>(k)].cocycle().scaled(
                                            coeffs[static_cast<std::size_t>(k)]);
                }
            }
            Conflation conf = pushout_conflation(base, cocycle);
            found[static_cast<std::size_t>(idx)].insert(make_piece(cand.a, core.decompose_fast(conf.b), cand.c));
            ++counts[static_cast<std::size_t>(idx)];
        };
        const double log2_classes = dim * std::log2(static_cast<double>(p));
        std::vector<int> coeffs(static_cast<std::size_t>(dim), 0);
        if (log2_classes <= limits.exhaustive_log2) {
            while (true) {
                realise(coeffs);
                std::size_t k = 0;
                while (k < coeffs.size() && ++coeffs[k] == p) {
                    coeffs[k++] = 0;
                }
                if (k == coeffs.size()) {
                    break;
                }
            }
        } else {
            sampled[static_cast<std::size_t>(idx)] = 1;
            std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(idx));
            std::uniform_int_distribution<int> dist(0, p - 1);
            for (int s = 0; s < limits.samples; ++s) {
                for (auto& x : coeffs) {
                    x = dist(rng);
                }
                realise(coeffs);
            }
        }
    });
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        pieces.insert(found[k].begin(), found[k].end());
        atlas.classes += counts[k];
        if (sampled[k]) {
            atlas.complete = false;
        }
    }
    atlas.pieces.assign(pieces.begin(), pieces.end());
    return atlas;
}

// -------------------------------------------------------------- Context

namespace {

std::shared_ptr<const std::vector<Piece>> filter_pieces(const ConflationAtlas& atlas, IndexSet universe) {
    auto out = std::make_shared<std::vector<Piece>>();
    for (const auto& pc : atlas.pieces) {
        if (subset_of(pc.a_set | pc.b_set | pc.c_set, universe)) {
            out->push_back(pc);
        }
    }
    return out;
}

} // namespace

Context::Context(CorePtr core, int mult_bound) : core_(std::move(core)), universe_(core_->all()), bound_(mult_bound) {
    pieces_ = filter_pieces(core_->atlas(bound_), universe_);
}

Context Context::restrict(IndexSet universe) const {
    if (!subset_of(universe, core_->all())) {
        throw ContractError("restrict: universe outside the skeleton");
    }
    Context full(core_, bound_);
    if (!subset_of(full.star(universe, universe), universe)) {
        throw ValidationError("restrict: " + names(universe) + " is not closed under extensions");
    }
    Context out = *this;
    out.universe_ = universe;
    out.pieces_ = filter_pieces(core_->atlas(bound_), universe);
    return out;
}

Context Context::with_bound(int mult_bound) const {
    Context out(core_, mult_bound);
    if (is_restricted()) {
        out.universe_ = universe_;
        out.pieces_ = filter_pieces(core_->atlas(mult_bound), universe_);
    }
    return out;
}

IndexSet Context::star(IndexSet x, IndexSet y) const {
    IndexSet out = 0;
    for (const auto& pc : *pieces_) {
        if (subset_of(pc.a_set, x) && subset_of(pc.c_set, y)) {
            out |= pc.b_set;
        }
    }
    return out;
}

IndexSet Context::cone(IndexSet x, IndexSet y) const {
    IndexSet out = 0;
    for (const auto& pc : *pieces_) {
        if (subset_of(pc.a_set, x) && subset_of(pc.b_set, y)) {
            out |= pc.c_set;
        }
    }
    return out;
}

IndexSet Context::cocone(IndexSet x, IndexSet y) const {
    IndexSet out = 0;
    for (const auto& pc : *pieces_) {
        if (subset_of(pc.b_set, x) && subset_of(pc.c_set, y)) {
            out |= pc.a_set;
        }
    }
    return out;
}

std::string Context::names(IndexSet s) const {
    std::string out = "{";
    bool first = true;
    for (int i : members_of(s)) {
        out += (first ? "" : ",") + core_->name(i);
        first = false;
    }
    return out + "}";
}

} // namespace siltlab
