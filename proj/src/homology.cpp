#include "siltlab/homology.hpp"

#include <algorithm>

namespace siltlab {

namespace {

Morphism morphism_from_column(const Module& s, const Module& t, const Mat& cols, int c) {
    std::vector<int> coords(static_cast<std::size_t>(cols.rows()));
    for (int r = 0; r < cols.rows(); ++r) {
        coords[static_cast<std::size_t>(r)] = cols(r, c);
    }
    return unflatten(s, t, coords);
}

Mat flat_column(const Morphism& f) {
    auto v = f.flatten();
    const int n = static_cast<int>(v.size());
    return Mat(n, 1, f.source().modulus(), std::move(v));
}

Mat flat_columns(const std::vector<Morphism>& fs, int ambient, int p) {
    Mat out(ambient, static_cast<int>(fs.size()), p);
    for (std::size_t j = 0; j < fs.size(); ++j) {
        auto v = fs[j].flatten();
        for (int r = 0; r < ambient; ++r) {
            out.set(r, static_cast<int>(j), v[static_cast<std::size_t>(r)]);
        }
    }
    return out;
}

int safe_rank(const Mat& m) { return m.empty() ? 0 : rank(m); }

Mat hcat(const Mat& a, const Mat& b) {
    if (a.cols() == 0) {
        return b;
    }
    if (b.cols() == 0) {
        return a;
    }
    return hstack(a, b);
}

DirectSum pair_sum(const Module& a, const Module& b) { return direct_sum(std::vector<Module>{a, b}); }

} // namespace

// ------------------------------------------------------------ Conflations

bool Conflation::is_valid() const {
    try {
        require_valid(*this);
        return true;
    } catch (const ContractError&) {
        return false;
    }
}

void require_valid(const Conflation& conf) {
    if (!conf.f.is_natural() || !conf.g.is_natural()) {
        throw ContractError("conflation: maps are not module homomorphisms");
    }
    if (!conf.f.is_injective()) {
        throw ContractError("conflation: first map is not injective");
    }
    if (!conf.g.is_surjective()) {
        throw ContractError("conflation: second map is not surjective");
    }
    if (!compose(conf.g, conf.f).is_zero()) {
        throw ContractError("conflation: composite is nonzero");
    }
    for (int v = 0; v < conf.b.vertex_count(); ++v) {
        if (conf.b.dim(v) != conf.a.dim(v) + conf.c.dim(v)) {
            throw ContractError("conflation: not exact in the middle at vertex " + std::to_string(v + 1));
        }
    }
}

Conflation split_conflation(const Module& a, const Module& c) {
    DirectSum s = pair_sum(a, c);
    return Conflation{a, s.sum, c, s.injections[0], s.projections[1]};
}

// ------------------------------------------------- Covers and envelopes

ProjectiveCover projective_cover(const Module& m) {
    const AlgebraPtr& alg = m.algebra();
    const Quiver& q = alg->quiver();
    const int p = m.modulus();
    const int nv = m.vertex_count();
    ProjectiveCover out;
    out.top.assign(static_cast<std::size_t>(nv), 0);
    if (m.is_zero()) {
        out.p = Module::zero(alg);
        out.d = Morphism::zero(out.p, m);
        return out;
    }
    std::vector<Module> parts;
    std::vector<std::pair<int, Mat>> gens;
    for (int v = 0; v < nv; ++v) {
        if (m.dim(v) == 0) {
            continue;
        }
        Mat rad(m.dim(v), 0, p);
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).target == v && m.map(a).cols() > 0) {
                rad = hcat(rad, m.map(a));
            }
        }
        Mat top = complement_basis(image_basis(rad), m.dim(v));
        out.top[static_cast<std::size_t>(v)] = top.cols();
        for (int t = 0; t < top.cols(); ++t) {
            parts.push_back(projective_module(alg, v));
            gens.emplace_back(v, top.column(t));
        }
    }
    DirectSum sum = direct_sum(parts);
    std::vector<Mat> comps;
    const auto& basis = alg->path_basis();
    for (int w = 0; w < nv; ++w) {
        Mat comp(m.dim(w), 0, p);
        for (const auto& [v, gen] : gens) {
            for (int idx : alg->paths_between(v, w)) {
                comp = hcat(comp, m.path_action(basis[static_cast<std::size_t>(idx)]) * gen);
            }
        }
        comps.push_back(std::move(comp));
    }
    out.p = sum.sum;
    out.d = Morphism(out.p, m, std::move(comps));
    return out;
}

InjectiveEnvelope injective_envelope(const Module& m) {
    const AlgebraPtr& alg = m.algebra();
    const Quiver& q = alg->quiver();
    const int p = m.modulus();
    const int nv = m.vertex_count();
    InjectiveEnvelope out;
    out.socle.assign(static_cast<std::size_t>(nv), 0);
    if (m.is_zero()) {
        out.i = Module::zero(alg);
        out.e = Morphism::zero(m, out.i);
        return out;
    }
    std::vector<Module> parts;
    std::vector<Morphism> chosen;
    for (int v = 0; v < nv; ++v) {
        if (m.dim(v) == 0) {
            continue;
        }
        Mat out_maps(0, m.dim(v), p);
        for (int a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).source == v && m.map(a).rows() > 0) {
                out_maps = vstack(out_maps, m.map(a));
            }
        }
        Mat soc = out_maps.rows() == 0 ? Mat::identity(m.dim(v), p) : kernel_basis(out_maps);
        out.socle[static_cast<std::size_t>(v)] = soc.cols();
        if (soc.cols() == 0) {
            continue;
        }
        Module inj = injective_module(alg, v);
        auto loops = alg->paths_between(v, v);
        int trivial_row = -1;
        for (std::size_t k = 0; k < loops.size(); ++k) {
            if (alg->path_basis()[static_cast<std::size_t>(loops[k])].arrows.empty()) {
                trivial_row = static_cast<int>(k);
            }
        }
        auto hb = hom_basis(m, inj);
        // Functionals on m_v obtained by evaluating at the dual of e_v.
        Mat functionals(static_cast<int>(hb.size()), m.dim(v), p);
        for (std::size_t b = 0; b < hb.size(); ++b) {
            for (int c = 0; c < m.dim(v); ++c) {
                functionals.set(static_cast<int>(b), c, hb[b].component(v)(trivial_row, c));
            }
        }
        Mat restricted = functionals * soc;
        auto piv = rref(restricted.transpose()).pivots;
        if (static_cast<int>(piv.size()) != soc.cols()) {
            throw ContractError("injective_envelope: socle functionals are degenerate");
        }
        for (int b : piv) {
            parts.push_back(inj);
            chosen.push_back(hb[static_cast<std::size_t>(b)]);
        }
    }
    DirectSum sum = direct_sum(parts);
    Morphism e = Morphism::zero(m, sum.sum);
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        e = e + compose(sum.injections[k], chosen[k]);
    }
    out.i = sum.sum;
    out.e = e;
    return out;
}

Conflation Syzygy::conflation(const Module& m) const {
    return Conflation{kernel.module, cover.p, m, kernel.inclusion, cover.d};
}

Syzygy syzygy_data(const Module& m) {
    ProjectiveCover cover = projective_cover(m);
    SubmoduleResult ker = kernel(cover.d);
    return Syzygy{std::move(cover), std::move(ker)};
}

Module syzygy(const Module& m) { return syzygy_data(m).kernel.module; }

Module cosyzygy(const Module& m) { return cokernel(injective_envelope(m).e).module; }

// ---------------------------------------------------------------- Ext

int ext_dim(const Module& m, const Module& n, int k) {
    if (k < 0) {
        throw ContractError("ext_dim: negative degree");
    }
    if (k == 0) {
        return hom_dim(m, n);
    }
    Module prev = m;
    for (int t = 1; t < k; ++t) {
        prev = syzygy(prev);
        if (prev.is_zero()) {
            return 0;
        }
    }
    Syzygy s = syzygy_data(prev);
    return hom_dim(s.kernel.module, n) - hom_dim(s.cover.p, n) + hom_dim(prev, n);
}

namespace {

// A quotient Hom(x, n) / coboundaries, both as flattened column spans.
struct HomQuotient {
    Module source;
    Module target;
    Mat basis;       // flattened basis of the Hom space
    Mat coboundary;  // spanning set of the subspace being divided out
    int dim() const { return basis.cols() - safe_rank(coboundary); }
};

// Ext^k(x, n) presented through the projective resolution of x.
HomQuotient covariant_presentation(const Module& x, const Module& n, int k) {
    const int p = x.modulus();
    if (k == 0) {
        Mat basis = hom_basis_matrix(x, n);
        return {x, n, basis, Mat(ambient_hom_dim(x, n), 0, p)};
    }
    Module prev = x;
    for (int t = 1; t < k; ++t) {
        prev = syzygy(prev);
    }
    Syzygy s = syzygy_data(prev);
    const Module& omega = s.kernel.module;
    const int amb = ambient_hom_dim(omega, n);
    std::vector<Morphism> restr;
    for (const auto& phi : hom_basis(s.cover.p, n)) {
        restr.push_back(compose(phi, s.kernel.inclusion));
    }
    return {omega, n, hom_basis_matrix(omega, n), flat_columns(restr, amb, p)};
}

// Ext^k(m, x) presented through the injective coresolution of x.
HomQuotient contravariant_presentation(const Module& m, const Module& x, int k) {
    const int p = m.modulus();
    if (k == 0) {
        Mat basis = hom_basis_matrix(m, x);
        return {m, x, basis, Mat(ambient_hom_dim(m, x), 0, p)};
    }
    Module prev = x;
    for (int t = 1; t < k; ++t) {
        prev = cosyzygy(prev);
    }
    InjectiveEnvelope env = injective_envelope(prev);
    QuotientResult q = cokernel(env.e);
    const int amb = ambient_hom_dim(m, q.module);
    std::vector<Morphism> imgs;
    for (const auto& phi : hom_basis(m, env.i)) {
        imgs.push_back(compose(q.projection, phi));
    }
    return {m, q.module, hom_basis_matrix(m, q.module), flat_columns(imgs, amb, p)};
}

int induced_rank(const std::vector<Morphism>& images, const HomQuotient& target) {
    const int p = target.source.modulus();
    const int amb = ambient_hom_dim(target.source, target.target);
    Mat imgs = flat_columns(images, amb, p);
    return safe_rank(hcat(imgs, target.coboundary)) - safe_rank(target.coboundary);
}

std::vector<Morphism> basis_morphisms(const HomQuotient& hq) {
    std::vector<Morphism> out;
    for (int c = 0; c < hq.basis.cols(); ++c) {
        out.push_back(morphism_from_column(hq.source, hq.target, hq.basis, c));
    }
    return out;
}

} // namespace

int ext_dim_cokernel(const Module& m, const Module& n, int k) { return covariant_presentation(m, n, k).dim(); }

int ext_dim_coresolution(const Module& m, const Module& n, int k) {
    return contravariant_presentation(m, n, k).dim();
}

// ------------------------------------------------------------ ExtClass

ExtClass::ExtClass(Module c, Module a, Syzygy syz, Morphism cocycle)
    : c_(std::move(c)), a_(std::move(a)), syz_(std::move(syz)), cocycle_(std::move(cocycle)) {
    const Module& omega = syz_.kernel.module;
    const int p = c_.modulus();
    const int amb = ambient_hom_dim(omega, a_);
    Mat basis = hom_basis_matrix(omega, a_);
    const int h = basis.cols();
    if (h == 0) {
        cocycle_ = Morphism::zero(omega, a_);
        return;
    }
    std::vector<Morphism> restr;
    for (const auto& phi : hom_basis(syz_.cover.p, a_)) {
        restr.push_back(compose(phi, syz_.kernel.inclusion));
    }
    Mat cob = flat_columns(restr, amb, p);
    Mat cob_coords = cob.cols() == 0 ? Mat(h, 0, p) : *solve(basis, image_basis(cob));
    Mat comp = complement_basis(cob_coords, h);
    Mat full = hcat(cob_coords, comp);
    auto x = solve(basis, flat_column(cocycle_));
    if (!x) {
        throw ContractError("ExtClass: cocycle is not a homomorphism");
    }
    Mat y = *inverse(full) * *x;
    const int r = cob_coords.cols();
    coords_.clear();
    for (int i = r; i < h; ++i) {
        coords_.push_back(y(i, 0));
    }
    Mat canonical = basis * comp * Mat(h - r, 1, p, coords_);
    cocycle_ = morphism_from_column(omega, a_, canonical, 0);
}

bool ExtClass::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](int v) { return v == 0; });
}

std::vector<ExtClass> ext1_basis(const Module& c, const Module& a) {
    Syzygy syz = syzygy_data(c);
    const Module& omega = syz.kernel.module;
    const int p = c.modulus();
    Mat basis = hom_basis_matrix(omega, a);
    const int h = basis.cols();
    std::vector<ExtClass> out;
    if (h == 0) {
        return out;
    }
    const int amb = ambient_hom_dim(omega, a);
    std::vector<Morphism> restr;
    for (const auto& phi : hom_basis(syz.cover.p, a)) {
        restr.push_back(compose(phi, syz.kernel.inclusion));
    }
    Mat cob = flat_columns(restr, amb, p);
    Mat cob_coords = cob.cols() == 0 ? Mat(h, 0, p) : *solve(basis, image_basis(cob));
    Mat comp = complement_basis(cob_coords, h);
    Mat reps = basis * comp;
    for (int j = 0; j < reps.cols(); ++j) {
        out.emplace_back(c, a, syz, morphism_from_column(omega, a, reps, j));
    }
    return out;
}

ExtClass combine(const std::vector<ExtClass>& basis, const std::vector<int>& coeffs) {
    if (basis.empty()) {
        throw ContractError("combine: empty basis");
    }
    Morphism acc = Morphism::zero(basis.front().cocycle().source(), basis.front().a_module());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        acc = acc + basis[i].cocycle().scaled(coeffs[i]);
    }
    return ExtClass(basis.front().c_module(), basis.front().a_module(), basis.front().syzygy(), acc);
}

// -------------------------------------------------- Universal properties

Morphism factor_through_epi(const Morphism& epi, const Morphism& h) {
    std::vector<Mat> comps;
    for (int v = 0; v < epi.source().vertex_count(); ++v) {
        const Mat& e = epi.component(v);
        const Mat& hv = h.component(v);
        if (e.rows() == 0 || hv.rows() == 0) {
            comps.emplace_back(hv.rows(), e.rows(), epi.source().modulus());
            continue;
        }
        auto x = e.cols() == 0 ? std::optional<Mat>(Mat(e.rows(), hv.rows(), e.modulus()))
                               : solve(e.transpose(), hv.transpose());
        if (!x) {
            throw ContractError("factor_through_epi: map does not vanish on the kernel");
        }
        comps.push_back(x->transpose());
    }
    Morphism g(epi.target(), h.target(), std::move(comps));
    if (!(compose(g, epi) == h)) {
        throw ContractError("factor_through_epi: no factorisation");
    }
    return g;
}

Morphism factor_through_mono(const Morphism& mono, const Morphism& h) {
    std::vector<Mat> comps;
    for (int v = 0; v < mono.source().vertex_count(); ++v) {
        const Mat& m = mono.component(v);
        const Mat& hv = h.component(v);
        if (m.cols() == 0 || hv.cols() == 0) {
            comps.emplace_back(m.cols(), hv.cols(), mono.source().modulus());
            continue;
        }
        auto x = solve(m, hv);
        if (!x) {
            throw ContractError("factor_through_mono: map does not land in the image");
        }
        comps.push_back(*x);
    }
    Morphism g(h.source(), mono.source(), std::move(comps));
    if (!(compose(mono, g) == h)) {
        throw ContractError("factor_through_mono: no factorisation");
    }
    return g;
}

std::optional<Morphism> lift_through(const Morphism& g, const Morphism& t) {
    const Module& x = t.source();
    const Module& y = g.source();
    auto basis = hom_basis(x, y);
    const int amb = ambient_hom_dim(x, g.target());
    if (t.is_zero()) {
        return Morphism::zero(x, y);
    }
    if (basis.empty()) {
        return std::nullopt;
    }
    std::vector<Morphism> imgs;
    for (const auto& b : basis) {
        imgs.push_back(compose(g, b));
    }
    auto sol = solve(flat_columns(imgs, amb, x.modulus()), flat_column(t));
    if (!sol) {
        return std::nullopt;
    }
    Morphism acc = Morphism::zero(x, y);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        acc = acc + basis[i].scaled((*sol)(static_cast<int>(i), 0));
    }
    return acc;
}

Conflation pushout_conflation(const Conflation& conf, const Morphism& h) {
    const Module& a2 = h.target();
    DirectSum s = pair_sum(a2, conf.b);
    Morphism u = compose(s.injections[0], h) - compose(s.injections[1], conf.f);
    QuotientResult q = cokernel(u);
    Morphism f2 = compose(q.projection, s.injections[0]);
    Morphism g2 = factor_through_epi(q.projection, compose(conf.g, s.projections[1]));
    return Conflation{a2, q.module, conf.c, f2, g2};
}

Conflation pullback_conflation(const Conflation& conf, const Morphism& h) {
    const Module& c2 = h.source();
    DirectSum s = pair_sum(conf.b, c2);
    Morphism v = compose(conf.g, s.projections[0]) - compose(h, s.projections[1]);
    SubmoduleResult k = kernel(v);
    Morphism g2 = compose(s.projections[1], k.inclusion);
    Morphism f2 = factor_through_mono(k.inclusion, compose(s.injections[0], conf.f));
    return Conflation{conf.a, k.module, c2, f2, g2};
}

Conflation middle_term(const ExtClass& delta) {
    Conflation base = delta.syzygy().conflation(delta.c_module());
    return pushout_conflation(base, delta.cocycle());
}

ExtClass class_of(const Conflation& conf) {
    Syzygy syz = syzygy_data(conf.c);
    auto psi = lift_through(conf.g, syz.cover.d);
    if (!psi) {
        throw ContractError("class_of: projective cover does not lift");
    }
    Morphism phi = factor_through_mono(conf.f, compose(*psi, syz.kernel.inclusion));
    return ExtClass(conf.c, conf.a, std::move(syz), phi);
}

// ------------------------------------------------- Long exact sequences

bool check_long_exact(const Conflation& conf, const Module& x, int degrees) {
    if (degrees < 1) {
        throw ContractError("check_long_exact: degrees must be >= 1");
    }
    // Covariant: E^k(x, a) -> E^k(x, b) -> E^k(x, c).
    {
        std::vector<int> da;
        std::vector<int> db;
        std::vector<int> dc;
        std::vector<int> rf;
        std::vector<int> rg;
        for (int k = 0; k <= degrees; ++k) {
            HomQuotient qa = covariant_presentation(x, conf.a, k);
            HomQuotient qb = covariant_presentation(x, conf.b, k);
            HomQuotient qc = covariant_presentation(x, conf.c, k);
            da.push_back(qa.dim());
            db.push_back(qb.dim());
            dc.push_back(qc.dim());
            std::vector<Morphism> fa;
            for (const auto& phi : basis_morphisms(qa)) {
                fa.push_back(compose(conf.f, phi));
            }
            std::vector<Morphism> gb;
            for (const auto& phi : basis_morphisms(qb)) {
                gb.push_back(compose(conf.g, phi));
            }
            rf.push_back(induced_rank(fa, qb));
            rg.push_back(induced_rank(gb, qc));
        }
        if (rf[0] != da[0]) {
            return false;
        }
        for (int k = 0; k <= degrees; ++k) {
            auto ku = static_cast<std::size_t>(k);
            if (db[ku] != rf[ku] + rg[ku]) {
                return false;
            }
            if (k < degrees && dc[ku] - rg[ku] != da[ku + 1] - rf[ku + 1]) {
                return false;
            }
        }
    }
    // Contravariant: E^k(c, x) -> E^k(b, x) -> E^k(a, x).
    {
        std::vector<int> da;
        std::vector<int> db;
        std::vector<int> dc;
        std::vector<int> rf;
        std::vector<int> rg;
        for (int k = 0; k <= degrees; ++k) {
            HomQuotient qa = contravariant_presentation(conf.a, x, k);
            HomQuotient qb = contravariant_presentation(conf.b, x, k);
            HomQuotient qc = contravariant_presentation(conf.c, x, k);
            da.push_back(qa.dim());
            db.push_back(qb.dim());
            dc.push_back(qc.dim());
            std::vector<Morphism> gc;
            for (const auto& phi : basis_morphisms(qc)) {
                gc.push_back(compose(phi, conf.g));
            }
            std::vector<Morphism> fb;
            for (const auto& phi : basis_morphisms(qb)) {
                fb.push_back(compose(phi, conf.f));
            }
            rg.push_back(induced_rank(gc, qb));
            rf.push_back(induced_rank(fb, qa));
        }
        if (rg[0] != dc[0]) {
            return false;
        }
        for (int k = 0; k <= degrees; ++k) {
            auto ku = static_cast<std::size_t>(k);
            if (db[ku] != rg[ku] + rf[ku]) {
                return false;
            }
            if (k < degrees && da[ku] - rf[ku] != dc[ku + 1] - rg[ku + 1]) {
                return false;
            }
        }
    }
    return true;
}

} // namespace siltlab
