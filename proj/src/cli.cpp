#include "siltlab/cli.hpp"

#include "siltlab/lemmas.hpp"
#include "siltlab/spec_file.hpp"
#include "siltlab/subcat.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <sstream>

namespace siltlab {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string spec;
    int mult_bound = 3;
    int max_skeleton = 20;
    std::string format = "text";
    int threads = 0;
};

struct Loaded {
    AlgebraSpec spec;
    CorePtr core;
    Context ctx;
};

Loaded load(const RunConfig& cfg) {
    AlgebraSpec spec = load_spec_file(cfg.spec);
    CorePtr core = make_core(spec.algebra, spec.declared);
    if (core->size() > cfg.max_skeleton) {
        throw UnsupportedError("skeleton has " + std::to_string(core->size()) + " indecomposables, above --max-skeleton " +
                               std::to_string(cfg.max_skeleton));
    }
    Context ctx(core, cfg.mult_bound);
    return Loaded{std::move(spec), core, std::move(ctx)};
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (cfg.format == a) {
            return;
        }
    }
    throw InputError("--format " + cfg.format + " is not available for this command");
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? sep : "") + v[i];
    }
    return out;
}

IndexSet parse_members(const Context& ctx, const std::vector<std::string>& names) {
    IndexSet s = 0;
    for (const auto& n : names) {
        auto i = ctx.core().index_of(n);
        if (!i) {
            throw InputError("unknown indecomposable '" + n + "'");
        }
        s |= singleton(*i);
    }
    return s;
}

int emit_report(const Report& r, const RunConfig& cfg, std::ostream& out) {
    if (cfg.format == "json") {
        out << r.to_json().dump(2) << "\n";
    } else {
        out << r.to_text();
    }
    if (!r.failures.empty()) {
        return kExitFailed;
    }
    return r.indeterminate ? kExitIndeterminate : kExitOk;
}

int cmd_info(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"text", "json"});
    Loaded L = load(cfg);
    const Core& core = *L.core;
    const Algebra& alg = *core.algebra();
    const ConflationAtlas& atlas = L.ctx.atlas();
    Json j;
    j["spec"] = cfg.spec;
    j["field_modulus"] = alg.modulus();
    j["vertices"] = alg.vertex_count();
    Json arrows = Json::array();
    for (const auto& a : alg.quiver().arrows()) {
        arrows.push_back(std::to_string(a.source + 1) + " -> " + std::to_string(a.target + 1) + " : " + a.label);
    }
    j["arrows"] = arrows;
    Json rels = Json::array();
    for (const auto& r : alg.relations()) {
        rels.push_back(alg.path_name(r));
    }
    j["relations"] = rels;
    j["dimension"] = alg.dimension();
    j["global_dimension"] = dim_string(core.global_dimension());
    Json skel = Json::array();
    for (int i = 0; i < core.size(); ++i) {
        Json e;
        e["name"] = core.name(i);
        e["dims"] = core.module(i).dims();
        e["projective"] = contains(core.projectives(), i);
        e["injective"] = contains(core.injectives(), i);
        if (!core.skeleton()[static_cast<std::size_t>(i)].aliases.empty()) {
            e["aliases"] = core.skeleton()[static_cast<std::size_t>(i)].aliases;
        }
        skel.push_back(e);
    }
    j["skeleton"] = skel;
    j["atlas"] = {{"mult_bound", atlas.mult_bound},
                  {"pieces", atlas.pieces.size()},
                  {"dimension_vectors", atlas.dimension_vectors},
                  {"classes", atlas.classes},
                  {"exact", atlas.exact()}};
    if (cfg.format == "json") {
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "algebra " << cfg.spec << " over F_" << alg.modulus() << "\n";
    out << "  vertices " << alg.vertex_count() << ", arrows " << alg.quiver().arrow_count() << ", relations "
        << alg.relations().size() << ", dimension " << alg.dimension() << "\n";
    out << "  global dimension " << dim_string(core.global_dimension()) << "\n";
    out << "  skeleton (" << core.size() << "):\n";
    for (int i = 0; i < core.size(); ++i) {
        out << "    " << core.name(i) << " " << dims_string(core.module(i).dims());
        if (contains(core.projectives(), i)) {
            out << " projective";
        }
        if (contains(core.injectives(), i)) {
            out << " injective";
        }
        out << "\n";
    }
    out << "  atlas: " << atlas.pieces.size() << " pieces at mult_bound " << atlas.mult_bound << ", "
        << (atlas.exact() ? "exact" : "not exact") << "\n";
    return kExitOk;
}

int cmd_ext_table(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"text", "json"});
    Loaded L = load(cfg);
    const Core& core = *L.core;
    const auto& ext = core.ext();
    const int n = core.size();
    auto grid = [&](auto&& f) {
        Json g = Json::array();
        for (int i = 0; i < n; ++i) {
            Json row = Json::array();
            for (int j = 0; j < n; ++j) {
                row.push_back(f(i, j));
            }
            g.push_back(row);
        }
        return g;
    };
    Json j;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        names.push_back(core.name(i));
    }
    j["names"] = names;
    j["hom"] = grid([&](int a, int b) { return ext.hom(a, b); });
    for (int k = 1; k <= 3; ++k) {
        j["ext" + std::to_string(k)] = grid([&](int a, int b) { return ext.ext_dim(a, b, k); });
    }
    Json pd = Json::array();
    Json id = Json::array();
    for (int i = 0; i < n; ++i) {
        pd.push_back(dim_string(ext.projective_dimension(i)));
        id.push_back(dim_string(ext.injective_dimension(i)));
    }
    j["pd"] = pd;
    j["id"] = id;
    if (cfg.format == "json") {
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::size_t w = 4;
    for (const auto& s : names) {
        w = std::max(w, s.size() + 1);
    }
    auto pad = [&](const std::string& s) { return s + std::string(w > s.size() ? w - s.size() : 1, ' '); };
    for (const char* key : {"hom", "ext1", "ext2", "ext3"}) {
        out << key << " (row X, column Y: dim " << key << "(X, Y))\n" << pad("");
        for (const auto& s : names) {
            out << pad(s);
        }
        out << "\n";
        for (int a = 0; a < n; ++a) {
            out << pad(names[static_cast<std::size_t>(a)]);
            for (int b = 0; b < n; ++b) {
                out << pad(std::to_string(j[key][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].get<int>()));
            }
            out << "\n";
        }
    }
    out << "pd/id:";
    for (int i = 0; i < n; ++i) {
        out << " " << names[static_cast<std::size_t>(i)] << "=" << pd[static_cast<std::size_t>(i)].get<std::string>()
            << "/" << id[static_cast<std::size_t>(i)].get<std::string>();
    }
    out << "\n";
    return kExitOk;
}

struct CotorsionFilter {
    bool hereditary = false;
    bool s = false;
    bool bounded = false;
};

int cmd_enum_cotorsion(const RunConfig& cfg, const CotorsionFilter& filt, std::ostream& out) {
    require_format(cfg, {"text", "json", "dot"});
    Loaded L = load(cfg);
    CotorsionPoset poset = enumerate_cotorsion_pairs(L.ctx, cfg.max_skeleton);
    bool unknown = false;
    auto keep = [&](const CotorsionPair& p) {
        auto pass = [&](bool wanted, Tri t) {
            if (!wanted) {
                return true;
            }
            unknown = unknown || t == Tri::unknown;
            return t == Tri::yes;
        };
        bool a = pass(filt.hereditary, p.hereditary);
        bool b = pass(filt.s, p.is_s);
        bool c = pass(filt.bounded, p.bounded);
        return a && b && c;
    };
    std::vector<CotorsionPair> kept;
    for (const auto& p : poset.pairs) {
        if (keep(p)) {
            kept.push_back(p);
        }
    }
    if (cfg.format == "dot") {
        CotorsionPoset sub;
        sub.pairs = kept;
        sub.le.assign(kept.size(), std::vector<bool>(kept.size(), false));
        for (std::size_t a = 0; a < kept.size(); ++a) {
            for (std::size_t b = 0; b < kept.size(); ++b) {
                sub.le[a][b] = pair_le(kept[a], kept[b]);
            }
        }
        out << poset_dot(L.ctx, sub);
    } else if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& p : kept) {
            arr.push_back(pair_json(L.ctx, p));
        }
        out << Json{{"count", kept.size()}, {"pairs", arr}}.dump(2) << "\n";
    } else {
        out << kept.size() << " cotorsion pairs\n";
        for (const auto& p : kept) {
            out << "  (" << L.ctx.names(p.x) << ", " << L.ctx.names(p.y) << ") s=" << tri_string(p.is_s)
                << " hereditary=" << tri_string(p.hereditary) << " bounded=" << tri_string(p.bounded) << "\n";
        }
    }
    return unknown ? kExitIndeterminate : kExitOk;
}

int cmd_enum_silting(const RunConfig& cfg, std::ostream& out) {
    require_format(cfg, {"text", "json"});
    Loaded L = load(cfg);
    require_scannable(L.ctx, cfg.max_skeleton);
    auto recs = enumerate_silting(L.ctx, cfg.max_skeleton);
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& r : recs) {
            arr.push_back(silting_json(L.ctx, r));
        }
        out << Json{{"count", recs.size()}, {"silting", arr}}.dump(2) << "\n";
    } else {
        out << recs.size() << " silting subcategories\n";
        for (const auto& r : recs) {
            out << "  add" << L.ctx.names(r.m) << " pd=" << dim_string(r.pd) << " route=" << r.route << "\n";
        }
    }
    return kExitOk;
}

int cmd_closure(const RunConfig& cfg, const std::string& op, const std::vector<std::string>& members,
                std::ostream& out) {
    require_format(cfg, {"text", "json"});
    Loaded L = load(cfg);
    const Context& ctx = L.ctx;
    const IndexSet x = parse_members(ctx, members);
    Json j;
    j["op"] = op;
    j["members"] = member_names(ctx, x);
    if (op == "hat") {
        j["result"] = member_names(ctx, hat(ctx, x));
        j["steps"] = hat_tower(ctx, x).steps;
    } else if (op == "check") {
        j["result"] = member_names(ctx, check(ctx, x));
        j["steps"] = check_tower(ctx, x).steps;
    } else if (op == "thick") {
        j["result"] = member_names(ctx, thick_closure(ctx, x));
    } else if (op == "tilde") {
        j["result"] = member_names(ctx, tilde(ctx, x));
    } else {
        j["right_perp"] = member_names(ctx, right_perp(ctx, x));
        j["left_perp"] = member_names(ctx, left_perp(ctx, x));
        j["right_perp1"] = member_names(ctx, right_perp1(ctx, x));
        j["left_perp1"] = member_names(ctx, left_perp1(ctx, x));
    }
    j["exact"] = ctx.closures_exact();
    if (cfg.format == "json") {
        out << j.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : j.items()) {
            if (k == "op" || k == "exact") {
                continue;
            }
            if (v.is_array()) {
                out << k << ": {" << join(v.get<std::vector<std::string>>(), ",") << "}\n";
            } else {
                out << k << ": " << v.dump() << "\n";
            }
        }
    }
    // Closures through the atlas are only certain when it is exact.
    const bool atlas_based = op != "perp";
    return atlas_based && !ctx.closures_exact() ? kExitIndeterminate : kExitOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& which, std::ostream& out) {
    require_format(cfg, {"text", "json"});
    Loaded L = load(cfg);
    require_scannable(L.ctx, cfg.max_skeleton);
    Report r;
    if (which == "thm1") {
        r = verify_thm1(L.ctx);
    } else if (which == "thm2") {
        r = verify_thm2_all(L.ctx);
    } else if (which == "thm3") {
        r = verify_thm3(L.ctx);
    } else if (which == "ar") {
        r = verify_ar(L.ctx);
    } else if (which == "frobenius") {
        r = verify_frobenius(L.ctx);
    } else {
        r = verify_lemmas(L.ctx);
    }
    return emit_report(r, cfg, out);
}

int cmd_poset(const RunConfig& cfg, bool emit_dot, std::ostream& out) {
    RunConfig c = cfg;
    if (emit_dot) {
        c.format = "dot";
    }
    require_format(c, {"text", "json", "dot"});
    Loaded L = load(c);
    CotorsionPoset poset = enumerate_cotorsion_pairs(L.ctx, c.max_skeleton);
    if (c.format == "dot") {
        out << poset_dot(L.ctx, poset);
    } else if (c.format == "json") {
        out << poset_json(L.ctx, poset).dump(2) << "\n";
    } else {
        out << poset.pairs.size() << " cotorsion pairs, ordered by y-containment\n";
        for (std::size_t i = 0; i < poset.pairs.size(); ++i) {
            out << "  " << i << ": (" << L.ctx.names(poset.pairs[i].x) << ", " << L.ctx.names(poset.pairs[i].y) << ")\n";
        }
        for (std::size_t a = 0; a < poset.pairs.size(); ++a) {
            for (std::size_t b = 0; b < poset.pairs.size(); ++b) {
                if (a != b && poset.le[a][b]) {
                    out << "  " << a << " <= " << b << "\n";
                }
            }
        }
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"siltlab: cotorsion pairs and silting subcategories over monomial quiver algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--mult-bound", cfg.mult_bound, "multiplicity bound of the conflation atlas")
        ->check(CLI::Range(1, 16));
    app.add_option("--max-skeleton", cfg.max_skeleton, "refuse skeletons larger than this")
        ->check(CLI::Range(1, kMaxSkeleton));
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--threads", cfg.threads, "worker threads (SILTLAB_THREADS otherwise)")->check(CLI::NonNegativeNumber);

    auto spec_arg = [&](CLI::App* sub) {
        sub->add_option("spec", cfg.spec, "algebra description (YAML)")->required();
    };

    auto* info = app.add_subcommand("info", "algebra summary: dimensions, global dimension, skeleton");
    spec_arg(info);
    auto* ext = app.add_subcommand("ext-table", "Hom and Ext dimensions between indecomposables");
    spec_arg(ext);

    auto* en = app.add_subcommand("enumerate", "enumerate cotorsion pairs or silting subcategories");
    en->require_subcommand(1);
    CotorsionFilter filt;
    auto* en_cot = en->add_subcommand("cotorsion", "all cotorsion pairs");
    spec_arg(en_cot);
    en_cot->add_flag("--hereditary", filt.hereditary, "only hereditary pairs");
    en_cot->add_flag("--s", filt.s, "only s-cotorsion pairs");
    en_cot->add_flag("--bounded", filt.bounded, "only bounded pairs");
    auto* en_silt = en->add_subcommand("silting", "all silting subcategories");
    spec_arg(en_silt);

    std::string op;
    std::vector<std::string> members;
    auto* cl = app.add_subcommand("closure", "closure operators on add of the given members");
    cl->add_option("op", op, "hat, check, thick, tilde or perp")
        ->required()
        ->check(CLI::IsMember({"hat", "check", "thick", "tilde", "perp"}));
    spec_arg(cl);
    cl->add_option("--members", members, "comma-separated indecomposable names")->delimiter(',');

    std::string which;
    auto* ver = app.add_subcommand("verify", "machine-check a theorem or the lemma suite");
    ver->add_option("which", which, "thm1, thm2, thm3, ar, frobenius or lemmas")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "thm3", "ar", "frobenius", "lemmas"}));
    spec_arg(ver);

    bool emit_dot = false;
    auto* pos = app.add_subcommand("poset", "the poset of cotorsion pairs");
    spec_arg(pos);
    pos->add_flag("--emit-dot", emit_dot, "emit a DOT Hasse diagram");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    if (cfg.threads > 0) {
        set_thread_count(cfg.threads);
    }
    try {
        if (info->parsed()) {
            return cmd_info(cfg, out);
        }
        if (ext->parsed()) {
            return cmd_ext_table(cfg, out);
        }
        if (en_cot->parsed()) {
            return cmd_enum_cotorsion(cfg, filt, out);
        }
        if (en_silt->parsed()) {
            return cmd_enum_silting(cfg, out);
        }
        if (cl->parsed()) {
            return cmd_closure(cfg, op, members, out);
        }
        if (ver->parsed()) {
            return cmd_verify(cfg, which, out);
        }
        return cmd_poset(cfg, emit_dot, out);
    } catch (const SpecError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const IndeterminateError& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kExitIndeterminate;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitFailed;
    }
}

} // namespace siltlab
