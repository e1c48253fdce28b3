#include "siltlab/spec_file.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace siltlab {

SpecError::SpecError(const std::string& origin, int line, const std::string& what)
    : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

struct Reader {
    std::string origin;

    int line_of(const YAML::Node& n) const { return n.Mark().line + 1; }

    [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const {
        throw SpecError(origin, line_of(n), what);
    }

    int as_int(const YAML::Node& n, const std::string& what) const {
        if (!n.IsScalar()) {
            fail(n, what + " must be an integer");
        }
        try {
            return n.as<int>();
        } catch (const YAML::Exception&) {
            fail(n, what + " must be an integer, got '" + n.Scalar() + "'");
        }
    }

    bool as_bool(const YAML::Node& n, const std::string& what) const {
        try {
            return n.as<bool>();
        } catch (const YAML::Exception&) {
            fail(n, what + " must be true or false");
        }
    }

    std::vector<int> int_list(const YAML::Node& n, const std::string& what) const {
        if (!n.IsSequence()) {
            fail(n, what + " must be a list of integers");
        }
        std::vector<int> out;
        for (const auto& x : n) {
            out.push_back(as_int(x, what + " entry"));
        }
        return out;
    }
};

std::vector<std::string> split_path(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == '*' || ch == ' ' || ch == '.' || ch == ',') {
            if (!cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

} // namespace

AlgebraSpec parse_spec(const std::string& text, const std::string& origin) {
    Reader rd{origin};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw SpecError(origin, e.mark.line + 1, e.msg);
    }
    if (!root.IsMap()) {
        throw SpecError(origin, 1, "top level must be a mapping");
    }
    static const std::set<std::string> known{"field_modulus", "vertices", "arrows", "relations", "nakayama",
                                             "declared_indecomposables", "name", "description"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) {
            rd.fail(kv.first, "unknown key '" + key + "'");
        }
    }
    if (!root["field_modulus"]) {
        throw SpecError(origin, 1, "missing required key 'field_modulus'");
    }
    const int p = rd.as_int(root["field_modulus"], "field_modulus");
    if (p > kMaxModulus || !is_prime(p)) {
        rd.fail(root["field_modulus"], "field_modulus must be a prime <= 97");
    }

    AlgebraSpec spec;
    try {
        if (const auto nak = root["nakayama"]) {
            if (!nak.IsMap() || !nak["series"]) {
                rd.fail(nak, "nakayama needs a 'series' list");
            }
            std::vector<int> series = rd.int_list(nak["series"], "nakayama.series");
            bool cyclic = nak["cyclic"] ? rd.as_bool(nak["cyclic"], "nakayama.cyclic") : false;
            try {
                spec.algebra = std::make_shared<const Algebra>(nakayama(series, cyclic, p));
            } catch (const ConstructionError& e) {
                rd.fail(nak, e.what());
            }
            if (root["vertices"] && rd.as_int(root["vertices"], "vertices") != static_cast<int>(series.size())) {
                rd.fail(root["vertices"], "vertices disagrees with the Kupisch series length");
            }
            if (root["arrows"] || root["relations"]) {
                rd.fail(root["arrows"] ? root["arrows"] : root["relations"],
                        "give either a nakayama block or explicit arrows/relations, not both");
            }
        } else {
            if (!root["vertices"]) {
                throw SpecError(origin, 1, "missing required key 'vertices'");
            }
            const int nv = rd.as_int(root["vertices"], "vertices");
            if (nv < 1) {
                rd.fail(root["vertices"], "vertices must be positive");
            }
            std::vector<Arrow> arrows;
            static const std::regex arrow_re(R"(^\s*(\d+)\s*->\s*(\d+)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)\s*$)");
            if (const auto an = root["arrows"]) {
                if (!an.IsSequence()) {
                    rd.fail(an, "arrows must be a list of 'src -> tgt : label'");
                }
                for (const auto& a : an) {
                    std::smatch m;
                    std::string s = a.IsScalar() ? a.Scalar() : "";
                    if (!std::regex_match(s, m, arrow_re)) {
                        rd.fail(a, "cannot parse arrow '" + s + "' (expected 'src -> tgt : label')");
                    }
                    int src = std::stoi(m[1]);
                    int tgt = std::stoi(m[2]);
                    if (src < 1 || src > nv || tgt < 1 || tgt > nv) {
                        rd.fail(a, "arrow endpoint outside 1.." + std::to_string(nv));
                    }
                    arrows.push_back(Arrow{src - 1, tgt - 1, m[3]});
                }
            }
            Quiver q;
            try {
                q = Quiver(nv, arrows);
            } catch (const ConstructionError& e) {
                rd.fail(root["arrows"] ? root["arrows"] : root["vertices"], e.what());
            }
            std::vector<Path> rels;
            if (const auto rn = root["relations"]) {
                if (!rn.IsSequence()) {
                    rd.fail(rn, "relations must be a list of paths");
                }
                for (const auto& r : rn) {
                    std::vector<std::string> labels;
                    if (r.IsScalar()) {
                        labels = split_path(r.Scalar());
                    } else if (r.IsSequence()) {
                        for (const auto& l : r) {
                            labels.push_back(l.as<std::string>());
                        }
                    } else {
                        rd.fail(r, "a relation must be a string or a list of arrow labels");
                    }
                    try {
                        rels.push_back(path_from_labels(q, labels));
                    } catch (const ConstructionError& e) {
                        rd.fail(r, e.what());
                    }
                }
            }
            try {
                spec.algebra = std::make_shared<const Algebra>(build_path_algebra(q, rels, p));
            } catch (const ConstructionError& e) {
                rd.fail(root["relations"] ? root["relations"] : root["vertices"], e.what());
            }
        }

        if (const auto dn = root["declared_indecomposables"]) {
            if (!dn.IsSequence()) {
                rd.fail(dn, "declared_indecomposables must be a list");
            }
            const Algebra& alg = *spec.algebra;
            const Quiver& q = alg.quiver();
            for (const auto& d : dn) {
                if (!d.IsMap() || !d["name"] || !d["dims"]) {
                    rd.fail(d, "each declared module needs 'name' and 'dims'");
                }
                Indecomposable ind;
                ind.name = d["name"].as<std::string>();
                std::vector<int> dims = rd.int_list(d["dims"], "dims");
                if (static_cast<int>(dims.size()) != q.vertex_count()) {
                    rd.fail(d["dims"], "dims must have one entry per vertex");
                }
                for (int x : dims) {
                    if (x < 0) {
                        rd.fail(d["dims"], "dims must be non-negative");
                    }
                }
                std::vector<Mat> maps;
                for (int a = 0; a < q.arrow_count(); ++a) {
                    maps.emplace_back(dims[static_cast<std::size_t>(q.arrow(a).target)],
                                      dims[static_cast<std::size_t>(q.arrow(a).source)], p);
                }
                if (const auto mn = d["maps"]) {
                    if (!mn.IsMap()) {
                        rd.fail(mn, "maps must map arrow labels to matrices");
                    }
                    for (const auto& kv : mn) {
                        auto label = kv.first.as<std::string>();
                        auto ai = q.arrow_index(label);
                        if (!ai) {
                            rd.fail(kv.first, "unknown arrow label '" + label + "'");
                        }
                        const int rows = dims[static_cast<std::size_t>(q.arrow(*ai).target)];
                        const int cols = dims[static_cast<std::size_t>(q.arrow(*ai).source)];
                        if (!kv.second.IsSequence() || static_cast<int>(kv.second.size()) != rows) {
                            rd.fail(kv.second, "matrix for '" + label + "' must have " + std::to_string(rows) +
                                                   " rows");
                        }
                        Mat m(rows, cols, p);
                        int r = 0;
                        for (const auto& row : kv.second) {
                            auto vals = rd.int_list(row, "matrix row");
                            if (static_cast<int>(vals.size()) != cols) {
                                rd.fail(row, "matrix row for '" + label + "' must have " + std::to_string(cols) +
                                                 " entries");
                            }
                            for (int c = 0; c < cols; ++c) {
                                m.set(r, c, ((vals[static_cast<std::size_t>(c)] % p) + p) % p);
                            }
                            ++r;
                        }
                        maps[static_cast<std::size_t>(*ai)] = m;
                    }
                }
                try {
                    ind.module = make_module(spec.algebra, dims, maps);
                } catch (const ContractError& e) {
                    rd.fail(d, "declared module '" + ind.name + "': " + e.what());
                }
                spec.declared.push_back(std::move(ind));
            }
        }
    } catch (const YAML::Exception& e) {
        throw SpecError(origin, e.mark.line + 1, e.msg);
    }
    return spec;
}

AlgebraSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SpecError(path, 0, "cannot open file");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), path);
}

} // namespace siltlab
