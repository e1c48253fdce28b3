#pragma once

#include "siltlab/context.hpp"
#include "siltlab/spec_file.hpp"

#include <string>

namespace corpus {

inline siltlab::AlgebraPtr alg(const std::string& file) {
    return siltlab::load_spec_file(std::string(SILTLAB_SPEC_DIR) + "/" + file).algebra;
}

inline siltlab::CorePtr core(const std::string& file, siltlab::Exec exec = siltlab::Exec::parallel) {
    auto spec = siltlab::load_spec_file(std::string(SILTLAB_SPEC_DIR) + "/" + file);
    return siltlab::make_core(spec.algebra, spec.declared, exec);
}

inline siltlab::IndexSet set_of(const siltlab::Core& c, std::initializer_list<const char*> names) {
    siltlab::IndexSet s = 0;
    for (const char* n : names) {
        auto i = c.index_of(n);
        if (!i) {
            throw std::runtime_error(std::string("unknown indecomposable ") + n);
        }
        s |= siltlab::singleton(*i);
    }
    return s;
}

inline const std::vector<std::string>& files() {
    static const std::vector<std::string> f{"ka2.yaml", "ka3.yaml", "dual_numbers.yaml", "semisimple.yaml",
                                            "cyclic22.yaml"};
    return f;
}

} // namespace corpus
