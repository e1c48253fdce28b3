#pragma once

#include "siltlab/report.hpp"
#include "siltlab/silting.hpp"

#include <cstdint>

namespace siltlab {

struct LemmaOptions {
    std::uint32_t seed = 20240611;
    int random_conflations = 120; // long exact sequence samples
    int max_table_skeleton = 10;  // exhaustive triple scan up to this size
    int sampled_triples = 200000; // used beyond it
};

/// Property suites over the add-level closure calculus. All of them need
/// higher Ext, so restricted contexts throw UnsupportedError.
Report verify_lem_basic(const Context& ctx, const LemmaOptions& opt = {});
Report verify_lem_perp(const Context& ctx);
Report verify_lem_conecl(const Context& ctx);
/// Tower identities for every presilting class, including the Ext-based
/// second route to hat_n.
Report verify_presilting_towers(const Context& ctx);
Report verify_wakamatsu(const Context& ctx);
Report verify_pd_ext(const Context& ctx);
Report verify_long_exact(const Context& ctx, const LemmaOptions& opt = {});
/// m = check(m) & hat(m) plus maximality among presilting classes. The
/// silting order report is merged in.
Report verify_silting_lemmas(const Context& ctx);

/// Ext additivity and the syzygy shift law. Middle terms are checked too.
Report verify_kernels(const Context& ctx, const LemmaOptions& opt = {});
/// Every closure output at bound b equals the one at bound b + 1.
Report verify_bound_stability(const Context& ctx);

/// All of the above, merged.
Report verify_lemmas(const Context& ctx, const LemmaOptions& opt = {});

} // namespace siltlab
