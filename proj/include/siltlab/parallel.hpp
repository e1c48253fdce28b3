#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace siltlab {

/// Serial kernels are kept as the reference implementation; the parallel
/// variants must produce identical output.
enum class Exec { serial, parallel };

/// Worker count: SILTLAB_THREADS when set, otherwise the OpenMP default.
int thread_count();
/// Overrides the worker count for this process (0 restores the default).
void set_thread_count(int n);

/// Calls f(i) for i in [0, n). Parallel iterations must not share mutable state.
template <class F>
void for_each_index(int n, Exec exec, F&& f) {
    if (exec == Exec::serial || n < 2) {
        for (int i = 0; i < n; ++i) {
            f(i);
        }
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (int i = 0; i < n; ++i) {
        f(i);
    }
#else
    for (int i = 0; i < n; ++i) {
        f(i);
    }
#endif
}

/// Sub-masks of `universe` satisfying pred, in increasing numeric order.
template <class Pred>
std::vector<std::uint32_t> scan_subsets(std::uint32_t universe, Exec exec, Pred&& pred) {
    std::vector<int> bits;
    for (int b = 0; b < 32; ++b) {
        if (universe & (1u << b)) {
            bits.push_back(b);
        }
    }
    const std::uint64_t total = std::uint64_t{1} << bits.size();
    auto expand = [&](std::uint64_t code) {
        std::uint32_t m = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) {
            if (code & (std::uint64_t{1} << k)) {
                m |= 1u << bits[k];
            }
        }
        return m;
    };
    std::vector<std::uint32_t> out;
    if (exec == Exec::serial || total < 64) {
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint32_t m = expand(code);
            if (pred(m)) {
                out.push_back(m);
            }
        }
    } else {
        // Contiguous blocks of codes per chunk; chunks are merged in order.
        const int chunks = static_cast<int>(std::min<std::uint64_t>(total, 256));
        std::vector<std::vector<std::uint32_t>> found(static_cast<std::size_t>(chunks));
        for_each_index(chunks, Exec::parallel, [&](int c) {
            std::uint64_t lo = total * static_cast<std::uint64_t>(c) / static_cast<std::uint64_t>(chunks);
            std::uint64_t hi = total * static_cast<std::uint64_t>(c + 1) / static_cast<std::uint64_t>(chunks);
            for (std::uint64_t code = lo; code < hi; ++code) {
                std::uint32_t m = expand(code);
                if (pred(m)) {
                    found[static_cast<std::size_t>(c)].push_back(m);
                }
            }
        });
        for (auto& f : found) {
            out.insert(out.end(), f.begin(), f.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace siltlab
