#pragma once

#include "siltlab/context.hpp"

#include <stdexcept>
#include <string>

namespace siltlab {

/// Malformed algebra description; the message cites the offending line.
class SpecError : public std::runtime_error {
public:
    SpecError(const std::string& origin, int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

struct AlgebraSpec {
    AlgebraPtr algebra;
    std::vector<Indecomposable> declared;
};

/// YAML algebra description:
///   field_modulus: 2
///   vertices: 2
///   arrows: ["1 -> 2 : a"]
///   relations: ["a*b"]            (or [["a", "b"]])
///   nakayama: {series: [2, 1], cyclic: false}
///   declared_indecomposables:
///     - {name: M, dims: [1, 1], maps: {a: [[1]]}}
/// Vertices are numbered from 1.
AlgebraSpec parse_spec(const std::string& text, const std::string& origin = "<spec>");
AlgebraSpec load_spec_file(const std::string& path);

} // namespace siltlab
