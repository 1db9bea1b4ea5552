// Test-corpus generation over an operator fragment.

#ifndef MODALSAT_GENERATE_HPP
#define MODALSAT_GENERATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "modalsat/formula.hpp"

namespace modalsat {

struct GeneratorSpec {
    OperatorSet fragment;
    std::size_t max_vars = 1;
    std::size_t max_depth = 1;
    /// Maximum number of operands of a conjunction or disjunction.
    std::size_t max_width = 2;
    /// Exhaustive mode: AST node budget per formula.
    std::size_t max_size = 7;
    /// When set, draw `samples` formulas pseudo-randomly instead of enumerating.
    std::optional<std::uint64_t> seed;
    std::size_t samples = 100;
};

/// Variable names used by the generator: p, q, r, s, then v5, v6, ...
std::vector<std::string> generator_variables(std::size_t count);

/// Exhaustive enumeration (no duplicate operands, operands of n-ary nodes in
/// a canonical order) when no seed is given, seeded sampling otherwise. Every
/// formula uses only operators of spec.fragment.
std::vector<Formula> generate_formulas(const GeneratorSpec& spec);

/// One pseudo-random formula within the generator's variable, depth and width
/// bounds.
Formula random_formula(const GeneratorSpec& spec, std::mt19937_64& rng);

}  // namespace modalsat

#endif  // MODALSAT_GENERATE_HPP
