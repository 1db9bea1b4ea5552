// Complexity of satisfiability for operator-restricted languages, and the
// dedicated deciders for the polynomial and NP fragments (all over K).

#ifndef MODALSAT_FRAGMENTS_HPP
#define MODALSAT_FRAGMENTS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modalsat/formula.hpp"
#include "modalsat/kripke.hpp"
#include "modalsat/verdict.hpp"

namespace modalsat {

enum class Complexity { P, NPComplete, CoNPComplete, PSPACEComplete };

struct ComplexityClass {
    Complexity tag = Complexity::P;
    /// One of "pspace", "np", "conp", "p", "pspacetwo".
    std::string theorem;
    /// Basis or schema number within the theorem; absent for "pspacetwo".
    std::optional<int> case_number;

    /// "coNP-complete (Theorem conp, case 1)".
    std::string to_string() const;
    /// 0 for P, 1 for NP/coNP, 2 for PSPACE.
    int level() const;
};

std::string to_string(Complexity c);

/// One operator-set schema: `lower` must be contained in S, S must be
/// contained in one of `upper` (any superset when `upper` is empty).
struct Schema {
    Complexity tag;
    std::string theorem;
    std::optional<int> case_number;
    OperatorSet lower;
    std::vector<OperatorSet> upper;

    bool matches(OperatorSet s) const;
};

/// Every schema in the order the classifier tries them.
const std::vector<Schema>& classification_schemas();

ComplexityClass classify_operator_set(OperatorSet s);

/// Index (1..7) of the first polynomial schema containing `s`, if any.
std::optional<int> poly_schema(OperatorSet s);

/// Decision only. Throws std::invalid_argument outside the P fragments.
SatVerdict sat_poly_fragment(const Formula& f);
/// Single-world witnesses (with successors for satisfied diamonds).
/// Throws std::invalid_argument outside the NP fragments.
SatVerdict sat_np_fragment(const Formula& f);
/// Over K: P and NP fragments go to their deciders, the rest to sat().
SatVerdict fragment_dispatch(const Formula& f, const FrameClass& frame_class);

/// Backtracking satisfiability of a modality-free formula. Returns the
/// variables set true, or nothing when unsatisfiable.
std::optional<std::set<std::string>> propositional_sat(const Formula& f);

}  // namespace modalsat

#endif  // MODALSAT_FRAGMENTS_HPP
