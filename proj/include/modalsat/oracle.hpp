// Brute-force satisfiability by explicit model search.
//
// These routines are the ground truth the decision procedures are checked
// against. They never reason about formulas beyond evaluating them on
// concrete models: candidate frames are enumerated, and every valuation of
// the relevant (world, variable) pairs is searched with three-valued
// evaluation used only to cut off branches that are already decided.

#ifndef MODALSAT_ORACLE_HPP
#define MODALSAT_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modalsat/formula.hpp"
#include "modalsat/kripke.hpp"

namespace modalsat {

enum class OracleStatus { Sat, Unsat, BoundExceeded };

std::string to_string(OracleStatus status);

struct OracleResult {
    OracleStatus status = OracleStatus::Unsat;
    std::optional<KripkeModel> witness;
    /// World count beyond which no new satisfying models need to be searched
    /// (saturates at max_worlds + 1).
    std::size_t completeness_bound = 0;
    std::size_t frames_searched = 0;
};

/// Size of the largest tree model that must be searched before UNSAT can be
/// declared for `frame_class`, capped at `cap + 1`.
///   K:         one successor per top-level diamond, recursively.
///   Serial:    as K, plus one successor for the boxes when no diamond is
///              forced; leaves carry a self-loop.
///   AtMostOne: chains of md(f) + 1 worlds.
///   AtMostTwo: binary trees of depth md(f).
std::size_t completeness_bound(const Formula& f, FrameTag frame_class, std::size_t cap);

/// Searches tree models of `frame_class` with at most `max_worlds` worlds,
/// ordered by world count. UNSAT only when the completeness bound fits in
/// `max_worlds`. Fixed frames are delegated to fixed_frame_sat.
OracleResult brute_force_sat(const Formula& f, const FrameClass& frame_class, std::size_t max_worlds);

/// Satisfiability on one given frame: some valuation makes `f` true at some
/// world. The witness's root is the satisfying world.
OracleResult fixed_frame_sat(const Formula& f, const Frame& frame);

/// Every tree model of `frame_class` with at most `max_worlds` worlds and any
/// valuation over vars(f) that satisfies `f` at its root, in search order.
/// `visit` returns false to stop early. No pruning is applied.
void for_each_model(const Formula& f, FrameTag frame_class, std::size_t max_worlds,
                    const std::function<bool(const KripkeModel&)>& visit);

/// Valuation patterns over `vars` found at endpoints of paths of length
/// exactly vars.size() from `world`.
std::set<std::vector<bool>> assignment_coverage(const KripkeModel& model, int world,
                                                const std::vector<std::string>& vars);

}  // namespace modalsat

#endif  // MODALSAT_ORACLE_HPP
