// Satisfiability procedures per frame class.
//
// The tableau procedures accept the full language (negations are pushed
// inward first) and build witness models. The poor man's procedures accept
// only formulas over literals, conjunction, box and diamond and throw
// NotInFragment otherwise.

#ifndef MODALSAT_PROCEDURES_HPP
#define MODALSAT_PROCEDURES_HPP

#include <stdexcept>
#include <string>

#include "modalsat/formula.hpp"
#include "modalsat/kripke.hpp"
#include "modalsat/verdict.hpp"

namespace modalsat {

class NotInFragment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Routes poor man's formulas to their dedicated procedure and everything
/// else to the tableau for the frame class. Fixed frames are rejected with
/// std::invalid_argument; use fixed_frame_sat.
SatVerdict sat(const Formula& f, const FrameClass& frame_class);

/// Backtracks over disjunctions, then requires consistent literals and a
/// satisfiable successor obligation per diamond. Memoized on conjunct sets.
SatVerdict sat_k_tableau(const Formula& f);
/// As sat_k_tableau, plus the box obligations alone must be satisfiable
/// when no diamond forces a successor.
SatVerdict sat_kd_tableau(const Formula& f);
/// All box and diamond obligations flow to a single successor.
SatVerdict sat_le1(const Formula& f);
/// Diamonds are split into at most two groups, one successor per group.
SatVerdict sat_le2(const Formula& f);
/// Tableau for any non-fixed frame class.
SatVerdict tableau_sat(const Formula& f, FrameTag frame_class);

/// K satisfiability of a poor man's formula. Exponential in the worst case.
SatVerdict poorman_sat_k(const Formula& f);
/// Satisfiability on frames with at most one successor per world; linear
/// recursion, returns a chain witness.
SatVerdict poorman_sat_le1(const Formula& f);
/// Serial satisfiability by the pairwise-conjunct criterion, computed over a
/// memoized table of subformula pairs. Polynomial; decision only.
SatVerdict poorman_sat_kd_pairs(const Formula& f);

}  // namespace modalsat

#endif  // MODALSAT_PROCEDURES_HPP
