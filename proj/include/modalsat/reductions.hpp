// Formula-producing reductions between satisfiability problems.
//
// Fresh variables carry the reserved "__aux_" prefix and are chosen
// deterministically from the input, so equal inputs give equal outputs.

#ifndef MODALSAT_REDUCTIONS_HPP
#define MODALSAT_REDUCTIONS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "modalsat/formula.hpp"
#include "modalsat/kripke.hpp"

namespace modalsat {

/// Undirected graph on vertices 1..n.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    /// Throws std::invalid_argument on n < 1, self-loops or out-of-range endpoints.
    void validate() const;
};

enum class Quantifier { Exists, Forall };

/// Prenex CNF over p1..pn. Literals are signed variable indices.
struct QbfInstance {
    int n = 0;
    /// Quantifier of p1, p2, ... in order.
    std::vector<Quantifier> prefix;
    std::vector<std::vector<int>> clauses;

    /// n even and positive, prefix strictly alternating from Exists, every
    /// clause exactly three literals over three different variables.
    bool conforming() const;
    /// Throws std::invalid_argument unless conforming().
    void validate() const;
};

void to_json(nlohmann::json& j, const Graph& g);
void from_json(const nlohmann::json& j, Graph& g);
void to_json(nlohmann::json& j, const QbfInstance& q);
void from_json(const nlohmann::json& j, QbfInstance& q);

/// The labelling variable used by label_false and reduce_qbf.
inline const std::string kLabelVariable = "__aux_f";

/// Name of QBF variable i: "p<i>".
std::string qbf_variable(int index);

/// Conjunction over i = 1..n of Box^(i-1)(Dia Box^(n-i) p_i & Dia Box^(n-i) ~p_i).
Formula phi_exp(std::size_t n);

/// f & Dia q & Box Dia q & ... & Box^md(f) Dia q with q fresh. Serial
/// satisfiability of f equals K satisfiability of the result.
Formula reduce_kd_to_k(const Formula& f);

/// Replaces true/false by fresh t, fv and adds Box^i (t & ~fv) for
/// i = 0..md(f). Input over atneg, and, box, dia, true, false.
Formula reduce_constants_to_vars(const Formula& f);

/// Replaces true by a fresh t and adds Box^i t for i = 0..md(f). Input must
/// be free of general negation.
Formula reduce_eliminate_true(const Formula& f);

/// Conjunction of Dia psi_i over the non-isolated vertices, psi_i holding
/// e{i}_{j} for edges to larger j and ~e{j}_{i} for edges to smaller j. The
/// graph is 3-colourable iff the result is satisfiable on frame3().
Formula reduce_3col(const Graph& g);

/// Box^(a-1) Dia Box^(b-a-1) Dia Box^(c-b-1) Dia Box^(n-c) (l1 & l2 & l3 & f)
/// for literals over p_a, p_b, p_c (a < b < c after sorting).
Formula label_false(std::vector<Formula> literals, std::size_t n);

/// phi_exp(n), one label_false per clause over the negated clause literals,
/// and (Dia Box)^(n/2) ~f. The instance is true iff the result is
/// satisfiable on frames with at most two successors per world.
Formula reduce_qbf(const QbfInstance& q);

/// Truth-preserving rewrite into a conforming instance: dummy quantifiers
/// restore alternation, short clauses are padded, repeated literals are
/// split on fresh innermost universals, tautologies are dropped. Conforming
/// input is returned unchanged.
QbfInstance normalize_qbf(const QbfInstance& q);

/// Eliminates the single propositional variable: the input is rewritten over
/// negation, conjunction and box, then p becomes Dia^(k+1) Box false and
/// Box psi becomes Box(Dia^k Box false | f(psi)), k = md(f).
Formula reduce_onevar_to_zerovar(const Formula& f);

}  // namespace modalsat

#endif  // MODALSAT_REDUCTIONS_HPP
