#ifndef MODALSAT_VERDICT_HPP
#define MODALSAT_VERDICT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modalsat/kripke.hpp"

namespace modalsat {

enum class Decision { Sat, Unsat };

/// One recursion step of a decision procedure. `ids` index the subformula
/// table of the invocation that produced the trace; `detail` renders them.
struct TraceStep {
    std::string rule;
    std::vector<int> ids;
    std::string detail;
};

struct SatVerdict {
    Decision decision = Decision::Unsat;
    /// Present only on SAT, and only for procedures that build models.
    std::optional<KripkeModel> witness;
    std::vector<TraceStep> trace;
    /// Recursion steps or table entries computed; a machine-independent cost.
    std::size_t steps = 0;
    std::string procedure;

    bool sat() const noexcept { return decision == Decision::Sat; }
};

inline std::string to_string(Decision d) { return d == Decision::Sat ? "SAT" : "UNSAT"; }

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace);

}  // namespace modalsat

#endif  // MODALSAT_VERDICT_HPP
