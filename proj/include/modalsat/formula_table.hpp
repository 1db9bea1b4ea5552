#ifndef MODALSAT_FORMULA_TABLE_HPP
#define MODALSAT_FORMULA_TABLE_HPP

#include <unordered_map>
#include <vector>

#include "modalsat/formula.hpp"

namespace modalsat {

/// Interns structurally equal formulas to dense integer ids. Ids are handed
/// out in first-seen order and are only meaningful within one table.
class FormulaTable {
public:
    int intern(const Formula& f) {
        auto [it, inserted] = ids_.try_emplace(f, static_cast<int>(formulas_.size()));
        if (inserted) formulas_.push_back(f);
        return it->second;
    }

    const Formula& at(int id) const { return formulas_.at(static_cast<std::size_t>(id)); }
    std::size_t size() const noexcept { return formulas_.size(); }

private:
    std::unordered_map<Formula, int, FormulaHash> ids_;
    std::vector<Formula> formulas_;
};

}  // namespace modalsat

#endif  // MODALSAT_FORMULA_TABLE_HPP
