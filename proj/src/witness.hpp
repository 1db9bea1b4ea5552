// Incremental world store shared by the model-building procedures.

#ifndef MODALSAT_SRC_WITNESS_HPP
#define MODALSAT_SRC_WITNESS_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "modalsat/kripke.hpp"

namespace modalsat::detail {

class WorldStore {
public:
    int add(std::set<std::string> true_vars, std::vector<int> successors, bool self_loop = false) {
        const int id = static_cast<int>(worlds_.size());
        if (self_loop) successors.push_back(id);
        worlds_.push_back({std::move(true_vars), std::move(successors)});
        return id;
    }

    // Worlds reachable from `root`, renumbered 0.. in breadth-first order.
    KripkeModel extract(int root) const {
        std::map<int, int> renumber{{root, 0}};
        std::vector<int> queue{root};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            for (int s : worlds_[static_cast<std::size_t>(queue[i])].successors) {
                if (renumber.emplace(s, static_cast<int>(queue.size())).second) queue.push_back(s);
            }
        }
        KripkeModel m;
        m.root = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const auto& w = worlds_[static_cast<std::size_t>(queue[i])];
            const int id = static_cast<int>(i);
            m.worlds.push_back(id);
            for (const auto& v : w.true_vars) m.valuation[v].insert(id);
            std::set<int> seen;
            for (int s : w.successors) {
                if (seen.insert(s).second) m.relation.emplace_back(id, renumber.at(s));
            }
        }
        return m;
    }

private:
    struct World {
        std::set<std::string> true_vars;
        std::vector<int> successors;
    };
    std::vector<World> worlds_;
};

}  // namespace modalsat::detail

#endif  // MODALSAT_SRC_WITNESS_HPP
