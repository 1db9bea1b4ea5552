#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "modalsat/formula_table.hpp"
#include "modalsat/procedures.hpp"
#include "witness.hpp"

namespace modalsat {

namespace {

void require_poor_mans(const Formula& f, const char* who) {
    if (!is_poor_mans(f)) {
        throw NotInFragment(std::string(who) + ": " + render(f) + " is not a poor man's formula");
    }
}

using Set = std::vector<int>;

void canon(Set& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

std::string describe(const FormulaTable& table, const std::vector<int>& ids) {
    std::string out;
    for (int id : ids) {
        if (!out.empty()) out += ", ";
        out += render(table.at(id));
    }
    return out;
}

// Conjunct decomposition of one world's obligations.
struct Parts {
    std::set<std::string> pos, neg;
    std::vector<int> boxes, dias;
    std::optional<std::string> clash;
};

Parts split(const FormulaTable& table, const Set& s) {
    Parts p;
    for (int id : s) {
        const Formula& f = table.at(id);
        switch (f.kind()) {
            case Kind::Var: p.pos.insert(f.name()); break;
            case Kind::NegVar: p.neg.insert(f.name()); break;
            case Kind::Box: p.boxes.push_back(id); break;
            case Kind::Dia: p.dias.push_back(id); break;
            default: throw std::logic_error("unexpected connective in poor man's formula");
        }
    }
    for (const auto& v : p.pos) {
        if (p.neg.contains(v)) {
            p.clash = v;
            break;
        }
    }
    return p;
}

void add_conjuncts(FormulaTable& table, Set& s, const Formula& f) {
    for (const Formula& c : conjuncts(f)) s.push_back(table.intern(c));
}

class PoorK {
public:
    SatVerdict run(const Formula& f) {
        Set root;
        add_conjuncts(table_, root, f);
        canon(root);
        SatVerdict v;
        v.procedure = "poorman_sat_k";
        if (auto w = solve(root)) {
            v.decision = Decision::Sat;
            v.witness = store_.extract(*w);
        }
        v.trace = std::move(trace_);
        v.steps = steps_;
        return v;
    }

private:
    std::optional<int> solve(const Set& s) {
        ++steps_;
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
        auto result = expand(s);
        memo_.emplace(s, result);
        return result;
    }

    std::optional<int> expand(const Set& s) {
        Parts p = split(table_, s);
        if (p.clash) {
            trace_.push_back({"clash", s, "complementary literals on " + *p.clash});
            return std::nullopt;
        }
        std::vector<int> succ;
        for (int d : p.dias) {
            Set t;
            for (int b : p.boxes) add_conjuncts(table_, t, table_.at(b).child());
            add_conjuncts(table_, t, table_.at(d).child());
            canon(t);
            auto w = solve(t);
            if (!w) {
                trace_.push_back({"diamond", {d}, describe(table_, {d})});
                return std::nullopt;
            }
            succ.push_back(*w);
        }
        return store_.add(std::move(p.pos), std::move(succ));
    }

    FormulaTable table_;
    std::map<Set, std::optional<int>> memo_;
    detail::WorldStore store_;
    std::vector<TraceStep> trace_;
    std::size_t steps_ = 0;
};

class PairTable {
public:
    explicit PairTable(const Formula& f) : root_(table_.intern(f)) {}

    int root() const { return root_; }
    const FormulaTable& table() const { return table_; }
    std::size_t entries() const { return memo_.size(); }

    bool sat(int a, int b) {
        if (a > b) std::swap(a, b);
        if (auto it = memo_.find({a, b}); it != memo_.end()) return it->second;
        const bool result = compute(a, b);
        memo_.emplace(std::make_pair(a, b), result);
        return result;
    }

    // First failing sub-pair of a failing pair, following the same rules.
    std::optional<std::pair<int, int>> cause(int a, int b) {
        for (auto [x, y] : reductions(a, b)) {
            if (!sat(x, y)) return std::make_pair(x, y);
        }
        return std::nullopt;
    }

private:
    static int rank(Kind k) { return k == Kind::Box ? 1 : k == Kind::Dia ? 2 : 0; }

    int body(int id) { return table_.intern(table_.at(id).child()); }

    // The pairs whose joint satisfiability decides (a, b); empty for two literals.
    std::vector<std::pair<int, int>> reductions(int a, int b) {
        const Formula& fa = table_.at(a);
        const Formula& fb = table_.at(b);
        if (fa.kind() == Kind::And || fb.kind() == Kind::And) {
            Set all;
            add_conjuncts(table_, all, table_.at(a));
            add_conjuncts(table_, all, table_.at(b));
            canon(all);
            std::vector<std::pair<int, int>> out;
            for (std::size_t i = 0; i < all.size(); ++i) {
                for (std::size_t j = i; j < all.size(); ++j) out.emplace_back(all[i], all[j]);
            }
            return out;
        }
        if (rank(fa.kind()) > rank(fb.kind())) std::swap(a, b);
        const Kind ka = table_.at(a).kind();
        const Kind kb = table_.at(b).kind();
        if (rank(ka) == 0 && rank(kb) == 0) return {};
        if (rank(ka) == 0) return {{body(b), body(b)}};
        if (ka == Kind::Box) return {{body(a), body(b)}};
        return {{body(a), body(a)}, {body(b), body(b)}};
    }

    bool compute(int a, int b) {
        const Formula& fa = table_.at(a);
        const Formula& fb = table_.at(b);
        if (fa.is_literal() && fb.is_literal()) return !(fa.name() == fb.name() && fa.kind() != fb.kind());
        for (auto [x, y] : reductions(a, b)) {
            if (!sat(x, y)) return false;
        }
        return true;
    }

    FormulaTable table_;
    int root_;
    std::map<std::pair<int, int>, bool> memo_;
};

}  // namespace

SatVerdict poorman_sat_k(const Formula& f) {
    require_poor_mans(f, "poorman_sat_k");
    return PoorK().run(f);
}

SatVerdict poorman_sat_le1(const Formula& f) {
    require_poor_mans(f, "poorman_sat_le1");
    FormulaTable table;
    SatVerdict v;
    v.procedure = "poorman_sat_le1";
    Set s;
    add_conjuncts(table, s, f);
    canon(s);
    std::vector<std::set<std::string>> chain;
    while (true) {
        ++v.steps;
        Parts p = split(table, s);
        if (p.clash) {
            v.trace.push_back({"clash", s, "depth " + std::to_string(chain.size()) + ": complementary literals on " +
                                               *p.clash});
            return v;
        }
        chain.push_back(std::move(p.pos));
        if (p.dias.empty()) break;
        Set next;
        for (int b : p.boxes) add_conjuncts(table, next, table.at(b).child());
        for (int d : p.dias) add_conjuncts(table, next, table.at(d).child());
        canon(next);
        s = std::move(next);
    }
    KripkeModel m;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const int id = static_cast<int>(i);
        m.worlds.push_back(id);
        if (i + 1 < chain.size()) m.relation.emplace_back(id, id + 1);
        for (const auto& var : chain[i]) m.valuation[var].insert(id);
    }
    v.decision = Decision::Sat;
    v.witness = std::move(m);
    return v;
}

SatVerdict poorman_sat_kd_pairs(const Formula& f) {
    require_poor_mans(f, "poorman_sat_kd_pairs");
    PairTable pairs(f);
    SatVerdict v;
    v.procedure = "poorman_sat_kd_pairs";
    const bool ok = pairs.sat(pairs.root(), pairs.root());
    v.decision = ok ? Decision::Sat : Decision::Unsat;
    if (!ok) {
        // Walk down the failing pairs to the literal clash at the bottom.
        std::pair<int, int> at{pairs.root(), pairs.root()};
        while (auto next = pairs.cause(at.first, at.second)) {
            at = *next;
            v.trace.push_back({"pair", {at.first, at.second}, describe(pairs.table(), {at.first, at.second})});
        }
    }
    v.steps = pairs.entries();
    return v;
}

}  // namespace modalsat
