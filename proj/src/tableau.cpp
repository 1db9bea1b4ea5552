#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <stdexcept>

#include "modalsat/formula_table.hpp"
#include "modalsat/procedures.hpp"
#include "witness.hpp"

namespace modalsat {

namespace {

constexpr std::size_t kTraceLimit = 256;

class Tableau {
public:
    explicit Tableau(FrameTag tag) : tag_(tag) {
        if (tag == FrameTag::Fixed) throw std::invalid_argument("the tableau does not handle fixed frames");
    }

    SatVerdict run(const Formula& input, std::string procedure) {
        Set root;
        add(root, to_nnf(input));
        canon(root);
        SatVerdict v;
        v.procedure = std::move(procedure);
        if (auto w = solve(root)) {
            v.decision = Decision::Sat;
            v.witness = store_.extract(*w);
        }
        v.trace = std::move(trace_);
        v.steps = steps_;
        return v;
    }

private:
    using Set = std::vector<int>;

    void add(Set& s, const Formula& f) {
        if (f.kind() == Kind::And) {
            for (const Formula& c : f.children()) add(s, c);
        } else if (f.kind() != Kind::True) {
            s.push_back(table_.intern(f));
        }
    }

    static void canon(Set& s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }

    Set with_bodies(const std::vector<int>& boxes, const std::vector<int>& extra) {
        Set t;
        for (int b : boxes) add(t, table_.at(b).child());
        for (int d : extra) add(t, table_.at(d).child());
        canon(t);
        return t;
    }

    void note(std::string rule, std::vector<int> ids) {
        if (trace_.size() >= kTraceLimit) return;
        std::string detail;
        for (int id : ids) {
            if (!detail.empty()) detail += ", ";
            detail += render(table_.at(id));
        }
        trace_.push_back({std::move(rule), std::move(ids), std::move(detail)});
    }

    std::optional<int> solve(const Set& s) {
        ++steps_;
        if (auto it = memo_.find(s); it != memo_.end()) return it->second;
        auto result = expand(s);
        memo_.emplace(s, result);
        return result;
    }

    std::optional<int> expand(const Set& s) {
        for (int id : s) {
            const Formula f = table_.at(id);
            if (f.kind() != Kind::Or) continue;
            for (const Formula& branch : f.children()) {
                Set t;
                for (int other : s) {
                    if (other != id) t.push_back(other);
                }
                add(t, branch);
                canon(t);
                if (auto w = solve(t)) return w;
            }
            note("or", {id});
            return std::nullopt;
        }

        std::set<std::string> pos, neg;
        std::vector<int> boxes, dias;
        for (int id : s) {
            const Formula& f = table_.at(id);
            switch (f.kind()) {
                case Kind::False: note("false", {id}); return std::nullopt;
                case Kind::Var: pos.insert(f.name()); break;
                case Kind::NegVar: neg.insert(f.name()); break;
                case Kind::Box: boxes.push_back(id); break;
                case Kind::Dia: dias.push_back(id); break;
                default: throw std::logic_error("tableau input not in negation normal form");
            }
        }
        for (const auto& p : pos) {
            if (neg.contains(p)) {
                note("clash", {table_.intern(Formula::var(p)), table_.intern(Formula::neg_var(p))});
                return std::nullopt;
            }
        }

        std::vector<int> succ;
        bool loop = false;
        switch (tag_) {
            case FrameTag::K:
            case FrameTag::Serial:
                for (int d : dias) {
                    auto w = solve(with_bodies(boxes, {d}));
                    if (!w) {
                        note("diamond", {d});
                        return std::nullopt;
                    }
                    succ.push_back(*w);
                }
                if (tag_ == FrameTag::Serial && dias.empty()) {
                    if (boxes.empty()) {
                        loop = true;
                    } else {
                        auto w = solve(with_bodies(boxes, {}));
                        if (!w) {
                            note("serial", boxes);
                            return std::nullopt;
                        }
                        succ.push_back(*w);
                    }
                }
                break;
            case FrameTag::AtMostOne:
                if (!dias.empty()) {
                    auto w = solve(with_bodies(boxes, dias));
                    if (!w) {
                        note("successor", dias);
                        return std::nullopt;
                    }
                    succ.push_back(*w);
                }
                break;
            case FrameTag::AtMostTwo:
                if (!dias.empty() && !split(boxes, dias, succ)) {
                    note("partition", dias);
                    return std::nullopt;
                }
                break;
            case FrameTag::Fixed: break;
        }
        return store_.add(std::move(pos), std::move(succ), loop);
    }

    // First diamond always in the first group; partitions tried by growing
    // size of that group.
    bool split(const std::vector<int>& boxes, const std::vector<int>& dias, std::vector<int>& succ) {
        const std::size_t rest = dias.size() - 1;
        if (rest >= 31) throw std::length_error("too many diamonds to partition");
        std::vector<std::uint32_t> masks(std::size_t{1} << rest);
        for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = static_cast<std::uint32_t>(m);
        std::stable_sort(masks.begin(), masks.end(),
                         [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
        for (std::uint32_t mask : masks) {
            std::vector<int> g1{dias[0]}, g2;
            for (std::size_t i = 0; i < rest; ++i) ((mask >> i) & 1u ? g1 : g2).push_back(dias[i + 1]);
            auto w1 = solve(with_bodies(boxes, g1));
            if (!w1) continue;
            if (g2.empty()) {
                succ = {*w1};
                return true;
            }
            if (auto w2 = solve(with_bodies(boxes, g2))) {
                succ = {*w1, *w2};
                return true;
            }
        }
        return false;
    }

    FrameTag tag_;
    FormulaTable table_;
    std::map<Set, std::optional<int>> memo_;
    detail::WorldStore store_;
    std::vector<TraceStep> trace_;
    std::size_t steps_ = 0;
};

}  // namespace

SatVerdict tableau_sat(const Formula& f, FrameTag frame_class) {
    switch (frame_class) {
        case FrameTag::K: return sat_k_tableau(f);
        case FrameTag::Serial: return sat_kd_tableau(f);
        case FrameTag::AtMostOne: return sat_le1(f);
        case FrameTag::AtMostTwo: return sat_le2(f);
        case FrameTag::Fixed: break;
    }
    throw std::invalid_argument("the tableau does not handle fixed frames");
}

SatVerdict sat_k_tableau(const Formula& f) { return Tableau(FrameTag::K).run(f, "sat_k_tableau"); }
SatVerdict sat_kd_tableau(const Formula& f) { return Tableau(FrameTag::Serial).run(f, "sat_kd_tableau"); }
SatVerdict sat_le1(const Formula& f) { return Tableau(FrameTag::AtMostOne).run(f, "sat_le1"); }
SatVerdict sat_le2(const Formula& f) { return Tableau(FrameTag::AtMostTwo).run(f, "sat_le2"); }

SatVerdict sat(const Formula& f, const FrameClass& frame_class) {
    if (frame_class.tag == FrameTag::Fixed) {
        throw std::invalid_argument("fixed frames are decided by fixed_frame_sat");
    }
    if (is_poor_mans(f)) {
        switch (frame_class.tag) {
            case FrameTag::K: return poorman_sat_k(f);
            case FrameTag::Serial: return poorman_sat_kd_pairs(f);
            case FrameTag::AtMostOne: return poorman_sat_le1(f);
            default: break;
        }
    }
    return tableau_sat(f, frame_class.tag);
}

nlohmann::json trace_to_json(const std::vector<TraceStep>& trace) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& step : trace) {
        out.push_back({{"rule", step.rule}, {"ids", step.ids}, {"detail", step.detail}});
    }
    return out;
}

}  // namespace modalsat
