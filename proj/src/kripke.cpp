#include "modalsat/kripke.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace modalsat {

namespace {

void validate_frame(const std::vector<int>& worlds, const std::vector<std::pair<int, int>>& relation, int root) {
    if (worlds.empty()) throw std::invalid_argument("a frame needs at least one world");
    std::set<int> ids(worlds.begin(), worlds.end());
    if (ids.size() != worlds.size()) throw std::invalid_argument("duplicate world id");
    if (!ids.contains(root)) throw std::invalid_argument("root " + std::to_string(root) + " is not a world");
    for (auto [from, to] : relation) {
        if (!ids.contains(from) || !ids.contains(to)) {
            throw std::invalid_argument("edge (" + std::to_string(from) + "," + std::to_string(to) +
                                        ") leaves the world set");
        }
    }
}

std::vector<int> successors_of(const std::vector<std::pair<int, int>>& relation, int world) {
    std::vector<int> out;
    for (auto [from, to] : relation) {
        if (from == world) out.push_back(to);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Truth sets of every subformula over the dense world indices of a model.
class Evaluator {
public:
    explicit Evaluator(const KripkeModel& model) : model_(model) {
        for (std::size_t i = 0; i < model.worlds.size(); ++i) index_[model.worlds[i]] = i;
        succ_.resize(model.worlds.size());
        for (auto [from, to] : model.relation) succ_[index_.at(from)].push_back(index_.at(to));
    }

    std::size_t index(int world) const {
        auto it = index_.find(world);
        if (it == index_.end()) throw std::out_of_range("unknown world " + std::to_string(world));
        return it->second;
    }

    const std::vector<bool>& truth(const Formula& f) {
        if (auto it = memo_.find(f.identity()); it != memo_.end()) return it->second;
        const std::size_t n = model_.worlds.size();
        std::vector<bool> out(n, false);
        switch (f.kind()) {
            case Kind::Var:
            case Kind::NegVar: {
                const bool positive = f.kind() == Kind::Var;
                for (std::size_t i = 0; i < n; ++i) out[i] = model_.holds(f.name(), model_.worlds[i]) == positive;
                break;
            }
            case Kind::True: out.assign(n, true); break;
            case Kind::False: break;
            case Kind::Not: {
                const auto& c = truth(f.child());
                for (std::size_t i = 0; i < n; ++i) out[i] = !c[i];
                break;
            }
            case Kind::And:
            case Kind::Or: {
                const bool is_and = f.kind() == Kind::And;
                out.assign(n, is_and);
                for (const Formula& child : f.children()) {
                    const auto& c = truth(child);
                    for (std::size_t i = 0; i < n; ++i) out[i] = is_and ? (out[i] && c[i]) : (out[i] || c[i]);
                }
                break;
            }
            case Kind::Box:
            case Kind::Dia: {
                const auto& c = truth(f.child());
                const bool is_box = f.kind() == Kind::Box;
                for (std::size_t i = 0; i < n; ++i) {
                    bool value = is_box;
                    for (std::size_t s : succ_[i]) {
                        if (is_box && !c[s]) value = false;
                        if (!is_box && c[s]) value = true;
                    }
                    out[i] = value;
                }
                break;
            }
        }
        return memo_.emplace(f.identity(), std::move(out)).first->second;
    }

private:
    const KripkeModel& model_;
    std::unordered_map<int, std::size_t> index_;
    std::vector<std::vector<std::size_t>> succ_;
    // Keyed by node identity; the formula outlives the evaluator.
    std::unordered_map<const void*, std::vector<bool>> memo_;
};

}  // namespace

void Frame::validate() const { validate_frame(worlds, relation, root); }
std::vector<int> Frame::successors(int world) const { return successors_of(relation, world); }

void KripkeModel::validate() const {
    validate_frame(worlds, relation, root);
    std::set<int> ids(worlds.begin(), worlds.end());
    for (const auto& [name, set] : valuation) {
        for (int w : set) {
            if (!ids.contains(w)) throw std::invalid_argument("valuation of " + name + " mentions unknown world");
        }
    }
}

std::vector<int> KripkeModel::successors(int world) const { return successors_of(relation, world); }

bool KripkeModel::holds(const std::string& variable, int world) const {
    auto it = valuation.find(variable);
    return it != valuation.end() && it->second.contains(world);
}

FrameClass FrameClass::fixed_frame(Frame frame) {
    frame.validate();
    return {FrameTag::Fixed, std::move(frame)};
}

std::string to_string(FrameTag tag) {
    switch (tag) {
        case FrameTag::K: return "k";
        case FrameTag::Serial: return "kd";
        case FrameTag::AtMostOne: return "le1";
        case FrameTag::AtMostTwo: return "le2";
        case FrameTag::Fixed: return "fixed";
    }
    return "?";
}

Frame frame3() { return {{0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}}, 0}; }

bool conforms(const KripkeModel& model, const FrameClass& frame_class) {
    auto edge_set = [](const std::vector<std::pair<int, int>>& rel) {
        return std::set<std::pair<int, int>>(rel.begin(), rel.end());
    };
    for (int w : model.worlds) {
        const std::size_t out = model.successors(w).size();
        switch (frame_class.tag) {
            case FrameTag::Serial:
                if (out < 1) return false;
                break;
            case FrameTag::AtMostOne:
                if (out > 1) return false;
                break;
            case FrameTag::AtMostTwo:
                if (out > 2) return false;
                break;
            case FrameTag::K:
            case FrameTag::Fixed: break;
        }
    }
    if (frame_class.tag == FrameTag::Fixed) {
        const Frame& frame = frame_class.fixed.value();
        return std::set<int>(frame.worlds.begin(), frame.worlds.end()) ==
                   std::set<int>(model.worlds.begin(), model.worlds.end()) &&
               edge_set(frame.relation) == edge_set(model.relation);
    }
    return true;
}

bool evaluate(const KripkeModel& model, int world, const Formula& f) {
    Evaluator ev(model);
    const std::size_t i = ev.index(world);
    return ev.truth(f)[i];
}

std::vector<int> satisfying_worlds(const KripkeModel& model, const Formula& f) {
    Evaluator ev(model);
    const auto& t = ev.truth(f);
    std::vector<int> out;
    for (std::size_t i = 0; i < model.worlds.size(); ++i) {
        if (t[i]) out.push_back(model.worlds[i]);
    }
    return out;
}

void to_json(nlohmann::json& j, const Frame& frame) {
    j = nlohmann::json{{"worlds", frame.worlds}, {"relation", nlohmann::json::array()}, {"root", frame.root}};
    for (auto [from, to] : frame.relation) j["relation"].push_back({from, to});
}

void from_json(const nlohmann::json& j, Frame& frame) {
    frame.worlds = j.at("worlds").get<std::vector<int>>();
    frame.relation.clear();
    for (const auto& edge : j.at("relation")) {
        if (!edge.is_array() || edge.size() != 2) throw std::invalid_argument("relation entries must be pairs");
        frame.relation.emplace_back(edge[0].get<int>(), edge[1].get<int>());
    }
    frame.root = j.at("root").get<int>();
    frame.validate();
}

void to_json(nlohmann::json& j, const KripkeModel& model) {
    to_json(j, model.frame());
    nlohmann::json val = nlohmann::json::object();
    for (const auto& [name, set] : model.valuation) {
        if (!set.empty()) val[name] = std::vector<int>(set.begin(), set.end());
    }
    j["valuation"] = std::move(val);
}

void from_json(const nlohmann::json& j, KripkeModel& model) {
    Frame frame;
    from_json(j, frame);
    model.worlds = std::move(frame.worlds);
    model.relation = std::move(frame.relation);
    model.root = frame.root;
    model.valuation.clear();
    if (j.contains("valuation")) {
        for (const auto& [name, worlds] : j.at("valuation").items()) {
            auto ws = worlds.get<std::vector<int>>();
            model.valuation[name] = std::set<int>(ws.begin(), ws.end());
        }
    }
    model.validate();
}

}  // namespace modalsat
