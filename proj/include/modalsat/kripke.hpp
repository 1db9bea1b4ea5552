// Finite Kripke frames and models, the truth relation, and the JSON forms
// used by the command-line tool.

#ifndef MODALSAT_KRIPKE_HPP
#define MODALSAT_KRIPKE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "modalsat/formula.hpp"

namespace modalsat {

struct Frame {
    std::vector<int> worlds;
    std::vector<std::pair<int, int>> relation;
    int root = 0;

    /// Throws std::invalid_argument when root or an edge endpoint is not a world.
    void validate() const;
    std::vector<int> successors(int world) const;
};

struct KripkeModel {
    std::vector<int> worlds;
    std::vector<std::pair<int, int>> relation;
    /// Variables missing from the map are false everywhere.
    std::map<std::string, std::set<int>> valuation;
    int root = 0;

    void validate() const;
    std::vector<int> successors(int world) const;
    Frame frame() const { return {worlds, relation, root}; }
    bool holds(const std::string& variable, int world) const;
};

enum class FrameTag { K, Serial, AtMostOne, AtMostTwo, Fixed };

struct FrameClass {
    FrameTag tag = FrameTag::K;
    std::optional<Frame> fixed;

    static FrameClass k() { return {FrameTag::K, {}}; }
    static FrameClass serial() { return {FrameTag::Serial, {}}; }
    static FrameClass at_most_one() { return {FrameTag::AtMostOne, {}}; }
    static FrameClass at_most_two() { return {FrameTag::AtMostTwo, {}}; }
    static FrameClass fixed_frame(Frame frame);
};

std::string to_string(FrameTag tag);

/// The root with three leaves: root 0, relation {(0,1),(0,2),(0,3)}.
Frame frame3();

/// Serial, at-most-one and at-most-two are checked on every world; a fixed
/// frame must match the model's worlds and relation exactly.
bool conforms(const KripkeModel& model, const FrameClass& frame_class);

/// Truth of `f` at `world`. Throws std::out_of_range for an unknown world.
bool evaluate(const KripkeModel& model, int world, const Formula& f);

/// Worlds of `model` (in model order) where `f` holds.
std::vector<int> satisfying_worlds(const KripkeModel& model, const Formula& f);

void to_json(nlohmann::json& j, const Frame& frame);
void from_json(const nlohmann::json& j, Frame& frame);
void to_json(nlohmann::json& j, const KripkeModel& model);
void from_json(const nlohmann::json& j, KripkeModel& model);

}  // namespace modalsat

#endif  // MODALSAT_KRIPKE_HPP
