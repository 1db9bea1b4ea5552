#include "modalsat/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace modalsat {

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxWorlds = 64;

Mask all_worlds(std::size_t n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Frame over worlds 0..n-1 with successor bitmasks.
struct DenseFrame {
    std::size_t n = 0;
    std::vector<Mask> succ;
};

// Formula flattened to postorder so that children are evaluated first.
struct Instr {
    Kind kind;
    int var = -1;
    std::vector<int> kids;
};

struct Compiled {
    std::vector<Instr> code;
    std::vector<std::string> vars;
    // Modal nesting depths at which each variable occurs.
    std::vector<std::set<std::size_t>> var_depths;

    explicit Compiled(const Formula& f) {
        for (const std::string& v : variables(f)) vars.push_back(v);
        var_depths.resize(vars.size());
        std::unordered_map<const void*, int> seen;
        emit(f, seen);
        record_depths(f, 0);
    }

    int var_index(const std::string& name) const {
        return static_cast<int>(std::lower_bound(vars.begin(), vars.end(), name) - vars.begin());
    }

private:
    int emit(const Formula& f, std::unordered_map<const void*, int>& seen) {
        if (auto it = seen.find(f.identity()); it != seen.end()) return it->second;
        Instr ins{f.kind(), -1, {}};
        for (const Formula& c : f.children()) ins.kids.push_back(emit(c, seen));
        if (f.is_literal()) ins.var = var_index(f.name());
        code.push_back(std::move(ins));
        const int id = static_cast<int>(code.size()) - 1;
        seen.emplace(f.identity(), id);
        return id;
    }

    void record_depths(const Formula& f, std::size_t depth) {
        if (f.is_literal()) var_depths[static_cast<std::size_t>(var_index(f.name()))].insert(depth);
        const bool modal = f.kind() == Kind::Box || f.kind() == Kind::Dia;
        for (const Formula& c : f.children()) record_depths(c, depth + (modal ? 1 : 0));
    }
};

// Kleene evaluation over all worlds at once. For each variable, `known`
// marks assigned worlds and `value` their truth. Returns the masks of worlds
// where the root is definitely true and definitely false.
class ThreeValued {
public:
    ThreeValued(const Compiled& c, const DenseFrame& frame)
        : c_(c), frame_(frame), t_(c.code.size()), f_(c.code.size()) {}

    std::pair<Mask, Mask> run(const std::vector<Mask>& known, const std::vector<Mask>& value) {
        const Mask all = all_worlds(frame_.n);
        for (std::size_t i = 0; i < c_.code.size(); ++i) {
            const Instr& ins = c_.code[i];
            Mask t = 0, f = 0;
            switch (ins.kind) {
                case Kind::Var:
                case Kind::NegVar: {
                    const auto v = static_cast<std::size_t>(ins.var);
                    const Mask pos = known[v] & value[v];
                    const Mask neg = known[v] & ~value[v];
                    t = ins.kind == Kind::Var ? pos : neg;
                    f = ins.kind == Kind::Var ? neg : pos;
                    break;
                }
                case Kind::True: t = all; break;
                case Kind::False: f = all; break;
                case Kind::Not:
                    t = f_[static_cast<std::size_t>(ins.kids[0])];
                    f = t_[static_cast<std::size_t>(ins.kids[0])];
                    break;
                case Kind::And:
                    t = all;
                    for (int k : ins.kids) {
                        t &= t_[static_cast<std::size_t>(k)];
                        f |= f_[static_cast<std::size_t>(k)];
                    }
                    break;
                case Kind::Or:
                    f = all;
                    for (int k : ins.kids) {
                        t |= t_[static_cast<std::size_t>(k)];
                        f &= f_[static_cast<std::size_t>(k)];
                    }
                    break;
                case Kind::Box:
                case Kind::Dia: {
                    const Mask ct = t_[static_cast<std::size_t>(ins.kids[0])];
                    const Mask cf = f_[static_cast<std::size_t>(ins.kids[0])];
                    for (std::size_t w = 0; w < frame_.n; ++w) {
                        const Mask s = frame_.succ[w];
                        const Mask bit = Mask{1} << w;
                        if (ins.kind == Kind::Box) {
                            if ((s & ~ct) == 0) t |= bit;
                            if ((s & cf) != 0) f |= bit;
                        } else {
                            if ((s & ct) != 0) t |= bit;
                            if ((s & ~cf) == 0) f |= bit;
                        }
                    }
                    break;
                }
            }
            t_[i] = t & all;
            f_[i] = f & all;
        }
        return {t_.back(), f_.back()};
    }

private:
    const Compiled& c_;
    const DenseFrame& frame_;
    std::vector<Mask> t_;
    std::vector<Mask> f_;
};

struct Found {
    std::vector<Mask> value;
    std::size_t world = 0;
};

// Depth-first search over the relevant (world, variable) bits. Bits that no
// occurrence of a variable can observe from a candidate world stay false.
std::optional<Found> search_valuation(const Compiled& c, const DenseFrame& frame, Mask candidates) {
    const std::size_t nv = c.vars.size();
    std::size_t max_depth = 0;
    for (const auto& ds : c.var_depths) {
        if (!ds.empty()) max_depth = std::max(max_depth, *ds.rbegin());
    }
    std::vector<Mask> reach{candidates};
    for (std::size_t d = 1; d <= max_depth; ++d) {
        Mask next = 0;
        for (std::size_t w = 0; w < frame.n; ++w) {
            if (reach.back() >> w & 1) next |= frame.succ[w];
        }
        reach.push_back(next);
    }

    std::vector<Mask> known(nv, all_worlds(frame.n));
    std::vector<Mask> value(nv, 0);
    std::vector<std::pair<std::size_t, std::size_t>> bits;  // (var, world)
    for (std::size_t v = 0; v < nv; ++v) {
        Mask relevant = 0;
        for (std::size_t d : c.var_depths[v]) relevant |= reach[d];
        known[v] &= ~relevant;
        for (std::size_t w = frame.n; w-- > 0;) {
            if (relevant >> w & 1) bits.emplace_back(v, w);
        }
    }

    ThreeValued ev(c, frame);
    std::optional<Found> found;
    std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
        auto [t, f] = ev.run(known, value);
        if ((t & candidates) != 0) {
            found = Found{value, static_cast<std::size_t>(std::countr_zero(t & candidates))};
            return true;
        }
        if ((f & candidates) == candidates || k == bits.size()) return false;
        auto [v, w] = bits[k];
        const Mask bit = Mask{1} << w;
        known[v] |= bit;
        value[v] |= bit;
        if (dfs(k + 1)) return true;
        value[v] &= ~bit;
        if (dfs(k + 1)) return true;
        known[v] &= ~bit;
        return false;
    };
    dfs(0);
    if (found) {
        // Unassigned bits are irrelevant; pin them to false.
        for (std::size_t v = 0; v < nv; ++v) found->value[v] &= known[v];
    }
    return found;
}

// ---------------------------------------------------------------------------
// Tree shapes

using Shape = std::vector<int>;  // parent of each world in preorder; root has -1

class ShapeCatalog {
public:
    explicit ShapeCatalog(std::size_t branch_cap) : cap_(branch_cap) {}

    // Unordered rooted trees with exactly `size` nodes, height <= depth.
    const std::vector<Shape>& get(std::size_t depth, std::size_t size) {
        auto key = std::make_pair(depth, size);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<Shape> out;
        if (size == 1) {
            out.push_back({-1});
        } else if (depth > 0 && cap_ > 0) {
            std::vector<std::pair<std::size_t, std::size_t>> picks;
            combine(depth - 1, size - 1, size - 1, SIZE_MAX, picks, out);
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    // Children as a non-increasing sequence of (size, index) pairs.
    void combine(std::size_t depth, std::size_t remaining, std::size_t max_size, std::size_t max_index,
                 std::vector<std::pair<std::size_t, std::size_t>>& picks, std::vector<Shape>& out) {
        if (remaining == 0) {
            Shape shape{-1};
            for (auto [s, idx] : picks) {
                const Shape& sub = get(depth, s)[idx];
                const int offset = static_cast<int>(shape.size());
                for (std::size_t i = 0; i < sub.size(); ++i) {
                    shape.push_back(i == 0 ? 0 : sub[i] + offset);
                }
            }
            out.push_back(std::move(shape));
            return;
        }
        if (picks.size() == cap_) return;
        for (std::size_t s = std::min(max_size, remaining); s >= 1; --s) {
            const std::size_t count = get(depth, s).size();
            if (count == 0) continue;
            const std::size_t top = s == max_size ? std::min(max_index, count - 1) : count - 1;
            for (std::size_t idx = 0; idx <= top; ++idx) {
                picks.emplace_back(s, idx);
                combine(depth, remaining - s, s, idx, picks, out);
                picks.pop_back();
            }
        }
    }

    std::size_t cap_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Shape>> memo_;
};

DenseFrame frame_of_shape(const Shape& shape, bool loop_leaves) {
    DenseFrame frame{shape.size(), std::vector<Mask>(shape.size(), 0)};
    for (std::size_t i = 1; i < shape.size(); ++i) frame.succ[static_cast<std::size_t>(shape[i])] |= Mask{1} << i;
    if (loop_leaves) {
        for (std::size_t i = 0; i < shape.size(); ++i) {
            if (frame.succ[i] == 0) frame.succ[i] = Mask{1} << i;
        }
    }
    return frame;
}

KripkeModel model_of(const DenseFrame& frame, const Compiled& c, const std::vector<Mask>& value,
                     const std::vector<int>& ids, std::size_t root) {
    KripkeModel m;
    m.worlds = ids;
    for (std::size_t w = 0; w < frame.n; ++w) {
        for (std::size_t s = 0; s < frame.n; ++s) {
            if (frame.succ[w] >> s & 1) m.relation.emplace_back(ids[w], ids[s]);
        }
    }
    for (std::size_t v = 0; v < c.vars.size(); ++v) {
        std::set<int> worlds;
        for (std::size_t w = 0; w < frame.n; ++w) {
            if (value[v] >> w & 1) worlds.insert(ids[w]);
        }
        if (!worlds.empty()) m.valuation[c.vars[v]] = std::move(worlds);
    }
    m.root = ids[root];
    return m;
}

std::vector<int> identity_ids(std::size_t n) {
    std::vector<int> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
    return ids;
}

// ---------------------------------------------------------------------------
// Completeness bounds

std::size_t saturating_add(std::size_t a, std::size_t b, std::size_t limit) {
    return std::min(limit, a + b);
}

struct TopLevel {
    std::vector<Formula> box_bodies;
    std::vector<Formula> dia_bodies;
    bool has_or = false;
};

void split_top(const Formula& f, TopLevel& out) {
    switch (f.kind()) {
        case Kind::Box: out.box_bodies.push_back(f.child()); break;
        case Kind::Dia: out.dia_bodies.push_back(f.child()); break;
        case Kind::Or:
            out.has_or = true;
            [[fallthrough]];
        case Kind::And:
        case Kind::Not:
            for (const Formula& c : f.children()) split_top(c, out);
            break;
        default: break;
    }
}

std::size_t tree_bound(const std::vector<Formula>& set, bool serial, std::size_t limit) {
    TopLevel top;
    for (const Formula& f : set) split_top(f, top);
    std::size_t total = 1;
    for (const Formula& xi : top.dia_bodies) {
        if (total >= limit) return limit;
        std::vector<Formula> child = top.box_bodies;
        child.push_back(xi);
        total = saturating_add(total, tree_bound(child, serial, limit), limit);
    }
    if (serial && !top.box_bodies.empty() && (top.dia_bodies.empty() || top.has_or)) {
        total = saturating_add(total, tree_bound(top.box_bodies, serial, limit), limit);
    }
    return total;
}

std::size_t count_diamonds(const Formula& f, std::set<const void*>& seen) {
    if (!seen.insert(f.identity()).second) return 0;
    std::size_t n = f.kind() == Kind::Dia ? 1 : 0;
    for (const Formula& c : f.children()) n += count_diamonds(c, seen);
    return n;
}

}  // namespace

std::string to_string(OracleStatus status) {
    switch (status) {
        case OracleStatus::Sat: return "SAT";
        case OracleStatus::Unsat: return "UNSAT";
        case OracleStatus::BoundExceeded: return "BOUND_EXCEEDED";
    }
    return "?";
}

std::size_t completeness_bound(const Formula& f, FrameTag frame_class, std::size_t cap) {
    const std::size_t limit = cap + 1;
    const Formula nnf = to_nnf(f);
    const std::size_t md = modal_depth(nnf);
    switch (frame_class) {
        case FrameTag::K: return tree_bound({nnf}, false, limit);
        case FrameTag::Serial: return tree_bound({nnf}, true, limit);
        case FrameTag::AtMostOne: return std::min(limit, md + 1);
        case FrameTag::AtMostTwo: {
            if (md + 1 >= 63) return limit;
            return std::min(limit, (std::size_t{1} << (md + 1)) - 1);
        }
        case FrameTag::Fixed: break;
    }
    throw std::invalid_argument("fixed frames have no completeness bound");
}

namespace {

struct ShapeSpace {
    std::size_t branch_cap;
    bool loop_leaves;
};

ShapeSpace shape_space(const Formula& nnf, FrameTag frame_class) {
    std::set<const void*> seen;
    const std::size_t dias = count_diamonds(nnf, seen);
    switch (frame_class) {
        case FrameTag::K: return {dias, false};
        case FrameTag::Serial: return {std::max<std::size_t>(1, dias), true};
        case FrameTag::AtMostOne: return {1, false};
        case FrameTag::AtMostTwo: return {2, false};
        case FrameTag::Fixed: break;
    }
    throw std::invalid_argument("fixed frames are not enumerated");
}

}  // namespace

OracleResult brute_force_sat(const Formula& f, const FrameClass& frame_class, std::size_t max_worlds) {
    if (max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
    if (frame_class.tag == FrameTag::Fixed) return fixed_frame_sat(f, frame_class.fixed.value());
    max_worlds = std::min(max_worlds, kMaxWorlds);

    const Formula nnf = to_nnf(f);
    const std::size_t md = modal_depth(nnf);
    const Compiled compiled(nnf);
    const ShapeSpace space = shape_space(nnf, frame_class.tag);
    ShapeCatalog catalog(space.branch_cap);

    OracleResult result;
    result.completeness_bound = completeness_bound(nnf, frame_class.tag, max_worlds);
    const std::size_t limit = std::min(result.completeness_bound, max_worlds);
    for (std::size_t n = 1; n <= limit; ++n) {
        for (const Shape& shape : catalog.get(md, n)) {
            const DenseFrame frame = frame_of_shape(shape, space.loop_leaves);
            ++result.frames_searched;
            if (auto found = search_valuation(compiled, frame, Mask{1})) {
                result.status = OracleStatus::Sat;
                result.witness = model_of(frame, compiled, found->value, identity_ids(n), 0);
                return result;
            }
        }
    }
    result.status = result.completeness_bound <= max_worlds ? OracleStatus::Unsat : OracleStatus::BoundExceeded;
    return result;
}

OracleResult fixed_frame_sat(const Formula& f, const Frame& frame) {
    frame.validate();
    if (frame.worlds.size() > kMaxWorlds) throw std::invalid_argument("fixed frames are limited to 64 worlds");
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < frame.worlds.size(); ++i) index[frame.worlds[i]] = i;
    DenseFrame dense{frame.worlds.size(), std::vector<Mask>(frame.worlds.size(), 0)};
    for (auto [from, to] : frame.relation) dense.succ[index.at(from)] |= Mask{1} << index.at(to);

    const Compiled compiled(f);
    OracleResult result;
    result.completeness_bound = frame.worlds.size();
    result.frames_searched = 1;
    if (auto found = search_valuation(compiled, dense, all_worlds(dense.n))) {
        result.status = OracleStatus::Sat;
        result.witness = model_of(dense, compiled, found->value, frame.worlds, found->world);
    } else {
        result.status = OracleStatus::Unsat;
    }
    return result;
}

void for_each_model(const Formula& f, FrameTag frame_class, std::size_t max_worlds,
                    const std::function<bool(const KripkeModel&)>& visit) {
    max_worlds = std::min(max_worlds, kMaxWorlds);
    const Formula nnf = to_nnf(f);
    const std::size_t md = modal_depth(nnf);
    const Compiled compiled(nnf);
    const ShapeSpace space = shape_space(nnf, frame_class);
    ShapeCatalog catalog(space.branch_cap);
    const std::size_t nv = compiled.vars.size();

    for (std::size_t n = 1; n <= max_worlds; ++n) {
        if (n * nv > 30) throw std::invalid_argument("model enumeration too large");
        for (const Shape& shape : catalog.get(md, n)) {
            const DenseFrame frame = frame_of_shape(shape, space.loop_leaves);
            ThreeValued ev(compiled, frame);
            const std::vector<Mask> known(nv, all_worlds(n));
            std::vector<Mask> value(nv, 0);
            const std::uint64_t total = std::uint64_t{1} << (n * nv);
            for (std::uint64_t code = 0; code < total; ++code) {
                for (std::size_t v = 0; v < nv; ++v) value[v] = (code >> (v * n)) & all_worlds(n);
                if ((ev.run(known, value).first & 1) == 0) continue;
                if (!visit(model_of(frame, compiled, value, identity_ids(n), 0))) return;
            }
        }
    }
}

std::set<std::vector<bool>> assignment_coverage(const KripkeModel& model, int world,
                                                const std::vector<std::string>& vars) {
    model.validate();
    if (std::find(model.worlds.begin(), model.worlds.end(), world) == model.worlds.end()) {
        throw std::out_of_range("unknown world " + std::to_string(world));
    }
    std::set<int> frontier{world};
    for (std::size_t step = 0; step < vars.size(); ++step) {
        std::set<int> next;
        for (int w : frontier) {
            for (int s : model.successors(w)) next.insert(s);
        }
        frontier = std::move(next);
    }
    std::set<std::vector<bool>> out;
    for (int w : frontier) {
        std::vector<bool> pattern;
        pattern.reserve(vars.size());
        for (const std::string& v : vars) pattern.push_back(model.holds(v, w));
        out.insert(std::move(pattern));
    }
    return out;
}

}  // namespace modalsat
