#include "modalsat/generate.hpp"

#include <functional>
#include <stdexcept>

namespace modalsat {

std::vector<std::string> generator_variables(std::size_t count) {
    static const char* const kNames[] = {"p", "q", "r", "s"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(i < 4 ? std::string(kNames[i]) : "v" + std::to_string(i + 1));
    }
    return out;
}

namespace {

struct Entry {
    Formula f;
    std::size_t size;
    std::size_t depth;
};

class Enumerator {
public:
    explicit Enumerator(const GeneratorSpec& spec) : spec_(spec), vars_(generator_variables(spec.max_vars)) {}

    std::vector<Formula> run() {
        by_size_.resize(spec_.max_size + 1);
        for (std::size_t s = 1; s <= spec_.max_size; ++s) {
            std::vector<Entry> level;
            if (s == 1) atoms(level);
            if (s >= 2) unary(s, level);
            if (s >= 3) {
                if (spec_.fragment.contains(Op::And)) nary(s, Kind::And, level);
                if (spec_.fragment.contains(Op::Or)) nary(s, Kind::Or, level);
            }
            for (Entry& e : level) {
                order_.push_back({s, by_size_[s].size()});
                by_size_[s].push_back(std::move(e));
            }
        }
        std::vector<Formula> out;
        for (const auto& level : by_size_) {
            for (const Entry& e : level) out.push_back(e.f);
        }
        return out;
    }

private:
    void atoms(std::vector<Entry>& level) {
        for (const std::string& v : vars_) level.push_back({Formula::var(v), 1, 0});
        if (spec_.fragment.contains(Op::AtNeg)) {
            for (const std::string& v : vars_) level.push_back({Formula::neg_var(v), 1, 0});
        }
        if (spec_.fragment.contains(Op::True)) level.push_back({Formula::top(), 1, 0});
        if (spec_.fragment.contains(Op::False)) level.push_back({Formula::bottom(), 1, 0});
    }

    void unary(std::size_t s, std::vector<Entry>& level) {
        for (const Entry& g : by_size_[s - 1]) {
            if (g.depth < spec_.max_depth) {
                if (spec_.fragment.contains(Op::Box)) level.push_back({Formula::box(g.f), s, g.depth + 1});
                if (spec_.fragment.contains(Op::Dia)) level.push_back({Formula::dia(g.f), s, g.depth + 1});
            }
            if (spec_.fragment.contains(Op::Neg) && g.f.kind() != Kind::Not) {
                level.push_back({Formula::negation(g.f), s, g.depth});
            }
        }
    }

    // Operands drawn in increasing catalog order with sizes summing to s - 1.
    void nary(std::size_t s, Kind kind, std::vector<Entry>& level) {
        std::vector<const Entry*> picked;
        std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t remaining) {
            if (remaining == 0) {
                if (picked.size() < 2) return;
                std::vector<Formula> kids;
                std::size_t depth = 0;
                for (const Entry* e : picked) {
                    kids.push_back(e->f);
                    depth = std::max(depth, e->depth);
                }
                Formula f = kind == Kind::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
                level.push_back({std::move(f), s, depth});
                return;
            }
            if (picked.size() == spec_.max_width) return;
            for (std::size_t i = from; i < order_.size(); ++i) {
                const Entry& e = by_size_[order_[i].first][order_[i].second];
                if (e.size > remaining) break;
                if (e.f.kind() == kind) continue;
                picked.push_back(&e);
                pick(i + 1, remaining - e.size);
                picked.pop_back();
            }
        };
        pick(0, s - 1);
    }

    const GeneratorSpec& spec_;
    std::vector<std::string> vars_;
    std::vector<std::vector<Entry>> by_size_;
    // Catalog order: (size, index within size), sizes non-decreasing.
    std::vector<std::pair<std::size_t, std::size_t>> order_;
};

}  // namespace

Formula random_formula(const GeneratorSpec& spec, std::mt19937_64& rng) {
    const auto vars = generator_variables(std::max<std::size_t>(1, spec.max_vars));
    const OperatorSet ops = spec.fragment;
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    std::function<Formula(std::size_t, std::size_t)> gen = [&](std::size_t depth, std::size_t nesting) -> Formula {
        enum Choice { Atom, Modal, Negation, Nary };
        std::vector<Choice> choices{Atom, Atom};
        if (depth > 0 && (ops.contains(Op::Box) || ops.contains(Op::Dia))) choices.insert(choices.end(), 3, Modal);
        if (ops.contains(Op::Neg) && nesting < 4) choices.push_back(Negation);
        if (nesting < 2 && spec.max_width >= 2 && (ops.contains(Op::And) || ops.contains(Op::Or))) {
            choices.insert(choices.end(), 3, Nary);
        }
        switch (choices[pick(choices.size())]) {
            case Atom: {
                std::vector<Formula> atoms;
                for (const auto& v : vars) {
                    atoms.push_back(Formula::var(v));
                    if (ops.contains(Op::AtNeg)) atoms.push_back(Formula::neg_var(v));
                }
                if (ops.contains(Op::True)) atoms.push_back(Formula::top());
                if (ops.contains(Op::False)) atoms.push_back(Formula::bottom());
                return atoms[pick(atoms.size())];
            }
            case Modal: {
                bool use_box = ops.contains(Op::Box);
                if (use_box && ops.contains(Op::Dia)) use_box = pick(2) == 0;
                Formula body = gen(depth - 1, 0);
                return use_box ? Formula::box(std::move(body)) : Formula::dia(std::move(body));
            }
            case Negation: return Formula::negation(gen(depth, nesting + 1));
            case Nary: {
                bool use_and = ops.contains(Op::And);
                if (use_and && ops.contains(Op::Or)) use_and = pick(2) == 0;
                const std::size_t width = 2 + pick(spec.max_width - 1);
                std::vector<Formula> kids;
                for (std::size_t i = 0; i < width; ++i) kids.push_back(gen(depth, nesting + 1));
                return use_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
            }
        }
        throw std::logic_error("unreachable");
    };
    return gen(spec.max_depth, 0);
}

std::vector<Formula> generate_formulas(const GeneratorSpec& spec) {
    if (spec.max_vars == 0) throw std::invalid_argument("generator needs at least one variable");
    if (spec.seed) {
        std::mt19937_64 rng(*spec.seed);
        std::vector<Formula> out;
        out.reserve(spec.samples);
        for (std::size_t i = 0; i < spec.samples; ++i) out.push_back(random_formula(spec, rng));
        return out;
    }
    return Enumerator(spec).run();
}

}  // namespace modalsat
