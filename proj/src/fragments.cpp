#include "modalsat/fragments.hpp"

#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "modalsat/procedures.hpp"
#include "witness.hpp"

namespace modalsat {

namespace {

constexpr Op kNeg = Op::Neg, kAtNeg = Op::AtNeg, kAnd = Op::And, kOr = Op::Or, kBox = Op::Box, kDia = Op::Dia,
             kTrue = Op::True, kFalse = Op::False;

std::vector<Schema> build_schemas() {
    using C = Complexity;
    std::vector<Schema> s;
    const OperatorSet bases[] = {
        {kNeg, kAnd, kBox}, {kNeg, kAnd, kDia}, {kNeg, kOr, kBox}, {kNeg, kOr, kDia}, {kAtNeg, kAnd, kOr, kBox, kDia},
    };
    for (int i = 0; i < 5; ++i) s.push_back({C::PSPACEComplete, "pspace", i + 1, bases[i], {}});
    s.push_back({C::PSPACEComplete, "pspacetwo", std::nullopt, {kAnd, kOr, kBox, kDia, kFalse}, {}});

    const OperatorSet conp_upper{kAtNeg, kAnd, kBox, kDia, kTrue, kFalse};
    s.push_back({C::CoNPComplete, "conp", 1, {kAtNeg, kAnd, kBox, kDia}, {conp_upper}});
    s.push_back({C::CoNPComplete, "conp", 2, {kAnd, kBox, kDia, kFalse}, {conp_upper}});

    const OperatorSet prop{kNeg, kAtNeg, kAnd, kOr, kTrue, kFalse};
    s.push_back({C::NPComplete, "np", 1, {kNeg, kOr}, {prop}});
    s.push_back({C::NPComplete, "np", 1, {kNeg, kAnd}, {prop}});
    s.push_back({C::NPComplete,
                 "np",
                 2,
                 {kAtNeg, kAnd, kOr},
                 {{kAtNeg, kAnd, kOr, kBox, kTrue, kFalse}, {kAtNeg, kAnd, kOr, kDia, kTrue, kFalse}}});

    const OperatorSet poly[] = {
        {kNeg, kAtNeg, kBox, kDia, kTrue, kFalse}, {kAtNeg, kOr, kBox, kDia, kTrue, kFalse},
        {kAtNeg, kAnd, kBox, kTrue, kFalse},       {kAtNeg, kAnd, kDia, kTrue, kFalse},
        {kAnd, kOr, kBox, kTrue, kFalse},          {kAnd, kOr, kDia, kTrue, kFalse},
        {kAnd, kOr, kBox, kDia, kTrue},
    };
    for (int i = 0; i < 7; ++i) s.push_back({C::P, "p", i + 1, {}, {poly[i]}});
    return s;
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
    switch (f.kind()) {
        case Kind::Not: return Formula::negation(std::move(kids[0]));
        case Kind::And: return Formula::conj(std::move(kids));
        case Kind::Or: return Formula::disj(std::move(kids));
        case Kind::Box: return Formula::box(std::move(kids[0]));
        case Kind::Dia: return Formula::dia(std::move(kids[0]));
        default: return f;
    }
}

// Top-down: a node of kind `k` is replaced and not descended into.
Formula replace_outermost(const Formula& f, Kind k, const std::function<Formula(const Formula&)>& fn) {
    if (f.kind() == k) return fn(f);
    if (f.children().empty()) return f;
    std::vector<Formula> kids;
    for (const Formula& c : f.children()) kids.push_back(replace_outermost(c, k, fn));
    return rebuild(f, std::move(kids));
}

std::vector<Formula> disjuncts(const Formula& f) {
    if (f.kind() == Kind::Or) return {f.children().begin(), f.children().end()};
    return {f};
}

// Literal and constant conjuncts are jointly satisfiable.
bool atoms_consistent(const Formula& f) {
    std::unordered_map<std::string, Kind> seen;
    for (const Formula& c : conjuncts(f)) {
        if (c.kind() == Kind::False) return false;
        if (!c.is_literal()) continue;
        auto [it, inserted] = seen.emplace(c.name(), c.kind());
        if (!inserted && it->second != c.kind()) return false;
    }
    return true;
}

// Positive propositional evaluation: variables are true, modal nodes are
// decided by `modal`.
bool eval_positive(const Formula& f, const std::function<bool(const Formula&)>& modal) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::And:
            for (const Formula& c : f.children()) {
                if (!eval_positive(c, modal)) return false;
            }
            return true;
        case Kind::Or:
            for (const Formula& c : f.children()) {
                if (eval_positive(c, modal)) return true;
            }
            return false;
        case Kind::Box:
        case Kind::Dia: return modal(f);
        default: throw std::logic_error("negation in a positive fragment");
    }
}

bool poly_case(int schema, const Formula& f) {
    switch (schema) {
        case 1: {
            Formula g = to_nnf(f);
            while (g.kind() == Kind::Dia) g = g.child();
            return g.kind() != Kind::False;
        }
        case 2: {
            const auto ds = disjuncts(f);
            for (const Formula& d : ds) {
                if (d.kind() == Kind::Box || d.is_literal() || d.kind() == Kind::True) return true;
            }
            for (const Formula& d : ds) {
                if (d.kind() == Kind::Dia && poly_case(2, d.child())) return true;
            }
            return false;
        }
        case 3: return atoms_consistent(f);
        case 4:
            if (!atoms_consistent(f)) return false;
            for (const Formula& c : conjuncts(f)) {
                if (c.kind() == Kind::Dia && !poly_case(4, c.child())) return false;
            }
            return true;
        case 5: return eval_positive(f, [](const Formula&) { return true; });
        case 6: return eval_positive(f, [](const Formula& d) { return poly_case(6, d.child()); });
        case 7: return true;
        default: throw std::logic_error("no such polynomial schema");
    }
}

enum class Tri { False, True, Unknown };

Tri eval3(const Formula& f, const std::unordered_map<std::string, bool>& asg) {
    switch (f.kind()) {
        case Kind::True: return Tri::True;
        case Kind::False: return Tri::False;
        case Kind::Var:
        case Kind::NegVar: {
            auto it = asg.find(f.name());
            if (it == asg.end()) return Tri::Unknown;
            return it->second == (f.kind() == Kind::Var) ? Tri::True : Tri::False;
        }
        case Kind::Not: {
            const Tri t = eval3(f.child(), asg);
            return t == Tri::Unknown ? t : (t == Tri::True ? Tri::False : Tri::True);
        }
        case Kind::And:
        case Kind::Or: {
            const Tri absorbing = f.kind() == Kind::And ? Tri::False : Tri::True;
            Tri out = f.kind() == Kind::And ? Tri::True : Tri::False;
            for (const Formula& c : f.children()) {
                const Tri t = eval3(c, asg);
                if (t == absorbing) return absorbing;
                if (t == Tri::Unknown) out = Tri::Unknown;
            }
            return out;
        }
        default: throw std::logic_error("modal operator in a propositional formula");
    }
}

std::optional<int> np_diamond(const Formula& f, detail::WorldStore& store) {
    std::vector<int> succ;
    const Formula g = replace_outermost(f, Kind::Dia, [&](const Formula& d) {
        if (auto w = np_diamond(d.child(), store)) {
            succ.push_back(*w);
            return Formula::top();
        }
        return Formula::bottom();
    });
    auto asg = propositional_sat(g);
    if (!asg) return std::nullopt;
    return store.add(std::move(*asg), std::move(succ));
}

}  // namespace

std::string to_string(Complexity c) {
    switch (c) {
        case Complexity::P: return "P";
        case Complexity::NPComplete: return "NP-complete";
        case Complexity::CoNPComplete: return "coNP-complete";
        case Complexity::PSPACEComplete: return "PSPACE-complete";
    }
    return "?";
}

std::string ComplexityClass::to_string() const {
    std::string out = modalsat::to_string(tag) + " (Theorem " + theorem;
    if (case_number) out += ", case " + std::to_string(*case_number);
    return out + ")";
}

int ComplexityClass::level() const {
    switch (tag) {
        case Complexity::P: return 0;
        case Complexity::NPComplete:
        case Complexity::CoNPComplete: return 1;
        case Complexity::PSPACEComplete: return 2;
    }
    return 0;
}

bool Schema::matches(OperatorSet s) const {
    if (!lower.subset_of(s)) return false;
    if (upper.empty()) return true;
    for (OperatorSet u : upper) {
        if (s.subset_of(u)) return true;
    }
    return false;
}

const std::vector<Schema>& classification_schemas() {
    static const std::vector<Schema> schemas = build_schemas();
    return schemas;
}

ComplexityClass classify_operator_set(OperatorSet s) {
    for (const Schema& schema : classification_schemas()) {
        if (schema.matches(s)) return {schema.tag, schema.theorem, schema.case_number};
    }
    throw std::logic_error("operator set " + s.to_string() + " matches no schema");
}

std::optional<int> poly_schema(OperatorSet s) {
    for (const Schema& schema : classification_schemas()) {
        if (schema.tag == Complexity::P && schema.matches(s)) return schema.case_number;
    }
    return std::nullopt;
}

std::optional<std::set<std::string>> propositional_sat(const Formula& f) {
    std::unordered_map<std::string, bool> asg;
    for (const Formula& c : conjuncts(f)) {
        if (!c.is_literal()) continue;
        const bool value = c.kind() == Kind::Var;
        auto [it, inserted] = asg.emplace(c.name(), value);
        if (!inserted && it->second != value) return std::nullopt;
    }
    std::vector<std::string> free;
    for (const auto& v : variables(f)) {
        if (!asg.contains(v)) free.push_back(v);
    }
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        const Tri t = eval3(f, asg);
        if (t != Tri::Unknown) return t == Tri::True;
        for (bool value : {true, false}) {
            asg[free[i]] = value;
            if (search(i + 1)) return true;
        }
        asg.erase(free[i]);
        return false;
    };
    if (!search(0)) return std::nullopt;
    std::set<std::string> out;
    for (const auto& [v, value] : asg) {
        if (value) out.insert(v);
    }
    return out;
}

SatVerdict sat_poly_fragment(const Formula& f) {
    const auto schema = poly_schema(operator_set_of(f));
    if (!schema) throw std::invalid_argument(render(f) + " is not in a polynomial fragment");
    SatVerdict v;
    v.procedure = "sat_poly_fragment";
    v.decision = poly_case(*schema, f) ? Decision::Sat : Decision::Unsat;
    v.trace.push_back({"schema", {}, "p case " + std::to_string(*schema)});
    v.steps = 1;
    return v;
}

SatVerdict sat_np_fragment(const Formula& f) {
    const OperatorSet ops = operator_set_of(f);
    const ComplexityClass cls = classify_operator_set(ops);
    if (cls.tag != Complexity::NPComplete) throw std::invalid_argument(render(f) + " is not in an NP fragment");
    SatVerdict v;
    v.procedure = "sat_np_fragment";
    detail::WorldStore store;
    std::optional<int> root;
    if (ops.contains(Op::Dia)) {
        v.trace.push_back({"schema", {}, "np diamond"});
        root = np_diamond(f, store);
    } else {
        Formula g = f;
        if (ops.contains(Op::Box)) {
            v.trace.push_back({"schema", {}, "np box"});
            g = replace_outermost(f, Kind::Box, [](const Formula&) { return Formula::top(); });
        } else {
            v.trace.push_back({"schema", {}, "np propositional"});
        }
        if (auto asg = propositional_sat(g)) root = store.add(std::move(*asg), {});
    }
    if (root) {
        v.decision = Decision::Sat;
        v.witness = store.extract(*root);
    }
    v.steps = 1;
    return v;
}

SatVerdict fragment_dispatch(const Formula& f, const FrameClass& frame_class) {
    if (frame_class.tag == FrameTag::K) {
        const ComplexityClass cls = classify_operator_set(operator_set_of(f));
        if (cls.tag == Complexity::P) return sat_poly_fragment(f);
        if (cls.tag == Complexity::NPComplete) return sat_np_fragment(f);
    }
    return sat(f, frame_class);
}

}  // namespace modalsat
