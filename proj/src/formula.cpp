#include "modalsat/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <utility>

namespace modalsat {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
    return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    std::string_view body = name;
    if (name.starts_with(kAuxPrefix)) {
        body = name.substr(kAuxPrefix.size());
        if (body.empty()) return false;
    } else if (!std::isalpha(static_cast<unsigned char>(name.front()))) {
        return false;
    }
    return std::all_of(body.begin(), body.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

void check_variable_name(const std::string& name) {
    if (!valid_identifier(name)) throw std::invalid_argument("invalid variable name '" + name + "'");
    if (name == "true" || name == "false") {
        throw std::invalid_argument("'" + name + "' is reserved and cannot name a variable");
    }
}

}  // namespace

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> children) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->name = std::move(name);
    node->children = std::move(children);
    std::size_t h = std::hash<std::uint8_t>{}(static_cast<std::uint8_t>(kind));
    h = mix(h, std::hash<std::string>{}(node->name));
    for (const Formula& c : node->children) {
        h = mix(h, c.hash());
        node->size += c.size();
    }
    node->hash = h;
    return Formula(std::move(node));
}

Formula Formula::var(std::string name) {
    check_variable_name(name);
    return make(Kind::Var, std::move(name), {});
}

Formula Formula::neg_var(std::string name) {
    check_variable_name(name);
    return make(Kind::NegVar, std::move(name), {});
}

Formula Formula::complement(const Formula& literal) {
    switch (literal.kind()) {
        case Kind::Var: return neg_var(literal.name());
        case Kind::NegVar: return var(literal.name());
        default: throw std::invalid_argument("atomic negation applies to variables only");
    }
}

Formula Formula::negation(Formula child) { return make(Kind::Not, {}, {std::move(child)}); }

namespace {

std::vector<Formula> flatten(Kind kind, std::vector<Formula> children) {
    std::vector<Formula> out;
    out.reserve(children.size());
    for (Formula& c : children) {
        if (c.kind() == kind) {
            out.insert(out.end(), c.children().begin(), c.children().end());
        } else {
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace

Formula Formula::conj(std::vector<Formula> children) {
    if (children.empty()) throw std::invalid_argument("empty conjunction is not representable");
    if (children.size() == 1) return std::move(children.front());
    return make(Kind::And, {}, flatten(Kind::And, std::move(children)));
}

Formula Formula::disj(std::vector<Formula> children) {
    if (children.empty()) throw std::invalid_argument("empty disjunction is not representable");
    if (children.size() == 1) return std::move(children.front());
    return make(Kind::Or, {}, flatten(Kind::Or, std::move(children)));
}

Formula Formula::box(Formula child) { return make(Kind::Box, {}, {std::move(child)}); }
Formula Formula::dia(Formula child) { return make(Kind::Dia, {}, {std::move(child)}); }
Formula Formula::top() { return make(Kind::True, {}, {}); }
Formula Formula::bottom() { return make(Kind::False, {}, {}); }

const Formula& Formula::child() const {
    if (node_->children.size() != 1) throw std::logic_error("formula has no unique child");
    return node_->children.front();
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return compare(a, b) == 0;
}

int compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    auto ac = a.children();
    auto bc = b.children();
    for (std::size_t i = 0; i < std::min(ac.size(), bc.size()); ++i) {
        if (int c = compare(ac[i], bc[i]); c != 0) return c;
    }
    if (ac.size() != bc.size()) return ac.size() < bc.size() ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------------------
// Operator sets

namespace {

constexpr std::array<std::pair<Op, std::string_view>, kOpCount> kOpTokens{{
    {Op::Neg, "neg"},
    {Op::AtNeg, "atneg"},
    {Op::And, "and"},
    {Op::Or, "or"},
    {Op::Box, "box"},
    {Op::Dia, "dia"},
    {Op::True, "true"},
    {Op::False, "false"},
}};

}  // namespace

std::string OperatorSet::to_string() const {
    std::string out;
    for (auto [op, token] : kOpTokens) {
        if (!contains(op)) continue;
        if (!out.empty()) out += ',';
        out += token;
    }
    return out;
}

OperatorSet OperatorSet::parse(std::string_view text) {
    OperatorSet set;
    if (text.empty() || text == "none") return set;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(start, end - start);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
        while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
        auto it = std::find_if(kOpTokens.begin(), kOpTokens.end(), [&](const auto& p) { return p.second == token; });
        if (it == kOpTokens.end()) throw std::invalid_argument("unknown operator token '" + std::string(token) + "'");
        set.insert(it->first);
        start = end + 1;
    }
    return set;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse_all() {
        Formula f = disjunction();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_).starts_with(token)) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (accept("|")) parts.push_back(conjunction());
        return Formula::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (accept("&")) parts.push_back(unary());
        return Formula::conj(std::move(parts));
    }

    Formula unary() {
        if (accept("[]")) return Formula::box(unary());
        if (accept("<>")) return Formula::dia(unary());
        if (accept("!")) return Formula::negation(unary());
        if (accept("~")) {
            skip_space();
            std::size_t at = pos_;
            if (text_.substr(pos_).starts_with("~")) return Formula::complement(negated_operand(at));
            std::string name = identifier();
            if (name.empty()) fail("'~' applies to a variable only; use '!' for general negation");
            if (name == "true" || name == "false") {
                pos_ = at;
                fail("'~" + name + "' is not allowed; use '!" + name + "'");
            }
            if (!valid_identifier(name)) {
                pos_ = at;
                fail("invalid variable name '" + name + "'");
            }
            return Formula::neg_var(std::move(name));
        }
        return atom();
    }

    // Operand of a doubled '~': must itself be a literal.
    Formula negated_operand(std::size_t at) {
        Formula inner = unary();
        if (!inner.is_literal()) {
            pos_ = at;
            fail("'~' applies to a variable only; use '!' for general negation");
        }
        return inner;
    }

    Formula atom() {
        skip_space();
        if (accept("(")) {
            Formula f = disjunction();
            if (!accept(")")) fail("expected ')'");
            return f;
        }
        std::size_t at = pos_;
        std::string name = identifier();
        if (name.empty()) {
            if (pos_ == text_.size()) fail("unexpected end of input");
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        if (name == "true") return Formula::top();
        if (name == "false") return Formula::bottom();
        if (!valid_identifier(name)) {
            pos_ = at;
            fail("invalid variable name '" + name + "'");
        }
        return Formula::var(std::move(name));
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

// 0: disjunction, 1: conjunction, 2: unary operand.
void render_into(const Formula& f, int context, std::string& out) {
    switch (f.kind()) {
        case Kind::Var: out += f.name(); return;
        case Kind::NegVar: out += '~'; out += f.name(); return;
        case Kind::True: out += "true"; return;
        case Kind::False: out += "false"; return;
        case Kind::Not: out += '!'; render_into(f.child(), 2, out); return;
        case Kind::Box: out += "[]"; render_into(f.child(), 2, out); return;
        case Kind::Dia: out += "<>"; render_into(f.child(), 2, out); return;
        case Kind::And:
        case Kind::Or: {
            const bool is_and = f.kind() == Kind::And;
            const int level = is_and ? 1 : 0;
            const bool parens = context > level;
            if (parens) out += '(';
            bool first = true;
            for (const Formula& c : f.children()) {
                if (!first) out += is_and ? " & " : " | ";
                first = false;
                render_into(c, level + 1, out);
            }
            if (parens) out += ')';
            return;
        }
    }
}

}  // namespace

std::string render(const Formula& f) {
    std::string out;
    render_into(f, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Measures and transformations

std::size_t modal_depth(const Formula& f) {
    std::size_t depth = 0;
    for (const Formula& c : f.children()) depth = std::max(depth, modal_depth(c));
    if (f.kind() == Kind::Box || f.kind() == Kind::Dia) ++depth;
    return depth;
}

namespace {

Formula nnf(const Formula& f, bool negate) {
    auto map_children = [&](bool neg) {
        std::vector<Formula> out;
        out.reserve(f.children().size());
        for (const Formula& c : f.children()) out.push_back(nnf(c, neg));
        return out;
    };
    switch (f.kind()) {
        case Kind::Var: return negate ? Formula::neg_var(f.name()) : f;
        case Kind::NegVar: return negate ? Formula::var(f.name()) : f;
        case Kind::True: return negate ? Formula::bottom() : f;
        case Kind::False: return negate ? Formula::top() : f;
        case Kind::Not: return nnf(f.child(), !negate);
        case Kind::And:
            return negate ? Formula::disj(map_children(true)) : Formula::conj(map_children(false));
        case Kind::Or:
            return negate ? Formula::conj(map_children(true)) : Formula::disj(map_children(false));
        case Kind::Box:
            return negate ? Formula::dia(nnf(f.child(), true)) : Formula::box(nnf(f.child(), false));
        case Kind::Dia:
            return negate ? Formula::box(nnf(f.child(), true)) : Formula::dia(nnf(f.child(), false));
    }
    throw std::logic_error("unreachable");
}

void collect_ops(const Formula& f, OperatorSet& ops) {
    switch (f.kind()) {
        case Kind::Var: break;
        case Kind::NegVar: ops.insert(Op::AtNeg); break;
        case Kind::Not: ops.insert(Op::Neg); break;
        case Kind::And: ops.insert(Op::And); break;
        case Kind::Or: ops.insert(Op::Or); break;
        case Kind::Box: ops.insert(Op::Box); break;
        case Kind::Dia: ops.insert(Op::Dia); break;
        case Kind::True: ops.insert(Op::True); break;
        case Kind::False: ops.insert(Op::False); break;
    }
    for (const Formula& c : f.children()) collect_ops(c, ops);
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

OperatorSet operator_set_of(const Formula& f) {
    OperatorSet ops;
    collect_ops(f, ops);
    return ops;
}

bool is_poor_mans(const Formula& f) {
    return operator_set_of(f).subset_of({Op::AtNeg, Op::And, Op::Box, Op::Dia});
}

Formula substitute(const Formula& f, Kind target, const Formula& replacement) {
    if (target != Kind::True && target != Kind::False) {
        throw std::invalid_argument("substitution target must be a constant");
    }
    if (!replacement.is_literal()) throw std::invalid_argument("substitution replacement must be a literal");
    if (f.kind() == target) return replacement;
    if (f.children().empty()) return f;
    std::vector<Formula> kids;
    kids.reserve(f.children().size());
    for (const Formula& c : f.children()) kids.push_back(substitute(c, target, replacement));
    switch (f.kind()) {
        case Kind::Not: return Formula::negation(std::move(kids.front()));
        case Kind::Box: return Formula::box(std::move(kids.front()));
        case Kind::Dia: return Formula::dia(std::move(kids.front()));
        case Kind::And: return Formula::conj(std::move(kids));
        case Kind::Or: return Formula::disj(std::move(kids));
        default: return f;
    }
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
    if (f.is_literal()) out.insert(f.name());
    for (const Formula& c : f.children()) collect_vars(c, out);
}

}  // namespace

std::set<std::string> variables(const Formula& f) {
    std::set<std::string> out;
    collect_vars(f, out);
    return out;
}

std::vector<Formula> conjuncts(const Formula& f) {
    if (f.kind() == Kind::And) return {f.children().begin(), f.children().end()};
    return {f};
}

bool contains_kind(const Formula& f, Kind kind) {
    if (f.kind() == kind) return true;
    return std::any_of(f.children().begin(), f.children().end(),
                       [kind](const Formula& c) { return contains_kind(c, kind); });
}

Formula boxes(std::size_t n, Formula f) {
    for (std::size_t i = 0; i < n; ++i) f = Formula::box(std::move(f));
    return f;
}

Formula diamonds(std::size_t n, Formula f) {
    for (std::size_t i = 0; i < n; ++i) f = Formula::dia(std::move(f));
    return f;
}

std::string fresh_name(std::string_view base, const std::set<std::string>& taken) {
    std::string candidate = std::string(kAuxPrefix) + std::string(base);
    if (!taken.contains(candidate)) return candidate;
    for (std::size_t i = 1;; ++i) {
        std::string numbered = candidate + std::to_string(i);
        if (!taken.contains(numbered)) return numbered;
    }
}

}  // namespace modalsat
