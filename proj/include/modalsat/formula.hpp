// Formula representation for mono-modal logic with two negations.
//
// Formulas are immutable trees shared by reference. Conjunctions and
// disjunctions are n-ary and kept flattened: no And has an And child, no Or
// has an Or child. Atomic negation (~p) is a leaf kind distinct from general
// negation (!x); ~~p collapses to p at construction.

#ifndef MODALSAT_FORMULA_HPP
#define MODALSAT_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modalsat {

enum class Kind : std::uint8_t { Var, NegVar, Not, And, Or, Box, Dia, True, False };

class Formula {
public:
    static Formula var(std::string name);
    static Formula neg_var(std::string name);
    /// Atomic negation of a literal: p -> ~p, ~p -> p. Throws on non-literals.
    static Formula complement(const Formula& literal);
    static Formula negation(Formula child);
    /// Flattening conjunction. One operand returns it unchanged; zero throws.
    static Formula conj(std::vector<Formula> children);
    static Formula disj(std::vector<Formula> children);
    static Formula box(Formula child);
    static Formula dia(Formula child);
    static Formula top();
    static Formula bottom();

    Kind kind() const noexcept { return node_->kind; }
    /// Variable name; empty for non-literal kinds.
    const std::string& name() const noexcept { return node_->name; }
    std::span<const Formula> children() const noexcept { return node_->children; }
    /// Sole child of Not/Box/Dia.
    const Formula& child() const;
    std::size_t hash() const noexcept { return node_->hash; }
    /// Number of AST nodes.
    std::size_t size() const noexcept { return node_->size; }
    const void* identity() const noexcept { return node_.get(); }

    bool is_literal() const noexcept { return kind() == Kind::Var || kind() == Kind::NegVar; }
    bool is_constant() const noexcept { return kind() == Kind::True || kind() == Kind::False; }

    friend bool operator==(const Formula& a, const Formula& b);
    /// Structural total order (kind, name, children lexicographically).
    friend int compare(const Formula& a, const Formula& b);
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Formula> children;
        std::size_t hash = 0;
        std::size_t size = 1;
    };
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Formula make(Kind kind, std::string name, std::vector<Formula> children);

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// The eight connectives of the operator-restricted languages.
enum class Op : std::uint8_t { Neg, AtNeg, And, Or, Box, Dia, True, False };

inline constexpr std::size_t kOpCount = 8;

class OperatorSet {
public:
    constexpr OperatorSet() = default;
    constexpr OperatorSet(std::initializer_list<Op> ops) {
        for (Op op : ops) bits_ |= bit(op);
    }
    static constexpr OperatorSet from_bits(std::uint8_t bits) {
        OperatorSet s;
        s.bits_ = bits;
        return s;
    }

    constexpr bool contains(Op op) const { return (bits_ & bit(op)) != 0; }
    constexpr void insert(Op op) { bits_ |= bit(op); }
    constexpr void erase(Op op) { bits_ &= static_cast<std::uint8_t>(~bit(op)); }
    constexpr bool subset_of(OperatorSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool superset_of(OperatorSet other) const { return other.subset_of(*this); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    constexpr OperatorSet operator|(OperatorSet o) const { return from_bits(bits_ | o.bits_); }
    constexpr OperatorSet operator-(OperatorSet o) const {
        return from_bits(static_cast<std::uint8_t>(bits_ & ~o.bits_));
    }
    friend constexpr bool operator==(OperatorSet a, OperatorSet b) = default;

    /// Comma list in canonical order over neg, atneg, and, or, box, dia, true, false.
    std::string to_string() const;
    /// Inverse of to_string; "" and "none" denote the empty set.
    static OperatorSet parse(std::string_view text);

private:
    static constexpr std::uint8_t bit(Op op) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(op)); }
    std::uint8_t bits_ = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Variables starting with this prefix are reserved for fresh names minted by
/// the reductions.
inline constexpr std::string_view kAuxPrefix = "__aux_";

Formula parse(std::string_view text);
std::string render(const Formula& f);

std::size_t modal_depth(const Formula& f);
Formula to_nnf(const Formula& f);
OperatorSet operator_set_of(const Formula& f);
bool is_poor_mans(const Formula& f);
/// Replaces every occurrence of the constant `target` by `replacement`.
Formula substitute(const Formula& f, Kind target, const Formula& replacement);

std::set<std::string> variables(const Formula& f);
/// Top-level conjuncts: the children of an And, otherwise the formula itself.
std::vector<Formula> conjuncts(const Formula& f);
bool contains_kind(const Formula& f, Kind kind);

/// Box^n(f) and Dia^n(f).
Formula boxes(std::size_t n, Formula f);
Formula diamonds(std::size_t n, Formula f);

/// A name with the reserved prefix that does not occur in `taken`.
std::string fresh_name(std::string_view base, const std::set<std::string>& taken);

}  // namespace modalsat

#endif  // MODALSAT_FORMULA_HPP
