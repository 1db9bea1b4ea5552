#include "modalsat/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace modalsat {

namespace {

int var_index(const Formula& literal) {
    const std::string& name = literal.name();
    if (!literal.is_literal() || name.size() < 2 || name[0] != 'p' ||
        !std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw std::invalid_argument("expected a literal over p<index>, got " + render(literal));
    }
    return std::stoi(name.substr(1));
}

Formula qbf_literal(int lit) {
    const std::string name = qbf_variable(std::abs(lit));
    return lit > 0 ? Formula::var(name) : Formula::neg_var(name);
}

// Guard conjunction: body, Box body, ..., Box^depth body.
std::vector<Formula> guards(const Formula& body, std::size_t depth) {
    std::vector<Formula> out;
    for (std::size_t i = 0; i <= depth; ++i) out.push_back(boxes(i, body));
    return out;
}

Formula with_guards(const Formula& f, const Formula& body, std::size_t depth) {
    std::vector<Formula> parts{f};
    for (Formula& g : guards(body, depth)) parts.push_back(std::move(g));
    return Formula::conj(std::move(parts));
}

Formula negate(const Formula& f) { return f.kind() == Kind::Not ? f.child() : Formula::negation(f); }

// Rewrites into negation, conjunction and box over the same variables and constants.
Formula basic_form(const Formula& f) {
    switch (f.kind()) {
        case Kind::Var:
        case Kind::True:
        case Kind::False: return f;
        case Kind::NegVar: return Formula::negation(Formula::var(f.name()));
        case Kind::Not: return negate(basic_form(f.child()));
        case Kind::And: {
            std::vector<Formula> kids;
            for (const Formula& c : f.children()) kids.push_back(basic_form(c));
            return Formula::conj(std::move(kids));
        }
        case Kind::Or: {
            std::vector<Formula> kids;
            for (const Formula& c : f.children()) kids.push_back(negate(basic_form(c)));
            return negate(Formula::conj(std::move(kids)));
        }
        case Kind::Box: return Formula::box(basic_form(f.child()));
        case Kind::Dia: return negate(Formula::box(negate(basic_form(f.child()))));
    }
    throw std::logic_error("unknown formula kind");
}

Formula encode_zerovar(const Formula& f, std::size_t k) {
    switch (f.kind()) {
        case Kind::Var: return diamonds(k + 1, Formula::box(Formula::bottom()));
        case Kind::True:
        case Kind::False: return f;
        case Kind::Not: return Formula::negation(encode_zerovar(f.child(), k));
        case Kind::And: {
            std::vector<Formula> kids;
            for (const Formula& c : f.children()) kids.push_back(encode_zerovar(c, k));
            return Formula::conj(std::move(kids));
        }
        case Kind::Box:
            return Formula::box(
                Formula::disj({diamonds(k, Formula::box(Formula::bottom())), encode_zerovar(f.child(), k)}));
        default: throw std::logic_error("formula not in negation/conjunction/box form");
    }
}

void check_clause(const std::vector<int>& clause, int n) {
    if (clause.empty() || clause.size() > 3) {
        throw std::invalid_argument("clause with " + std::to_string(clause.size()) + " literals");
    }
    for (int lit : clause) {
        if (lit == 0 || std::abs(lit) > n) throw std::invalid_argument("literal " + std::to_string(lit) + " out of range");
    }
}

}  // namespace

void Graph::validate() const {
    if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
    for (auto [a, b] : edges) {
        if (a < 1 || a > n || b < 1 || b > n) {
            throw std::invalid_argument("edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range");
        }
        if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
    }
}

bool QbfInstance::conforming() const {
    if (n < 2 || n % 2 != 0 || prefix.size() != static_cast<std::size_t>(n)) return false;
    for (int i = 0; i < n; ++i) {
        if (prefix[static_cast<std::size_t>(i)] != (i % 2 == 0 ? Quantifier::Exists : Quantifier::Forall)) return false;
    }
    for (const auto& clause : clauses) {
        if (clause.size() != 3) return false;
        std::set<int> vars;
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > n) return false;
            vars.insert(std::abs(lit));
        }
        if (vars.size() != 3) return false;
    }
    return true;
}

void QbfInstance::validate() const {
    if (!conforming()) {
        throw std::invalid_argument(
            "QBF instance must have even n, prefix alternating from E, and 3 distinct variables per clause");
    }
}

void to_json(nlohmann::json& j, const Graph& g) { j = {{"n", g.n}, {"edges", g.edges}}; }

void from_json(const nlohmann::json& j, Graph& g) {
    g.n = j.at("n").get<int>();
    g.edges.clear();
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
        g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
}

void to_json(nlohmann::json& j, const QbfInstance& q) {
    std::string prefix;
    for (Quantifier x : q.prefix) prefix += x == Quantifier::Exists ? 'E' : 'A';
    j = {{"n", q.n}, {"prefix", prefix}, {"clauses", q.clauses}};
}

void from_json(const nlohmann::json& j, QbfInstance& q) {
    q.n = j.at("n").get<int>();
    q.prefix.clear();
    for (char c : j.at("prefix").get<std::string>()) {
        if (c == 'E' || c == 'e') {
            q.prefix.push_back(Quantifier::Exists);
        } else if (c == 'A' || c == 'a') {
            q.prefix.push_back(Quantifier::Forall);
        } else {
            throw std::invalid_argument(std::string("bad quantifier '") + c + "'");
        }
    }
    if (q.prefix.size() != static_cast<std::size_t>(q.n)) throw std::invalid_argument("prefix length differs from n");
    q.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
}

std::string qbf_variable(int index) { return "p" + std::to_string(index); }

Formula phi_exp(std::size_t n) {
    if (n == 0) throw std::invalid_argument("phi_exp needs n >= 1");
    std::vector<Formula> parts;
    for (std::size_t i = 1; i <= n; ++i) {
        const std::string p = qbf_variable(static_cast<int>(i));
        Formula pair = Formula::conj({Formula::dia(boxes(n - i, Formula::var(p))),
                                      Formula::dia(boxes(n - i, Formula::neg_var(p)))});
        parts.push_back(boxes(i - 1, std::move(pair)));
    }
    return Formula::conj(std::move(parts));
}

Formula reduce_kd_to_k(const Formula& f) {
    if (!is_poor_mans(f)) throw std::invalid_argument("kd2k expects a poor man's formula");
    const Formula q = Formula::var(fresh_name("q", variables(f)));
    return with_guards(f, Formula::dia(q), modal_depth(f));
}

Formula reduce_constants_to_vars(const Formula& f) {
    const OperatorSet allowed{Op::AtNeg, Op::And, Op::Box, Op::Dia, Op::True, Op::False};
    if (!operator_set_of(f).subset_of(allowed)) {
        throw std::invalid_argument("const2var expects atneg, and, box, dia, true, false only");
    }
    const auto taken = variables(f);
    const Formula t = Formula::var(fresh_name("t", taken));
    const Formula fv = Formula::var(fresh_name("fv", taken));
    Formula body = substitute(substitute(f, Kind::True, t), Kind::False, fv);
    return with_guards(body, Formula::conj({t, Formula::complement(fv)}), modal_depth(f));
}

Formula reduce_eliminate_true(const Formula& f) {
    if (operator_set_of(f).contains(Op::Neg)) throw std::invalid_argument("elimtrue expects a negation-free formula");
    const Formula t = Formula::var(fresh_name("t", variables(f)));
    return with_guards(substitute(f, Kind::True, t), t, modal_depth(f));
}

Formula reduce_3col(const Graph& g) {
    g.validate();
    std::set<std::pair<int, int>> edges;
    for (auto [a, b] : g.edges) edges.insert({std::min(a, b), std::max(a, b)});
    if (edges.empty()) return Formula::var(fresh_name("v", {}));
    std::map<int, std::vector<Formula>> psi;
    for (auto [a, b] : edges) {
        const std::string name = "e" + std::to_string(a) + "_" + std::to_string(b);
        psi[a].push_back(Formula::var(name));
        psi[b].push_back(Formula::neg_var(name));
    }
    std::vector<Formula> parts;
    for (auto& [vertex, lits] : psi) parts.push_back(Formula::dia(Formula::conj(std::move(lits))));
    return Formula::conj(std::move(parts));
}

Formula label_false(std::vector<Formula> literals, std::size_t n) {
    if (literals.size() != 3) throw std::invalid_argument("label_false needs exactly 3 literals");
    std::sort(literals.begin(), literals.end(),
              [](const Formula& x, const Formula& y) { return var_index(x) < var_index(y); });
    const std::size_t a = static_cast<std::size_t>(var_index(literals[0]));
    const std::size_t b = static_cast<std::size_t>(var_index(literals[1]));
    const std::size_t c = static_cast<std::size_t>(var_index(literals[2]));
    if (a == b || b == c) throw std::invalid_argument("label_false literals must use distinct variables");
    if (a < 1 || c > n) throw std::invalid_argument("label_false variable index outside 1..n");
    literals.push_back(Formula::var(kLabelVariable));
    Formula out = boxes(n - c, Formula::conj(std::move(literals)));
    out = boxes(c - b - 1, Formula::dia(std::move(out)));
    out = boxes(b - a - 1, Formula::dia(std::move(out)));
    return boxes(a - 1, Formula::dia(std::move(out)));
}

Formula reduce_qbf(const QbfInstance& q) {
    q.validate();
    const std::size_t n = static_cast<std::size_t>(q.n);
    std::vector<Formula> parts{phi_exp(n)};
    for (const auto& clause : q.clauses) {
        std::vector<Formula> negated;
        for (int lit : clause) negated.push_back(qbf_literal(-lit));
        parts.push_back(label_false(std::move(negated), n));
    }
    Formula tail = Formula::neg_var(kLabelVariable);
    for (std::size_t i = 0; i < n / 2; ++i) tail = Formula::dia(Formula::box(std::move(tail)));
    parts.push_back(std::move(tail));
    return Formula::conj(std::move(parts));
}

QbfInstance normalize_qbf(const QbfInstance& q) {
    if (q.conforming()) return q;
    if (q.n < 0 || q.prefix.size() != static_cast<std::size_t>(q.n)) {
        throw std::invalid_argument("prefix length differs from n");
    }

    // Clause repair first, over the original numbering; fresh universals get
    // indices above n and are quantified innermost.
    std::vector<std::vector<int>> work, clauses;
    for (const auto& clause : q.clauses) {
        check_clause(clause, q.n);
        std::vector<int> padded = clause;
        while (padded.size() < 3) padded.push_back(padded.front());
        work.push_back(std::move(padded));
    }
    int next = q.n;
    std::vector<int> universals;
    while (!work.empty()) {
        std::vector<int> clause = std::move(work.back());
        work.pop_back();
        std::set<int> lits(clause.begin(), clause.end());
        if (std::any_of(lits.begin(), lits.end(), [&](int l) { return lits.contains(-l); })) continue;
        if (lits.size() == 3) {
            clauses.push_back(std::move(clause));
            continue;
        }
        // A repeated literal: l | l | x  ==  (l | u | x) & (l | ~u | x) under Forall u.
        std::size_t dup = 1;
        while (std::count(clause.begin(), clause.end(), clause[dup]) < 2) ++dup;
        const int u = ++next;
        universals.push_back(u);
        std::vector<int> plus = clause, minus = clause;
        plus[dup] = u;
        minus[dup] = -u;
        work.push_back(std::move(minus));
        work.push_back(std::move(plus));
    }
    std::reverse(clauses.begin(), clauses.end());

    // Renumber into a strictly alternating prefix E A E A ... ending in A.
    std::map<int, int> renumber;
    std::vector<Quantifier> prefix;
    auto place = [&](int var, Quantifier want) {
        const Quantifier expected = prefix.size() % 2 == 0 ? Quantifier::Exists : Quantifier::Forall;
        if (want != expected) prefix.push_back(expected);
        prefix.push_back(want);
        renumber[var] = static_cast<int>(prefix.size());
    };
    for (int i = 1; i <= q.n; ++i) place(i, q.prefix[static_cast<std::size_t>(i - 1)]);
    for (int u : universals) place(u, Quantifier::Forall);
    if (prefix.empty()) prefix.push_back(Quantifier::Exists);
    if (prefix.size() % 2 != 0) prefix.push_back(Quantifier::Forall);

    QbfInstance out;
    out.n = static_cast<int>(prefix.size());
    out.prefix = std::move(prefix);
    for (auto& clause : clauses) {
        for (int& lit : clause) lit = lit > 0 ? renumber.at(lit) : -renumber.at(-lit);
        out.clauses.push_back(std::move(clause));
    }
    return out;
}

Formula reduce_onevar_to_zerovar(const Formula& f) {
    const auto vars = variables(f);
    if (vars.size() > 1) throw std::invalid_argument("onevar2zerovar expects at most one variable");
    const Formula basic = basic_form(f);
    return encode_zerovar(basic, modal_depth(basic));
}

}  // namespace modalsat
