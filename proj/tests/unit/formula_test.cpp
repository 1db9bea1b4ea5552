#include <gtest/gtest.h>

#include <random>

#include "modalsat/formula.hpp"
#include "modalsat/generate.hpp"
#include "modalsat/kripke.hpp"
#include "modalsat/reductions.hpp"

using namespace modalsat;

namespace {

Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }

OperatorSet all_ops() { return OperatorSet::from_bits(0xff); }

}  // namespace

TEST(Parse, SpecExamples) {
    EXPECT_EQ(parse("[]p & <>~q"), Formula::conj({Formula::box(p()), Formula::dia(Formula::neg_var("q"))}));
    EXPECT_EQ(parse("~~p"), p());
    EXPECT_EQ(parse("(p & q) & r"), Formula::conj({p(), q(), Formula::var("r")}));
    const Formula flat = parse("(p & q) & r");
    EXPECT_EQ(flat.children().size(), 3u);
}

TEST(Parse, PrecedenceAndConstants) {
    EXPECT_EQ(parse("p | q & r"), Formula::disj({p(), Formula::conj({q(), Formula::var("r")})}));
    EXPECT_EQ(parse("![]p"), Formula::negation(Formula::box(p())));
    EXPECT_EQ(parse("<>false"), Formula::dia(Formula::bottom()));
    EXPECT_EQ(parse("  true|false "), Formula::disj({Formula::top(), Formula::bottom()}));
    EXPECT_EQ(parse("~~~p"), Formula::neg_var("p"));
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse(""), ParseError);
    EXPECT_THROW(parse("p &"), ParseError);
    EXPECT_THROW(parse("~(p)"), ParseError);
    EXPECT_THROW(parse("~true"), ParseError);
    EXPECT_THROW(parse("p q"), ParseError);
    EXPECT_THROW(parse("(p"), ParseError);
    EXPECT_THROW(parse("1p"), ParseError);
    try {
        parse("p & & q");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 4u);
    }
}

TEST(Parse, ReservedPrefixIsAccepted) {
    EXPECT_EQ(parse("__aux_q & p"), Formula::conj({Formula::var("__aux_q"), p()}));
}

TEST(Render, SpecExamples) {
    EXPECT_EQ(render(Formula::conj({p(), Formula::box(q())})), "p & []q");
    EXPECT_EQ(render(Formula::dia(Formula::bottom())), "<>false");
    EXPECT_EQ(render(Formula::disj({Formula::neg_var("p"), p()})), "~p | p");
    EXPECT_EQ(render(parse("(p | q) & !(p & q)")), "(p | q) & !(p & q)");
}

TEST(Render, RoundTripOnGeneratedCorpus) {
    GeneratorSpec spec;
    spec.fragment = all_ops();
    spec.max_vars = 2;
    spec.max_depth = 2;
    spec.max_width = 3;
    spec.max_size = 6;
    for (const Formula& f : generate_formulas(spec)) {
        ASSERT_EQ(parse(render(f)), f) << render(f);
    }
}

TEST(Measures, ModalDepth) {
    EXPECT_EQ(modal_depth(p()), 0u);
    EXPECT_EQ(modal_depth(parse("[]<>p")), 2u);
    EXPECT_EQ(modal_depth(parse("[]p & <>[]<>q")), 3u);
    for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(modal_depth(phi_exp(n)), n);
}

TEST(Nnf, RewriteRules) {
    EXPECT_EQ(to_nnf(parse("![]p")), parse("<>~p"));
    EXPECT_EQ(to_nnf(parse("!(p & q)")), parse("~p | ~q"));
    EXPECT_EQ(to_nnf(parse("!true")), Formula::bottom());
    EXPECT_EQ(to_nnf(parse("!<>(p | !q)")), parse("[](~p & q)"));
    EXPECT_EQ(to_nnf(parse("!!p")), p());
}

TEST(Nnf, Properties) {
    GeneratorSpec spec;
    spec.fragment = all_ops();
    spec.max_vars = 2;
    spec.max_depth = 2;
    spec.max_width = 2;
    spec.max_size = 6;
    for (const Formula& f : generate_formulas(spec)) {
        const Formula g = to_nnf(f);
        ASSERT_FALSE(contains_kind(g, Kind::Not)) << render(f);
        ASSERT_EQ(to_nnf(g), g);
        ASSERT_EQ(modal_depth(g), modal_depth(f));
    }
}

// Equivalence on random models of up to four worlds.
TEST(Nnf, SoundOnModels) {
    GeneratorSpec spec;
    spec.fragment = all_ops();
    spec.max_vars = 2;
    spec.max_depth = 2;
    spec.max_width = 2;
    spec.max_size = 6;
    const auto corpus = generate_formulas(spec);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        KripkeModel m;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int w = 0; w < n; ++w) {
            m.worlds.push_back(w);
            if (rng() % 2) m.valuation["p"].insert(w);
            if (rng() % 2) m.valuation["q"].insert(w);
            for (int v = 0; v < n; ++v) {
                if (rng() % 3 == 0) m.relation.emplace_back(w, v);
            }
        }
        for (const Formula& f : corpus) {
            const Formula g = to_nnf(f);
            for (int w : m.worlds) ASSERT_EQ(evaluate(m, w, f), evaluate(m, w, g)) << render(f);
        }
    }
}

TEST(Operators, OperatorSetOf) {
    EXPECT_EQ(operator_set_of(parse("p & [](~q)")), (OperatorSet{Op::And, Op::Box, Op::AtNeg}));
    EXPECT_TRUE(operator_set_of(p()).empty());
    EXPECT_EQ(operator_set_of(parse("false | <>p")), (OperatorSet{Op::Or, Op::Dia, Op::False}));
    EXPECT_EQ(operator_set_of(parse("!p")), (OperatorSet{Op::Neg}));
}

TEST(Operators, TextForm) {
    const OperatorSet s{Op::AtNeg, Op::And, Op::Box, Op::Dia};
    EXPECT_EQ(s.to_string(), "atneg,and,box,dia");
    EXPECT_EQ(OperatorSet::parse("atneg,and,box,dia"), s);
    EXPECT_EQ(OperatorSet::parse("dia, box,and ,atneg"), s);
    EXPECT_TRUE(OperatorSet::parse("none").empty());
    EXPECT_TRUE(OperatorSet::parse("").empty());
    EXPECT_THROW(OperatorSet::parse("and,xor"), std::invalid_argument);
    for (unsigned bits = 0; bits < 256; ++bits) {
        const auto set = OperatorSet::from_bits(static_cast<std::uint8_t>(bits));
        EXPECT_EQ(OperatorSet::parse(set.to_string()), set);
    }
}

TEST(Operators, PoorMans) {
    EXPECT_TRUE(is_poor_mans(parse("[]p & <>~q")));
    EXPECT_FALSE(is_poor_mans(parse("p | q")));
    EXPECT_FALSE(is_poor_mans(parse("<>false")));
    EXPECT_FALSE(is_poor_mans(parse("!p")));
}

TEST(Substitute, Constants) {
    EXPECT_EQ(substitute(parse("[]true"), Kind::True, Formula::var("t")), parse("[]t"));
    EXPECT_EQ(substitute(parse("p & false"), Kind::False, Formula::var("f")), parse("p & f"));
    EXPECT_EQ(substitute(p(), Kind::True, Formula::var("t")), p());
    EXPECT_THROW(substitute(p(), Kind::True, parse("[]t")), std::invalid_argument);
}

TEST(Construction, Invariants) {
    EXPECT_THROW(Formula::conj({}), std::invalid_argument);
    EXPECT_EQ(Formula::conj({p()}), p());
    EXPECT_EQ(Formula::complement(Formula::neg_var("p")), p());
    EXPECT_THROW(Formula::var("true"), std::invalid_argument);
    EXPECT_THROW(Formula::var(""), std::invalid_argument);
    const Formula nested = Formula::disj({p(), Formula::disj({q(), Formula::var("r")})});
    EXPECT_EQ(nested.children().size(), 3u);
}

TEST(FreshNames, AvoidTakenNames) {
    EXPECT_EQ(fresh_name("q", {"p"}), "__aux_q");
    EXPECT_EQ(fresh_name("q", {"__aux_q"}), "__aux_q1");
    EXPECT_EQ(fresh_name("q", {"__aux_q", "__aux_q1"}), "__aux_q2");
}
