#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "modalsat/formula.hpp"
#include "modalsat/generate.hpp"
#include "modalsat/oracle.hpp"
#include "modalsat/procedures.hpp"
#include "modalsat/reductions.hpp"

using namespace modalsat;
using modalsat::testing::qbf_true;
using modalsat::testing::three_colorable;
namespace support = modalsat::testing;

namespace {

QbfInstance instance(const std::string& prefix, std::vector<std::vector<int>> clauses) {
    QbfInstance q;
    q.n = static_cast<int>(prefix.size());
    for (char c : prefix) q.prefix.push_back(c == 'E' ? Quantifier::Exists : Quantifier::Forall);
    q.clauses = std::move(clauses);
    return q;
}

}  // namespace

TEST(PhiExp, Shape) {
    EXPECT_EQ(phi_exp(1), parse("<>p1 & <>~p1"));
    EXPECT_EQ(phi_exp(3), parse("<>[][]p1 & <>[][]~p1 & [](<>[]p2 & <>[]~p2) & [][](<>p3 & <>~p3)"));
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_TRUE(is_poor_mans(phi_exp(n)));
        EXPECT_EQ(modal_depth(phi_exp(n)), n);
    }
    EXPECT_THROW(phi_exp(0), std::invalid_argument);
}

TEST(KdToK, Shape) {
    EXPECT_EQ(reduce_kd_to_k(parse("p")), parse("p & <>__aux_q"));
    EXPECT_EQ(reduce_kd_to_k(parse("[]p")), parse("[]p & <>__aux_q & []<>__aux_q"));
    EXPECT_EQ(reduce_kd_to_k(parse("__aux_q")), parse("__aux_q & <>__aux_q1"));
    EXPECT_TRUE(is_poor_mans(reduce_kd_to_k(parse("[]p & <>q"))));
    EXPECT_THROW(reduce_kd_to_k(parse("p | q")), std::invalid_argument);
    const Formula f = parse("[]p & []~p");
    EXPECT_FALSE(sat_kd_tableau(f).sat());
    EXPECT_FALSE(sat_k_tableau(reduce_kd_to_k(f)).sat());
}

TEST(KdToK, EquisatisfiableOnCorpus) {
    GeneratorSpec spec;
    spec.fragment = {Op::AtNeg, Op::And, Op::Box, Op::Dia};
    spec.max_vars = 2;
    spec.max_depth = 2;
    spec.max_width = 3;
    spec.max_size = 8;
    for (const Formula& f : generate_formulas(spec)) {
        ASSERT_EQ(poorman_sat_kd_pairs(f).sat(), poorman_sat_k(reduce_kd_to_k(f)).sat()) << render(f);
    }
}

TEST(ConstantsToVars, Shape) {
    EXPECT_EQ(reduce_constants_to_vars(parse("p")), parse("p & __aux_t & ~__aux_fv"));
    EXPECT_EQ(reduce_constants_to_vars(parse("<>true")),
              parse("<>__aux_t & __aux_t & ~__aux_fv & [](__aux_t & ~__aux_fv)"));
    EXPECT_TRUE(is_poor_mans(reduce_constants_to_vars(parse("[]false & <>true"))));
    EXPECT_THROW(reduce_constants_to_vars(parse("p | true")), std::invalid_argument);
    for (const char* text : {"<>true", "[]false & <>true", "<>false", "[]false"}) {
        const Formula f = parse(text);
        EXPECT_EQ(sat_k_tableau(f).sat(), sat_k_tableau(reduce_constants_to_vars(f)).sat()) << text;
        EXPECT_EQ(sat_kd_tableau(f).sat(), sat_kd_tableau(reduce_constants_to_vars(f)).sat()) << text;
    }
}

TEST(EliminateTrue, Shape) {
    EXPECT_EQ(reduce_eliminate_true(parse("true")), parse("__aux_t & __aux_t"));
    EXPECT_FALSE(sat_k_tableau(reduce_eliminate_true(parse("false"))).sat());
    const Formula f = parse("<>false & []true");
    EXPECT_EQ(sat_k_tableau(f).sat(), sat_k_tableau(reduce_eliminate_true(f)).sat());
    EXPECT_FALSE(operator_set_of(reduce_eliminate_true(parse("<>true & []<>true"))).contains(Op::True));
    EXPECT_THROW(reduce_eliminate_true(parse("!true")), std::invalid_argument);
}

TEST(ThreeCol, Examples) {
    EXPECT_EQ(fixed_frame_sat(reduce_3col(support::complete_graph(3)), frame3()).status, OracleStatus::Sat);
    EXPECT_EQ(fixed_frame_sat(reduce_3col(support::complete_graph(4)), frame3()).status, OracleStatus::Unsat);
    EXPECT_EQ(reduce_3col(Graph{2, {{1, 2}}}), parse("<>e1_2 & <>~e1_2"));
    // Isolated vertex 3 is dropped.
    EXPECT_EQ(reduce_3col(Graph{3, {{2, 1}}}), parse("<>e1_2 & <>~e1_2"));
    EXPECT_EQ(fixed_frame_sat(reduce_3col(Graph{3, {}}), frame3()).status, OracleStatus::Sat);
    EXPECT_THROW(reduce_3col(Graph{2, {{1, 1}}}), std::invalid_argument);
    EXPECT_THROW(reduce_3col(Graph{2, {{1, 3}}}), std::invalid_argument);
    EXPECT_TRUE(is_poor_mans(reduce_3col(support::complete_graph(4))));
}

TEST(ThreeCol, AgreesWithColouring) {
    std::size_t yes = 0, no = 0;
    for (const Graph& g : support::sample_graphs(40, 11)) {
        const bool sat = fixed_frame_sat(reduce_3col(g), frame3()).status == OracleStatus::Sat;
        ASSERT_EQ(sat, three_colorable(g)) << nlohmann::json(g).dump();
        (sat ? yes : no)++;
    }
    EXPECT_GT(yes, 0u);
    EXPECT_GT(no, 0u);
}

TEST(LabelFalse, Template) {
    const auto lits = [](std::initializer_list<const char*> t) {
        std::vector<Formula> out;
        for (const char* s : t) out.push_back(parse(s));
        return out;
    };
    EXPECT_EQ(label_false(lits({"~p3", "p5", "~p8"}), 8), parse("[][]<>[]<>[][]<>(~p3 & p5 & ~p8 & __aux_f)"));
    EXPECT_EQ(label_false(lits({"p1", "p2", "p3"}), 4), parse("<><><>[](p1 & p2 & p3 & __aux_f)"));
    EXPECT_EQ(label_false(lits({"p3", "p1", "p2"}), 4), parse("<><><>[](p1 & p2 & p3 & __aux_f)"));
    EXPECT_EQ(modal_depth(label_false(lits({"~p3", "p5", "~p8"}), 8)), 8u);
    EXPECT_THROW(label_false(lits({"~p3"}), 8), std::invalid_argument);
    EXPECT_THROW(label_false(lits({"p1", "~p1", "p2"}), 4), std::invalid_argument);
    EXPECT_THROW(label_false(lits({"p1", "p2", "p5"}), 4), std::invalid_argument);
}

TEST(Qbf, Reduction) {
    const QbfInstance empty = instance("EA", {});
    EXPECT_EQ(reduce_qbf(empty), Formula::conj({phi_exp(2), parse("<>[]~__aux_f")}));
    EXPECT_TRUE(sat_le2(reduce_qbf(empty)).sat());
    const QbfInstance one = instance("EAEA", {{1, 2, 3}});
    EXPECT_EQ(sat_le2(reduce_qbf(one)).sat(), qbf_true(one));
    EXPECT_TRUE(is_poor_mans(reduce_qbf(one)));
    EXPECT_THROW(reduce_qbf(instance("AE", {})), std::invalid_argument);
    EXPECT_THROW(reduce_qbf(instance("EA", {{1, 1, 2}})), std::invalid_argument);
}

TEST(Qbf, ReductionMatchesTruth) {
    std::size_t trues = 0;
    for (const QbfInstance& q : support::sample_qbfs(12, 4, 3, 5)) {
        const bool truth = qbf_true(q);
        trues += truth;
        ASSERT_EQ(sat_le2(reduce_qbf(q)).sat(), truth) << nlohmann::json(q).dump();
    }
    EXPECT_GT(trues, 0u);
}

TEST(Qbf, Normalize) {
    const QbfInstance ok = instance("EAEA", {{1, -2, 3}});
    const QbfInstance same = normalize_qbf(ok);
    EXPECT_EQ(same.prefix, ok.prefix);
    EXPECT_EQ(same.clauses, ok.clauses);

    const std::vector<QbfInstance> inputs = {
        instance("E", {{1, 1, 1}}),
        instance("E", {{1, 1, 1}, {-1, -1, -1}}),
        instance("AE", {{1, 2, -2}, {-1, 2}}),
        instance("AEE", {{1, -2, 3}, {-1, 2, 2}}),
        instance("EEAA", {{1, 3, 4}, {-2, -3, -4}, {2}}),
        instance("EA", {{2, 2, 1}}),
    };
    for (const QbfInstance& q : inputs) {
        const QbfInstance n = normalize_qbf(q);
        EXPECT_TRUE(n.conforming()) << nlohmann::json(q).dump();
        EXPECT_EQ(qbf_true(n), qbf_true(q)) << nlohmann::json(q).dump() << " -> " << nlohmann::json(n).dump();
    }
    EXPECT_EQ(normalize_qbf(instance("AE", {})).prefix.front(), Quantifier::Exists);
    EXPECT_THROW(normalize_qbf(instance("EA", {{1, 2, -1, 2}})), std::invalid_argument);
    EXPECT_THROW(normalize_qbf(instance("EA", {{}})), std::invalid_argument);
}

TEST(Qbf, Json) {
    const auto q = nlohmann::json::parse(R"({"n":4,"prefix":"EAEA","clauses":[[1,-2,3]]})").get<QbfInstance>();
    EXPECT_TRUE(q.conforming());
    EXPECT_EQ(nlohmann::json(q)["prefix"], "EAEA");
    EXPECT_THROW(nlohmann::json::parse(R"({"n":2,"prefix":"EX","clauses":[]})").get<QbfInstance>(),
                 std::invalid_argument);
}

TEST(OneVar, Shape) {
    EXPECT_EQ(reduce_onevar_to_zerovar(parse("p")), parse("<>[]false"));
    const Formula contradiction = reduce_onevar_to_zerovar(parse("p & !p"));
    EXPECT_EQ(contradiction, parse("<>[]false & !<>[]false"));
    EXPECT_FALSE(sat_k_tableau(contradiction).sat());
    EXPECT_EQ(reduce_onevar_to_zerovar(parse("[]p")), parse("[](<>[]false | <><>[]false)"));
    EXPECT_THROW(reduce_onevar_to_zerovar(parse("p & q")), std::invalid_argument);
}

TEST(OneVar, EquisatisfiableOnCorpus) {
    GeneratorSpec spec;
    spec.fragment = OperatorSet::from_bits(0xff);
    spec.max_vars = 1;
    spec.max_depth = 2;
    spec.max_width = 2;
    spec.max_size = 6;
    for (const Formula& f : generate_formulas(spec)) {
        const Formula g = reduce_onevar_to_zerovar(f);
        ASSERT_TRUE(variables(g).empty());
        ASSERT_EQ(sat_k_tableau(f).sat(), sat_k_tableau(g).sat()) << render(f) << " -> " << render(g);
    }
}
