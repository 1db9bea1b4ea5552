#include <gtest/gtest.h>

#include "modalsat/formula.hpp"
#include "modalsat/generate.hpp"
#include "modalsat/oracle.hpp"
#include "modalsat/procedures.hpp"
#include "modalsat/reductions.hpp"

using namespace modalsat;

namespace {

const OperatorSet kPoorMans{Op::AtNeg, Op::And, Op::Box, Op::Dia};

bool sat_of(const SatVerdict& v) { return v.decision == Decision::Sat; }

void expect_witness(const SatVerdict& v, const Formula& f, const FrameClass& fc) {
    if (!v.sat()) {
        EXPECT_FALSE(v.witness.has_value());
        return;
    }
    ASSERT_TRUE(v.witness.has_value()) << v.procedure << " " << render(f);
    EXPECT_NO_THROW(v.witness->validate());
    EXPECT_TRUE(evaluate(*v.witness, v.witness->root, f)) << v.procedure << " " << render(f);
    EXPECT_TRUE(conforms(*v.witness, fc)) << v.procedure << " " << render(f);
}

std::vector<Formula> corpus(OperatorSet ops, std::size_t size) {
    GeneratorSpec spec;
    spec.fragment = ops;
    spec.max_vars = 2;
    spec.max_depth = 2;
    spec.max_width = 3;
    spec.max_size = size;
    return generate_formulas(spec);
}

}  // namespace

TEST(Dispatcher, SpecExamples) {
    EXPECT_TRUE(sat(parse("[]p & <>~p"), FrameClass::k()).sat() == false);
    EXPECT_TRUE(sat(parse("[]p & <>p"), FrameClass::k()).sat());
    EXPECT_FALSE(sat(parse("<>p & <>~p"), FrameClass::at_most_one()).sat());
    EXPECT_FALSE(sat(parse("p & ~p"), FrameClass::serial()).sat());
    EXPECT_EQ(sat(parse("[]p & <>p"), FrameClass::k()).procedure, "poorman_sat_k");
    EXPECT_EQ(sat(parse("[]p | p"), FrameClass::k()).procedure, "sat_k_tableau");
    EXPECT_EQ(sat(parse("[]p"), FrameClass::serial()).procedure, "poorman_sat_kd_pairs");
    EXPECT_THROW(sat(parse("p"), FrameClass::fixed_frame(frame3())), std::invalid_argument);
}

TEST(Tableau, KExamples) {
    EXPECT_FALSE(sat_k_tableau(parse("[]p & []~p & <>q")).sat());
    EXPECT_TRUE(sat_k_tableau(parse("[]p & []~p")).sat());
    EXPECT_FALSE(sat_k_tableau(parse("<>(p & ~p)")).sat());
    EXPECT_TRUE(sat_k_tableau(parse("!(<>p & []~p)")).sat());
}

TEST(Tableau, SerialExamples) {
    const auto v = sat_kd_tableau(parse("[]p & []~p"));
    EXPECT_FALSE(v.sat());
    ASSERT_FALSE(v.trace.empty());
    EXPECT_EQ(v.trace.back().rule, "serial");
    const Formula f = parse("[]p & <>p & ~p");
    const auto w = sat_kd_tableau(f);
    EXPECT_TRUE(w.sat());
    expect_witness(w, f, FrameClass::serial());
    EXPECT_EQ(w.witness->worlds.size(), 2u);
    EXPECT_TRUE(sat_kd_tableau(phi_exp(2)).sat());
    expect_witness(sat_kd_tableau(phi_exp(2)), phi_exp(2), FrameClass::serial());
}

TEST(Tableau, AtMostTwoCounterexample) {
    const Formula f = parse("<>p & <>~p & <>(p & f) & <>(~p & f) & <>~f");
    EXPECT_FALSE(sat_le2(f).sat());
    const auto k = sat_k_tableau(f);
    EXPECT_TRUE(k.sat());
    expect_witness(k, f, FrameClass::k());
    EXPECT_TRUE(sat_le2(parse("<>p & <>~p")).sat());
    EXPECT_FALSE(sat_le1(parse("<>p & <>~p")).sat());
}

TEST(Tableau, DisjunctionBranching) {
    EXPECT_TRUE(sat_k_tableau(parse("(p | q) & ~p")).sat());
    EXPECT_FALSE(sat_k_tableau(parse("(p | q) & ~p & ~q")).sat());
    EXPECT_TRUE(sat_kd_tableau(parse("[]false | p")).sat());
    EXPECT_FALSE(sat_kd_tableau(parse("[]false")).sat());
    EXPECT_TRUE(sat_k_tableau(parse("[]false")).sat());
}

TEST(Tableau, TraceJson) {
    const auto v = sat_k_tableau(parse("[]p & []~p & <>q"));
    const auto j = trace_to_json(v.trace);
    ASSERT_TRUE(j.is_array());
    ASSERT_FALSE(j.empty());
    EXPECT_TRUE(j[0].contains("rule"));
    EXPECT_TRUE(j[0].contains("ids"));
}

TEST(PoorMan, KExamples) {
    EXPECT_TRUE(poorman_sat_k(parse("[]p & []~p")).sat());
    EXPECT_FALSE(poorman_sat_k(parse("[]p & []~p & <>q")).sat());
    const Formula f = parse("<>p & <>~p");
    const auto v = poorman_sat_k(f);
    EXPECT_TRUE(v.sat());
    expect_witness(v, f, FrameClass::k());
    EXPECT_THROW(poorman_sat_k(parse("p | q")), NotInFragment);
    EXPECT_THROW(poorman_sat_k(parse("<>true")), NotInFragment);
}

TEST(PoorMan, Le1Examples) {
    EXPECT_FALSE(poorman_sat_le1(parse("<>p & <>~p")).sat());
    const Formula chain = parse("[]p & <>p");
    const auto v = poorman_sat_le1(chain);
    ASSERT_TRUE(v.sat());
    EXPECT_EQ(v.witness->worlds.size(), 2u);
    expect_witness(v, chain, FrameClass::at_most_one());
    const auto lits = poorman_sat_le1(parse("p & ~q"));
    ASSERT_TRUE(lits.sat());
    EXPECT_EQ(lits.witness->worlds.size(), 1u);
}

TEST(PoorMan, PairsExamples) {
    const auto v = poorman_sat_kd_pairs(parse("[]p & []~p & <>q"));
    EXPECT_FALSE(v.sat());
    EXPECT_FALSE(v.witness.has_value());
    ASSERT_FALSE(v.trace.empty());
    EXPECT_EQ(v.trace.front().detail, "[]p, []~p");
    EXPECT_TRUE(poorman_sat_kd_pairs(phi_exp(3)).sat());
    EXPECT_TRUE(poorman_sat_kd_pairs(parse("p")).sat());
    EXPECT_THROW(poorman_sat_kd_pairs(parse("p & true")), NotInFragment);
}

TEST(Agreement, OracleOnPoorMansCorpus) {
    for (const Formula& f : corpus(kPoorMans, 8)) {
        const bool k = brute_force_sat(f, FrameClass::k(), 16).status == OracleStatus::Sat;
        const bool kd = brute_force_sat(f, FrameClass::serial(), 16).status == OracleStatus::Sat;
        const bool le1 = brute_force_sat(f, FrameClass::at_most_one(), 3).status == OracleStatus::Sat;
        const bool le2 = brute_force_sat(f, FrameClass::at_most_two(), 7).status == OracleStatus::Sat;
        ASSERT_EQ(sat_of(poorman_sat_k(f)), k) << render(f);
        ASSERT_EQ(sat_of(sat_k_tableau(f)), k) << render(f);
        ASSERT_EQ(sat_of(poorman_sat_kd_pairs(f)), kd) << render(f);
        ASSERT_EQ(sat_of(sat_kd_tableau(f)), kd) << render(f);
        ASSERT_EQ(sat_of(poorman_sat_le1(f)), le1) << render(f);
        ASSERT_EQ(sat_of(sat_le1(f)), le1) << render(f);
        ASSERT_EQ(sat_of(sat_le2(f)), le2) << render(f);
    }
}

TEST(Agreement, OracleOnFullLanguage) {
    const OperatorSet ops = OperatorSet::from_bits(0xff);
    for (const Formula& f : corpus(ops, 6)) {
        for (FrameTag tag : {FrameTag::K, FrameTag::Serial, FrameTag::AtMostOne, FrameTag::AtMostTwo}) {
            const FrameClass fc{tag, {}};
            const auto oracle = brute_force_sat(f, fc, 16);
            ASSERT_NE(oracle.status, OracleStatus::BoundExceeded) << render(f);
            const auto v = tableau_sat(f, tag);
            ASSERT_EQ(v.sat(), oracle.status == OracleStatus::Sat) << to_string(tag) << " " << render(f);
            expect_witness(v, f, fc);
        }
    }
}

TEST(Agreement, WitnessesOfPoorMansProcedures) {
    for (const Formula& f : corpus(kPoorMans, 7)) {
        expect_witness(poorman_sat_k(f), f, FrameClass::k());
        expect_witness(poorman_sat_le1(f), f, FrameClass::at_most_one());
        expect_witness(sat_le2(f), f, FrameClass::at_most_two());
    }
}

TEST(Agreement, FrameMonotonicity) {
    for (const Formula& f : corpus(kPoorMans, 8)) {
        const bool le1 = sat_le1(f).sat(), le2 = sat_le2(f).sat(), k = sat_k_tableau(f).sat(),
                   kd = sat_kd_tableau(f).sat();
        EXPECT_TRUE(!le1 || le2) << render(f);
        EXPECT_TRUE(!le2 || k) << render(f);
        EXPECT_TRUE(!kd || k) << render(f);
    }
}
