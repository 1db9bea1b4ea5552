#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support/golden.hpp"
#include "modalsat/cli.hpp"
#include "modalsat/formula.hpp"
#include "modalsat/kripke.hpp"
#include "modalsat/reductions.hpp"

using namespace modalsat;
namespace support = modalsat::testing;

namespace {

const std::string kGolden = MODALSAT_GOLDEN_DIR;

struct Run {
    int code;
    std::string out, err;
};

Run invoke(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> corpus_lines() {
    std::ifstream file(kGolden + "/corpus.txt");
    std::vector<std::string> lines;
    for (std::string line; std::getline(file, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST(Cli, GoldenInvocations) {
    const auto cases = support::load_golden_cases(kGolden);
    ASSERT_GE(cases.size(), 20u);
    for (const auto& c : cases) {
        const auto o = support::run_golden(c);
        EXPECT_EQ(support::check_golden(c, o), "") << support::describe(c);
    }
}

TEST(Cli, ReadFormulaText) {
    std::istringstream in("# comment\n[]p &\n  <>q\n#x\n");
    EXPECT_EQ(parse(cli::read_formula_text(in)), parse("[]p & <>q"));
}

TEST(Cli, AutoAgreesWithOracleOnCorpus) {
    const auto lines = corpus_lines();
    ASSERT_FALSE(lines.empty());
    for (const std::string& f : lines) {
        for (const char* frame : {"k", "kd", "le1", "le2"}) {
            const auto a = invoke({"solve", "--frame", frame, f});
            const auto o = invoke({"solve", "--frame", frame, "--algo", "oracle", "--max-worlds", "12", f});
            ASSERT_NE(o.code, cli::kBoundExceeded) << frame << " " << f;
            EXPECT_EQ(a.code, o.code) << frame << " " << f;
            EXPECT_EQ(a.out, o.out) << frame << " " << f;
        }
    }
}

TEST(Cli, Kd2kRoundTripOnCorpus) {
    const auto dir = std::filesystem::temp_directory_path();
    for (const std::string& f : corpus_lines()) {
        if (!is_poor_mans(parse(f))) continue;
        const auto path = (dir / "modalsat_kd2k_input.txt").string();
        std::ofstream(path) << f << '\n';
        const auto reduced = invoke({"reduce", "kd2k", "--in", path});
        ASSERT_EQ(reduced.code, 0) << reduced.err;
        const std::string formula = reduced.out.substr(0, reduced.out.find('\n'));
        EXPECT_EQ(invoke({"solve", "--frame", "k", formula}).out, invoke({"solve", "--frame", "kd", f}).out) << f;
        std::remove(path.c_str());
    }
}

TEST(Cli, ModelOut) {
    const auto path = (std::filesystem::temp_directory_path() / "modalsat_model.json").string();
    for (const char* algo : {"auto", "tableau", "poorman", "oracle"}) {
        std::remove(path.c_str());
        const auto r = invoke({"solve", "--frame", "kd", "--algo", algo, "--model-out", path, "[]p & <>p & ~p"});
        ASSERT_EQ(r.code, 0) << algo << " " << r.err;
        std::ifstream file(path);
        ASSERT_TRUE(file.good()) << algo;
        const auto model = nlohmann::json::parse(file).get<KripkeModel>();
        EXPECT_TRUE(evaluate(model, model.root, parse("[]p & <>p & ~p"))) << algo;
        EXPECT_TRUE(conforms(model, FrameClass::serial())) << algo;
    }
    std::remove(path.c_str());
}

TEST(Cli, TraceIsJson) {
    const auto r = invoke({"solve", "--frame", "kd", "--trace", "[]p & []~p"});
    EXPECT_EQ(r.code, cli::kUnsat);
    const auto second = r.out.substr(r.out.find('\n') + 1);
    EXPECT_TRUE(nlohmann::json::parse(second).is_array());
}

TEST(Cli, ErrorsAreOneLine) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"solve", "--frame", "k", "--in", "/nonexistent/file"},
             {"reduce", "3col", "--in", kGolden + "/serial.txt"},
             {"reduce", "kd2k", "--in", kGolden + "/constants.txt"},
             {"oracle", "--frame", "k", "p"},
             {"solve", "--frame", "frame3", "--algo", "tableau", "p"}}) {
        const auto r = invoke(args);
        EXPECT_EQ(r.code, cli::kUsage) << args[0] << " " << r.err;
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        EXPECT_TRUE(r.out.empty()) << r.out;
    }
}
