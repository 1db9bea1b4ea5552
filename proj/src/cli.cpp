#include "modalsat/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modalsat/formula.hpp"
#include "modalsat/fragments.hpp"
#include "modalsat/kripke.hpp"
#include "modalsat/oracle.hpp"
#include "modalsat/procedures.hpp"
#include "modalsat/reductions.hpp"

namespace modalsat::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string> kFrames{"k", "kd", "le1", "le2", "frame3"};
const std::vector<std::string> kAlgos{"auto", "tableau", "poorman", "oracle"};
const std::vector<std::string> kReductions{"3col", "qbf", "kd2k", "const2var", "elimtrue", "onevar2zerovar"};

FrameClass frame_class(const std::string& name) {
    if (name == "k") return FrameClass::k();
    if (name == "kd") return FrameClass::serial();
    if (name == "le1") return FrameClass::at_most_one();
    if (name == "le2") return FrameClass::at_most_two();
    if (name == "frame3") return FrameClass::fixed_frame(frame3());
    throw UsageError("unknown frame class " + name);
}

std::string read_all(const std::string& path, std::istream& in) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream file(path);
    if (!file) throw UsageError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(file), {});
}

// Exactly one of a formula argument ("-" for stdin) and --in.
Formula load_formula(const std::string& text, const std::string& in_path, std::istream& in) {
    if (text.empty() == in_path.empty()) throw UsageError("give exactly one of FORMULA, --in FILE or -");
    if (!text.empty() && text != "-") return parse(text);
    std::istringstream body(read_all(text.empty() ? in_path : "-", in));
    return parse(read_formula_text(body));
}

void write_model(const std::string& path, const KripkeModel& model) {
    std::ofstream file(path);
    if (!file) throw UsageError("cannot write " + path);
    file << nlohmann::json(model).dump(2) << '\n';
}

int print_verdict(bool sat, std::ostream& out) {
    out << (sat ? "SAT" : "UNSAT") << '\n';
    return sat ? kSat : kUnsat;
}

int report_oracle(const OracleResult& r, std::size_t max_worlds, const std::string& model_out, std::ostream& out,
                  std::ostream& err) {
    if (r.status == OracleStatus::BoundExceeded) {
        err << "bound exceeded: no model within " << max_worlds
            << " worlds, and an UNSAT answer needs a larger search; raise --max-worlds\n";
        return kBoundExceeded;
    }
    const bool sat = r.status == OracleStatus::Sat;
    if (sat && !model_out.empty()) write_model(model_out, *r.witness);
    return print_verdict(sat, out);
}

struct SolveOptions {
    std::string frame;
    std::string algo = "auto";
    std::size_t max_worlds = 8;
    std::string model_out;
    std::string in_path;
    std::string formula;
    bool trace = false;
};

int solve(const SolveOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
    const Formula f = load_formula(o.formula, o.in_path, in);
    const FrameClass fc = frame_class(o.frame);
    if (fc.tag == FrameTag::Fixed) {
        if (o.algo == "tableau" || o.algo == "poorman") {
            throw UsageError("--algo " + o.algo + " is not available on a fixed frame");
        }
        return report_oracle(fixed_frame_sat(f, *fc.fixed), o.max_worlds, o.model_out, out, err);
    }
    if (o.algo == "oracle") return report_oracle(brute_force_sat(f, fc, o.max_worlds), o.max_worlds, o.model_out, out, err);

    SatVerdict v;
    if (o.algo == "auto") {
        v = sat(f, fc);
    } else if (o.algo == "tableau") {
        v = tableau_sat(f, fc.tag);
    } else {
        if (!is_poor_mans(f)) throw UsageError("--algo poorman needs a formula over atneg, and, box, dia");
        switch (fc.tag) {
            case FrameTag::K: v = poorman_sat_k(f); break;
            case FrameTag::Serial: v = poorman_sat_kd_pairs(f); break;
            case FrameTag::AtMostOne: v = poorman_sat_le1(f); break;
            default: throw UsageError("no poor man's procedure for frame " + o.frame);
        }
    }
    const int code = print_verdict(v.sat(), out);
    if (o.trace) out << trace_to_json(v.trace).dump() << '\n';
    if (v.sat() && !o.model_out.empty()) {
        // The pair table decides without building a model.
        if (!v.witness) v.witness = tableau_sat(f, fc.tag).witness;
        write_model(o.model_out, *v.witness);
    }
    return code;
}

struct ReduceOptions {
    std::string name;
    std::string in_path;
    bool solve = false;
};

int reduce(const ReduceOptions& o, std::istream& in, std::ostream& out) {
    Formula g = Formula::top();
    std::string target = "k";
    if (o.name == "3col") {
        g = reduce_3col(nlohmann::json::parse(read_all(o.in_path, in)).get<Graph>());
        target = "frame3";
    } else if (o.name == "qbf") {
        g = reduce_qbf(normalize_qbf(nlohmann::json::parse(read_all(o.in_path, in)).get<QbfInstance>()));
        target = "le2";
    } else {
        const Formula f = load_formula("", o.in_path, in);
        if (o.name == "kd2k") {
            g = reduce_kd_to_k(f);
        } else if (o.name == "const2var") {
            g = reduce_constants_to_vars(f);
        } else if (o.name == "elimtrue") {
            g = reduce_eliminate_true(f);
        } else {
            g = reduce_onevar_to_zerovar(f);
        }
    }
    int code = kSuccess;
    if (o.solve) {
        const FrameClass fc = frame_class(target);
        const bool sat = fc.tag == FrameTag::Fixed ? fixed_frame_sat(g, *fc.fixed).status == OracleStatus::Sat
                                                   : modalsat::sat(g, fc).sat();
        code = print_verdict(sat, out);
    }
    out << render(g) << '\n' << "# target: " << target << '\n';
    return code;
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

}  // namespace

std::string read_formula_text(std::istream& in) {
    std::string text, line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        if (!text.empty()) text += ' ';
        text += line;
    }
    return text;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Modal satisfiability workbench", "modalsat"};
    app.require_subcommand(1);

    SolveOptions so;
    auto* solve_cmd = app.add_subcommand("solve", "Decide satisfiability over a frame class");
    solve_cmd->add_option("--frame", so.frame, "Frame class")->required()->check(CLI::IsMember(kFrames));
    solve_cmd->add_option("--algo", so.algo, "Procedure")->check(CLI::IsMember(kAlgos));
    solve_cmd->add_option("--max-worlds", so.max_worlds, "Oracle world bound")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--model-out", so.model_out, "Write the witness model as JSON");
    solve_cmd->add_option("--in", so.in_path, "Read the formula from a file");
    solve_cmd->add_flag("--trace", so.trace, "Print the procedure trace as JSON after the verdict");
    solve_cmd->add_option("formula", so.formula, "Formula, or - for stdin");

    std::string opset;
    auto* classify_cmd = app.add_subcommand("classify", "Complexity of an operator set");
    classify_cmd->add_option("opset", opset, "Comma list over neg,atneg,and,or,box,dia,true,false")->required();

    std::string fragment_text;
    auto* fragment_cmd = app.add_subcommand("fragment", "Minimal operator set of a formula");
    fragment_cmd->add_option("formula", fragment_text, "Formula")->required();

    ReduceOptions ro;
    auto* reduce_cmd = app.add_subcommand("reduce", "Apply a reduction");
    reduce_cmd->add_option("name", ro.name, "Reduction")->required()->check(CLI::IsMember(kReductions));
    reduce_cmd->add_option("--in", ro.in_path, "Input file, or - for stdin")->required();
    reduce_cmd->add_flag("--solve", ro.solve, "Also decide the output on the target frame");

    SolveOptions oo;
    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force model search");
    oracle_cmd->add_option("--frame", oo.frame, "Frame class")->required()->check(CLI::IsMember(kFrames));
    oracle_cmd->add_option("--max-worlds", oo.max_worlds, "World bound")->required()->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--model-out", oo.model_out, "Write the witness model as JSON");
    oracle_cmd->add_option("--in", oo.in_path, "Read the formula from a file");
    oracle_cmd->add_option("formula", oo.formula, "Formula, or - for stdin");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kUsage;
    }

    try {
        if (*solve_cmd) return solve(so, in, out, err);
        if (*classify_cmd) {
            out << classify_operator_set(OperatorSet::parse(opset)).to_string() << '\n';
            return kSuccess;
        }
        if (*fragment_cmd) {
            const OperatorSet ops = operator_set_of(parse(fragment_text));
            out << (ops.empty() ? "none" : ops.to_string()) << '\n';
            return kSuccess;
        }
        if (*reduce_cmd) return reduce(ro, in, out);
        if (*oracle_cmd) {
            const Formula f = load_formula(oo.formula, oo.in_path, in);
            const FrameClass fc = frame_class(oo.frame);
            return report_oracle(brute_force_sat(f, fc, oo.max_worlds), oo.max_worlds, oo.model_out, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace modalsat::cli
