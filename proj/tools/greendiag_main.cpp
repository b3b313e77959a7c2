#include <CLI11.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "greendiag/classify.hpp"
#include "greendiag/errors.hpp"
#include "greendiag/oracle.hpp"
#include "greendiag/potential.hpp"
#include "greendiag/solution.hpp"
#include "greendiag/solver.hpp"

namespace {

using namespace greendiag;

// Exit codes: 0 success, 1 malformed input (including solution/spec hash
// mismatch), 2 no closed form found, 3 inadmissible potential, 4 tolerance
// failure during verification.
constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitNotFound = 2;
constexpr int kExitInadmissible = 3;
constexpr int kExitToleranceFailure = 4;

struct SpecSource {
    std::string preset_name;
    std::string spec_path;
    std::vector<std::string> params;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInput("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw MalformedInput("cannot write file: " + out_path);
    out << text;
}

std::map<std::string, Rational> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, Rational> out;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw MalformedInput("--param expects KEY=RATIONAL, got: " + kv);
        out[kv.substr(0, eq)] = Rational::parse(kv.substr(eq + 1));
    }
    return out;
}

PotentialSpec load_spec(const SpecSource& src) {
    if (!src.preset_name.empty() && !src.spec_path.empty())
        throw MalformedInput("--preset and --spec are mutually exclusive");
    if (!src.preset_name.empty()) return preset(src.preset_name, parse_params(src.params));
    if (!src.spec_path.empty()) {
        if (!src.params.empty())
            throw MalformedInput("--param applies to presets only; edit the spec file instead");
        return PotentialSpec::from_json(read_file(src.spec_path));
    }
    throw MalformedInput("a potential is required: pass --preset NAME or --spec PATH");
}

SolutionForm load_solution_checked(const std::string& path, const PotentialSpec& spec) {
    const SolutionForm sol = parse_solution(read_file(path));
    if (sol.spec_hash != spec.hash())
        throw MalformedInput("solution was produced for a different potential (hash " +
                             sol.spec_hash + " vs " + spec.hash() + ")");
    return sol;
}

Tolerances parse_tolerances(const std::vector<std::string>& kvs) {
    Tolerances tol;
    for (const auto& kv : kvs) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw MalformedInput("--tol expects NAME=FLOAT, got: " + kv);
        const std::string name = kv.substr(0, eq);
        double value = 0;
        try {
            std::size_t used = 0;
            value = std::stod(kv.substr(eq + 1), &used);
            if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw MalformedInput("--tol value is not a number: " + kv);
        }
        if (name == "agreement")
            tol.agreement = value;
        else if (name == "residual3")
            tol.residual3 = value;
        else if (name == "band_root")
            tol.band_root = value;
        else if (name == "band_trace")
            tol.band_trace = value;
        else if (name == "asymptote")
            tol.asymptote = value;
        else if (name == "det")
            tol.det = value;
        else
            throw MalformedInput("unknown tolerance name: " + name +
                                 " (expected agreement, residual3, band_root, band_trace, "
                                 "asymptote, or det)");
    }
    return tol;
}

std::vector<double> parse_p_list(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw MalformedInput("--p expects comma-separated numbers, got: " + item);
        }
    }
    if (out.empty()) throw MalformedInput("--p list is empty");
    return out;
}

int cmd_presets() {
    for (const auto& name : preset_names())
        std::cout << name << '\t' << preset(name).to_json() << '\n';
    return kExitOk;
}

int cmd_solve(const SpecSource& src, std::optional<long> n_max, long m0_max,
              const std::string& out_path) {
    const PotentialSpec spec = load_spec(src);
    SolveOptions opts;
    opts.n_max = n_max;
    opts.m0_max = m0_max;
    const SolutionForm sol = solve(spec, opts);
    write_output(out_path, emit_solution(sol));
    return kExitOk;
}

int cmd_verify(const std::string& solution_path, const SpecSource& src, int grid_x,
               const std::vector<std::string>& tol_kvs, bool csv,
               const std::string& out_path) {
    const PotentialSpec spec = load_spec(src);
    const SolutionForm sol = load_solution_checked(solution_path, spec);
    const Tolerances tol = parse_tolerances(tol_kvs);
    VerificationReport rep;
    try {
        rep = verify_solution(sol, spec, tol, OracleConfig{}, grid_x);
    } catch (const RootCountMismatch& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kExitToleranceFailure;
    }
    write_output(out_path, csv ? report_csv(rep) : report_json(rep));
    if (!rep.summary.pass) {
        std::cerr << "verification failed: max disagreement " << rep.summary.max_abs_disagreement
                  << ", max numeric residual " << rep.summary.max_residual3 << '\n';
        return kExitToleranceFailure;
    }
    return kExitOk;
}

int cmd_bands(const std::string& solution_path, const SpecSource& src,
              const std::string& out_path) {
    const PotentialSpec spec = load_spec(src);
    const SolutionForm sol = load_solution_checked(solution_path, spec);
    BandEdgeReport rep;
    try {
        rep = band_edges_check(sol, spec);
    } catch (const RootCountMismatch& e) {
        std::cerr << "band-edge check failed: " << e.what() << '\n';
        return kExitToleranceFailure;
    }
    nlohmann::ordered_json j;
    j["roots"] = rep.roots;
    j["root_errors"] = rep.root_errors;
    j["trace_errors"] = rep.trace_errors;
    write_output(out_path, j.dump(2));
    return kExitOk;
}

int cmd_eval(const std::string& solution_path, const SpecSource& src,
             const std::string& p_list, double x_min, double x_max, int grid_x,
             const std::string& out_path) {
    const PotentialSpec spec = load_spec(src);
    const SolutionForm sol = load_solution_checked(solution_path, spec);
    const std::vector<double> ps = parse_p_list(p_list);
    if (grid_x < 1) throw MalformedInput("--grid-x must be positive");
    if (x_max < x_min) throw MalformedInput("--x-max must be >= --x-min");

    std::string out = "x,p,G,note\n";
    char buf[160];
    for (const double p : ps) {
        for (int i = 0; i < grid_x; ++i) {
            const double x = grid_x == 1
                                 ? x_min
                                 : x_min + (x_max - x_min) * i / (grid_x - 1);
            try {
                const double g = eval_G(sol, spec, p, x);
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,\n", x, p, g);
            } catch (const BranchError&) {
                std::snprintf(buf, sizeof(buf), "%.17g,%.17g,,branch\n", x, p);
            }
            out += buf;
        }
    }
    write_output(out_path, out);
    return kExitOk;
}

int cmd_latex(const std::string& solution_path, const std::string& out_path) {
    const SolutionForm sol = parse_solution(read_file(solution_path));
    write_output(out_path, latex_solution(sol));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "greendiag: exact closed forms G(p,x) = sigma P(p,z)/(2 sqrt(Q(p))) for the "
        "Laplace-transformed heat-kernel diagonal, with numeric verification"};
    app.require_subcommand(1);

    SpecSource src;
    std::string solution_path;
    std::string out_path;
    std::vector<std::string> tol_kvs;
    std::string p_list;
    long m0_max = 12;
    std::optional<long> n_max;
    long n_max_raw = -1;
    int grid_x = 16;
    double x_min = 0.0, x_max = 0.0;
    bool x_max_set = false, csv = false;

    auto add_spec_opts = [&](CLI::App* cmd) {
        cmd->add_option("--preset", src.preset_name, "Built-in potential name");
        cmd->add_option("--spec", src.spec_path, "Potential spec JSON file");
        cmd->add_option("--param", src.params, "Preset parameter override KEY=RATIONAL");
    };

    CLI::App* c_presets = app.add_subcommand("presets", "List built-in potentials");

    CLI::App* c_solve = app.add_subcommand("solve", "Compute the exact closed form");
    add_spec_opts(c_solve);
    c_solve->add_option("--n-max", n_max_raw, "Largest p-degree to try");
    c_solve->add_option("--m0-max", m0_max, "Cap for the gap-count candidate search");
    c_solve->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* c_verify = app.add_subcommand("verify", "Verify a solution against the oracles");
    c_verify->add_option("solution", solution_path, "Solution JSON file")->required();
    add_spec_opts(c_verify);
    c_verify->add_option("--grid-x", grid_x, "x samples per p value (default 16)");
    c_verify->add_option("--tol", tol_kvs, "Tolerance override NAME=FLOAT");
    c_verify->add_flag("--csv", csv, "Emit the sample grid as CSV instead of JSON");
    c_verify->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* c_bands = app.add_subcommand("bands", "Check band edges: roots of Q vs monodromy trace");
    c_bands->add_option("solution", solution_path, "Solution JSON file")->required();
    add_spec_opts(c_bands);
    c_bands->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* c_eval = app.add_subcommand("eval", "Tabulate G(p,x) as CSV");
    c_eval->add_option("solution", solution_path, "Solution JSON file")->required();
    add_spec_opts(c_eval);
    c_eval->add_option("--p", p_list, "Comma-separated p values")->required();
    c_eval->add_option("--x-min", x_min, "Start of the x range (default 0)");
    c_eval->add_option("--x-max", x_max, "End of the x range (default: one period)")
        ->each([&](const std::string&) { x_max_set = true; });
    c_eval->add_option("--grid-x", grid_x, "Number of x samples (default 16)");
    c_eval->add_option("--out", out_path, "Output path (default: stdout)");

    CLI::App* c_latex = app.add_subcommand("latex", "Print the solution as LaTeX");
    c_latex->add_option("solution", solution_path, "Solution JSON file")->required();
    c_latex->add_option("--out", out_path, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_presets)) return cmd_presets();
        if (app.got_subcommand(c_solve)) {
            if (n_max_raw >= 0) n_max = n_max_raw;
            return cmd_solve(src, n_max, m0_max, out_path);
        }
        if (app.got_subcommand(c_verify))
            return cmd_verify(solution_path, src, grid_x, tol_kvs, csv, out_path);
        if (app.got_subcommand(c_bands)) return cmd_bands(solution_path, src, out_path);
        if (app.got_subcommand(c_eval)) {
            if (!x_max_set) {
                const PotentialSpec spec = load_spec(src);
                x_max = spec.period.value_or(1.0);
            }
            return cmd_eval(solution_path, src, p_list, x_min, x_max, grid_x, out_path);
        }
        if (app.got_subcommand(c_latex)) return cmd_latex(solution_path, out_path);
    } catch (const NotFound& e) {
        std::cerr << e.what() << '\n';
        return kExitNotFound;
    } catch (const Inadmissible& e) {
        std::cerr << "inadmissible potential: " << e.what() << '\n';
        return kExitInadmissible;
    } catch (const InadmissibleInput& e) {
        std::cerr << "inadmissible potential: " << e.what() << '\n';
        return kExitInadmissible;
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    }
    return kExitMalformed;
}
