// ftucker: build, store and evaluate Tucker approximants of f(x,y,z) on [-1,1]^3.
//
//   ftucker approx --fn runge3 --tol 1e-12 --out r.tcheb --stats r.json
//   ftucker eval --in r.tcheb --at 0 0 0
//   ftucker study rankdeg --eps-list 1e-1,1e-2 --grid 100 --out rankdeg.csv
//   ftucker bench --fns runge3,spike --out report.csv

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ftucker/approximator.hpp>
#include <ftucker/catalog.hpp>
#include <ftucker/funcexpr.hpp>
#include <ftucker/serialize.hpp>
#include <ftucker/studies.hpp>

namespace {

using namespace ftucker;

enum Exit : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_parse = 2,
    exit_sampling = 3,
    exit_not_certified = 4,
    exit_io = 5,
    exit_other = 6,
};

struct ApproxArgs {
    std::string expr, fn, out, stats;
    double tol = 1e-12;
    std::uint64_t seed = 1;
    std::size_t max_restarts = 5;
};

struct EvalArgs {
    std::string in, points, compare_expr, compare_fn, out;
    std::vector<double> at;
};

struct RankdegArgs {
    std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
    double tol = 1e-10;
    std::size_t grid = 100;
    std::string out;
};

struct BenchArgs {
    std::vector<std::string> fns{"runge3", "expdist", "coshinv", "spike"};
    double tol = 1e-12;
    std::uint64_t seed = 1;
    std::string out;
};

FuncExpr function_from(const std::string& expr, const std::string& fn) {
    if (!expr.empty())
        return parse_expr(expr);
    return catalog_function(fn);
}

std::string dims_text(const Dims3& d) {
    return "(" + std::to_string(d[0]) + ", " + std::to_string(d[1]) + ", " + std::to_string(d[2]) + ")";
}

int cmd_approx(const ApproxArgs& args) {
    FuncExpr f;
    try {
        f = function_from(args.expr, args.fn);
    } catch (const ParseError& e) {
        std::cerr << "error: cannot parse expression: " << e.what() << '\n';
        if (!args.expr.empty() && e.offset() <= args.expr.size())
            std::cerr << "  " << args.expr << "\n  " << std::string(e.offset(), ' ') << "^\n";
        return exit_parse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    ConstructorConfig config;
    config.tol = args.tol;
    config.seed = args.seed;
    config.max_restarts = args.max_restarts;

    InstrumentedOracle oracle([&f](double x, double y, double z) { return f(x, y, z); });
    TuckerApproximant a;
    try {
        a = construct(oracle, config);
    } catch (const sampling_error& e) {
        std::cerr << "error: sampling failed: " << e.what() << '\n';
        return exit_sampling;
    }

    const auto& s = a.stats();
    const auto lengths = a.lengths();
    const auto sum = s.evals.sum();
    std::printf("ranks              %s\n", dims_text(s.ranks).c_str());
    std::printf("degrees            (%zu, %zu, %zu)\n", lengths[0] - 1, lengths[1] - 1, lengths[2] - 1);
    std::printf("coarse grid        %s\n", dims_text(s.coarse_dims).c_str());
    std::printf("restarts           %zu\n", s.restarts);
    std::printf("evaluations        %llu total, %llu distinct\n", static_cast<unsigned long long>(sum.total),
                static_cast<unsigned long long>(sum.distinct));
    std::printf("  %-8s %12s %12s\n", "phase", "total", "distinct");
    const std::pair<const char*, EvalCounters> phases[] = {
        {"1", s.evals.phase1}, {"2", s.evals.phase2}, {"3", s.evals.phase3}, {"verify", s.evals.verify}};
    for (const auto& [name, c] : phases)
        std::printf("  %-8s %12llu %12llu\n", name, static_cast<unsigned long long>(c.total),
                    static_cast<unsigned long long>(c.distinct));
    std::printf("halton error       %.3e (limit %.3e)\n", s.halton_error,
                config.acceptance_factor * config.tol * s.vscale);
    std::printf("certified          %s\n", s.certified ? "yes" : "no");
    if (!s.resolved)
        std::fprintf(stderr, "warning: some fibers were not resolved at the maximal grid size\n");

    try {
        if (!args.out.empty())
            write_approximant(args.out, a);
        if (!args.stats.empty())
            write_stats(args.stats, s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    if (!s.certified) {
        std::cerr << "error: tolerance not certified after " << s.restarts << " restarts\n";
        return exit_not_certified;
    }
    return exit_ok;
}

std::vector<std::array<double, 3>> read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::array<double, 3>> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        if (lineno == 1 && line.find_first_of("xyzXYZ") != std::string::npos)
            continue;  // header
        std::array<double, 3> p{};
        std::stringstream ss(line);
        std::string cell;
        std::size_t count = 0;
        while (std::getline(ss, cell, ',')) {
            if (count == 3)
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 columns");
            char* end = nullptr;
            p[count] = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || std::string_view(end).find_first_not_of(" \t") != std::string_view::npos)
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": '" + cell + "' is not a number");
            ++count;
        }
        if (count != 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 3 columns");
        pts.push_back(p);
    }
    return pts;
}

int cmd_eval(const EvalArgs& args) {
    std::optional<FuncExpr> exact;
    try {
        if (!args.compare_expr.empty() || !args.compare_fn.empty())
            exact = function_from(args.compare_expr, args.compare_fn);
    } catch (const ParseError& e) {
        std::cerr << "error: cannot parse expression: " << e.what() << '\n';
        return exit_parse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }

    TuckerApproximant a;
    std::vector<std::array<double, 3>> pts;
    try {
        a = read_approximant(args.in);
        if (!args.points.empty())
            pts = read_points(args.points);
        else
            pts.push_back({args.at[0], args.at[1], args.at[2]});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }

    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out, std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot open '" << args.out << "' for writing\n";
            return exit_io;
        }
    }
    std::ostream& out = args.out.empty() ? std::cout : file;
    out << (exact ? "x,y,z,value,exact,abs_error\n" : "x,y,z,value\n");
    char buf[160];
    std::size_t outside = 0;
    for (const auto& p : pts) {
        if (std::abs(p[0]) > 1.0 || std::abs(p[1]) > 1.0 || std::abs(p[2]) > 1.0)
            ++outside;
        const double v = a(p[0], p[1], p[2]);
        if (exact) {
            const double e = (*exact)(p[0], p[1], p[2]);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.3e\n", p[0], p[1], p[2], v, e,
                          std::abs(e - v));
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p[0], p[1], p[2], v);
        }
        out << buf;
    }
    if (outside > 0)
        std::cerr << "warning: " << outside << " point(s) outside [-1,1]^3; values are extrapolated\n";
    return out ? exit_ok : exit_io;
}

int cmd_rankdeg(const RankdegArgs& args) {
    RankDegreeOptions opt;
    opt.tol = args.tol;
    opt.grid = args.grid;
    std::vector<RankDegreeRow> rows;
    try {
        rows = rank_degree_study(args.eps, opt);
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    if (args.out.empty()) {
        write_rankdeg_csv(std::cout, rows);
        return exit_ok;
    }
    std::ofstream file(args.out, std::ios::trunc);
    write_rankdeg_csv(file, rows);
    for (const auto& r : rows)
        std::printf("eps %-10.3g degree %6zu  rank %4zu\n", r.eps, r.degree, r.rank);
    return file ? exit_ok : exit_io;
}

int cmd_bench(const BenchArgs& args) {
    ConstructorConfig config;
    config.tol = args.tol;
    config.seed = args.seed;
    const auto rows = run_bench(args.fns, config);

    std::printf("%-16s %-14s %8s %-16s %12s %12s %10s %8s\n", "function", "status", "restarts", "ranks",
                "total", "distinct", "halton", "seconds");
    int code = exit_ok;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::printf("%-16s error: %s\n", r.function.c_str(), r.error.c_str());
            code = exit_other;
            continue;
        }
        const auto& s = r.stats;
        const auto sum = s.evals.sum();
        std::printf("%-16s %-14s %8zu %-16s %12llu %12llu %10.2e %8.2f\n", r.function.c_str(),
                    s.certified ? "ok" : "not-certified", s.restarts, dims_text(s.ranks).c_str(),
                    static_cast<unsigned long long>(sum.total), static_cast<unsigned long long>(sum.distinct),
                    s.halton_error, s.wall_seconds);
        if (!s.certified && code == exit_ok)
            code = exit_not_certified;
    }
    if (!args.out.empty()) {
        std::ofstream file(args.out, std::ios::trunc);
        write_bench_csv(file, rows);
        if (!file) {
            std::cerr << "error: cannot write '" << args.out << "'\n";
            return exit_io;
        }
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Functional Tucker approximation of f(x,y,z) on [-1,1]^3"};
    app.require_subcommand(1);

    ApproxArgs approx;
    auto* approx_cmd = app.add_subcommand("approx", "build an approximant");
    auto* expr_opt = approx_cmd->add_option("--expr", approx.expr, "expression in x, y, z");
    auto* fn_opt = approx_cmd->add_option("--fn", approx.fn, "catalog function name");
    expr_opt->excludes(fn_opt);
    fn_opt->excludes(expr_opt);
    approx_cmd->add_option("--tol", approx.tol, "relative tolerance")->capture_default_str()->check(
        CLI::PositiveNumber);
    approx_cmd->add_option("--seed", approx.seed, "random seed")->capture_default_str();
    approx_cmd->add_option("--max-restarts", approx.max_restarts, "restart limit")->capture_default_str();
    approx_cmd->add_option("--out", approx.out, "write the approximant here");
    approx_cmd->add_option("--stats", approx.stats, "write construction stats (JSON) here");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a stored approximant");
    eval_cmd->add_option("--in", eval.in, "approximant file")->required();
    auto* points_opt = eval_cmd->add_option("--points", eval.points, "CSV file with rows x,y,z");
    auto* at_opt = eval_cmd->add_option("--at", eval.at, "a single point")->expected(3)->allow_extra_args(false);
    points_opt->excludes(at_opt);
    at_opt->excludes(points_opt);
    auto* cmp_expr = eval_cmd->add_option("--compare-expr", eval.compare_expr, "reference expression");
    auto* cmp_fn = eval_cmd->add_option("--compare-fn", eval.compare_fn, "reference catalog function");
    cmp_expr->excludes(cmp_fn);
    eval_cmd->add_option("--out", eval.out, "write CSV here instead of stdout");

    auto* study_cmd = app.add_subcommand("study", "experiments");
    study_cmd->require_subcommand(1);
    RankdegArgs rankdeg;
    auto* rankdeg_cmd = study_cmd->add_subcommand("rankdeg", "rank and degree of 1/(x+y+z+3+eps)");
    rankdeg_cmd->add_option("--eps-list", rankdeg.eps, "comma separated eps values")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    rankdeg_cmd->add_option("--tol", rankdeg.tol, "tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    rankdeg_cmd->add_option("--grid", rankdeg.grid, "HOSVD sample grid per mode")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000));
    rankdeg_cmd->add_option("--out", rankdeg.out, "CSV output (stdout if omitted)");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "evaluation counts over catalog functions");
    bench_cmd->add_option("--fns", bench.fns, "comma separated catalog names")->delimiter(',');
    bench_cmd->add_option("--tol", bench.tol, "relative tolerance")->capture_default_str()->check(
        CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "random seed")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "CSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*approx_cmd) {
            if (approx.expr.empty() && approx.fn.empty()) {
                std::cerr << "error: approx needs --expr or --fn\n";
                return exit_usage;
            }
            return cmd_approx(approx);
        }
        if (*eval_cmd) {
            if (eval.points.empty() && eval.at.empty()) {
                std::cerr << "error: eval needs --points or --at\n";
                return exit_usage;
            }
            return cmd_eval(eval);
        }
        if (*rankdeg_cmd)
            return cmd_rankdeg(rankdeg);
        if (*bench_cmd)
            return cmd_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_other;
    }
    return exit_usage;
}
