#pragma once

// Experiment drivers behind the CLI: the rank-versus-degree study on
// 1/(x+y+z+3+eps) and the evaluation-count benchmark over catalog functions.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "approximator.hpp"
#include "catalog.hpp"
#include "chebyshev.hpp"
#include "funcexpr.hpp"
#include "tensor.hpp"

namespace ftucker {

// ---- rank vs degree --------------------------------------------------------

struct RankDegreeRow {
    double eps = 0.0;
    std::size_t degree = 0;  ///< max chopped degree over the probed fibers
    std::size_t rank = 0;    ///< max truncated-HOSVD rank over the modes
};

struct RankDegreeOptions {
    double tol = 1e-10;
    std::size_t grid = 100;
    std::size_t max_points = (1u << 16) + 1;
    std::size_t max_bytes = std::size_t{2} << 30;  ///< refuse sample grids whose working set exceeds this
};

/// Degree needed to resolve a univariate function to tol relative to its own
/// maximum: refine 17 -> 33 -> 65 ... until is_resolved, then chop.
template <class F>
std::size_t resolved_degree(F&& g, double tol, std::size_t max_points = (1u << 16) + 1) {
    std::size_t n = 17;
    while (true) {
        const auto pts = cheb_points(n);
        std::vector<double> vals(n);
        double vscale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            vals[j] = g(pts[j]);
            vscale = std::max(vscale, std::abs(vals[j]));
        }
        const ChebSeries c = vals_to_coeffs(vals);
        if (vscale == 0.0)
            return 0;
        if (is_resolved(c, tol, vscale))
            return chop_series(c, tol, vscale).size() - 1;
        if (refine_size(n) > max_points)
            throw std::runtime_error("resolved_degree: not resolved with " + std::to_string(n) + " points");
        n = refine_size(n);
    }
}

inline RankDegreeRow rank_degree_point(double eps, const RankDegreeOptions& opt) {
    if (!(eps > 0.0))
        throw std::invalid_argument("rankdeg: eps must be positive");
    const double n = static_cast<double>(opt.grid);
    // tensor, one unfolding copy and the SVD workspace
    const double bytes = 3.0 * n * n * n * sizeof(double);
    if (bytes > static_cast<double>(opt.max_bytes))
        throw std::length_error("rankdeg: a " + std::to_string(opt.grid) + "^3 grid needs about " +
                                std::to_string(static_cast<long long>(bytes / (1 << 20))) +
                                " MiB; use a smaller --grid");
    const FuncExpr f = parse_expr(shifted_inverse_expression(eps));

    RankDegreeRow row;
    row.eps = eps;
    // f is symmetric in x, y, z, so mode-1 fibers cover all modes
    const double anchors[][2] = {{-1, -1}, {0, 0}, {1, 1}, {-1, 1}};
    for (const auto& a : anchors)
        row.degree = std::max(row.degree,
                              resolved_degree([&](double x) { return f(x, a[0], a[1]); }, opt.tol, opt.max_points));

    const auto pts = cheb_points(opt.grid);
    DenseTensor3 t({opt.grid, opt.grid, opt.grid});
    for (std::size_t k = 0; k < opt.grid; ++k)
        for (std::size_t j = 0; j < opt.grid; ++j)
            for (std::size_t i = 0; i < opt.grid; ++i)
                t(i, j, k) = f(pts[i], pts[j], pts[k]);
    const HosvdResult h = hosvd_truncated(t, opt.tol);
    row.rank = *std::max_element(h.ranks.begin(), h.ranks.end());
    return row;
}

inline std::vector<RankDegreeRow> rank_degree_study(const std::vector<double>& eps_list,
                                                    const RankDegreeOptions& opt) {
    std::vector<RankDegreeRow> rows;
    for (double eps : eps_list)
        rows.push_back(rank_degree_point(eps, opt));
    return rows;
}

inline constexpr const char* rankdeg_csv_header = "eps,degree,rank";

inline void write_rankdeg_csv(std::ostream& out, const std::vector<RankDegreeRow>& rows) {
    out << rankdeg_csv_header << '\n';
    char buf[96];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%zu\n", r.eps, r.degree, r.rank);
        out << buf;
    }
}

// ---- benchmark -------------------------------------------------------------

struct BenchRow {
    std::string function;
    ConstructionStats stats;
    Dims3 lengths{0, 0, 0};  ///< stored coefficients per mode (degree + 1)
    std::string error;       ///< set when the construction threw
};

inline constexpr const char* bench_csv_header =
    "function,status,restarts,r1,r2,r3,n1,n2,n3,"
    "phase1_total,phase1_distinct,phase2_total,phase2_distinct,phase3_total,phase3_distinct,"
    "verify_total,verify_distinct,total,distinct,halton_error,vscale,certified,wall_seconds";

/// Builds every named catalog function. A failure is recorded in its row and
/// does not stop the batch.
inline std::vector<BenchRow> run_bench(const std::vector<std::string>& names, ConstructorConfig config) {
    std::vector<BenchRow> rows;
    for (const auto& name : names) {
        BenchRow row;
        row.function = name;
        try {
            const FuncExpr f = catalog_function(name);
            InstrumentedOracle oracle([&f](double x, double y, double z) { return f(x, y, z); });
            const TuckerApproximant a = construct(oracle, config);
            row.stats = a.stats();
            row.lengths = a.lengths();
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << bench_csv_header << '\n';
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            std::string msg = r.error;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << r.function << ",error:" << msg << std::string(21, ',') << '\n';
            continue;
        }
        const auto& s = r.stats;
        const auto sum = s.evals.sum();
        char buf[512];
        std::snprintf(buf, sizeof buf,
                      "%s,%s,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,%llu,"
                      "%.6e,%.17g,%d,%.3f\n",
                      r.function.c_str(), s.certified ? "ok" : "not-certified", s.restarts, s.ranks[0],
                      s.ranks[1], s.ranks[2], r.lengths[0], r.lengths[1], r.lengths[2],
                      static_cast<unsigned long long>(s.evals.phase1.total),
                      static_cast<unsigned long long>(s.evals.phase1.distinct),
                      static_cast<unsigned long long>(s.evals.phase2.total),
                      static_cast<unsigned long long>(s.evals.phase2.distinct),
                      static_cast<unsigned long long>(s.evals.phase3.total),
                      static_cast<unsigned long long>(s.evals.phase3.distinct),
                      static_cast<unsigned long long>(s.evals.verify.total),
                      static_cast<unsigned long long>(s.evals.verify.distinct),
                      static_cast<unsigned long long>(sum.total), static_cast<unsigned long long>(sum.distinct),
                      s.halton_error, s.vscale, s.certified ? 1 : 0, s.wall_seconds);
        out << buf;
    }
}

} // namespace ftucker
