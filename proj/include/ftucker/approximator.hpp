#pragma once

// Fiber-based construction of a functional Tucker approximant
//
//   f(x,y,z) ~ C x_1 U(x) x_2 V(y) x_3 W(z)
//
// in three phases:
//   1. alternating cross approximation on lazily sampled coarse-grid
//      subtensors selects mode-1/2/3 fibers (and grows the coarse grid when
//      the ranks are large relative to it);
//   2. every selected fiber is refined on nested grids n -> 2n-1 until its
//      Chebyshev tail is negligible;
//   3. QR + DEIM on each fiber matrix gives an oblique projector per mode;
//      the core is f sampled on the DEIM crossing points.
// The result is checked against f at Halton points; on failure the whole
// construction restarts on a larger coarse grid with adjusted rank guesses.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chebyshev.hpp"
#include "cross.hpp"
#include "errors.hpp"
#include "halton.hpp"
#include "oracle.hpp"
#include "tensor.hpp"

namespace ftucker {

struct ConstructorConfig {
    double tol = 1e-12;                          ///< relative tolerance
    Dims3 initial_coarse{17, 17, 17};
    Dims3 initial_ranks{6, 6, 6};
    double rank_ratio_threshold = 1.0 / (2.0 * std::numbers::sqrt2);
    std::size_t halton_count = 30;
    double acceptance_factor = 10.0;             ///< pass if max |f - fhat| <= factor * tol * vscale
    std::size_t max_restarts = 5;
    std::size_t max_fine_dim = (1u << 14) + 1;
    std::size_t max_coarse_dim = 2000;
    std::size_t max_rank = 512;
    std::size_t phase1_sweeps = 2;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(tol > 0.0))
            throw std::invalid_argument("config: tol must be positive");
        for (std::size_t a = 0; a < 3; ++a) {
            if (initial_coarse[a] < 2)
                throw std::invalid_argument("config: coarse dims must be at least 2");
            if (initial_ranks[a] == 0)
                throw std::invalid_argument("config: rank guesses must be positive");
        }
        if (!(rank_ratio_threshold > 0.0) || halton_count == 0 || !(acceptance_factor > 0.0) ||
            max_fine_dim < 2 || max_coarse_dim < 2 || max_rank == 0 || phase1_sweeps == 0)
            throw std::invalid_argument("config: limits must be positive");
    }
};

/// Next coarse size: floor(sqrt(2)^floor(2 log2 n + 1)) + 1 (17 -> 23 -> 33 -> 46 -> 65).
inline std::size_t next_coarse_size(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("next_coarse_size: n must be at least 2");
    const auto m = static_cast<unsigned>(std::floor(2.0 * std::log2(static_cast<double>(n)) + 1.0));
    // even powers of sqrt(2) are exact integers; compute them without pow()
    const double p = (m % 2 == 0) ? std::ldexp(1.0, static_cast<int>(m / 2))
                                  : std::ldexp(std::numbers::sqrt2, static_cast<int>((m - 1) / 2));
    return static_cast<std::size_t>(std::floor(p)) + 1;
}

/// Rank guesses for the next attempt after a failed accuracy check: modes
/// with rank <= 2 restart from 3, the others from max(6, 2r).
inline Dims3 modified_rank_guesses(const Dims3& ranks) {
    Dims3 out{};
    for (std::size_t a = 0; a < 3; ++a)
        out[a] = ranks[a] <= 2 ? 3 : std::max<std::size_t>(6, 2 * ranks[a]);
    return out;
}

/// Fibers of one mode: values on that mode's grid, plus the fixed coordinates
/// of the other two variables (in increasing mode order).
struct FiberSet {
    Eigen::MatrixXd values;
    std::vector<std::array<double, 2>> anchors;

    std::size_t count() const noexcept { return anchors.size(); }
};

struct Phase1Result {
    std::array<FiberSet, 3> fibers;
    Dims3 coarse{0, 0, 0};
    Dims3 ranks{0, 0, 0};
    std::array<std::vector<std::size_t>, 3> index_sets;  ///< final I~, J~, K~ on the coarse grid
    std::size_t grid_growths = 0;
    std::size_t sweeps = 0;
    bool zero_function = false;
};

struct Phase2Result {
    std::array<Eigen::MatrixXd, 3> fibers;
    Dims3 fine{0, 0, 0};
    std::array<bool, 3> resolved{true, true, true};
    Dims3 rounds{0, 0, 0};
};

struct PhaseCounts {
    EvalCounters phase1, phase2, phase3, verify;

    EvalCounters sum() const {
        EvalCounters s = phase1;
        s += phase2;
        s += phase3;
        s += verify;
        return s;
    }
    PhaseCounts& operator+=(const PhaseCounts& o) {
        phase1 += o.phase1;
        phase2 += o.phase2;
        phase3 += o.phase3;
        verify += o.verify;
        return *this;
    }
};

struct AttemptStats {
    Dims3 coarse_dims{0, 0, 0};
    Dims3 ranks{0, 0, 0};
    Dims3 fine_dims{0, 0, 0};
    Dims3 refinement_rounds{0, 0, 0};
    std::size_t grid_growths = 0;
    std::size_t phase1_sweeps = 0;
    std::array<double, 3> projector_norms{0, 0, 0};
    PhaseCounts evals;
    double halton_error = 0.0;
    double threshold = 0.0;
    bool passed = false;
    bool resolved = true;
    std::string failure;  ///< non-empty when the attempt aborted (degenerate projector)
};

struct ConstructionStats {
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::size_t halton_count = 0;
    std::vector<AttemptStats> attempts;
    std::size_t restarts = 0;
    std::size_t chosen_attempt = 0;
    bool certified = false;
    bool resolved = true;
    bool zero_function = false;
    Dims3 ranks{0, 0, 0};
    Dims3 coarse_dims{0, 0, 0};
    Dims3 fine_dims{0, 0, 0};
    PhaseCounts evals;            ///< summed over attempts
    EvalCounters oracle;          ///< oracle counter increase during construction
    double vscale = 0.0;
    double halton_error = 0.0;
    std::array<std::vector<double>, 3> crossing_points;  ///< x_I, y_J, z_K of the core samples
    double wall_seconds = 0.0;
};

class TuckerApproximant {
public:
    TuckerApproximant() : TuckerApproximant(TuckerCore({1, 1, 1}), unit_factors()) {}

    TuckerApproximant(TuckerCore core, std::array<Eigen::MatrixXd, 3> factor_coeffs)
        : core_(std::move(core)), factors_(std::move(factor_coeffs)) {
        for (std::size_t a = 0; a < 3; ++a)
            if (static_cast<std::size_t>(factors_[a].cols()) != core_.dims()[a] || factors_[a].rows() < 1)
                throw std::invalid_argument("TuckerApproximant: factor shape does not match core");
    }

    static TuckerApproximant constant(double c) {
        TuckerCore core({1, 1, 1});
        core(0, 0, 0) = c;
        return TuckerApproximant(std::move(core), unit_factors());
    }

    const TuckerCore& core() const noexcept { return core_; }
    /// Chebyshev coefficients of the mode-`mode` factor, one column per function.
    const Eigen::MatrixXd& factor(int mode) const { return factors_.at(static_cast<std::size_t>(mode - 1)); }
    const std::array<Eigen::MatrixXd, 3>& factors() const noexcept { return factors_; }

    Dims3 ranks() const noexcept { return core_.dims(); }
    Dims3 lengths() const noexcept {
        return {static_cast<std::size_t>(factors_[0].rows()), static_cast<std::size_t>(factors_[1].rows()),
                static_cast<std::size_t>(factors_[2].rows())};
    }

    /// C x_1 U(x) x_2 V(y) x_3 W(z).
    double operator()(double x, double y, double z) const {
        Eigen::VectorXd u, v, w;
        eval_columns(factors_[0], x, u);
        eval_columns(factors_[1], y, v);
        eval_columns(factors_[2], z, w);
        const auto [r1, r2, r3] = core_.dims();
        double total = 0.0;
        for (std::size_t k = 0; k < r3; ++k) {
            double plane = 0.0;
            for (std::size_t j = 0; j < r2; ++j) {
                double line = 0.0;
                for (std::size_t i = 0; i < r1; ++i)
                    line += core_(i, j, k) * u(static_cast<Eigen::Index>(i));
                plane += line * v(static_cast<Eigen::Index>(j));
            }
            total += plane * w(static_cast<Eigen::Index>(k));
        }
        return total;
    }

    ConstructionStats& stats() noexcept { return stats_; }
    const ConstructionStats& stats() const noexcept { return stats_; }

private:
    static std::array<Eigen::MatrixXd, 3> unit_factors() {
        return {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Ones(1, 1)};
    }

    TuckerCore core_;
    std::array<Eigen::MatrixXd, 3> factors_;
    ConstructionStats stats_;
};

inline double evaluate(const TuckerApproximant& a, double x, double y, double z) { return a(x, y, z); }

namespace detail {

inline std::array<double, 3> place(std::size_t mode, double t, const std::array<double, 2>& anchor) {
    switch (mode) {
    case 0: return {t, anchor[0], anchor[1]};
    case 1: return {anchor[0], t, anchor[1]};
    default: return {anchor[0], anchor[1], t};
    }
}

/// `count` distinct indices from [0, n), by partial Fisher-Yates.
inline std::vector<std::size_t> random_indices(std::size_t n, std::size_t count, std::mt19937_64& rng) {
    count = std::clamp<std::size_t>(count, 1, n);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i)
        pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t pick = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(pool[i], pool[pick]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

struct ModeCross {
    FiberSet fibers;
    std::vector<std::size_t> rows;
};

// ACA on the mode-`mode` unfolding of the subtensor T_c(I,J,K), where the
// index set of `mode` is the full range. Columns of the unfolding map back to
// the fixed indices of the other two modes.
inline ModeCross cross_mode(InstrumentedOracle& oracle, const Dims3& coarse,
                            const std::array<std::vector<std::size_t>, 3>& sets, int mode, double tol,
                            std::size_t max_rank) {
    const auto a = static_cast<std::size_t>(mode - 1);
    std::array<std::vector<std::size_t>, 3> s = sets;
    s[a].resize(coarse[a]);
    for (std::size_t i = 0; i < coarse[a]; ++i)
        s[a][i] = i;
    const DenseTensor3 sub = subtensor(oracle, coarse, s[0], s[1], s[2]);
    const Eigen::MatrixXd m = matricize(sub, mode);

    ModeCross out;
    out.fibers.values.resize(m.rows(), 0);
    const double scale = m.cwiseAbs().maxCoeff();
    if (!(scale > 0.0))
        return out;
    const AcaResult res = aca(m, tol * scale, max_rank);

    // unfolding column -> positions in the two other index sets
    const std::size_t lo = (a == 0) ? 1 : 0;
    const std::size_t hi = (a == 2) ? 1 : 2;
    const std::size_t lo_count = s[lo].size();
    out.fibers.values.resize(m.rows(), static_cast<Eigen::Index>(res.rank()));
    for (std::size_t c = 0; c < res.rank(); ++c) {
        const std::size_t col = res.cols[c];
        out.fibers.values.col(static_cast<Eigen::Index>(c)) = m.col(static_cast<Eigen::Index>(col));
        const std::size_t lo_idx = s[lo][col % lo_count];
        const std::size_t hi_idx = s[hi][col / lo_count];
        out.fibers.anchors.push_back({cheb_point(coarse[lo], lo_idx), cheb_point(coarse[hi], hi_idx)});
    }
    out.rows = res.rows;
    return out;
}

} // namespace detail

/// Phase 1: alternating fiber selection on the coarse grid.
///
/// Starts from random J~, K~ of the guessed sizes and sweeps ACA over modes
/// 1, 2, 3 (at most config.phase1_sweeps times, stopping early once a rank
/// is <= 1). Whenever some r_a / n_a exceeds the ratio threshold those coarse
/// sizes grow and the sweep restarts with fresh random index sets.
inline Phase1Result phase1_factors(InstrumentedOracle& oracle, const ConstructorConfig& config, Dims3 coarse,
                                   Dims3 rank_guesses, std::mt19937_64& rng) {
    Phase1Result out;
    constexpr int max_redraws = 3;
    while (true) {
        std::array<std::vector<std::size_t>, 3> sets;
        bool grew = false;
        sets[1] = detail::random_indices(coarse[1], rank_guesses[1], rng);
        sets[2] = detail::random_indices(coarse[2], rank_guesses[2], rng);
        for (std::size_t sweep = 0; sweep < config.phase1_sweeps; ++sweep) {
            std::array<detail::ModeCross, 3> cross;
            // the sampled fibers may happen to vanish; try other ones
            for (int redraw = 0;; ++redraw) {
                out.sweeps++;
                cross[0] = detail::cross_mode(oracle, coarse, sets, 1, config.tol, config.max_rank);
                if (!cross[0].rows.empty() || oracle.vscale() == 0.0 || redraw == max_redraws)
                    break;
                sets[1] = detail::random_indices(coarse[1], rank_guesses[1], rng);
                sets[2] = detail::random_indices(coarse[2], rank_guesses[2], rng);
            }
            if (cross[0].rows.empty()) {
                out.zero_function = oracle.vscale() == 0.0;
                out.fibers = {};
                out.ranks = {0, 0, 0};
                out.coarse = coarse;
                return out;
            }
            sets[0] = cross[0].rows;
            cross[1] = detail::cross_mode(oracle, coarse, sets, 2, config.tol, config.max_rank);
            sets[1] = cross[1].rows;
            cross[2] = detail::cross_mode(oracle, coarse, sets, 3, config.tol, config.max_rank);
            sets[2] = cross[2].rows;

            for (std::size_t a = 0; a < 3; ++a) {
                out.fibers[a] = std::move(cross[a].fibers);
                out.ranks[a] = sets[a].size();
            }
            out.index_sets = sets;
            out.coarse = coarse;

            bool exceeded = false;
            for (std::size_t a = 0; a < 3; ++a) {
                const double ratio = static_cast<double>(out.ranks[a]) / static_cast<double>(coarse[a]);
                if (ratio > config.rank_ratio_threshold && coarse[a] < config.max_coarse_dim) {
                    coarse[a] = std::min(next_coarse_size(coarse[a]), config.max_coarse_dim);
                    exceeded = true;
                }
            }
            if (exceeded) {
                for (std::size_t a = 0; a < 3; ++a)
                    rank_guesses[a] = std::max<std::size_t>(1, out.ranks[a]);
                out.grid_growths++;
                grew = true;
                break;
            }
            if (out.ranks[0] <= 1 || out.ranks[1] <= 1 || out.ranks[2] <= 1)
                break;
        }
        if (!grew)
            return out;
    }
}

/// Phase 2: refine the fibers of each mode on nested grids until every column
/// passes is_resolved at tol * vscale (or the maximal grid size is reached).
/// Only the new odd-indexed points are sampled in each round, and only for
/// columns that are still unresolved; resolved columns are extended by
/// evaluating their interpolant.
inline Phase2Result phase2_refine(InstrumentedOracle& oracle, const Phase1Result& p1,
                                  const ConstructorConfig& config) {
    Phase2Result out;
    for (std::size_t a = 0; a < 3; ++a) {
        const FiberSet& fs = p1.fibers[a];
        Eigen::MatrixXd values = fs.values;
        std::size_t n = p1.coarse[a];
        const auto r = static_cast<Eigen::Index>(fs.count());
        std::vector<char> done(static_cast<std::size_t>(r), 0);
        while (true) {
            const double vscale = oracle.vscale();
            bool resolved = true;
            for (Eigen::Index c = 0; c < r; ++c) {
                if (done[static_cast<std::size_t>(c)])
                    continue;
                const Eigen::VectorXd col = values.col(c);
                done[static_cast<std::size_t>(c)] = is_resolved(
                    vals_to_coeffs(std::span<const double>(col.data(), col.size())), config.tol, vscale);
                resolved = resolved && done[static_cast<std::size_t>(c)];
            }
            if (resolved)
                break;
            if (refine_size(n) > config.max_fine_dim) {
                out.resolved[a] = false;
                break;
            }
            const std::size_t m = refine_size(n);
            Eigen::MatrixXd next(static_cast<Eigen::Index>(m), r);
            for (Eigen::Index c = 0; c < r; ++c) {
                std::vector<double> interp;
                if (done[static_cast<std::size_t>(c)]) {
                    const Eigen::VectorXd col = values.col(c);
                    interp = coeffs_to_vals(vals_to_coeffs(std::span<const double>(col.data(), col.size())), m);
                }
                for (std::size_t j = 0; j < m; ++j) {
                    double v;
                    if (j % 2 == 0) {
                        v = values(static_cast<Eigen::Index>(j / 2), c);
                    } else if (done[static_cast<std::size_t>(c)]) {
                        v = interp[j];
                    } else {
                        const auto p = detail::place(a, cheb_point(m, j), fs.anchors[static_cast<std::size_t>(c)]);
                        v = oracle(p[0], p[1], p[2]);
                    }
                    next(static_cast<Eigen::Index>(j), c) = v;
                }
            }
            values = std::move(next);
            n = m;
            out.rounds[a]++;
        }
        out.fibers[a] = std::move(values);
        out.fine[a] = n;
    }
    return out;
}

struct Phase3Result {
    TuckerApproximant approximant;
    std::array<std::vector<std::size_t>, 3> interp_indices;
    std::array<double, 3> projector_norms{0, 0, 0};
    Dims3 fine{0, 0, 0};
};

/// Phase 3: QR + DEIM per mode, core = f at the crossing points (I,J,K).
/// Columns whose R diagonal falls below 1e-14 of the largest are dropped.
inline Phase3Result phase3_core(InstrumentedOracle& oracle, const Phase2Result& p2) {
    Phase3Result out;
    out.fine = p2.fine;
    std::array<Eigen::MatrixXd, 3> basis;
    for (std::size_t a = 0; a < 3; ++a) {
        const Eigen::MatrixXd& fibers = p2.fibers[a];
        if (fibers.cols() == 0)
            return out;  // zero approximant
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(fibers);
        qr.setThreshold(1e-14);
        const Eigen::Index rank = qr.rank();
        if (rank == 0)
            return out;
        Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(fibers.rows(), rank);
        ObliqueProjector proj = build_oblique(std::move(q));
        basis[a] = proj.interpolation_basis();
        out.interp_indices[a] = proj.interp_rows;
        out.projector_norms[a] = proj.mixing_norm;
    }

    std::array<std::vector<double>, 3> pts;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t idx : out.interp_indices[a])
            pts[a].push_back(cheb_point(p2.fine[a], idx));
    TuckerCore core({pts[0].size(), pts[1].size(), pts[2].size()});
    for (std::size_t k = 0; k < pts[2].size(); ++k)
        for (std::size_t j = 0; j < pts[1].size(); ++j)
            for (std::size_t i = 0; i < pts[0].size(); ++i)
                core(i, j, k) = oracle(pts[0][i], pts[1][j], pts[2][k]);

    std::array<Eigen::MatrixXd, 3> coeffs;
    for (std::size_t a = 0; a < 3; ++a) {
        coeffs[a].resize(basis[a].rows(), basis[a].cols());
        for (Eigen::Index c = 0; c < basis[a].cols(); ++c) {
            const Eigen::VectorXd col = basis[a].col(c);
            const ChebSeries s = vals_to_coeffs(std::span<const double>(col.data(), col.size()));
            coeffs[a].col(c) = Eigen::Map<const Eigen::VectorXd>(s.coeffs.data(), static_cast<Eigen::Index>(s.size()));
        }
    }
    out.approximant = TuckerApproximant(std::move(core), std::move(coeffs));
    out.approximant.stats().crossing_points = std::move(pts);
    return out;
}

/// max |f - fhat| over `count` Halton points.
inline double halton_error(InstrumentedOracle& oracle, const TuckerApproximant& a, std::size_t count) {
    double err = 0.0;
    for (const auto& p : halton_points(count))
        err = std::max(err, std::abs(oracle(p[0], p[1], p[2]) - a(p[0], p[1], p[2])));
    return err;
}

/// Full construction with accuracy verification and restarts. Returns the
/// first attempt that passes the Halton check; if none does within
/// config.max_restarts restarts, the attempt with the smallest Halton error
/// is returned with stats().certified == false.
inline TuckerApproximant construct(InstrumentedOracle& oracle, const ConstructorConfig& config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const EvalCounters start = oracle.counters();
    std::mt19937_64 rng(config.seed);

    ConstructionStats stats;
    stats.tol = config.tol;
    stats.seed = config.seed;
    stats.halton_count = config.halton_count;

    Dims3 coarse = config.initial_coarse;
    Dims3 guesses = config.initial_ranks;
    std::optional<TuckerApproximant> best;
    double best_error = 0.0;

    for (std::size_t attempt = 0; attempt <= config.max_restarts; ++attempt) {
        AttemptStats st;
        EvalCounters mark = oracle.counters();
        auto lap = [&](EvalCounters& slot) {
            const EvalCounters now = oracle.counters();
            slot = now - mark;
            mark = now;
        };

        const Phase1Result p1 = phase1_factors(oracle, config, coarse, guesses, rng);
        lap(st.evals.phase1);
        st.coarse_dims = p1.coarse;
        st.ranks = p1.ranks;
        st.grid_growths = p1.grid_growths;
        st.phase1_sweeps = p1.sweeps;

        if (p1.zero_function) {
            TuckerApproximant zero = TuckerApproximant::constant(0.0);
            st.passed = true;
            st.fine_dims = p1.coarse;
            stats.attempts.push_back(st);
            stats.zero_function = true;
            stats.certified = true;
            stats.chosen_attempt = attempt;
            best = std::move(zero);
            break;
        }

        const Phase2Result p2 = phase2_refine(oracle, p1, config);
        lap(st.evals.phase2);
        st.fine_dims = p2.fine;
        st.refinement_rounds = p2.rounds;
        st.resolved = p2.resolved[0] && p2.resolved[1] && p2.resolved[2];

        std::optional<TuckerApproximant> current;
        try {
            Phase3Result p3 = phase3_core(oracle, p2);
            st.projector_norms = p3.projector_norms;
            st.ranks = p3.approximant.ranks();
            current = std::move(p3.approximant);
        } catch (const degenerate_input_error& e) {
            st.failure = e.what();
        }
        lap(st.evals.phase3);

        if (current) {
            st.halton_error = halton_error(oracle, *current, config.halton_count);
            lap(st.evals.verify);
            st.threshold = config.acceptance_factor * config.tol * oracle.vscale();
            st.passed = st.halton_error <= st.threshold;
            if (!best || st.halton_error < best_error || st.passed) {
                best = std::move(current);
                best_error = st.halton_error;
                stats.chosen_attempt = attempt;
            }
        }
        stats.attempts.push_back(st);
        if (st.passed) {
            stats.certified = true;
            break;
        }
        guesses = modified_rank_guesses(p1.ranks);
        for (std::size_t a = 0; a < 3; ++a) {
            guesses[a] = std::min(guesses[a], config.max_rank);
            coarse[a] = std::min(next_coarse_size(p1.coarse[a]), config.max_coarse_dim);
        }
    }

    if (!best)
        best = TuckerApproximant::constant(0.0);
    TuckerApproximant result = std::move(*best);
    const AttemptStats& chosen = stats.attempts[stats.chosen_attempt];
    stats.restarts = stats.attempts.size() - 1;
    stats.ranks = result.ranks();
    stats.coarse_dims = chosen.coarse_dims;
    stats.fine_dims = chosen.fine_dims;
    stats.resolved = chosen.resolved;
    stats.halton_error = chosen.halton_error;
    for (const auto& a : stats.attempts)
        stats.evals += a.evals;
    stats.oracle = oracle.counters() - start;
    stats.vscale = oracle.vscale();
    stats.crossing_points = std::move(result.stats().crossing_points);
    stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.stats() = std::move(stats);
    return result;
}

inline TuckerApproximant construct(InstrumentedOracle::Function f, const ConstructorConfig& config = {}) {
    InstrumentedOracle oracle(std::move(f));
    return construct(oracle, config);
}

} // namespace ftucker
