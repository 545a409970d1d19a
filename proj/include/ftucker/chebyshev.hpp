#pragma once

// Univariate Chebyshev machinery on [-1,1]: second-kind points, the
// values <-> coefficients transform (DCT-I), Clenshaw evaluation and the
// tail-based resolution test used to decide when a fiber is resolved.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>
#include <fftw3.h>

namespace ftucker {

/// Coefficients c_0..c_{n-1} of sum_k c_k T_k(x).
struct ChebSeries {
    std::vector<double> coeffs;

    std::size_t size() const noexcept { return coeffs.size(); }
    bool operator==(const ChebSeries&) const = default;
};

/// j-th point of the n-point second-kind grid, cos(j*pi/(n-1)).
///
/// Evaluated as sin(pi*(n-1-2j)/(2(n-1))) with the fraction reduced first:
/// the grid is exactly antisymmetric, and index 2j of the (2n-1)-point grid
/// reproduces index j of the n-point grid bit for bit.
inline double cheb_point(std::size_t n, std::size_t j) {
    if (n == 0)
        throw std::invalid_argument("cheb_point: n must be positive");
    if (j >= n)
        throw std::invalid_argument("cheb_point: index out of range");
    if (n == 1)
        return 0.0;
    long long p = static_cast<long long>(n) - 1 - 2 * static_cast<long long>(j);
    long long q = 2 * (static_cast<long long>(n) - 1);
    const long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return std::sin(std::numbers::pi * static_cast<double>(p) / static_cast<double>(q));
}

inline std::vector<double> cheb_points(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("cheb_points: n must be positive");
    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j)
        pts[j] = cheb_point(n, j);
    return pts;
}

/// Grid refinement rule n -> 2n-1 (keeps the old points).
inline std::size_t refine_size(std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("refine_size: n must be at least 2");
    return 2 * n - 1;
}

namespace detail {

inline constexpr std::size_t direct_transform_limit = 64;

// Plans are cached per length; fftw_plan_* is not thread safe, execution with
// new arrays is.
inline fftw_plan dct1_plan(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, fftw_plan> plans;
    std::lock_guard lock(mutex);
    auto it = plans.find(n);
    if (it != plans.end())
        return it->second;
    std::vector<double> in(n), out(n);
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(n), in.data(), out.data(), FFTW_REDFT00,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(n, plan);
    return plan;
}

// y_k = x_0 + (-1)^k x_{n-1} + 2 sum_{j=1}^{n-2} x_j cos(pi j k/(n-1)), n >= 2.
inline void dct1(std::span<const double> in, std::span<double> out) {
    const std::size_t n = in.size();
    if (n > direct_transform_limit) {
        std::vector<double> buf(in.begin(), in.end());
        fftw_execute_r2r(dct1_plan(n), buf.data(), out.data());
        return;
    }
    const std::size_t period = 2 * (n - 1);
    std::vector<double> table(period);
    for (std::size_t m = 0; m < period; ++m)
        table[m] = std::cos(std::numbers::pi * static_cast<double>(m) / static_cast<double>(n - 1));
    for (std::size_t k = 0; k < n; ++k) {
        double acc = in[0] + ((k % 2 == 0) ? in[n - 1] : -in[n - 1]);
        std::size_t m = k;
        for (std::size_t j = 1; j + 1 < n; ++j, m += k) {
            if (m >= period)
                m %= period;
            acc += 2.0 * in[j] * table[m];
        }
        out[k] = acc;
    }
}

} // namespace detail

/// Coefficients of the polynomial interpolating `values` at cheb_points(n).
inline ChebSeries vals_to_coeffs(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0)
        throw std::invalid_argument("vals_to_coeffs: empty input");
    if (n == 1)
        return ChebSeries{{values[0]}};
    std::vector<double> c(n);
    detail::dct1(values, c);
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (auto& v : c)
        v *= scale;
    c.front() *= 0.5;
    c.back() *= 0.5;
    return ChebSeries{std::move(c)};
}

/// Samples the series on cheb_points(n); inverse of vals_to_coeffs.
inline std::vector<double> coeffs_to_vals(const ChebSeries& series, std::size_t n) {
    if (n == 0 || n < series.size())
        throw std::invalid_argument("coeffs_to_vals: n must be at least the series length");
    if (n == 1)
        return {series.coeffs.empty() ? 0.0 : series.coeffs[0]};
    std::vector<double> padded(n, 0.0);
    std::copy(series.coeffs.begin(), series.coeffs.end(), padded.begin());
    padded.front() *= 2.0;
    padded.back() *= 2.0;
    std::vector<double> vals(n);
    detail::dct1(padded, vals);
    for (auto& v : vals)
        v *= 0.5;
    return vals;
}

/// Clenshaw recurrence for sum_k c_k T_k(x).
inline double eval_series(std::span<const double> coeffs, double x) {
    const std::size_t n = coeffs.size();
    if (n == 0)
        return 0.0;
    if (n == 1)
        return coeffs[0];
    const double two_x = 2.0 * x;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = n - 1; k >= 1; --k) {
        const double b0 = coeffs[k] + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coeffs[0] + x * b1 - b2;
}

inline double eval_series(const ChebSeries& series, double x) {
    return eval_series(std::span<const double>(series.coeffs), x);
}

/// Evaluates every column of a coefficient matrix at x in one pass.
inline void eval_columns(const Eigen::MatrixXd& coeffs, double x, Eigen::VectorXd& out) {
    const Eigen::Index n = coeffs.rows();
    const Eigen::Index r = coeffs.cols();
    out.setZero(r);
    if (n == 0)
        return;
    if (n == 1) {
        out = coeffs.row(0).transpose();
        return;
    }
    const double two_x = 2.0 * x;
    Eigen::VectorXd b0(r), b1 = Eigen::VectorXd::Zero(r), b2 = Eigen::VectorXd::Zero(r);
    for (Eigen::Index k = n - 1; k >= 1; --k) {
        b0.noalias() = coeffs.row(k).transpose() + two_x * b1 - b2;
        b2.swap(b1);
        b1.swap(b0);
    }
    out = coeffs.row(0).transpose() + x * b1 - b2;
}

/// Number of trailing coefficients inspected by is_resolved.
inline std::size_t resolution_window(std::size_t n) {
    const auto frac = static_cast<std::size_t>(std::ceil(0.15 * static_cast<double>(n)));
    return std::max<std::size_t>(3, frac);
}

/// A series is resolved when it has at least 5 coefficients and the last
/// max(3, ceil(0.15 n)) of them are all at most tol * vscale in magnitude.
inline bool is_resolved(const ChebSeries& series, double tol, double vscale) {
    const std::size_t n = series.size();
    if (n < 5)
        return false;
    const double threshold = tol * vscale;
    const std::size_t window = std::min(n, resolution_window(n));
    for (std::size_t k = n - window; k < n; ++k)
        if (!(std::abs(series.coeffs[k]) <= threshold))
            return false;
    return true;
}

/// Shortest prefix whose dropped tail is below tol * vscale (at least one term).
inline ChebSeries chop_series(const ChebSeries& series, double tol, double vscale) {
    const double threshold = tol * vscale;
    std::size_t keep = series.size();
    while (keep > 1 && std::abs(series.coeffs[keep - 1]) <= threshold)
        --keep;
    if (series.coeffs.empty())
        return ChebSeries{{0.0}};
    return ChebSeries{std::vector<double>(series.coeffs.begin(),
                                          series.coeffs.begin() + static_cast<std::ptrdiff_t>(keep))};
}

} // namespace ftucker
