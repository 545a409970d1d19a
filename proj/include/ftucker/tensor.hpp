#pragma once

// Dense order-3 tensors.
//
// Storage is first-index-fastest: entry (i,j,k) of an (n1,n2,n3) tensor
// lives at data[i + n1*(j + n2*k)].
//
// Matricization column order (fixed, also used by the file format):
//   mode 1: n1 x (n2*n3), column j + n2*k
//   mode 2: n2 x (n1*n3), column i + n1*k
//   mode 3: n3 x (n1*n2), column i + n1*j

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chebyshev.hpp"
#include "oracle.hpp"

namespace ftucker {

using Dims3 = std::array<std::size_t, 3>;

class DenseTensor3 {
public:
    DenseTensor3() = default;

    explicit DenseTensor3(Dims3 dims) : dims_(dims), data_(dims[0] * dims[1] * dims[2], 0.0) {}

    DenseTensor3(Dims3 dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
        if (data_.size() != dims[0] * dims[1] * dims[2])
            throw std::invalid_argument("DenseTensor3: data length does not match dims");
    }

    const Dims3& dims() const noexcept { return dims_; }
    std::size_t dim(int mode) const { return dims_.at(static_cast<std::size_t>(mode - 1)); }
    std::size_t size() const noexcept { return data_.size(); }

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
        return i + dims_[0] * (j + dims_[1] * k);
    }

    double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept { return data_[index(i, j, k)]; }
    double& operator()(std::size_t i, std::size_t j, std::size_t k) noexcept { return data_[index(i, j, k)]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    bool operator==(const DenseTensor3&) const = default;

private:
    Dims3 dims_{0, 0, 0};
    std::vector<double> data_;
};

/// Core tensors share the DenseTensor3 layout contract.
using TuckerCore = DenseTensor3;

namespace detail {

inline void check_mode(int mode) {
    if (mode < 1 || mode > 3)
        throw std::invalid_argument("invalid mode " + std::to_string(mode) + " (expected 1, 2 or 3)");
}

// Row index and column index of entry (i,j,k) in the mode-`mode` unfolding.
inline std::pair<std::size_t, std::size_t> unfold_position(const Dims3& d, int mode, std::size_t i, std::size_t j,
                                                          std::size_t k) {
    switch (mode) {
    case 1: return {i, j + d[1] * k};
    case 2: return {j, i + d[0] * k};
    default: return {k, i + d[0] * j};
    }
}

} // namespace detail

inline Eigen::MatrixXd matricize(const DenseTensor3& t, int mode) {
    detail::check_mode(mode);
    const auto& d = t.dims();
    const std::size_t rows = d[static_cast<std::size_t>(mode - 1)];
    const std::size_t cols = rows == 0 ? 0 : t.size() / rows;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t k = 0; k < d[2]; ++k)
        for (std::size_t j = 0; j < d[1]; ++j)
            for (std::size_t i = 0; i < d[0]; ++i) {
                const auto [r, c] = detail::unfold_position(d, mode, i, j, k);
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t(i, j, k);
            }
    return m;
}

/// Inverse of matricize for a tensor of the given dims.
inline DenseTensor3 dematricize(const Eigen::MatrixXd& m, int mode, Dims3 dims) {
    detail::check_mode(mode);
    const std::size_t rows = dims[static_cast<std::size_t>(mode - 1)];
    const std::size_t total = dims[0] * dims[1] * dims[2];
    if (static_cast<std::size_t>(m.rows()) != rows ||
        static_cast<std::size_t>(m.rows() * m.cols()) != total)
        throw std::invalid_argument("dematricize: matrix shape does not match dims");
    DenseTensor3 t(dims);
    for (std::size_t k = 0; k < dims[2]; ++k)
        for (std::size_t j = 0; j < dims[1]; ++j)
            for (std::size_t i = 0; i < dims[0]; ++i) {
                const auto [r, c] = detail::unfold_position(dims, mode, i, j, k);
                t(i, j, k) = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
    return t;
}

/// t x_mode m: every mode-`mode` fiber is multiplied by m.
inline DenseTensor3 mode_mult(const DenseTensor3& t, const Eigen::MatrixXd& m, int mode) {
    detail::check_mode(mode);
    const auto idx = static_cast<std::size_t>(mode - 1);
    if (static_cast<std::size_t>(m.cols()) != t.dims()[idx])
        throw std::invalid_argument("mode_mult: matrix has " + std::to_string(m.cols()) +
                                    " columns, tensor mode has " + std::to_string(t.dims()[idx]));
    Dims3 out = t.dims();
    out[idx] = static_cast<std::size_t>(m.rows());
    const Eigen::MatrixXd prod = m * matricize(t, mode);
    return dematricize(prod, mode, out);
}

inline double norm_inf(const DenseTensor3& t) {
    double m = 0.0;
    for (double v : t.data())
        m = std::max(m, std::abs(v));
    return m;
}

inline double norm_frob(const DenseTensor3& t) {
    double s = 0.0;
    for (double v : t.data())
        s += v * v;
    return std::sqrt(s);
}

/// f sampled at the Chebyshev grid of size `grid` restricted to I x J x K.
/// Every value goes through the oracle.
inline DenseTensor3 subtensor(InstrumentedOracle& oracle, const Dims3& grid, std::span<const std::size_t> I,
                              std::span<const std::size_t> J, std::span<const std::size_t> K) {
    const std::array<std::span<const std::size_t>, 3> sets{I, J, K};
    std::array<std::vector<double>, 3> coords;
    for (std::size_t a = 0; a < 3; ++a) {
        if (grid[a] == 0)
            throw std::invalid_argument("subtensor: grid dims must be positive");
        for (std::size_t idx : sets[a]) {
            if (idx >= grid[a])
                throw std::invalid_argument("subtensor: index " + std::to_string(idx) + " out of range for mode " +
                                            std::to_string(a + 1));
            coords[a].push_back(cheb_point(grid[a], idx));
        }
    }
    DenseTensor3 t({I.size(), J.size(), K.size()});
    for (std::size_t k = 0; k < K.size(); ++k)
        for (std::size_t j = 0; j < J.size(); ++j)
            for (std::size_t i = 0; i < I.size(); ++i)
                t(i, j, k) = oracle(coords[0][i], coords[1][j], coords[2][k]);
    return t;
}

/// core x_1 U x_2 V x_3 W.
inline DenseTensor3 tucker_reconstruct(const DenseTensor3& core, const std::array<Eigen::MatrixXd, 3>& factors) {
    DenseTensor3 t = mode_mult(core, factors[0], 1);
    t = mode_mult(t, factors[1], 2);
    return mode_mult(t, factors[2], 3);
}

namespace detail {

// Left singular vectors and singular values of a wide or tall matrix. Wide
// matrices go through a QR of the transpose first, which keeps the SVD small.
inline void left_svd(const Eigen::MatrixXd& m, Eigen::MatrixXd& u, Eigen::VectorXd& sigma) {
    if (m.cols() > 2 * m.rows()) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(m.transpose());
        const Eigen::MatrixXd r = qr.matrixQR().topRows(m.rows()).triangularView<Eigen::Upper>();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(r.transpose(), Eigen::ComputeThinU);
        u = svd.matrixU();
        sigma = svd.singularValues();
    } else {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
        u = svd.matrixU();
        sigma = svd.singularValues();
    }
}

} // namespace detail

struct HosvdResult {
    TuckerCore core;
    std::array<Eigen::MatrixXd, 3> factors;  ///< orthonormal columns
    Dims3 ranks{0, 0, 0};
    std::array<Eigen::VectorXd, 3> singular_values;  ///< of each unfolding, descending
};

/// Smallest r with sqrt(sum_{i>=r} sigma_i^2) <= threshold.
inline std::size_t truncation_rank(const Eigen::VectorXd& sigma, double threshold) {
    double tail = 0.0;
    std::size_t r = static_cast<std::size_t>(sigma.size());
    while (r > 0) {
        const double s = sigma(static_cast<Eigen::Index>(r - 1));
        if (std::sqrt(tail + s * s) > threshold)
            break;
        tail += s * s;
        --r;
    }
    return r;
}

/// Truncated HOSVD. Mode-alpha rank is the smallest r whose discarded
/// singular values satisfy sqrt(sum sigma^2) <= tol * ||t||_F / sqrt(3), so
/// the reconstruction error is at most tol * ||t||_F.
inline HosvdResult hosvd_truncated(const DenseTensor3& t, double tol) {
    if (!(tol >= 0.0))
        throw std::invalid_argument("hosvd_truncated: tol must be non-negative");
    HosvdResult out;
    const double threshold = tol * norm_frob(t) / std::sqrt(3.0);
    DenseTensor3 core = t;
    for (int mode = 1; mode <= 3; ++mode) {
        const auto a = static_cast<std::size_t>(mode - 1);
        Eigen::MatrixXd u;
        detail::left_svd(matricize(t, mode), u, out.singular_values[a]);
        const std::size_t r = truncation_rank(out.singular_values[a], threshold);
        out.ranks[a] = r;
        out.factors[a] = u.leftCols(static_cast<Eigen::Index>(r));
        core = mode_mult(core, out.factors[a].transpose(), mode);
    }
    out.core = std::move(core);
    return out;
}

} // namespace ftucker
