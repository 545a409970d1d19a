#pragma once

// Index selection kernels: full-pivot adaptive cross approximation and the
// discrete empirical interpolation method, plus the oblique projector built
// from a DEIM selection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ftucker {

struct AcaResult {
    std::vector<std::size_t> rows;   ///< I, in pivot order
    std::vector<std::size_t> cols;   ///< J, in pivot order
    std::vector<double> pivots;      ///< |residual| at each chosen pivot
    double final_residual = 0.0;     ///< max |residual| when the loop stopped

    std::size_t rank() const noexcept { return rows.size(); }
};

/// Greedy full-pivot cross approximation of m.
///
/// Each step takes the entry of largest residual magnitude (first one in
/// column-major order on ties) and subtracts the rank-1 cross through it.
/// Stops when the residual max drops below tol_abs, at max_rank, or when the
/// residual is exactly zero. Then m ~ m(:,J) m(I,J)^{-1} m(I,:).
inline AcaResult aca(Eigen::MatrixXd m, double tol_abs, std::size_t max_rank) {
    if (!(tol_abs > 0.0))
        throw std::invalid_argument("aca: tolerance must be positive");
    if (!m.allFinite())
        throw std::invalid_argument("aca: matrix has non-finite entries");
    AcaResult out;
    max_rank = std::min<std::size_t>(max_rank, static_cast<std::size_t>(std::min(m.rows(), m.cols())));
    while (true) {
        Eigen::Index pi = 0, pj = 0;
        double best = -1.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                const double v = std::abs(m(i, j));
                if (v > best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        out.final_residual = std::max(best, 0.0);
        if (best < tol_abs || best == 0.0 || out.rank() >= max_rank)
            break;
        out.rows.push_back(static_cast<std::size_t>(pi));
        out.cols.push_back(static_cast<std::size_t>(pj));
        out.pivots.push_back(best);
        const double pivot = m(pi, pj);
        const Eigen::VectorXd col = m.col(pj);
        const Eigen::RowVectorXd row = m.row(pi) / pivot;
        m.noalias() -= col * row;
        // exact zeros on the eliminated cross keep the indices distinct
        m.row(pi).setZero();
        m.col(pj).setZero();
    }
    return out;
}

namespace detail {

inline double orthonormality_defect(const Eigen::MatrixXd& q) {
    const Eigen::MatrixXd g = q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols());
    return g.cwiseAbs().maxCoeff();
}

inline Eigen::Index argmax_abs(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < v.size(); ++i)
        if (std::abs(v(i)) > std::abs(v(best)))
            best = i;
    return best;
}

} // namespace detail

/// DEIM row selection for a basis with orthonormal columns. Ties go to the
/// smallest index.
inline std::vector<std::size_t> deim(const Eigen::MatrixXd& q) {
    const Eigen::Index n = q.rows(), r = q.cols();
    if (r > n)
        throw std::invalid_argument("deim: more columns (" + std::to_string(r) + ") than rows (" +
                                    std::to_string(n) + ")");
    std::vector<std::size_t> idx;
    if (r == 0)
        return idx;
    if (const double defect = detail::orthonormality_defect(q); defect > 1e-8)
        warn("deim: basis columns are not orthonormal (defect " + std::to_string(defect) + ")");

    Eigen::VectorXd residual = q.col(0);
    for (Eigen::Index k = 0; k < r; ++k) {
        if (k > 0) {
            Eigen::MatrixXd sub(k, k);
            Eigen::VectorXd rhs(k);
            for (Eigen::Index a = 0; a < k; ++a) {
                const auto row = static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]);
                sub.row(a) = q.row(row).head(k);
                rhs(a) = q(row, k);
            }
            const Eigen::VectorXd c = sub.partialPivLu().solve(rhs);
            residual = q.col(k) - q.leftCols(k) * c;
        }
        const Eigen::Index p = detail::argmax_abs(residual);
        if (!(std::abs(residual(p)) > 0.0))
            throw degenerate_input_error("deim: zero residual at column " + std::to_string(k));
        idx.push_back(static_cast<std::size_t>(p));
    }
    return idx;
}

/// Q (Q(I,:))^{-1} restricted to the selected rows is the identity.
struct ObliqueProjector {
    Eigen::MatrixXd basis;                 ///< Q, orthonormal columns
    std::vector<std::size_t> interp_rows;  ///< I from DEIM
    Eigen::MatrixXd mixing;                ///< Q(I,:)^{-1}
    double mixing_norm = 0.0;              ///< ||Q(I,:)^{-1}||_2

    /// Q * mixing: the interpolatory basis, equal to the identity on rows I.
    Eigen::MatrixXd interpolation_basis() const { return basis * mixing; }

    /// P x = Q mixing x(I).
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
        Eigen::VectorXd sampled(static_cast<Eigen::Index>(interp_rows.size()));
        for (std::size_t a = 0; a < interp_rows.size(); ++a)
            sampled(static_cast<Eigen::Index>(a)) = x(static_cast<Eigen::Index>(interp_rows[a]));
        return basis * (mixing * sampled);
    }
};

inline ObliqueProjector build_oblique(Eigen::MatrixXd q) {
    ObliqueProjector p;
    p.interp_rows = deim(q);
    const auto r = static_cast<Eigen::Index>(p.interp_rows.size());
    Eigen::MatrixXd sub(r, r);
    for (Eigen::Index a = 0; a < r; ++a)
        sub.row(a) = q.row(static_cast<Eigen::Index>(p.interp_rows[static_cast<std::size_t>(a)]));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (r > 0 && !lu.isInvertible())
        throw degenerate_input_error("build_oblique: interpolation block Q(I,:) is singular");
    p.mixing = r > 0 ? Eigen::MatrixXd(lu.solve(Eigen::MatrixXd::Identity(r, r))) : Eigen::MatrixXd(0, 0);
    p.mixing_norm = r > 0 ? Eigen::JacobiSVD<Eigen::MatrixXd>(p.mixing).singularValues()(0) : 0.0;
    p.basis = std::move(q);
    return p;
}

} // namespace ftucker
