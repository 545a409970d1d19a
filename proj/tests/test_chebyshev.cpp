#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <ftucker/chebyshev.hpp>

using namespace ftucker;

namespace {

// Independent references: T_k(x) = cos(k acos x) and the plain cosine grid.
double direct_sum(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
        s += c[k] * std::cos(static_cast<double>(k) * std::acos(x));
    return s;
}

double cosine_point(std::size_t n, std::size_t j) {
    return std::cos(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n - 1));
}

std::vector<double> sample(std::size_t n, double (*f)(double)) {
    std::vector<double> v;
    for (double x : cheb_points(n))
        v.push_back(f(x));
    return v;
}

} // namespace

TEST(ChebPoints, SmallGrids) {
    EXPECT_EQ(cheb_points(1), std::vector<double>{0.0});
    EXPECT_EQ(cheb_points(2), (std::vector<double>{1.0, -1.0}));
    EXPECT_EQ(cheb_points(3), (std::vector<double>{1.0, 0.0, -1.0}));
    const auto p5 = cheb_points(5);
    ASSERT_EQ(p5.size(), 5u);
    for (std::size_t j = 0; j < 5; ++j)
        EXPECT_NEAR(p5[j], cosine_point(5, j), 2e-16);
    EXPECT_EQ(p5[2], 0.0);
}

TEST(ChebPoints, ZeroIsInvalid) { EXPECT_THROW(cheb_points(0), std::invalid_argument); }

TEST(ChebPoints, MatchCosineFormulaAndDecrease) {
    for (std::size_t n : {4u, 17u, 64u, 257u, 1000u}) {
        const auto p = cheb_points(n);
        EXPECT_EQ(p.front(), 1.0);
        EXPECT_EQ(p.back(), -1.0);
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_NEAR(p[j], cosine_point(n, j), 1e-15) << n << " " << j;
            if (j > 0) {
                EXPECT_LT(p[j], p[j - 1]);
            }
        }
    }
}

TEST(ChebPoints, NestedGridsAreBitIdentical) {
    for (std::size_t n = 2; n <= 2049; n = refine_size(n)) {
        const auto coarse = cheb_points(n);
        const auto fine = cheb_points(refine_size(n));
        for (std::size_t j = 0; j < n; ++j)
            ASSERT_EQ(fine[2 * j], coarse[j]) << n << " " << j;
    }
    // non power-of-two chains too
    for (std::size_t n : {23u, 46u, 91u}) {
        const auto coarse = cheb_points(n);
        const auto fine = cheb_points(refine_size(refine_size(n)));
        for (std::size_t j = 0; j < n; ++j)
            ASSERT_EQ(fine[4 * j], coarse[j]);
    }
}

TEST(ChebPoints, SymmetricAboutZero) {
    for (std::size_t n : {7u, 33u, 182u}) {
        const auto p = cheb_points(n);
        for (std::size_t j = 0; j < n; ++j)
            EXPECT_EQ(p[j], -p[n - 1 - j]);
    }
}

TEST(RefineSize, Doubling) {
    EXPECT_EQ(refine_size(17), 33u);
    EXPECT_EQ(refine_size(33), 65u);
    EXPECT_EQ(refine_size(65), 129u);
    EXPECT_EQ(refine_size(2), 3u);
    EXPECT_THROW(refine_size(1), std::invalid_argument);
    EXPECT_THROW(refine_size(0), std::invalid_argument);
}

TEST(ValsToCoeffs, BasisPolynomials) {
    const std::vector<double> ones(9, 1.0);
    auto c = vals_to_coeffs(ones);
    EXPECT_NEAR(c.coeffs[0], 1.0, 1e-15);
    for (std::size_t k = 1; k < c.size(); ++k)
        EXPECT_NEAR(c.coeffs[k], 0.0, 1e-15);

    const auto x = sample(5, [](double t) { return t; });
    c = vals_to_coeffs(x);
    const std::vector<double> t1{0, 1, 0, 0, 0};
    for (std::size_t k = 0; k < 5; ++k)
        EXPECT_NEAR(c.coeffs[k], t1[k], 1e-15);

    const auto t2v = sample(5, [](double t) { return 2 * t * t - 1; });
    c = vals_to_coeffs(t2v);
    const std::vector<double> t2{0, 0, 1, 0, 0};
    for (std::size_t k = 0; k < 5; ++k)
        EXPECT_NEAR(c.coeffs[k], t2[k], 1e-15);
}

TEST(ValsToCoeffs, SinglePointAndEmpty) {
    const std::vector<double> one{3.5};
    EXPECT_EQ(vals_to_coeffs(one).coeffs, std::vector<double>{3.5});
    EXPECT_THROW(vals_to_coeffs(std::vector<double>{}), std::invalid_argument);
}

TEST(ValsToCoeffs, RecoversRandomPolynomials) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {3u, 8u, 21u, 65u, 100u, 257u, 1025u}) {
        std::vector<double> c(n);
        for (auto& v : c)
            v = u(rng);
        std::vector<double> vals;
        for (double x : cheb_points(n))
            vals.push_back(direct_sum(c, x));
        const auto back = vals_to_coeffs(vals);
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_NEAR(back.coeffs[k], c[k], 1e-12) << n << " " << k;
    }
}

TEST(ValsToCoeffs, FastAndDirectPathsAgree) {
    // sizes on both sides of the FFT switch give the same interpolant
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {60u, 64u, 65u, 66u, 70u}) {
        std::vector<double> vals(n);
        for (auto& v : vals)
            v = u(rng);
        const auto c = vals_to_coeffs(vals);
        // explicit DCT-I matrix as oracle
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
                s += w * vals[j] * std::cos(std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(n - 1));
            }
            s *= 2.0 / static_cast<double>(n - 1);
            if (k == 0 || k == n - 1)
                s *= 0.5;
            EXPECT_NEAR(c.coeffs[k], s, 1e-13) << n << " " << k;
        }
    }
}

TEST(ValsToCoeffs, Linearity) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::size_t n = 129;
    std::vector<double> a(n), b(n), mix(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = u(rng);
        b[j] = u(rng);
        mix[j] = 2.5 * a[j] - 0.75 * b[j];
    }
    const auto ca = vals_to_coeffs(a), cb = vals_to_coeffs(b), cm = vals_to_coeffs(mix);
    for (std::size_t k = 0; k < n; ++k)
        EXPECT_NEAR(cm.coeffs[k], 2.5 * ca.coeffs[k] - 0.75 * cb.coeffs[k], 1e-14);
}

TEST(CoeffsToVals, Examples) {
    EXPECT_EQ(coeffs_to_vals(ChebSeries{{1.0}}, 3), (std::vector<double>{1, 1, 1}));
    const auto v = coeffs_to_vals(ChebSeries{{0.0, 1.0}}, 3);
    EXPECT_NEAR(v[0], 1.0, 1e-15);
    EXPECT_NEAR(v[1], 0.0, 1e-15);
    EXPECT_NEAR(v[2], -1.0, 1e-15);
    EXPECT_THROW(coeffs_to_vals(ChebSeries{{1, 2, 3}}, 2), std::invalid_argument);
}

TEST(CoeffsToVals, RoundTrip) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {8u, 65u, 300u}) {
        ChebSeries c;
        for (std::size_t k = 0; k < n; ++k)
            c.coeffs.push_back(u(rng));
        const auto back = vals_to_coeffs(coeffs_to_vals(c, n));
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_NEAR(back.coeffs[k], c.coeffs[k], 1e-13);
        // padding onto a larger grid samples the same polynomial
        const auto fine = coeffs_to_vals(c, 2 * n + 3);
        const auto pts = cheb_points(2 * n + 3);
        for (std::size_t j = 0; j < fine.size(); j += 7)
            EXPECT_NEAR(fine[j], direct_sum(c.coeffs, pts[j]), 1e-13 * static_cast<double>(n));  // acos-based sum loses ~n ulps
    }
}

TEST(EvalSeries, Examples) {
    EXPECT_DOUBLE_EQ(eval_series(ChebSeries{{0, 1}}, 0.3), 0.3);
    EXPECT_DOUBLE_EQ(eval_series(ChebSeries{{0, 0, 1}}, 0.5), -0.5);
    EXPECT_DOUBLE_EQ(eval_series(ChebSeries{{1, 1, 1}}, 1.0), 3.0);
    EXPECT_EQ(eval_series(ChebSeries{{}}, 0.2), 0.0);
    EXPECT_EQ(eval_series(ChebSeries{{4.0}}, 0.2), 4.0);
}

TEST(EvalSeries, MatchesDirectSum) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n = 1; n <= 64; ++n) {
        std::vector<double> c(n);
        for (auto& v : c)
            v = u(rng);
        for (int t = 0; t < 10; ++t) {
            const double x = u(rng);
            EXPECT_NEAR(eval_series(ChebSeries{c}, x), direct_sum(c, x), 1e-12);
        }
    }
}

TEST(EvalSeries, InterpolatesAtGridPoints) {
    const auto vals = sample(41, [](double t) { return std::exp(t) * std::sin(3 * t); });
    const auto c = vals_to_coeffs(vals);
    const auto p = cheb_points(41);
    for (std::size_t j = 0; j < 41; ++j)
        EXPECT_NEAR(eval_series(c, p[j]), vals[j], 1e-13 * std::exp(1.0));
}

TEST(EvalColumns, MatchesPerColumnEvaluation) {
    Eigen::MatrixXd c = Eigen::MatrixXd::Random(30, 4);
    Eigen::VectorXd out;
    eval_columns(c, 0.37, out);
    ASSERT_EQ(out.size(), 4);
    for (int j = 0; j < 4; ++j) {
        std::vector<double> col(c.col(j).data(), c.col(j).data() + 30);
        EXPECT_NEAR(out(j), direct_sum(col, 0.37), 1e-13);
    }
}

TEST(IsResolved, Examples) {
    EXPECT_TRUE(is_resolved(ChebSeries{{1, 1e-20, 1e-20, 1e-20, 1e-20}}, 1e-12, 1.0));
    EXPECT_FALSE(is_resolved(ChebSeries{{1, 0.5, 0.4, 0.3, 0.2}}, 1e-12, 1.0));
    // fewer than five coefficients never count as resolved
    EXPECT_FALSE(is_resolved(ChebSeries{{1, 0, 0, 0}}, 1e-12, 1.0));
}

TEST(IsResolved, Exponential) {
    const double e = std::numbers::e;
    const auto c33 = vals_to_coeffs(sample(33, [](double t) { return std::exp(t); }));
    EXPECT_TRUE(is_resolved(c33, 1e-12, e));
    const auto c5 = vals_to_coeffs(sample(5, [](double t) { return std::exp(t); }));
    EXPECT_FALSE(is_resolved(c5, 1e-12, e));
}

TEST(IsResolved, WindowSize) {
    EXPECT_EQ(resolution_window(5), 3u);
    EXPECT_EQ(resolution_window(20), 3u);
    EXPECT_EQ(resolution_window(21), 4u);
    EXPECT_EQ(resolution_window(100), 15u);
    // a large coefficient just inside the window blocks resolution
    ChebSeries c{std::vector<double>(100, 0.0)};
    c.coeffs[0] = 1.0;
    c.coeffs[85] = 1e-3;
    EXPECT_FALSE(is_resolved(c, 1e-12, 1.0));
    c.coeffs[85] = 0.0;
    c.coeffs[84] = 1e-3;
    EXPECT_TRUE(is_resolved(c, 1e-12, 1.0));
}

TEST(ChopSeries, Examples) {
    EXPECT_EQ(chop_series(ChebSeries{{1, 1e-20, 1e-20, 1e-20, 1e-20}}, 1e-12, 1.0).coeffs, std::vector<double>{1});
    EXPECT_EQ(chop_series(ChebSeries{{0, 1, 0, 0, 0}}, 1e-12, 1.0).coeffs, (std::vector<double>{0, 1}));
    EXPECT_EQ(chop_series(ChebSeries{{0, 0, 0, 0, 0}}, 1e-12, 1.0).size(), 1u);
}

TEST(ChopSeries, ExponentialLengthFromBesselCoefficients) {
    // exp(x) = I_0(1) + 2 sum_k I_k(1) T_k(x)
    const double e = std::numbers::e;
    const double threshold = 1e-12 * e;
    std::size_t expected = 1;
    for (std::size_t k = 1; k < 33; ++k)
        if (2.0 * std::cyl_bessel_i(static_cast<double>(k), 1.0) > threshold)
            expected = k + 1;
    const auto c = vals_to_coeffs(sample(33, [](double t) { return std::exp(t); }));
    const auto chopped = chop_series(c, 1e-12, e);
    EXPECT_EQ(chopped.size(), expected);
    EXPECT_NEAR(chopped.coeffs[0], std::cyl_bessel_i(0.0, 1.0), 1e-15);
    for (std::size_t k = 1; k < chopped.size(); ++k)
        EXPECT_NEAR(chopped.coeffs[k], 2.0 * std::cyl_bessel_i(static_cast<double>(k), 1.0), 1e-15);
}
