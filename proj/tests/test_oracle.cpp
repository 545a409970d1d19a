#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include <ftucker/halton.hpp>
#include <ftucker/oracle.hpp>

using namespace ftucker;

TEST(Oracle, CountsTotalAndDistinct) {
    int calls = 0;
    InstrumentedOracle o([&](double x, double y, double z) {
        ++calls;
        return x - 2 * y + z;
    });
    EXPECT_EQ(o(0.5, 0.25, -1.0), 0.5 - 0.5 - 1.0);
    EXPECT_EQ(o(0.5, 0.25, -1.0), -1.0);
    EXPECT_EQ(o(0.1, 0.2, 0.3), 0.1 - 0.4 + 0.3);
    EXPECT_EQ(o.total_calls(), 3u);
    EXPECT_EQ(o.distinct_points(), 2u);
    EXPECT_EQ(calls, 2);
    EXPECT_EQ(o.counters(), (EvalCounters{3, 2}));
}

TEST(Oracle, KeyIsExactBitPattern) {
    InstrumentedOracle o([](double x, double, double) { return x; });
    o(0.0, 0.0, 0.0);
    o(-0.0, 0.0, 0.0);  // different bits, different key
    o(std::nextafter(0.3, 1.0), 0.0, 0.0);
    o(0.3, 0.0, 0.0);
    EXPECT_EQ(o.distinct_points(), 4u);
}

TEST(Oracle, VscaleIsRunningMaximum) {
    InstrumentedOracle o([](double x, double, double) { return x; });
    EXPECT_EQ(o.vscale(), 0.0);
    o(0.5, 0, 0);
    EXPECT_EQ(o.vscale(), 0.5);
    o(-0.75, 0, 0);
    EXPECT_EQ(o.vscale(), 0.75);
    o(0.1, 0, 0);
    EXPECT_EQ(o.vscale(), 0.75);
}

TEST(Oracle, NanIsReportedWithPoint) {
    InstrumentedOracle o([](double x, double, double) { return std::log(x); });
    try {
        o(-0.5, 0.25, 0.125);
        FAIL() << "expected sampling_error";
    } catch (const sampling_error& e) {
        EXPECT_EQ(e.point()[0], -0.5);
        EXPECT_EQ(e.point()[1], 0.25);
        EXPECT_EQ(e.point()[2], 0.125);
    }
    InstrumentedOracle inf([](double, double, double) { return INFINITY; });
    EXPECT_THROW(inf(0, 0, 0), sampling_error);
}

TEST(Oracle, ConcurrentCallsKeepCountersConsistent) {
    std::atomic<int> calls{0};
    InstrumentedOracle o([&](double x, double y, double z) {
        calls.fetch_add(1);
        return x * y * z;
    });
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t)
        threads.emplace_back([&] {
            for (int i = 0; i < 500; ++i)
                o(i * 1e-3, 0.5, 0.25);
        });
    for (auto& th : threads)
        th.join();
    EXPECT_EQ(o.total_calls(), 2000u);
    EXPECT_EQ(o.distinct_points(), 500u);
    EXPECT_LE(o.distinct_points(), o.total_calls());
    EXPECT_GE(calls.load(), 500);  // a racing miss may compute twice but counts once
}

TEST(Halton, FirstValues) {
    EXPECT_DOUBLE_EQ(radical_inverse(1, 2), 0.5);
    EXPECT_DOUBLE_EQ(radical_inverse(2, 2), 0.25);
    EXPECT_DOUBLE_EQ(radical_inverse(3, 2), 0.75);
    EXPECT_DOUBLE_EQ(radical_inverse(1, 3), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(radical_inverse(2, 3), 2.0 / 3.0);
    const auto p = halton_points(3);
    EXPECT_DOUBLE_EQ(p[0][0], 0.0);
    EXPECT_DOUBLE_EQ(p[1][0], -0.5);
    EXPECT_DOUBLE_EQ(p[2][0], 0.5);
    EXPECT_NEAR(p[0][1], -1.0 / 3.0, 1e-15);
    EXPECT_NEAR(p[1][1], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(p[0][2], 2.0 * 0.2 - 1.0, 1e-15);
}

TEST(Halton, StrictlyInsideCube) {
    for (const auto& p : halton_points(1000))
        for (double c : p) {
            EXPECT_GT(c, -1.0);
            EXPECT_LT(c, 1.0);
        }
}

TEST(Halton, OffsetContinuesSequence) {
    const auto all = halton_points(20);
    const auto tail = halton_points(10, 10);
    for (std::size_t i = 0; i < 10; ++i)
        EXPECT_EQ(tail[i], all[10 + i]);
    EXPECT_THROW(halton_points(0), std::invalid_argument);
}
