#include <cmath>
#include <algorithm>
#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include <ftucker/serialize.hpp>

using namespace ftucker;

namespace {

const TuckerApproximant& sample() {
    static const TuckerApproximant a = construct(
        [](double x, double y, double z) { return std::exp(-(x * x + y * y)) / (2 + z) + std::sin(x * z); });
    return a;
}

std::vector<std::uint8_t> le32(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v >> 16),
            static_cast<std::uint8_t>(v >> 24)};
}

std::size_t format_error_position(const std::vector<std::uint8_t>& bytes) {
    try {
        deserialize(bytes);
    } catch (const format_error& e) {
        return e.position();
    }
    ADD_FAILURE() << "no format_error";
    return 0;
}

} // namespace

TEST(Serialize, HeaderLayout) {
    const auto& a = sample();
    const auto bytes = serialize(a);
    ASSERT_GE(bytes.size(), 35u);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 7), "TCHEB3F");
    EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 7, bytes.begin() + 11), le32(1));
    const auto r = a.ranks();
    const auto n = a.lengths();
    for (std::size_t m = 0; m < 3; ++m) {
        EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 11 + 8 * m, bytes.begin() + 15 + 8 * m), le32(n[m]));
        EXPECT_EQ(std::vector<std::uint8_t>(bytes.begin() + 15 + 8 * m, bytes.begin() + 19 + 8 * m), le32(r[m]));
    }
    const std::size_t reals = r[0] * r[1] * r[2] + n[0] * r[0] + n[1] * r[1] + n[2] * r[2];
    EXPECT_EQ(bytes.size(), 35 + 8 * reals);
    // first core value, little-endian binary64
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b)
        bits = (bits << 8) | bytes[35 + static_cast<std::size_t>(b)];
    double first;
    std::memcpy(&first, &bits, 8);
    EXPECT_EQ(first, a.core()(0, 0, 0));
}

TEST(Serialize, RoundTripIsBitExact) {
    const auto& a = sample();
    const TuckerApproximant b = deserialize(serialize(a));
    EXPECT_EQ(a.ranks(), b.ranks());
    EXPECT_EQ(a.lengths(), b.lengths());
    EXPECT_TRUE(std::ranges::equal(a.core().data(), b.core().data()));
    for (std::size_t m = 0; m < 3; ++m)
        EXPECT_EQ(a.factors()[m], b.factors()[m]);
    for (const auto& p : halton_points(100, 1000))
        EXPECT_EQ(a(p[0], p[1], p[2]), b(p[0], p[1], p[2]));
    EXPECT_EQ(serialize(b), serialize(a));
}

TEST(Serialize, FileRoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "ftucker_test_roundtrip.tcheb";
    write_approximant(path.string(), sample());
    const TuckerApproximant b = read_approximant(path.string());
    EXPECT_EQ(b(0.1, 0.2, 0.3), sample()(0.1, 0.2, 0.3));
    std::filesystem::remove(path);
    EXPECT_THROW(read_approximant(path.string()), std::runtime_error);
}

TEST(Serialize, TruncatedStream) {
    const auto bytes = serialize(sample());
    for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{9}, std::size_t{20}, bytes.size() - 1}) {
        const std::vector<std::uint8_t> part(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
        EXPECT_THROW(deserialize(part), format_error) << cut;
    }
}

TEST(Serialize, BadMagic) {
    auto bytes = serialize(sample());
    bytes[0] = 'X';
    EXPECT_EQ(format_error_position(bytes), 0u);
}

TEST(Serialize, VersionMismatch) {
    auto bytes = serialize(sample());
    bytes[7] = 2;
    try {
        deserialize(bytes);
        FAIL();
    } catch (const unsupported_version_error& e) {
        EXPECT_EQ(e.version(), 2u);
        EXPECT_EQ(e.position(), 7u);
    }
}

TEST(Serialize, TrailingBytes) {
    auto bytes = serialize(sample());
    const std::size_t end = bytes.size();
    bytes.push_back(0);
    EXPECT_EQ(format_error_position(bytes), end);
}

TEST(Serialize, HugeHeaderRejectedBeforeAllocation) {
    std::vector<std::uint8_t> bytes(format_magic.begin(), format_magic.end());
    const auto put = [&](std::uint32_t v) {
        const auto b = le32(v);
        bytes.insert(bytes.end(), b.begin(), b.end());
    };
    put(1);
    for (int m = 0; m < 3; ++m) {
        put(0xFFFFFFFFu);
        put(0xFFFFFFFFu);
    }
    EXPECT_THROW(deserialize(bytes), format_error);
}

TEST(Serialize, ZeroCoefficientCount) {
    std::vector<std::uint8_t> bytes(format_magic.begin(), format_magic.end());
    for (std::uint32_t v : {1u, 0u, 1u, 1u, 1u, 1u, 1u}) {
        const auto b = le32(v);
        bytes.insert(bytes.end(), b.begin(), b.end());
    }
    EXPECT_EQ(format_error_position(bytes), 11u);
}

TEST(StatsJson, DeterministicApartFromTiming) {
    auto f = [](double x, double y, double z) { return std::cos(x + 2 * y) * std::exp(z); };
    ConstructorConfig c;
    c.seed = 5;
    auto j1 = stats_to_json(construct(f, c).stats());
    auto j2 = stats_to_json(construct(f, c).stats());
    ASSERT_TRUE(j1.contains("timing"));
    j1.erase("timing");
    j2.erase("timing");
    EXPECT_EQ(j1.dump(), j2.dump());
    EXPECT_EQ(j1["stats_version"], 1);
    EXPECT_EQ(j1["seed"], 5);
    for (const char* key : {"phase1", "phase2", "phase3", "verify"}) {
        EXPECT_TRUE(j1["evaluations"][key].contains("total"));
        EXPECT_TRUE(j1["evaluations"][key].contains("distinct"));
    }
    EXPECT_EQ(j1["ranks"].size(), 3u);
    EXPECT_EQ(j1["attempts"].size(), j1["restarts"].get<std::size_t>() + 1);
}
