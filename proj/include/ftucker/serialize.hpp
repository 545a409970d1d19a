#pragma once

// Approximant file format, version 1. All integers are u32 and all reals
// IEEE-754 binary64, both little-endian.
//
//   offset 0   magic "TCHEB3F" (7 bytes, no terminator)
//          7   u32 version
//         11   3 x (u32 coefficient count d_a, u32 rank r_a), modes 1..3
//         35   core, r1*r2*r3 reals, entry (i,j,k) at i + r1*(j + r2*k)
//              factor 1, d1*r1 reals, column-major (one Chebyshev series per column)
//              factor 2, factor 3 likewise
//
// Nothing may follow the last factor. Construction statistics are not part
// of the binary file; they go to a JSON sidecar (stats_to_json).

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "approximator.hpp"
#include "errors.hpp"

namespace ftucker {

inline constexpr std::string_view format_magic = "TCHEB3F";
inline constexpr std::uint32_t format_version = 1;
inline constexpr int stats_version = 1;

namespace detail {

class ByteWriter {
public:
    void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }
    void u32(std::uint32_t v) {
        for (int b = 0; b < 4; ++b)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    void f64(double d) {
        const auto v = std::bit_cast<std::uint64_t>(d);
        for (int b = 0; b < 8; ++b)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }

    void need(std::size_t n, const char* what) const {
        if (remaining() < n)
            throw format_error(std::string("truncated stream while reading ") + what, pos_);
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<std::uint32_t>(in_[pos_ + b]) << (8 * b);
        pos_ += 4;
        return v;
    }
    double f64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int b = 0; b < 8; ++b)
            v |= static_cast<std::uint64_t>(in_[pos_ + b]) << (8 * b);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }
    std::string_view bytes(std::size_t n, const char* what) {
        need(n, what);
        std::string_view s(reinterpret_cast<const char*>(in_.data() + pos_), n);
        pos_ += n;
        return s;
    }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline std::vector<std::uint8_t> serialize(const TuckerApproximant& a) {
    detail::ByteWriter w;
    w.bytes(format_magic);
    w.u32(format_version);
    const Dims3 ranks = a.ranks();
    const Dims3 lengths = a.lengths();
    for (std::size_t m = 0; m < 3; ++m) {
        w.u32(static_cast<std::uint32_t>(lengths[m]));
        w.u32(static_cast<std::uint32_t>(ranks[m]));
    }
    for (double v : a.core().data())
        w.f64(v);
    for (const auto& f : a.factors())
        for (Eigen::Index c = 0; c < f.cols(); ++c)
            for (Eigen::Index r = 0; r < f.rows(); ++r)
                w.f64(f(r, c));
    return w.take();
}

/// Inverse of serialize. Throws format_error (or unsupported_version_error)
/// with the byte offset of the problem; never returns a partial value.
inline TuckerApproximant deserialize(std::span<const std::uint8_t> bytes) {
    detail::ByteReader r(bytes);
    if (r.bytes(format_magic.size(), "magic") != format_magic)
        throw format_error("bad magic, not an approximant file", 0);
    const std::size_t version_at = r.position();
    if (const std::uint32_t v = r.u32("version"); v != format_version)
        throw unsupported_version_error(v, version_at);

    Dims3 lengths{}, ranks{};
    for (std::size_t m = 0; m < 3; ++m) {
        const std::size_t at = r.position();
        lengths[m] = r.u32("coefficient count");
        ranks[m] = r.u32("rank");
        if (lengths[m] == 0)
            throw format_error("mode " + std::to_string(m + 1) + " has zero coefficients", at);
    }
    // check sizes before allocating anything
    const std::uint64_t core_n = std::uint64_t{ranks[0]} * ranks[1] * ranks[2];
    std::uint64_t total = core_n;
    for (std::size_t m = 0; m < 3; ++m)
        total += std::uint64_t{lengths[m]} * ranks[m];
    if (total > r.remaining() / 8)
        throw format_error("truncated stream: header announces " + std::to_string(total) + " reals", r.position());

    std::vector<double> core(static_cast<std::size_t>(core_n));
    for (auto& v : core)
        v = r.f64("core");
    std::array<Eigen::MatrixXd, 3> factors;
    for (std::size_t m = 0; m < 3; ++m) {
        factors[m].resize(static_cast<Eigen::Index>(lengths[m]), static_cast<Eigen::Index>(ranks[m]));
        for (Eigen::Index c = 0; c < factors[m].cols(); ++c)
            for (Eigen::Index k = 0; k < factors[m].rows(); ++k)
                factors[m](k, c) = r.f64("factor");
    }
    if (r.remaining() != 0)
        throw format_error(std::to_string(r.remaining()) + " trailing bytes after the last factor", r.position());
    return TuckerApproximant(TuckerCore(ranks, std::move(core)), std::move(factors));
}

inline void write_approximant(const std::string& path, const TuckerApproximant& a) {
    const auto bytes = serialize(a);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

inline TuckerApproximant read_approximant(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

// ---- stats sidecar --------------------------------------------------------

namespace detail {

inline nlohmann::json counts_json(const EvalCounters& c) { return {{"total", c.total}, {"distinct", c.distinct}}; }

inline nlohmann::json phases_json(const PhaseCounts& p) {
    return {{"phase1", counts_json(p.phase1)},
            {"phase2", counts_json(p.phase2)},
            {"phase3", counts_json(p.phase3)},
            {"verify", counts_json(p.verify)}};
}

inline nlohmann::json dims_json(const Dims3& d) { return nlohmann::json::array({d[0], d[1], d[2]}); }

} // namespace detail

/// Construction statistics as JSON. Everything outside "timing" depends only
/// on the function, the config and the seed.
inline nlohmann::json stats_to_json(const ConstructionStats& s) {
    using nlohmann::json;
    json attempts = json::array();
    for (const auto& a : s.attempts) {
        json j{{"coarse_dims", detail::dims_json(a.coarse_dims)},
               {"ranks", detail::dims_json(a.ranks)},
               {"fine_dims", detail::dims_json(a.fine_dims)},
               {"refinement_rounds", detail::dims_json(a.refinement_rounds)},
               {"grid_growths", a.grid_growths},
               {"phase1_sweeps", a.phase1_sweeps},
               {"projector_norms", a.projector_norms},
               {"evaluations", detail::phases_json(a.evals)},
               {"halton_error", a.halton_error},
               {"threshold", a.threshold},
               {"passed", a.passed},
               {"resolved", a.resolved}};
        if (!a.failure.empty())
            j["failure"] = a.failure;
        attempts.push_back(std::move(j));
    }
    return json{
        {"stats_version", stats_version},
        {"tol", s.tol},
        {"seed", s.seed},
        {"halton_count", s.halton_count},
        {"certified", s.certified},
        {"resolved", s.resolved},
        {"zero_function", s.zero_function},
        {"restarts", s.restarts},
        {"chosen_attempt", s.chosen_attempt},
        {"ranks", detail::dims_json(s.ranks)},
        {"coarse_dims", detail::dims_json(s.coarse_dims)},
        {"fine_dims", detail::dims_json(s.fine_dims)},
        {"vscale", s.vscale},
        {"halton_error", s.halton_error},
        {"evaluations", detail::phases_json(s.evals)},
        {"oracle", detail::counts_json(s.oracle)},
        {"crossing_points", {{"x", s.crossing_points[0]}, {"y", s.crossing_points[1]}, {"z", s.crossing_points[2]}}},
        {"attempts", std::move(attempts)},
        {"timing", {{"wall_seconds", s.wall_seconds}}},
    };
}

inline void write_stats(const std::string& path, const ConstructionStats& s) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << stats_to_json(s).dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace ftucker
