#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ftucker {

/// Thrown when a numerical kernel meets input it cannot work with
/// (zero DEIM residual, singular interpolation block, ...).
class degenerate_input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The sampled function produced NaN or Inf.
class sampling_error : public std::runtime_error {
public:
    sampling_error(const std::string& what, std::array<double, 3> point)
        : std::runtime_error(what), point_(point) {}

    const std::array<double, 3>& point() const noexcept { return point_; }

private:
    std::array<double, 3> point_;
};

/// Malformed approximant stream; `position()` is the byte offset where
/// decoding stopped.
class format_error : public std::runtime_error {
public:
    format_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at byte " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class unsupported_version_error : public format_error {
public:
    unsupported_version_error(std::uint32_t version, std::size_t position)
        : format_error("unsupported format version " + std::to_string(version), position),
          version_(version) {}

    std::uint32_t version() const noexcept { return version_; }

private:
    std::uint32_t version_;
};

// Warnings from library code go through a replaceable sink; stderr by default.
using warning_sink = std::function<void(const std::string&)>;

inline warning_sink& warning_handler() {
    static warning_sink sink = [](const std::string& msg) {
        std::cerr << "ftucker: warning: " << msg << '\n';
    };
    return sink;
}

inline void warn(const std::string& msg) {
    if (auto& sink = warning_handler())
        sink(msg);
}

} // namespace ftucker
