#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "errors.hpp"

namespace ftucker {

struct EvalCounters {
    std::uint64_t total = 0;
    std::uint64_t distinct = 0;

    EvalCounters operator-(const EvalCounters& o) const { return {total - o.total, distinct - o.distinct}; }
    EvalCounters& operator+=(const EvalCounters& o) {
        total += o.total;
        distinct += o.distinct;
        return *this;
    }
    bool operator==(const EvalCounters&) const = default;
};

/// Wraps a black-box f(x,y,z): memoizes by the exact point triple, counts
/// total and distinct evaluations and tracks vscale = max |f| seen so far.
///
/// Safe to call from several threads; f itself must then be thread safe too.
class InstrumentedOracle {
public:
    using Function = std::function<double(double, double, double)>;

    explicit InstrumentedOracle(Function f) : f_(std::move(f)) {}

    InstrumentedOracle(const InstrumentedOracle&) = delete;
    InstrumentedOracle& operator=(const InstrumentedOracle&) = delete;

    double operator()(double x, double y, double z) {
        const Key key{x, y, z};
        total_.fetch_add(1, std::memory_order_relaxed);
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        }
        const double v = f_(x, y, z);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "function returned " << v << " at (" << x << ", " << y << ", " << z << ")";
            throw sampling_error(msg.str(), {x, y, z});
        }
        std::lock_guard lock(mutex_);
        if (memo_.try_emplace(key, v).second) {
            distinct_.fetch_add(1, std::memory_order_relaxed);
            vscale_ = std::max(vscale_, std::abs(v));
        }
        return v;
    }

    std::uint64_t total_calls() const noexcept { return total_.load(); }
    std::uint64_t distinct_points() const noexcept { return distinct_.load(); }
    EvalCounters counters() const noexcept { return {total_calls(), distinct_points()}; }

    double vscale() const {
        std::lock_guard lock(mutex_);
        return vscale_;
    }

private:
    struct Key {
        double x, y, z;
        bool operator==(const Key& o) const noexcept {
            return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(o.x) &&
                   std::bit_cast<std::uint64_t>(y) == std::bit_cast<std::uint64_t>(o.y) &&
                   std::bit_cast<std::uint64_t>(z) == std::bit_cast<std::uint64_t>(o.z);
        }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::uint64_t h = 0x9e3779b97f4a7c15ULL;
            for (double d : {k.x, k.y, k.z}) {
                h ^= std::bit_cast<std::uint64_t>(d) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 0xff51afd7ed558ccdULL;
            }
            return static_cast<std::size_t>(h ^ (h >> 33));
        }
    };

    Function f_;
    mutable std::mutex mutex_;
    std::unordered_map<Key, double, KeyHash> memo_;
    std::atomic<std::uint64_t> total_{0};
    std::atomic<std::uint64_t> distinct_{0};
    double vscale_ = 0.0;
};

} // namespace ftucker
