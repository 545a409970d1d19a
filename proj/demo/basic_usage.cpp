// Approximate a function given as a lambda, then evaluate, store and reload it.

#include <cmath>
#include <cstdio>

#include <ftucker/approximator.hpp>
#include <ftucker/serialize.hpp>

int main() {
    auto f = [](double x, double y, double z) { return std::exp(-(x * x + 2 * y * y + z * z)) * std::cos(x + z); };

    ftucker::InstrumentedOracle oracle(f);
    ftucker::ConstructorConfig config;
    config.tol = 1e-12;
    const ftucker::TuckerApproximant a = ftucker::construct(oracle, config);

    const auto r = a.ranks();
    const auto n = a.lengths();
    std::printf("ranks (%zu, %zu, %zu), coefficients per mode (%zu, %zu, %zu)\n", r[0], r[1], r[2], n[0], n[1], n[2]);
    std::printf("%llu distinct evaluations, %zu restarts, certified: %s\n",
                static_cast<unsigned long long>(a.stats().oracle.distinct), a.stats().restarts,
                a.stats().certified ? "yes" : "no");

    const double x = 0.3, y = -0.7, z = 0.1;
    std::printf("f(%g, %g, %g) = %.16f, approximant %.16f\n", x, y, z, f(x, y, z), a(x, y, z));

    const auto bytes = ftucker::serialize(a);
    const ftucker::TuckerApproximant back = ftucker::deserialize(bytes);
    std::printf("%zu bytes serialized, reloaded value %.16f\n", bytes.size(), back(x, y, z));
    return 0;
}
