#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "kicl/util.hpp"

namespace kicl {

// Deterministic generator. mt19937_64 is bit-exact per the standard; the
// uniform/normal transforms are hand-rolled so outputs do not depend on
// libstdc++ distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Named substream so ablations can share data streams exactly.
    static Rng substream(std::uint64_t root, std::string_view name) {
        return Rng(util::splitmix64(root ^ util::fnv1a64(name)));
    }

    std::uint64_t next_u64() { return gen_(); }

    double uniform01() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller with cached spare.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // [0, n)
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace kicl
