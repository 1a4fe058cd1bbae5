#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shapfold {

// Error categories map onto CLI exit codes: config -> 1, data/parse -> 2,
// degenerate/stall outcomes -> 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// All oriented attributions non-positive: the model gives the miner nothing
// to work with for this orientation.
struct DegenerateAttributionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic 64-bit generator (splitmix64). We do not use <random>
// distributions anywhere: their output is implementation-defined, and
// run artifacts must be byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

private:
    std::uint64_t state_;
};

// Stable combination of a global seed with a per-task id (e.g. example id),
// so per-example streams are independent of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t id) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (id + 1)));
    return r.next();
}

}  // namespace shapfold
