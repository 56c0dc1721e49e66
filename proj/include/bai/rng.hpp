#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bai {

// Seeded pseudo-random stream. One instance per run; every stochastic
// choice (tie-breaks, reward sampling) draws from it in call order, so a
// run is fully reproduced by its seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform double in [0, 1).
    double next_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform index in [0, n). Unbiased via rejection, so the sequence
    // does not depend on the standard library's distribution internals.
    std::size_t next_index(std::size_t n);

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    std::mt19937_64 gen_;
};

// splitmix64 mixing step; used for deriving independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Derives a child seed from (master, tag, counter). Streams are addressed
// by name+counter, never by creation order, so adding one consumer does
// not shift any other consumer's stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t counter);

} // namespace bai
