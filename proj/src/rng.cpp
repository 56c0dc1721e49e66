#include "bai/rng.hpp"

#include <stdexcept>

namespace bai {

std::size_t Rng::next_index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("Rng::next_index: n must be positive");
    }
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod n
    for (;;) {
        const std::uint64_t r = gen_();
        if (r >= threshold) {
            return static_cast<std::size_t>(r % bound);
        }
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t counter) {
    // FNV-1a over the tag, then two splitmix rounds to decorrelate.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(master ^ h) + counter);
}

} // namespace bai
