#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace pmd::detail {

// Fixed-width set of edge indices (up to 256 edges).
struct EdgeBits {
    static constexpr int kCapacity = 256;
    std::array<std::uint64_t, 4> words{};

    void set(int i) { words[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; }
    bool none() const { return (words[0] | words[1] | words[2] | words[3]) == 0; }
    int count() const {
        return std::popcount(words[0]) + std::popcount(words[1]) + std::popcount(words[2]) + std::popcount(words[3]);
    }

    EdgeBits& operator|=(const EdgeBits& o) {
        for (std::size_t w = 0; w < 4; ++w) words[w] |= o.words[w];
        return *this;
    }
    EdgeBits operator-(const EdgeBits& o) const {
        EdgeBits r;
        for (std::size_t w = 0; w < 4; ++w) r.words[w] = words[w] & ~o.words[w];
        return r;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < 4; ++w) {
            std::uint64_t bits = words[w];
            while (bits) {
                f(static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
                bits &= bits - 1;
            }
        }
    }

    friend bool operator==(const EdgeBits&, const EdgeBits&) = default;
};

struct EdgeBitsHash {
    std::size_t operator()(const EdgeBits& b) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto w : b.words) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

}  // namespace pmd::detail
