#pragma once

#include <cstdint>

#include "fht/words.hpp"

namespace fht {

// Deterministic generator with a fixed cross-platform output sequence
// (std:: distributions are implementation-defined, which would break
// byte-identical report reruns).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1)
            return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t v = next();
        while (v > limit)
            v = next();
        return v % n;
    }

    // Inclusive range.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

// Documented split scheme: stream s of master seed m is the generator
// seeded with mix(m, s); streams are pairwise independent in practice.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
    SplitMix64 mixer(master ^ (0x632be59bd9b4e019ULL * (stream + 1)));
    return mixer.next();
}

// Uniformly random reduced word of exactly the given length.
inline Word random_word_of_length(SplitMix64& rng, int length, int num_gens) {
    std::vector<std::int32_t> letters;
    letters.reserve(static_cast<std::size_t>(length));
    for (int j = 0; j < length; ++j) {
        // 2n choices at the first step, 2n-1 non-backtracking afterwards.
        while (true) {
            std::int32_t gen = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(num_gens))) + 1;
            std::int32_t l = rng.below(2) ? gen : -gen;
            if (!letters.empty() && letters.back() == -l)
                continue;
            letters.push_back(l);
            break;
        }
    }
    return Word::from_reduced(std::move(letters));
}

// Uniform length in [0, max_len], then a uniform reduced word of that length.
inline Word random_word(SplitMix64& rng, int max_len, int num_gens) {
    return random_word_of_length(rng, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1)),
                                 num_gens);
}

} // namespace fht
