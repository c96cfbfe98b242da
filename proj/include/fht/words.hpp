#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "fht/errors.hpp"

namespace fht {

// A reduced word of the free group F_infinity. Letter +i stands for the
// generator g_i, letter -i for g_i^{-1} (i >= 1). The empty word is the unit.
// Invariant: no adjacent cancellation, letters[j+1] != -letters[j].
class Word {
public:
    Word() = default;

    // Wraps a letter sequence that is already reduced; throws otherwise.
    static Word from_reduced(std::vector<std::int32_t> letters);

    // Free reduction of an arbitrary letter sequence.
    static Word reduce(const std::vector<std::int32_t>& letters);

    // The single-letter word for letter k (k != 0).
    static Word generator(std::int32_t k);

    std::size_t length() const { return letters_.size(); }
    bool is_unit() const { return letters_.empty(); }
    std::int32_t letter(std::size_t i) const { return letters_[i]; }
    const std::vector<std::int32_t>& letters() const { return letters_; }

    // 0 for the unit word.
    std::int32_t first_letter() const { return letters_.empty() ? 0 : letters_.front(); }
    std::int32_t last_letter() const { return letters_.empty() ? 0 : letters_.back(); }

    // Largest generator index |letter| appearing; 0 for the unit.
    std::int32_t max_generator() const;

    // First n letters / all but the first n letters.
    Word head(std::size_t n) const;
    Word tail_from(std::size_t n) const;

    bool operator==(const Word& other) const { return letters_ == other.letters_; }
    bool operator!=(const Word& other) const { return letters_ != other.letters_; }

    std::string str() const; // e.g. "g1.g2^-1", "e"

private:
    struct Unchecked {};
    Word(std::vector<std::int32_t> letters, Unchecked) : letters_(std::move(letters)) {}

    std::vector<std::int32_t> letters_;

    friend Word reduce_concat(const Word&, const Word&);
    friend Word invert(const Word&);
};

// Canonical letter order 1 < -1 < 2 < -2 < ...
inline int letter_key(std::int32_t l) {
    return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1;
}

// Length-lexicographic order with letter_key inside a length class.
struct WordOrder {
    bool operator()(const Word& a, const Word& b) const;
};

// Number of letters cancelling at the interface of u.v (both reduced).
std::size_t interface_cancellation(const Word& u, const Word& v);

// Reduced form of the concatenation uv.
Word reduce_concat(const Word& u, const Word& v);

Word invert(const Word& u);

// g <= h in the prefix order: h = g k reduced, i.e. |g^{-1}h| = |h| - |g|.
bool prefix_leq(const Word& g, const Word& h);
bool prefix_lt(const Word& g, const Word& h);

// w ends with h (h <= w read right to left).
bool ends_with(const Word& w, const Word& h);

// Twice the Gromov product: |g| + |g2| - |g.g2|. Always a nonnegative integer.
int gromov_twice(const Word& g, const Word& g2);

// (|g| + |g2| - |g.g2|) / 2 as a half-integer value.
double gromov_product(const Word& g, const Word& g2);

inline constexpr std::size_t kDefaultBallCap = 200000;

// All reduced words of length <= radius over generators 1..num_gens in
// canonical (length-lexicographic) order. Throws ResourceError past the cap.
std::vector<Word> enumerate_ball(int num_gens, int radius,
                                 std::size_t cap = kDefaultBallCap);

// 1 + sum_{k=1..radius} 2n (2n-1)^{k-1}; saturates at cap+1 to avoid overflow.
std::size_t ball_count(int num_gens, int radius, std::size_t cap = kDefaultBallCap);

} // namespace fht
