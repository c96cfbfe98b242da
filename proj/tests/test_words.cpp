#include "doctest.h"

#include <algorithm>
#include <set>

#include "fht/random.hpp"
#include "fht/words.hpp"

using namespace fht;

namespace {
Word w(std::vector<std::int32_t> ls) { return Word::from_reduced(std::move(ls)); }
} // namespace

TEST_CASE("reduce_concat handles cancellation at the interface") {
    CHECK(reduce_concat(w({1, 2}), w({-2, 1})) == w({1, 1}));
    CHECK(reduce_concat(w({1}), w({-1})) == Word());
    CHECK(reduce_concat(w({1, 2}), w({3})) == w({1, 2, 3}));
    CHECK(reduce_concat(Word(), w({2})) == w({2}));
    CHECK(reduce_concat(w({2}), Word()) == w({2}));
}

TEST_CASE("invert reverses and negates") {
    CHECK(invert(w({1, 2})) == w({-2, -1}));
    CHECK(invert(Word()) == Word());
    CHECK(invert(w({1, -2, 1})) == w({-1, 2, -1}));
}

TEST_CASE("prefix order is initial-segment containment") {
    CHECK(prefix_leq(Word(), w({1, 2})));
    CHECK(prefix_leq(w({1}), w({1, 2})));
    CHECK_FALSE(prefix_leq(w({2}), w({1, 2})));
    CHECK(prefix_leq(w({1, 2}), w({1, 2})));
    CHECK_FALSE(prefix_lt(w({1, 2}), w({1, 2})));
    CHECK(prefix_lt(Word(), w({1})));
}

TEST_CASE("ends_with reads the prefix order right to left") {
    CHECK(ends_with(w({1, 2}), w({2})));
    CHECK_FALSE(ends_with(w({1, 2}), w({1})));
    CHECK(ends_with(w({1, 2}), Word()));
    CHECK(ends_with(w({2, 1, -2}), w({1, -2})));
}

TEST_CASE("gromov product from the length formula") {
    CHECK(gromov_twice(w({-1}), w({1, 2})) == 2); // value 1
    CHECK(gromov_twice(Word(), w({1, 2})) == 0);
    CHECK(gromov_twice(w({1}), w({2})) == 0);
    CHECK(gromov_product(w({-1}), w({1, 2})) == doctest::Approx(1.0));
}

TEST_CASE("word validation rejects malformed sequences") {
    CHECK_THROWS_AS(Word::from_reduced({1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(Word::from_reduced({0}), std::invalid_argument);
    CHECK(Word::reduce({1, -1}) == Word());
    CHECK(Word::reduce({1, 2, -2, -1, 3}) == w({3}));
}

TEST_CASE("ball enumeration counts and canonical order") {
    CHECK(enumerate_ball(2, 0).size() == 1);
    CHECK(enumerate_ball(2, 1).size() == 5);
    CHECK(enumerate_ball(2, 2).size() == 17);
    CHECK(ball_count(2, 2) == 17);
    CHECK(ball_count(3, 3) == 1 + 6 + 30 + 150);

    auto ball = enumerate_ball(2, 3);
    CHECK(ball.size() == 17 + 36);

    WordOrder lt;
    CHECK(std::is_sorted(ball.begin(), ball.end(), lt));

    // No duplicates, closed under prefixes.
    std::set<Word, WordOrder> seen(ball.begin(), ball.end());
    CHECK(seen.size() == ball.size());
    for (const auto& u : ball)
        if (!u.is_unit())
            CHECK(seen.count(u.head(u.length() - 1)) == 1);

    // Order within a length class follows 1 < -1 < 2 < -2.
    CHECK(ball[1] == w({1}));
    CHECK(ball[2] == w({-1}));
    CHECK(ball[3] == w({2}));
    CHECK(ball[4] == w({-2}));
    CHECK(ball[5] == w({1, 1}));

    CHECK_THROWS_AS(enumerate_ball(2, 9, 1000), ResourceError);
}

TEST_CASE("random words: reduction, parity, associativity, gromov cross-check") {
    SplitMix64 rng(20250810);
    for (int trial = 0; trial < 500; ++trial) {
        Word u = random_word(rng, 6, 3);
        Word v = random_word(rng, 6, 3);
        Word t = random_word(rng, 6, 3);

        Word uv = reduce_concat(u, v);
        // Output is reduced (from_reduced would throw otherwise).
        CHECK_NOTHROW(Word::from_reduced(uv.letters()));
        CHECK((uv.length() + u.length() + v.length()) % 2 == 0);
        CHECK(uv.length() + 2 * interface_cancellation(u, v) == u.length() + v.length());
        CHECK(uv.length() >= (u.length() > v.length() ? u.length() - v.length()
                                                      : v.length() - u.length()));

        CHECK(reduce_concat(uv, t) == reduce_concat(u, reduce_concat(v, t)));
        CHECK(invert(invert(u)) == u);
        CHECK(reduce_concat(u, invert(u)) == Word());

        // gromov(invert(g), h) equals the common-prefix length of g and h.
        std::size_t common = 0;
        while (common < std::min(u.length(), v.length()) &&
               u.letter(common) == v.letter(common))
            ++common;
        CHECK(gromov_twice(invert(u), v) == static_cast<int>(2 * common));
    }
}
