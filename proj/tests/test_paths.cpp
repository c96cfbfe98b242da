#include "doctest.h"

#include <set>

#include "fht/multipliers.hpp"
#include "fht/paths.hpp"

using namespace fht;

namespace {
Word w(std::vector<std::int32_t> ls) { return Word::from_reduced(std::move(ls)); }
ElementQ lam(std::vector<std::int32_t> ls, RatComplex c = RatComplex(1)) {
    return ElementQ::monomial(w(std::move(ls)), std::move(c));
}

void check_partition_covers_ball(const PathPartition& part) {
    const auto ball = enumerate_ball(part.num_gens, part.radius);
    std::set<Word, WordOrder> assigned;
    for (const auto& [word, loc] : part.assignment) {
        CHECK(assigned.insert(word).second);
        CHECK(part.paths[static_cast<std::size_t>(loc.first)]
                  .nodes[static_cast<std::size_t>(loc.second - 1)] == word);
    }
    CHECK(assigned.size() == ball.size() - 1); // everything but the unit
    for (const auto& word : ball)
        if (!word.is_unit())
            CHECK(assigned.count(word) == 1);
    for (const auto& path : part.paths)
        CHECK_NOTHROW(path.validate());
}
} // namespace

TEST_CASE("greedy partition: determinism, cover, geodesic invariants") {
    PathPartition a = greedy_partition(2, 4, 13);
    PathPartition b = greedy_partition(2, 4, 13);
    REQUIRE(a.num_paths() == b.num_paths());
    for (int j = 0; j < a.num_paths(); ++j)
        CHECK(a.paths[static_cast<std::size_t>(j)].nodes ==
              b.paths[static_cast<std::size_t>(j)].nodes);

    PathPartition c = greedy_partition(2, 4, 14);
    bool identical = a.num_paths() == c.num_paths();
    if (identical)
        for (int j = 0; j < a.num_paths(); ++j)
            identical = identical && a.paths[static_cast<std::size_t>(j)].nodes ==
                                         c.paths[static_cast<std::size_t>(j)].nodes;
    CHECK_FALSE(identical);

    check_partition_covers_ball(a);
    check_partition_covers_ball(greedy_partition(3, 3, 999));
}

TEST_CASE("concrete partition groups words into power paths") {
    PathPartition part = concrete_partition(2, 4);
    check_partition_covers_ball(part);

    // The path through g1 is {g1, g1^2, g1^3, g1^4}.
    auto [n1, pos1] = part.locate(w({1}));
    REQUIRE(n1 >= 0);
    CHECK(pos1 == 1);
    const auto& p1 = part.paths[static_cast<std::size_t>(n1)];
    CHECK(p1.nodes.size() == 4);
    CHECK(p1.nodes[3] == w({1, 1, 1, 1}));

    // g1^2 sits on the (e, g1) path, g2 on the (e, g2) path.
    CHECK(part.locate(w({1, 1})).first == n1);
    CHECK(part.locate(w({1, 1})).second == 2);
    CHECK(part.locate(w({2})).first != n1);

    // g1 g2^2 belongs to the (g1, g2) path at position 2.
    auto [ng, pg] = part.locate(w({1, 2, 2}));
    CHECK(part.paths[static_cast<std::size_t>(ng)].root() == w({1, 2}));
    CHECK(pg == 2);

    // Roots of distinct paths are distinct words.
    std::set<Word, WordOrder> roots;
    for (const auto& p : part.paths)
        CHECK(roots.insert(p.root()).second);
}

TEST_CASE("path projections T and S") {
    PathPartition part = concrete_partition(2, 4);
    const int n1 = part.locate(w({1})).first;

    ElementQ x = lam({1, 1}) + lam({2});
    CHECK(path_project(part, n1, PathProj::T, x) == lam({1, 1}));

    // S for the root g1 keeps the proper prefixes of g1, i.e. only e.
    ElementQ y = ElementQ::unit() + lam({1});
    CHECK(path_project(part, n1, PathProj::S, y) == ElementQ::unit());

    // For a longer root, S keeps all proper prefixes including e.
    const int ng = part.locate(w({1, 2})).first;
    ElementQ z = ElementQ::unit() + lam({1}) + lam({1, 2}) + lam({2});
    CHECK(path_project(part, ng, PathProj::S, z) == ElementQ::unit() + lam({1}));

    // Partition property: sum_n T_n x = x - tau(x) lambda_e.
    for (std::uint64_t s = 0; s < 10; ++s) {
        ElementQ r = random_element<RationalRing>({4, 6, 2, CoeffLaw::grid}, 50 + s);
        for (const auto& part2 :
             {concrete_partition(2, 4), greedy_partition(2, 4, 100 + s)}) {
            ElementQ sum(r.dim());
            for (int n = 0; n < part2.num_paths(); ++n)
                sum = sum + path_project(part2, n, PathProj::T, r);
            CHECK(sum == r - project_trace(r));
        }
    }

    CHECK_THROWS_AS(path_project(part, n1, PathProj::T, lam({1, 1, 1, 1, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(path_project(part, part.num_paths(), PathProj::T, x),
                    std::invalid_argument);
}

TEST_CASE("dyadic blocks partition the path positions") {
    PathPartition part = concrete_partition(1, 8);
    const auto& path = part.paths[0]; // g1-powers (or g1^{-1}); root length 1
    ElementQ x;
    for (int k = 1; k <= 8; ++k)
        x.add_term(path.nodes[static_cast<std::size_t>(k - 1)], RatComplex(k));

    CHECK(dyadic_block(path, 0, x) == ElementQ::monomial(path.nodes[0], RatComplex(1)));
    ElementQ block1 = dyadic_block(path, 1, x);
    CHECK(block1.support_size() == 2); // positions 2 and 3
    CHECK(block1.find(path.nodes[1]) != nullptr);
    CHECK(block1.find(path.nodes[2]) != nullptr);

    ElementQ sum;
    for (int n = 0; n <= 3; ++n)
        sum = sum + dyadic_block(path, n, x);
    CHECK(sum == x);

    // Terms off the path are annihilated.
    CHECK(dyadic_block(path, 0, lam({2})).is_zero());
}

TEST_CASE("smooth block symbol bounds") {
    for (int n = 1; n <= 4; ++n) {
        const long p0 = 1L << (n - 1), p1 = 2 * p0, p2 = 4 * p0, p3 = 8 * p0;
        for (long l = 1; l <= p3 + 4; ++l) {
            const double phi = smooth_symbol(n, l);
            if (l >= p1 && l <= p2)
                CHECK(phi == doctest::Approx(1.0).epsilon(1e-12));
            if (l <= p0 || l >= p3)
                CHECK(std::abs(phi) <= 1e-12);
            CHECK(phi >= -1e-12);
            CHECK(phi <= 1.0 + 1e-12);
        }
        CHECK(std::abs(smooth_symbol(n, p3)) <= 1e-12);
    }
}

TEST_CASE("smooth block acts on re-rooted paths only") {
    PathPartition part = concrete_partition(1, 8);
    const auto& path = part.paths[0];
    ElementC x;
    for (int k = 1; k <= 8; ++k)
        x.add_term(path.nodes[static_cast<std::size_t>(k - 1)], std::complex<double>(1.0, 0.0));
    ElementC block = smooth_block(path, 1, x);
    CHECK(block.coeff_at(path.nodes[1]).real() == doctest::Approx(1.0)); // position 2
    CHECK(block.coeff_at(path.nodes[3]).real() == doctest::Approx(1.0)); // position 4
    CHECK(std::abs(block.coeff_at(path.nodes[7]).real()) <= 1e-12);      // position 8

    PathPartition deep = concrete_partition(2, 4);
    const int ng = deep.locate(w({1, 2})).first;
    CHECK_THROWS_AS(smooth_block(deep.paths[static_cast<std::size_t>(ng)], 1, x),
                    std::invalid_argument);
    ElementC with_unit = x + ElementC::unit();
    CHECK_THROWS_AS(smooth_block(path, 1, with_unit), std::invalid_argument);
}
