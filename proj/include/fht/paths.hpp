#pragma once

#include <map>
#include <vector>

#include "fht/element.hpp"

namespace fht {

// A chain h_1 < h_2 < ... in the prefix order with lengths increasing by one.
struct GeodesicPath {
    std::vector<Word> nodes;

    const Word& root() const { return nodes.front(); }

    void validate() const {
        if (nodes.empty())
            throw std::invalid_argument("geodesic path: empty");
        for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
            if (nodes[j + 1].length() != nodes[j].length() + 1 ||
                !prefix_lt(nodes[j], nodes[j + 1]))
                throw std::invalid_argument("geodesic path: not a one-step prefix chain");
        }
    }
};

enum class PartitionKind { greedy, powers };

// Disjoint geodesic paths covering ball_R \ {e}, with a word -> (path index,
// 1-based position) lookup.
struct PathPartition {
    PartitionKind kind = PartitionKind::greedy;
    int num_gens = 0;
    int radius = 0;
    std::uint64_t seed = 0; // greedy only
    std::vector<GeodesicPath> paths;
    std::map<Word, std::pair<int, int>, WordOrder> assignment;

    int num_paths() const { return static_cast<int>(paths.size()); }

    // (-1, 0) when the word is not covered (the unit, or outside the ball).
    std::pair<int, int> locate(const Word& w) const {
        auto it = assignment.find(w);
        return it == assignment.end() ? std::pair<int, int>{-1, 0} : it->second;
    }
};

// The sweep construction: process lengths 1, 2, ...; at every uncovered word
// start a path and extend it by seeded uniform non-backtracking letters until
// it leaves the ball. Deterministic per seed.
inline PathPartition greedy_partition(int num_gens, int radius, std::uint64_t seed,
                                      std::size_t cap = kDefaultBallCap) {
    if (radius < 1)
        throw std::invalid_argument("greedy_partition: radius must be >= 1");
    PathPartition part;
    part.kind = PartitionKind::greedy;
    part.num_gens = num_gens;
    part.radius = radius;
    part.seed = seed;

    const std::vector<Word> ball = enumerate_ball(num_gens, radius, cap);
    std::map<Word, bool, WordOrder> covered;
    for (const auto& w : ball)
        covered.emplace(w, false);

    SplitMix64 rng(seed);
    for (const auto& w : ball) { // canonical order = lengths 1, 2, ... inside
        if (w.is_unit() || covered.at(w))
            continue;
        GeodesicPath path;
        Word cur = w;
        while (true) {
            covered.at(cur) = true;
            path.nodes.push_back(cur);
            part.assignment.emplace(cur,
                                    std::pair<int, int>{part.num_paths(),
                                                        static_cast<int>(path.nodes.size())});
            if (static_cast<int>(cur.length()) >= radius)
                break;
            // Uniform choice among the 2n-1 non-backtracking extensions,
            // letters in canonical order.
            const std::int32_t avoid = -cur.last_letter();
            std::int64_t pick = static_cast<std::int64_t>(rng.below(2 * static_cast<std::uint64_t>(num_gens) - 1));
            std::int32_t chosen = 0;
            for (int i = 1; i <= num_gens && chosen == 0; ++i) {
                for (std::int32_t l : {i, -i}) {
                    if (l == avoid)
                        continue;
                    if (pick-- == 0) {
                        chosen = l;
                        break;
                    }
                }
            }
            auto letters = cur.letters();
            letters.push_back(chosen);
            cur = Word::from_reduced(std::move(letters));
        }
        part.paths.push_back(std::move(path));
    }
    return part;
}

// The concrete partition by powers: P_{h_0, g} = {h_0 g^k : k >= 1} for
// h_0 not ending in g^{+-1}, truncated to the ball. Every word w != e has the
// unique decomposition w = h_0 l^a with l its trailing letter.
inline PathPartition concrete_partition(int num_gens, int radius,
                                        std::size_t cap = kDefaultBallCap) {
    if (radius < 1)
        throw std::invalid_argument("concrete_partition: radius must be >= 1");
    PathPartition part;
    part.kind = PartitionKind::powers;
    part.num_gens = num_gens;
    part.radius = radius;

    const std::vector<Word> ball = enumerate_ball(num_gens, radius, cap);
    std::map<Word, int, WordOrder> path_of_root;
    for (const auto& w : ball) {
        if (w.is_unit())
            continue;
        const std::int32_t l = w.last_letter();
        std::size_t run = 1;
        while (run < w.length() && w.letter(w.length() - 1 - run) == l)
            ++run;
        const Word h0 = w.head(w.length() - run);
        Word root = h0;
        {
            auto letters = root.letters();
            letters.push_back(l);
            root = Word::from_reduced(std::move(letters));
        }
        auto it = path_of_root.find(root);
        int idx;
        if (it == path_of_root.end()) {
            idx = part.num_paths();
            path_of_root.emplace(root, idx);
            part.paths.push_back(GeodesicPath{});
        } else {
            idx = it->second;
        }
        auto& nodes = part.paths[static_cast<std::size_t>(idx)].nodes;
        const int position = static_cast<int>(run);
        if (nodes.size() < static_cast<std::size_t>(position))
            nodes.resize(static_cast<std::size_t>(position));
        nodes[static_cast<std::size_t>(position - 1)] = w;
        part.assignment.emplace(w, std::pair<int, int>{idx, position});
    }
    // Ball enumeration is closed under prefixes, so every path is a full
    // initial run h_0 g, h_0 g^2, ... with no holes.
    for (const auto& p : part.paths)
        p.validate();
    return part;
}

enum class PathProj { T, S };

// T_n keeps the terms on path n; S_n keeps the terms strictly below the root
// of path n in the prefix order (the unit word included).
template <class Ring>
Element<Ring> path_project(const PathPartition& part, int n, PathProj which,
                           const Element<Ring>& x) {
    if (n < 0 || n >= part.num_paths())
        throw std::invalid_argument("path_project: path index out of range");
    Element<Ring> out(x.dim());
    if (which == PathProj::T) {
        for (const auto& [w, c] : x.terms()) {
            if (!w.is_unit() && static_cast<int>(w.length()) > part.radius)
                throw std::invalid_argument("path_project: support outside the partition ball");
            if (part.locate(w).first == n)
                out.add_term(w, c);
        }
        return out;
    }
    const Word& root = part.paths[static_cast<std::size_t>(n)].root();
    for (const auto& [w, c] : x.terms())
        if (prefix_lt(w, root))
            out.add_term(w, c);
    return out;
}

// M_{n,j}: keeps path positions k with 2^n <= k < 2^{n+1}; terms off the path
// are annihilated.
template <class Ring>
Element<Ring> dyadic_block(const GeodesicPath& path, int n, const Element<Ring>& x) {
    if (n < 0)
        throw std::invalid_argument("dyadic_block: n must be >= 0");
    const long lo = 1L << n, hi = 2L << n;
    Element<Ring> out(x.dim());
    const std::size_t base = path.root().length();
    for (const auto& [w, c] : x.terms()) {
        if (w.length() < base)
            continue;
        const std::size_t pos0 = w.length() - base; // 0-based position
        if (pos0 >= path.nodes.size() || path.nodes[pos0] != w)
            continue;
        const long k = static_cast<long>(pos0) + 1;
        if (k >= lo && k < hi)
            out.add_term(w, c);
    }
    return out;
}

// The scalar symbol of the smooth Littlewood-Paley block at path position l:
// a telescoping sqrt-profile with chi_{[2^n, 2^{n+1})} <= phi_n <= chi_{(2^{n-1}, 2^{n+2})}.
inline double smooth_symbol(int n, long l) {
    if (n < 1)
        throw std::invalid_argument("smooth_symbol: n must be >= 1");
    if (l < 1)
        throw std::invalid_argument("smooth_symbol: position must be >= 1");
    const long p0 = 1L << (n - 1), p1 = 2 * p0, p2 = 4 * p0, p3 = 8 * p0;
    const long count1 = std::max(0L, std::min(p1, l) - p0);
    const double mid = l > p1 ? std::sqrt(static_cast<double>(std::min(p2, l))) -
                                    std::sqrt(static_cast<double>(p1))
                              : 0.0;
    const long count3 = std::max(0L, std::min(p3, l) - p2);
    const double bracket = std::pow(2.0, 1.0 - 0.5 * n) * static_cast<double>(count1) + mid -
                           std::pow(2.0, -0.5 * (n + 1)) * static_cast<double>(count3);
    return bracket / std::sqrt(static_cast<double>(l));
}

// M_{phi_n, j}: requires a path re-rooted at length one (|h_k| = k) and a
// trace-zero input; float coefficients only (the weights are irrational).
template <class Ring>
    requires(!Ring::kExact)
Element<Ring> smooth_block(const GeodesicPath& path, int n, const Element<Ring>& x) {
    if (path.root().length() != 1)
        throw std::invalid_argument("smooth_block: path must be rooted at length one");
    if (x.find(Word()) != nullptr)
        throw std::invalid_argument("smooth_block: input must be trace-zero");
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms()) {
        const std::size_t pos0 = w.length() - 1;
        if (pos0 >= path.nodes.size() || path.nodes[pos0] != w)
            continue;
        const double phi = smooth_symbol(n, static_cast<long>(pos0) + 1);
        out.add_term(w, coeff_scale(typename Ring::Scalar(phi, 0.0), c));
    }
    return out;
}

} // namespace fht
