#include "fht/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace fht {

Word Word::from_reduced(std::vector<std::int32_t> letters) {
    for (std::size_t j = 0; j < letters.size(); ++j) {
        if (letters[j] == 0)
            throw std::invalid_argument("word letter must be nonzero");
        if (j + 1 < letters.size() && letters[j + 1] == -letters[j])
            throw std::invalid_argument("word is not reduced");
    }
    return Word(std::move(letters), Unchecked{});
}

Word Word::reduce(const std::vector<std::int32_t>& letters) {
    std::vector<std::int32_t> out;
    out.reserve(letters.size());
    for (std::int32_t l : letters) {
        if (l == 0)
            throw std::invalid_argument("word letter must be nonzero");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(std::move(out), Unchecked{});
}

Word Word::generator(std::int32_t k) {
    if (k == 0)
        throw std::invalid_argument("generator index must be nonzero");
    return Word({k}, Unchecked{});
}

std::int32_t Word::max_generator() const {
    std::int32_t m = 0;
    for (std::int32_t l : letters_)
        m = std::max(m, l > 0 ? l : -l);
    return m;
}

Word Word::head(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(std::vector<std::int32_t>(letters_.begin(), letters_.begin() + n),
                Unchecked{});
}

Word Word::tail_from(std::size_t n) const {
    n = std::min(n, letters_.size());
    return Word(std::vector<std::int32_t>(letters_.begin() + n, letters_.end()),
                Unchecked{});
}

std::string Word::str() const {
    if (letters_.empty())
        return "e";
    std::string s;
    for (std::size_t j = 0; j < letters_.size(); ++j) {
        if (j > 0)
            s += '.';
        std::int32_t l = letters_[j];
        s += 'g';
        s += std::to_string(l > 0 ? l : -l);
        if (l < 0)
            s += "^-1";
    }
    return s;
}

bool WordOrder::operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length())
        return a.length() < b.length();
    const auto& u = a.letters();
    const auto& v = b.letters();
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] != v[j])
            return letter_key(u[j]) < letter_key(v[j]);
    }
    return false;
}

std::size_t interface_cancellation(const Word& u, const Word& v) {
    const std::size_t bound = std::min(u.length(), v.length());
    std::size_t c = 0;
    while (c < bound && u.letter(u.length() - 1 - c) == -v.letter(c))
        ++c;
    return c;
}

Word reduce_concat(const Word& u, const Word& v) {
    const std::size_t c = interface_cancellation(u, v);
    std::vector<std::int32_t> out;
    out.reserve(u.length() + v.length() - 2 * c);
    out.insert(out.end(), u.letters().begin(), u.letters().end() - c);
    out.insert(out.end(), v.letters().begin() + c, v.letters().end());
    return Word(std::move(out), Word::Unchecked{});
}

Word invert(const Word& u) {
    std::vector<std::int32_t> out(u.letters().rbegin(), u.letters().rend());
    for (auto& l : out)
        l = -l;
    return Word(std::move(out), Word::Unchecked{});
}

bool prefix_leq(const Word& g, const Word& h) {
    if (g.length() > h.length())
        return false;
    return std::equal(g.letters().begin(), g.letters().end(), h.letters().begin());
}

bool prefix_lt(const Word& g, const Word& h) {
    return g.length() < h.length() && prefix_leq(g, h);
}

bool ends_with(const Word& w, const Word& h) {
    if (h.length() > w.length())
        return false;
    return std::equal(h.letters().rbegin(), h.letters().rend(), w.letters().rbegin());
}

int gromov_twice(const Word& g, const Word& g2) {
    return static_cast<int>(2 * interface_cancellation(g, g2));
}

double gromov_product(const Word& g, const Word& g2) {
    return 0.5 * gromov_twice(g, g2);
}

std::size_t ball_count(int num_gens, int radius, std::size_t cap) {
    std::size_t total = 1;
    std::size_t shell = 1;
    const std::size_t n2 = 2 * static_cast<std::size_t>(num_gens);
    for (int k = 1; k <= radius; ++k) {
        shell = (k == 1) ? n2 : shell * (n2 - 1);
        if (shell > cap || total > cap - shell)
            return cap + 1;
        total += shell;
    }
    return total;
}

std::vector<Word> enumerate_ball(int num_gens, int radius, std::size_t cap) {
    if (num_gens < 1)
        throw std::invalid_argument("enumerate_ball: num_gens must be >= 1");
    if (radius < 0)
        throw std::invalid_argument("enumerate_ball: radius must be >= 0");
    if (ball_count(num_gens, radius, cap) > cap)
        throw ResourceError("enumerate_ball: ball of " +
                            std::to_string(num_gens) + " generators, radius " +
                            std::to_string(radius) + " exceeds cap " +
                            std::to_string(cap));

    // Letters in canonical order 1 < -1 < 2 < -2 < ...
    std::vector<std::int32_t> alphabet;
    alphabet.reserve(2 * static_cast<std::size_t>(num_gens));
    for (int i = 1; i <= num_gens; ++i) {
        alphabet.push_back(i);
        alphabet.push_back(-i);
    }

    std::vector<Word> ball;
    ball.emplace_back();
    std::size_t layer_begin = 0;
    for (int len = 1; len <= radius; ++len) {
        const std::size_t layer_end = ball.size();
        for (std::size_t j = layer_begin; j < layer_end; ++j) {
            for (std::int32_t l : alphabet) {
                if (!ball[j].is_unit() && ball[j].last_letter() == -l)
                    continue;
                auto letters = ball[j].letters();
                letters.push_back(l);
                ball.push_back(Word::from_reduced(std::move(letters)));
            }
        }
        layer_begin = layer_end;
    }
    return ball;
}

} // namespace fht
