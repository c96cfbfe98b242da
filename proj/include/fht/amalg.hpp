#pragma once

#include <map>
#include <string>
#include <vector>

#include "fht/element.hpp"

namespace fht {

// --- finite-dimensional tracial factors ------------------------------------

// One factor algebra, given entirely by its structure tables over a
// trace-orthonormal centered basis {b_1, ..., b_D} (b_0 = 1 is implicit):
//   b_i b_j = unit_part[i][j] 1 + sum_m prod_part[i][j][m] b_m
//   b_i^*   = sum_m star_part[i][m] b_m.
template <class Scalar>
struct FactorAlgebra {
    std::string label;
    int centered_dim = 0;
    std::vector<std::vector<Scalar>> unit_part;
    std::vector<std::vector<std::vector<Scalar>>> prod_part;
    std::vector<std::vector<Scalar>> star_part;
};

namespace detail {
template <class Scalar>
bool scalar_close(const Scalar& a, const Scalar& b) {
    if constexpr (std::is_same_v<Scalar, RatComplex>)
        return a == b;
    else
        return std::abs(a - b) <= 1e-12;
}
} // namespace detail

// The group algebra of Z_n under its characters: chi_a chi_b = chi_{a+b mod n},
// chi_a^* = chi_{n-a}. Structure constants are 0/1, hence exact in any scalar
// field; this covers C^n with uniform point weights for every n.
template <class Scalar>
FactorAlgebra<Scalar> factor_cyclic(int n) {
    if (n < 2)
        throw std::invalid_argument("factor_cyclic: n must be >= 2");
    const int d = n - 1;
    FactorAlgebra<Scalar> f;
    f.label = "cyclic(" + std::to_string(n) + ")";
    f.centered_dim = d;
    f.unit_part.assign(d, std::vector<Scalar>(d, Scalar(0)));
    f.prod_part.assign(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(0))));
    f.star_part.assign(d, std::vector<Scalar>(d, Scalar(0)));
    for (int a = 1; a < n; ++a) {
        for (int b = 1; b < n; ++b) {
            const int c = (a + b) % n;
            if (c == 0)
                f.unit_part[a - 1][b - 1] = Scalar(1);
            else
                f.prod_part[a - 1][b - 1][c - 1] = Scalar(1);
        }
        f.star_part[a - 1][n - a - 1] = Scalar(1);
    }
    return f;
}

namespace detail {
template <class Scalar>
Scalar root_of_unity_power(int n, long k) {
    k %= n;
    if (k < 0)
        k += n;
    if constexpr (std::is_same_v<Scalar, RatComplex>) {
        // Exactly representable only when omega itself is a Gaussian rational.
        RatComplex omega;
        switch (n) {
        case 1: omega = RatComplex(1); break;
        case 2: omega = RatComplex(-1); break;
        case 4: omega = RatComplex::i(); break;
        default:
            throw std::invalid_argument(
                "factor_matrix: exact scalars need n in {1, 2, 4}; use float scalars");
        }
        RatComplex acc(1);
        for (long j = 0; j < k; ++j)
            acc = acc * omega;
        return acc;
    } else {
        return std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / n);
    }
}
} // namespace detail

// M_n with normalized trace via the clock-and-shift unitaries U^a V^b,
// (a, b) != (0, 0); products pick up the phase omega^{-bc}. Exact over the
// rationals for n in {1, 2, 4} (omega is a Gaussian rational there).
template <class Scalar>
FactorAlgebra<Scalar> factor_matrix(int n) {
    if (n < 2)
        throw std::invalid_argument("factor_matrix: n must be >= 2");
    const int d = n * n - 1;
    auto id = [n](int a, int b) { return a * n + b - 1; }; // (0,0) skipped
    FactorAlgebra<Scalar> f;
    f.label = "matrix(" + std::to_string(n) + ")";
    f.centered_dim = d;
    f.unit_part.assign(d, std::vector<Scalar>(d, Scalar(0)));
    f.prod_part.assign(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(0))));
    f.star_part.assign(d, std::vector<Scalar>(d, Scalar(0)));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == 0 && b == 0)
                continue;
            for (int c = 0; c < n; ++c) {
                for (int e = 0; e < n; ++e) {
                    if (c == 0 && e == 0)
                        continue;
                    const Scalar phase = detail::root_of_unity_power<Scalar>(n, -b * c);
                    const int r = (a + c) % n, s = (b + e) % n;
                    if (r == 0 && s == 0)
                        f.unit_part[id(a, b)][id(c, e)] = phase;
                    else
                        f.prod_part[id(a, b)][id(c, e)][id(r, s)] = phase;
                }
            }
            const int ra = (n - a) % n, rb = (n - b) % n;
            f.star_part[id(a, b)][id(ra, rb)] = detail::root_of_unity_power<Scalar>(n, -a * b);
        }
    }
    return f;
}

// C^n with point masses (w_1, ..., w_n): Gram-Schmidt of the indicator
// functions against <f, g> = sum w_j conj(f_j) g_j. Exact scalars require
// every normalization to be a perfect rational square.
FactorAlgebra<RatComplex> factor_points(const std::vector<mpq_class>& weights);
FactorAlgebra<std::complex<double>> factor_points(const std::vector<double>& weights);

// --- the amalgamated free product over B = C 1 ------------------------------

template <class Scalar>
class AlgebraSpec {
public:
    explicit AlgebraSpec(std::vector<FactorAlgebra<Scalar>> factors)
        : factors_(std::move(factors)) {
        for (int k = 0; k < num_factors(); ++k)
            validate_factor(k);
    }

    int num_factors() const { return static_cast<int>(factors_.size()); }
    const FactorAlgebra<Scalar>& factor(int k) const { return factors_.at(k); }

private:
    void validate_factor(int k) const;
    std::vector<FactorAlgebra<Scalar>> factors_;
};

struct TensorSlot {
    int factor = 0; // 1-based
    int basis = 0;  // 0-based centered index
    friend bool operator==(const TensorSlot&, const TensorSlot&) = default;
    friend auto operator<=>(const TensorSlot&, const TensorSlot&) = default;
};

using TensorWord = std::vector<TensorSlot>;

// i (index word of a) is a proper prefix of j (index word of b); the relation
// only involves the factor components.
inline bool factors_prefix_lt(const TensorWord& a, const TensorWord& b) {
    if (a.size() >= b.size())
        return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j].factor != b[j].factor)
            return false;
    return true;
}

// i is a proper right-tail of j at the factor level.
inline bool factors_suffix_lt(const TensorWord& a, const TensorWord& b) {
    if (a.size() >= b.size())
        return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[a.size() - 1 - j].factor != b[b.size() - 1 - j].factor)
            return false;
    return true;
}

// Basis-expanded vector over reduced tensor words: a scalar part (coefficient
// of 1) plus coefficients on words with adjacent factors distinct.
template <class Scalar>
class AmalgElement {
public:
    using Terms = std::map<TensorWord, Scalar>;

    AmalgElement() : scalar_(0) {}

    static AmalgElement zero() { return AmalgElement(); }

    static AmalgElement unit(Scalar c = Scalar(1)) {
        AmalgElement x;
        x.scalar_ = std::move(c);
        return x;
    }

    static AmalgElement monomial(TensorWord w, Scalar c) {
        AmalgElement x;
        x.add_word(std::move(w), std::move(c));
        return x;
    }

    const Scalar& scalar_part() const { return scalar_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return coeff_is_zero(scalar_) && terms_.empty(); }
    std::size_t support_size() const { return terms_.size() + (coeff_is_zero(scalar_) ? 0 : 1); }

    std::size_t max_word_length() const {
        std::size_t m = 0;
        for (const auto& [w, c] : terms_)
            m = std::max(m, w.size());
        return m;
    }

    void add_scalar(const Scalar& c) {
        scalar_ = scalar_ + c;
        if (coeff_is_zero(scalar_))
            scalar_ = Scalar(0);
    }

    void add_word(const TensorWord& w, const Scalar& c) {
        if (w.empty()) {
            add_scalar(c);
            return;
        }
        for (std::size_t j = 0; j + 1 < w.size(); ++j)
            if (w[j].factor == w[j + 1].factor)
                throw std::invalid_argument("amalg: adjacent slots in one factor");
        for (const auto& slot : w)
            if (slot.factor < 1 || slot.basis < 0)
                throw std::invalid_argument("amalg: malformed tensor slot");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!coeff_is_zero(c))
                terms_.emplace(w, c);
            return;
        }
        it->second = it->second + c;
        if (coeff_is_zero(it->second))
            terms_.erase(it);
    }

    bool operator==(const AmalgElement& other) const {
        return scalar_ == other.scalar_ && terms_ == other.terms_;
    }
    bool operator!=(const AmalgElement& other) const { return !(*this == other); }

private:
    Scalar scalar_;
    Terms terms_;
};

using AmalgQ = AmalgElement<RatComplex>;
using AmalgC = AmalgElement<std::complex<double>>;

template <class Scalar>
AmalgElement<Scalar> amalg_scale(const Scalar& s, const AmalgElement<Scalar>& x) {
    AmalgElement<Scalar> out;
    out.add_scalar(s * x.scalar_part());
    for (const auto& [w, c] : x.terms())
        out.add_word(w, s * c);
    return out;
}

template <class Scalar>
AmalgElement<Scalar> operator+(const AmalgElement<Scalar>& x, const AmalgElement<Scalar>& y) {
    AmalgElement<Scalar> out = x;
    out.add_scalar(y.scalar_part());
    for (const auto& [w, c] : y.terms())
        out.add_word(w, c);
    return out;
}

template <class Scalar>
AmalgElement<Scalar> operator-(const AmalgElement<Scalar>& x, const AmalgElement<Scalar>& y) {
    return x + amalg_scale(Scalar(-1), y);
}

// E(x) 1: the conditional expectation onto the scalars.
template <class Scalar>
AmalgElement<Scalar> amalg_expect(const AmalgElement<Scalar>& x) {
    return AmalgElement<Scalar>::unit(x.scalar_part());
}

// x - E(x): the centering.
template <class Scalar>
AmalgElement<Scalar> amalg_center(const AmalgElement<Scalar>& x) {
    return x - amalg_expect(x);
}

// tau(x).
template <class Scalar>
Scalar amalg_trace(const AmalgElement<Scalar>& x) {
    return x.scalar_part();
}

// Largest coefficient in absolute value (residual reporting).
template <class Scalar>
double amalg_max_abs(const AmalgElement<Scalar>& x) {
    double m = coeff_abs_max(x.scalar_part());
    for (const auto& [w, c] : x.terms())
        m = std::max(m, coeff_abs_max(c));
    return m;
}

// <x, y> = tau(x^* y); the tensor-word basis is tau-orthonormal.
template <class Scalar>
Scalar amalg_inner(const AmalgElement<Scalar>& x, const AmalgElement<Scalar>& y) {
    Scalar acc = star(x.scalar_part()) * y.scalar_part();
    for (const auto& [w, c] : x.terms()) {
        auto it = y.terms().find(w);
        if (it != y.terms().end())
            acc = acc + star(c) * it->second;
    }
    return acc;
}

namespace detail {

template <class Scalar>
void check_words_in_spec(const AmalgElement<Scalar>& x, const AlgebraSpec<Scalar>& spec) {
    for (const auto& [w, c] : x.terms())
        for (const auto& slot : w)
            if (slot.factor > spec.num_factors() ||
                slot.basis >= spec.factor(slot.factor - 1).centered_dim)
                throw std::invalid_argument("amalg: word/spec mismatch");
}

template <class Scalar>
void accumulate_word_product(const AlgebraSpec<Scalar>& spec, const TensorWord& a,
                             const TensorWord& b, const Scalar& coeff,
                             AmalgElement<Scalar>& out, std::size_t cap) {
    if (coeff_is_zero(coeff))
        return;
    if (a.empty() || b.empty() || a.back().factor != b.front().factor) {
        TensorWord w = a;
        w.insert(w.end(), b.begin(), b.end());
        out.add_word(w, coeff);
        if (out.support_size() > cap)
            throw ResourceError("amalg_mul: support growth exceeds cap");
        return;
    }
    // Boundary slots collide: expand b_i b_j, the scalar part glues the
    // neighbours (recursing), the centered parts just sit in between.
    const int k = a.back().factor;
    const int i = a.back().basis, j = b.front().basis;
    const auto& f = spec.factor(k - 1);
    TensorWord left(a.begin(), a.end() - 1);
    TensorWord right(b.begin() + 1, b.end());
    if (!coeff_is_zero(f.unit_part[i][j]))
        accumulate_word_product(spec, left, right, static_cast<Scalar>(coeff * f.unit_part[i][j]),
                                out, cap);
    for (int m = 0; m < f.centered_dim; ++m) {
        if (coeff_is_zero(f.prod_part[i][j][m]))
            continue;
        TensorWord w = left;
        w.push_back({k, m});
        w.insert(w.end(), right.begin(), right.end());
        out.add_word(w, coeff * f.prod_part[i][j][m]);
        if (out.support_size() > cap)
            throw ResourceError("amalg_mul: support growth exceeds cap");
    }
}

} // namespace detail

template <class Scalar>
AmalgElement<Scalar> amalg_mul(const AmalgElement<Scalar>& x, const AmalgElement<Scalar>& y,
                               const AlgebraSpec<Scalar>& spec,
                               std::size_t cap = kDefaultSupportCap) {
    detail::check_words_in_spec(x, spec);
    detail::check_words_in_spec(y, spec);
    AmalgElement<Scalar> out;
    out.add_scalar(x.scalar_part() * y.scalar_part());
    for (const auto& [w, c] : y.terms())
        out.add_word(w, x.scalar_part() * c);
    for (const auto& [w, c] : x.terms())
        out.add_word(w, c * y.scalar_part());
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms())
            detail::accumulate_word_product(spec, wx, wy, static_cast<Scalar>(cx * cy), out, cap);
    return out;
}

template <class Scalar>
AmalgElement<Scalar> amalg_adjoint(const AmalgElement<Scalar>& x,
                                   const AlgebraSpec<Scalar>& spec) {
    detail::check_words_in_spec(x, spec);
    AmalgElement<Scalar> out;
    out.add_scalar(star(x.scalar_part()));
    for (const auto& [w, c] : x.terms()) {
        // (b_{i_1} (x) ... (x) b_{i_n})^* reverses the slots and expands each
        // starred basis element over the centered basis of its factor.
        std::vector<std::pair<TensorWord, Scalar>> partial;
        partial.emplace_back(TensorWord{}, star(c));
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            const auto& f = spec.factor(it->factor - 1);
            std::vector<std::pair<TensorWord, Scalar>> next;
            for (const auto& [pw, pc] : partial) {
                for (int m = 0; m < f.centered_dim; ++m) {
                    if (coeff_is_zero(f.star_part[it->basis][m]))
                        continue;
                    TensorWord nw = pw;
                    nw.push_back({it->factor, m});
                    next.emplace_back(std::move(nw), pc * f.star_part[it->basis][m]);
                }
            }
            partial = std::move(next);
        }
        for (auto& [pw, pc] : partial)
            out.add_word(pw, pc);
    }
    return out;
}

enum class AmalgProj { E, L, R };

// E keeps the scalar part; L(k) keeps words starting in factor k; R(k) words
// ending in factor k.
template <class Scalar>
AmalgElement<Scalar> amalg_project(AmalgProj kind, int k, const AmalgElement<Scalar>& x) {
    if (kind == AmalgProj::E)
        return amalg_expect(x);
    if (k < 1)
        throw std::invalid_argument("amalg_project: factor index must be >= 1");
    AmalgElement<Scalar> out;
    for (const auto& [w, c] : x.terms()) {
        const int boundary = kind == AmalgProj::L ? w.front().factor : w.back().factor;
        if (boundary == k)
            out.add_word(w, c);
    }
    return out;
}

// Scalar epsilon pattern on factor indices; unspecified entries default to 1.
template <class Scalar>
class AmalgSymbol {
public:
    explicit AmalgSymbol(Scalar eps0 = Scalar(1)) : eps0_(std::move(eps0)) {
        require_in_disc(eps0_);
    }

    void set(int k, Scalar v) {
        if (k < 1)
            throw std::invalid_argument("amalg symbol: factor index must be >= 1");
        require_in_disc(v);
        entries_[k] = std::move(v);
    }

    Scalar eps0() const { return eps0_; }
    Scalar at(int k) const {
        auto it = entries_.find(k);
        return it == entries_.end() ? Scalar(1) : it->second;
    }

    AmalgSymbol conjugated() const {
        AmalgSymbol out(star(eps0_));
        for (const auto& [k, v] : entries_)
            out.entries_[k] = star(v);
        return out;
    }

    const std::map<int, Scalar>& entries() const { return entries_; }

private:
    static void require_in_disc(const Scalar& v) {
        if (!scalar_in_unit_disc(v))
            throw std::invalid_argument("amalg symbol: |eps| must be <= 1");
    }

    Scalar eps0_;
    std::map<int, Scalar> entries_;
};

enum class AmalgSide { left, right };

// left:  H_eps(x)      = eps_0 E(x) + sum_k eps_k L_k(x);
// right: H_eps^{op}(x) = E(x) eps_0^* + sum_k R_k(x) eps_k^*.
template <class Scalar>
AmalgElement<Scalar> amalg_hilbert(const AmalgElement<Scalar>& x, const AmalgSymbol<Scalar>& eps,
                                   AmalgSide side) {
    AmalgElement<Scalar> out;
    if (side == AmalgSide::left)
        out.add_scalar(eps.eps0() * x.scalar_part());
    else
        out.add_scalar(x.scalar_part() * star(eps.eps0()));
    for (const auto& [w, c] : x.terms()) {
        if (side == AmalgSide::left)
            out.add_word(w, eps.at(w.front().factor) * c);
        else
            out.add_word(w, c * star(eps.at(w.back().factor)));
    }
    return out;
}

// tau((x^* x)^m), exact over exact scalars.
template <class Scalar>
Scalar amalg_moment_even(const AmalgElement<Scalar>& x, int m, const AlgebraSpec<Scalar>& spec,
                         std::size_t cap = kDefaultSupportCap) {
    if (m < 1)
        throw std::invalid_argument("amalg_moment_even: m must be >= 1");
    const AmalgElement<Scalar> y = amalg_mul(amalg_adjoint(x, spec), x, spec, cap);
    const int half = m / 2;
    AmalgElement<Scalar> low = AmalgElement<Scalar>::unit();
    for (int j = 0; j < half; ++j)
        low = amalg_mul(low, y, spec, cap);
    const AmalgElement<Scalar> high = (m % 2 == 0) ? low : amalg_mul(low, y, spec, cap);
    // y is self-adjoint, so tau(high low) = <high, low>.
    return amalg_inner(high, low);
}

enum class AmalgPara { sharp, dagger };

// x sharp y = sum_k L_k((L_k x) y); x dagger y = xy - x sharp y - E(xy).
template <class Scalar>
AmalgElement<Scalar> amalg_paraproduct(const AmalgElement<Scalar>& x,
                                       const AmalgElement<Scalar>& y, AmalgPara flag,
                                       const AlgebraSpec<Scalar>& spec,
                                       std::size_t cap = kDefaultSupportCap) {
    AmalgElement<Scalar> sharp;
    for (int k = 1; k <= spec.num_factors(); ++k) {
        const AmalgElement<Scalar> lkx = amalg_project(AmalgProj::L, k, x);
        if (lkx.is_zero())
            continue;
        sharp = sharp + amalg_project(AmalgProj::L, k, amalg_mul(lkx, y, spec, cap));
    }
    if (flag == AmalgPara::sharp)
        return sharp;
    const AmalgElement<Scalar> xy = amalg_mul(x, y, spec, cap);
    return xy - sharp - amalg_expect(xy);
}

// The dagger as its own block sum: sum over k of the off-diagonal first-letter
// blocks of (L_k x) y, with L_0 = E.
template <class Scalar>
AmalgElement<Scalar> amalg_dagger_direct(const AmalgElement<Scalar>& x,
                                         const AmalgElement<Scalar>& y,
                                         const AlgebraSpec<Scalar>& spec,
                                         std::size_t cap = kDefaultSupportCap) {
    AmalgElement<Scalar> out;
    for (int k = 0; k <= spec.num_factors(); ++k) {
        const AmalgElement<Scalar> lkx =
            k == 0 ? amalg_expect(x) : amalg_project(AmalgProj::L, k, x);
        if (lkx.is_zero())
            continue;
        const AmalgElement<Scalar> prod = amalg_mul(lkx, y, spec, cap);
        for (int j = 1; j <= spec.num_factors(); ++j)
            if (j != k)
                out = out + amalg_project(AmalgProj::L, j, prod);
    }
    return out;
}

// --- random generation -------------------------------------------------------

struct AmalgProfile {
    int max_len = 3;
    int max_terms = 4;
    CoeffLaw law = CoeffLaw::circle;
};

template <class Scalar>
AmalgElement<Scalar> amalg_random(const AmalgProfile& profile, std::uint64_t seed,
                                  const AlgebraSpec<Scalar>& spec) {
    if (profile.max_len < 0 || profile.max_terms < 1)
        throw std::invalid_argument("amalg_random: profile bounds must be positive");
    SplitMix64 rng(seed);
    AmalgElement<Scalar> out;
    using Ring = std::conditional_t<std::is_same_v<Scalar, RatComplex>, RationalRing, FloatRing>;
    for (int t = 0; t < profile.max_terms; ++t) {
        const int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(profile.max_len) + 1));
        TensorWord w;
        int prev = 0;
        for (int j = 0; j < len; ++j) {
            int factor;
            do {
                factor = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_factors()))) + 1;
            } while (factor == prev && spec.num_factors() > 1);
            if (factor == prev)
                break; // single-factor spec cannot extend the word
            const int dim = spec.factor(factor - 1).centered_dim;
            w.push_back({factor, static_cast<int>(rng.below(static_cast<std::uint64_t>(dim)))});
            prev = factor;
        }
        const Scalar c = detail::random_scalar<Ring>(rng, profile.law);
        if (w.empty())
            out.add_scalar(c);
        else
            out.add_word(w, c);
    }
    return out;
}

// --- validation ---------------------------------------------------------------

template <class Scalar>
void AlgebraSpec<Scalar>::validate_factor(int k) const {
    const auto& f = factors_[static_cast<std::size_t>(k)];
    const int d = f.centered_dim;
    if (d < 1)
        throw std::invalid_argument("algebra spec: factor with empty centered basis");
    if (f.unit_part.size() != static_cast<std::size_t>(d) ||
        f.prod_part.size() != static_cast<std::size_t>(d) ||
        f.star_part.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("algebra spec: table sizes do not match centered_dim");

    // Build single-factor products from the tables.
    auto mul = [&](const std::vector<Scalar>& a, const Scalar& a0,
                   const std::vector<Scalar>& b, const Scalar& b0) {
        // (a0 1 + sum a_i b_i)(b0 1 + sum b_j b_j)
        std::pair<Scalar, std::vector<Scalar>> out{a0 * b0, std::vector<Scalar>(d, Scalar(0))};
        for (int i = 0; i < d; ++i)
            out.second[i] = out.second[i] + a0 * b[i] + a[i] * b0;
        for (int i = 0; i < d; ++i) {
            if (coeff_is_zero(a[i]))
                continue;
            for (int j = 0; j < d; ++j) {
                if (coeff_is_zero(b[j]))
                    continue;
                const Scalar c = a[i] * b[j];
                out.first = out.first + c * f.unit_part[i][j];
                for (int m = 0; m < d; ++m)
                    out.second[m] = out.second[m] + c * f.prod_part[i][j][m];
            }
        }
        return out;
    };
    auto basis_vec = [&](int i) {
        std::vector<Scalar> v(d, Scalar(0));
        v[i] = Scalar(1);
        return v;
    };

    // tau(b_i^* b_j) = delta_ij (trace-orthonormality of the centered basis).
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Scalar t(0);
            for (int m = 0; m < d; ++m)
                t = t + f.star_part[i][m] * f.unit_part[m][j];
            if (!detail::scalar_close(t, Scalar(i == j ? 1 : 0)))
                throw std::invalid_argument("algebra spec: centered basis is not orthonormal");
        }
    }

    // Associativity (b_i b_j) b_k = b_i (b_j b_k) on all triples.
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const auto ij = mul(basis_vec(i), Scalar(0), basis_vec(j), Scalar(0));
            for (int l = 0; l < d; ++l) {
                const auto left = mul(ij.second, ij.first, basis_vec(l), Scalar(0));
                const auto jl = mul(basis_vec(j), Scalar(0), basis_vec(l), Scalar(0));
                const auto right = mul(basis_vec(i), Scalar(0), jl.second, jl.first);
                if (!detail::scalar_close(left.first, right.first))
                    throw std::invalid_argument("algebra spec: product table not associative");
                for (int m = 0; m < d; ++m)
                    if (!detail::scalar_close(left.second[m], right.second[m]))
                        throw std::invalid_argument("algebra spec: product table not associative");
            }
        }
    }

    // The star tables form an involution.
    for (int i = 0; i < d; ++i) {
        std::vector<Scalar> twice(d, Scalar(0));
        for (int m = 0; m < d; ++m)
            for (int l = 0; l < d; ++l)
                twice[l] = twice[l] + star(f.star_part[i][m]) * f.star_part[m][l];
        for (int l = 0; l < d; ++l)
            if (!detail::scalar_close(twice[l], Scalar(l == i ? 1 : 0)))
                throw std::invalid_argument("algebra spec: star table is not an involution");
    }
}

} // namespace fht
