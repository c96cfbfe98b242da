#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fht/errors.hpp"
#include "fht/random.hpp"
#include "fht/rings.hpp"
#include "fht/words.hpp"

namespace fht {

// Cap on stored words during products (free convolutions grow fast).
inline constexpr std::size_t kDefaultSupportCap = 1000000;

// A finitely supported group-algebra element x = sum_g c_g lambda_g with
// coefficients in one ring. No zero coefficients are stored; iteration order
// is the canonical word order, so all derived output is deterministic.
template <class Ring>
class Element {
public:
    using Coeff = typename Ring::Coeff;
    using Scalar = typename Ring::Scalar;
    using Terms = std::map<Word, Coeff, WordOrder>;

    Element() : dim_(1) {}
    explicit Element(int dim) : dim_(dim) {
        if (dim < 1)
            throw std::invalid_argument("element: dim must be >= 1");
        if (!std::is_same_v<Ring, MatrixRing> && dim != 1)
            throw std::invalid_argument("element: dim > 1 requires the matrix ring");
    }

    static Element zero(int dim = 1) { return Element(dim); }

    static Element unit(int dim = 1) {
        Element x(dim);
        x.add_term(Word(), coeff_one<Ring>(dim));
        return x;
    }

    static Element monomial(const Word& w, Coeff c) {
        int dim = 1;
        if constexpr (std::is_same_v<Ring, MatrixRing>) {
            if (c.rows() != c.cols() || c.rows() < 1)
                throw std::invalid_argument("element: matrix coefficient must be square");
            dim = static_cast<int>(c.rows());
        }
        Element x(dim);
        x.add_term(w, std::move(c));
        return x;
    }

    int dim() const { return dim_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }

    std::size_t max_support_length() const {
        // Sorted by length, so the largest word is last.
        return terms_.empty() ? 0 : terms_.rbegin()->first.length();
    }

    std::int32_t max_generator() const {
        std::int32_t m = 0;
        for (const auto& [w, c] : terms_)
            m = std::max(m, w.max_generator());
        return m;
    }

    void add_term(const Word& w, const Coeff& c) {
        check_coeff_dim(c);
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

    // Zero of the ring if the word is absent.
    Coeff coeff_at(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? coeff_zero<Ring>(dim_) : it->second;
    }

    const Coeff* find(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? nullptr : &it->second;
    }

    bool operator==(const Element& other) const {
        return dim_ == other.dim_ && terms_ == other.terms_;
    }
    bool operator!=(const Element& other) const { return !(*this == other); }

private:
    void check_coeff_dim(const Coeff& c) const {
        if constexpr (std::is_same_v<Ring, MatrixRing>) {
            if (c.rows() != dim_ || c.cols() != dim_)
                throw std::invalid_argument("element: matrix coefficient dimension mismatch");
        } else {
            (void)c;
        }
    }

    int dim_;
    Terms terms_;
};

using ElementQ = Element<RationalRing>;
using ElementC = Element<FloatRing>;
using ElementM = Element<MatrixRing>;

namespace detail {
template <class Ring>
void require_same_ring(const Element<Ring>& x, const Element<Ring>& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("elements have different coefficient dimensions");
}
} // namespace detail

// Coefficient-wise combination sum_i s_i x_i; zeros pruned.
template <class Ring>
Element<Ring> linear_combine(
    const std::vector<std::pair<typename Ring::Scalar, Element<Ring>>>& terms) {
    if (terms.empty())
        return Element<Ring>();
    Element<Ring> out(terms.front().second.dim());
    for (const auto& [s, x] : terms) {
        detail::require_same_ring(out, x);
        for (const auto& [w, c] : x.terms())
            out.add_term(w, coeff_scale(s, c));
    }
    return out;
}

template <class Ring>
Element<Ring> scale(const typename Ring::Scalar& s, const Element<Ring>& x) {
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms())
        out.add_term(w, coeff_scale(s, c));
    return out;
}

template <class Ring>
Element<Ring> add(const Element<Ring>& x, const Element<Ring>& y) {
    detail::require_same_ring(x, y);
    Element<Ring> out = x;
    for (const auto& [w, c] : y.terms())
        out.add_term(w, c);
    return out;
}

template <class Ring>
Element<Ring> sub(const Element<Ring>& x, const Element<Ring>& y) {
    detail::require_same_ring(x, y);
    Element<Ring> out = x;
    for (const auto& [w, c] : y.terms())
        out.add_term(w, coeff_scale(typename Ring::Scalar(-1), c));
    return out;
}

template <class Ring>
Element<Ring> operator+(const Element<Ring>& x, const Element<Ring>& y) { return add(x, y); }
template <class Ring>
Element<Ring> operator-(const Element<Ring>& x, const Element<Ring>& y) { return sub(x, y); }

// Convolution product realizing lambda_g lambda_h = lambda_{gh}.
template <class Ring>
Element<Ring> multiply(const Element<Ring>& x, const Element<Ring>& y,
                       std::size_t cap = kDefaultSupportCap) {
    detail::require_same_ring(x, y);
    Element<Ring> out(x.dim());
    for (const auto& [g, cg] : x.terms()) {
        for (const auto& [h, ch] : y.terms()) {
            out.add_term(reduce_concat(g, h), cg * ch);
            if (out.support_size() > cap)
                throw ResourceError("multiply: support growth exceeds cap");
        }
    }
    return out;
}

// (sum c_g lambda_g)^* = sum c_g^* lambda_{g^{-1}}.
template <class Ring>
Element<Ring> adjoint(const Element<Ring>& x) {
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms())
        out.add_term(invert(w), star(c));
    return out;
}

// tau(x): the coefficient at the unit word.
template <class Ring>
typename Ring::Coeff trace(const Element<Ring>& x) {
    return x.coeff_at(Word());
}

// Full scalar trace tau (x) combined with the normalized matrix trace.
template <class Ring>
typename Ring::Scalar scalar_trace(const Element<Ring>& x) {
    return normalized_trace(trace(x));
}

// tau(x^* y) without forming the product.
template <class Ring>
typename Ring::Scalar l2_inner(const Element<Ring>& x, const Element<Ring>& y) {
    detail::require_same_ring(x, y);
    typename Ring::Scalar acc{0};
    for (const auto& [w, c] : x.terms()) {
        if (const auto* d = y.find(w))
            acc = acc + normalized_trace(static_cast<typename Ring::Coeff>(star(c) * (*d)));
    }
    return acc;
}

// tau(x^* x) as an exact/real quantity.
template <class Ring>
typename Ring::Real l2_norm_sq(const Element<Ring>& x) {
    auto v = l2_inner(x, x);
    if constexpr (Ring::kExact)
        return v.re;
    else
        return v.real();
}

template <class Ring>
double l2_norm(const Element<Ring>& x) {
    if constexpr (Ring::kExact)
        return std::sqrt(l2_norm_sq(x).get_d());
    else
        return std::sqrt(std::max(0.0, l2_norm_sq(x)));
}

// Largest coefficient entry in absolute value (residual reporting).
template <class Ring>
double max_abs_coeff(const Element<Ring>& x) {
    double m = 0;
    for (const auto& [w, c] : x.terms())
        m = std::max(m, coeff_abs_max(c));
    return m;
}

inline ElementC to_float(const ElementQ& x) {
    ElementC out;
    for (const auto& [w, c] : x.terms())
        out.add_term(w, c.to_complex());
    return out;
}
inline const ElementC& to_float(const ElementC& x) { return x; }

// --- random generation ----------------------------------------------------

enum class CoeffLaw { signs, circle, gaussian, grid };

struct ElementProfile {
    int max_len = 3;
    int max_terms = 4;
    int num_gens = 2;
    CoeffLaw law = CoeffLaw::circle;
};

// Exact rational point on the unit circle via the tangent half-angle map.
inline RatComplex random_rational_circle(SplitMix64& rng) {
    switch (rng.below(8)) {
    case 0: return RatComplex(1);
    case 1: return RatComplex(-1);
    case 2: return RatComplex::i();
    case 3: return -RatComplex::i();
    default: {
        mpq_class t = make_rational(rng.range(-6, 6), rng.range(1, 6));
        mpq_class den = 1 + t * t;
        return RatComplex((1 - t * t) / den, 2 * t / den);
    }
    }
}

// Exact rational point of the closed unit disc (includes non-unimodular values).
inline RatComplex random_rational_disc(SplitMix64& rng) {
    if (rng.below(8) == 0)
        return RatComplex(0);
    RatComplex z = random_rational_circle(rng);
    long den = rng.range(1, 5);
    mpq_class r = make_rational(rng.range(0, den), den);
    return RatComplex(z.re * r, z.im * r);
}

inline RatComplex random_rational_grid(SplitMix64& rng) {
    return RatComplex(make_rational(rng.range(-4, 4), rng.range(1, 4)),
                      make_rational(rng.range(-4, 4), rng.range(1, 4)));
}

inline std::complex<double> random_complex_gaussian(SplitMix64& rng) {
    double u1 = rng.unit(), u2 = rng.unit();
    while (u1 == 0.0)
        u1 = rng.unit();
    double m = std::sqrt(-std::log(u1));
    return {m * std::cos(2 * M_PI * u2), m * std::sin(2 * M_PI * u2)};
}

namespace detail {

template <class Ring>
typename Ring::Scalar random_scalar(SplitMix64& rng, CoeffLaw law) {
    if constexpr (Ring::kExact) {
        switch (law) {
        case CoeffLaw::signs: return RatComplex(rng.below(2) ? 1 : -1);
        case CoeffLaw::circle: return random_rational_circle(rng);
        case CoeffLaw::grid: return random_rational_grid(rng);
        case CoeffLaw::gaussian:
            throw std::invalid_argument("gaussian coefficients require a float ring");
        }
        return RatComplex(0);
    } else {
        switch (law) {
        case CoeffLaw::signs: return std::complex<double>(rng.below(2) ? 1.0 : -1.0, 0.0);
        case CoeffLaw::circle: {
            double a = 2 * M_PI * rng.unit();
            return std::complex<double>(std::cos(a), std::sin(a));
        }
        case CoeffLaw::grid:
            return std::complex<double>(static_cast<double>(rng.range(-4, 4)) / rng.range(1, 4),
                                        static_cast<double>(rng.range(-4, 4)) / rng.range(1, 4));
        case CoeffLaw::gaussian: return random_complex_gaussian(rng);
        }
        return {};
    }
}

} // namespace detail

// Deterministic for a fixed seed; support within the stated ball.
template <class Ring>
Element<Ring> random_element(const ElementProfile& profile, std::uint64_t seed, int dim = 1) {
    if (profile.max_len < 0 || profile.max_terms < 1 || profile.num_gens < 1)
        throw std::invalid_argument("random_element: profile bounds must be positive");
    SplitMix64 rng(seed);
    Element<Ring> out(dim);
    for (int t = 0; t < profile.max_terms; ++t) {
        Word w = random_word(rng, profile.max_len, profile.num_gens);
        if constexpr (std::is_same_v<Ring, MatrixRing>) {
            Eigen::MatrixXcd c(dim, dim);
            for (int r = 0; r < dim; ++r)
                for (int s = 0; s < dim; ++s)
                    c(r, s) = detail::random_scalar<FloatRing>(rng, profile.law);
            out.add_term(w, c);
        } else {
            out.add_term(w, detail::random_scalar<Ring>(rng, profile.law));
        }
    }
    return out;
}

} // namespace fht
