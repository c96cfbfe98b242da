#pragma once

#include <map>

#include "fht/element.hpp"

namespace fht {

enum class SymbolKind { generator, length_block, letter };

// An epsilon-pattern defining a Hilbert-transform multiplier. Entries are
// bounded by 1 in modulus; unspecified entries default to 1 so that the
// low-length part "eps_e P_{d-1}" is absorbed automatically. Templated on the
// scalar type so one float symbol serves both the float and matrix rings.
template <class S>
class Symbol {
public:
    using Scalar = S;

    static Symbol generator_signed(Scalar eps0 = Scalar(1)) {
        return Symbol(SymbolKind::generator, 1, std::move(eps0));
    }
    static Symbol length_block(int d, Scalar eps_e = Scalar(1)) {
        if (d < 1)
            throw std::invalid_argument("symbol: d must be >= 1");
        return Symbol(SymbolKind::length_block, d, std::move(eps_e));
    }
    static Symbol dth_letter(int d, Scalar eps_e = Scalar(1)) {
        if (d < 1)
            throw std::invalid_argument("symbol: d must be >= 1");
        return Symbol(SymbolKind::letter, d, std::move(eps_e));
    }

    SymbolKind kind() const { return kind_; }
    int block_length() const { return d_; }
    Scalar unit() const { return unit_; }

    void set_unit(Scalar v) {
        require_in_disc(v);
        unit_ = std::move(v);
    }

    // Generator-signed entry eps_k, k in Z^* (k < 0 addresses g_{-k}^{-1}).
    void set(int k, Scalar v) {
        if (kind_ != SymbolKind::generator)
            throw std::invalid_argument("symbol: integer keys need a generator-signed symbol");
        if (k == 0)
            throw std::invalid_argument("symbol: key 0 is the unit entry");
        require_in_disc(v);
        gen_entries_[k] = std::move(v);
    }

    // Word-indexed entry (|h| = d for length blocks, |h| = 1 for letters).
    void set(const Word& h, Scalar v) {
        if (kind_ == SymbolKind::generator)
            throw std::invalid_argument("symbol: word keys need a word-indexed symbol");
        const std::size_t want = kind_ == SymbolKind::length_block
                                     ? static_cast<std::size_t>(d_)
                                     : std::size_t{1};
        if (h.length() != want)
            throw std::invalid_argument("symbol: entry word has the wrong length");
        require_in_disc(v);
        word_entries_[h] = std::move(v);
    }

    Scalar at_gen(int k) const {
        auto it = gen_entries_.find(k);
        return it == gen_entries_.end() ? Scalar(1) : it->second;
    }

    Scalar at_word(const Word& h) const {
        auto it = word_entries_.find(h);
        return it == word_entries_.end() ? Scalar(1) : it->second;
    }

    // Asserts |eps| = 1 for every stored entry (defaults are 1 already).
    void declare_unimodular() {
        if (!scalar_unimodular(unit_))
            throw std::invalid_argument("symbol: unit entry is not unimodular");
        for (const auto& [k, v] : gen_entries_)
            if (!scalar_unimodular(v))
                throw std::invalid_argument("symbol: entry is not unimodular");
        for (const auto& [h, v] : word_entries_)
            if (!scalar_unimodular(v))
                throw std::invalid_argument("symbol: entry is not unimodular");
        unimodular_ = true;
    }
    bool unimodular() const { return unimodular_; }

    Symbol conjugated() const {
        Symbol out(kind_, d_, star(unit_));
        for (const auto& [k, v] : gen_entries_)
            out.gen_entries_[k] = star(v);
        for (const auto& [h, v] : word_entries_)
            out.word_entries_[h] = star(v);
        out.unimodular_ = unimodular_;
        return out;
    }

    const std::map<int, Scalar>& gen_entries() const { return gen_entries_; }
    const std::map<Word, Scalar, WordOrder>& word_entries() const { return word_entries_; }

private:
    Symbol(SymbolKind kind, int d, Scalar unit)
        : kind_(kind), d_(d), unit_(std::move(unit)) {
        require_in_disc(unit_);
    }

    static void require_in_disc(const Scalar& v) {
        if (!scalar_in_unit_disc(v))
            throw std::invalid_argument("symbol: |eps| must be <= 1");
    }

    SymbolKind kind_;
    int d_;
    Scalar unit_;
    std::map<int, Scalar> gen_entries_;
    std::map<Word, Scalar, WordOrder> word_entries_;
    bool unimodular_ = false;
};

using SymbolQ = Symbol<RatComplex>;
using SymbolC = Symbol<std::complex<double>>;

// --- projections ----------------------------------------------------------

namespace detail {
template <class Ring, class Keep>
Element<Ring> filter_terms(const Element<Ring>& x, Keep keep) {
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms())
        if (keep(w))
            out.add_term(w, c);
    return out;
}
} // namespace detail

// L_h: keeps words with prefix h. L_e is the identity; the trace projection
// "L_e x = tau(x) lambda_e" is the separate project_trace below.
template <class Ring>
Element<Ring> project_left_prefix(const Word& h, const Element<Ring>& x) {
    return detail::filter_terms(x, [&](const Word& w) { return prefix_leq(h, w); });
}

// R_h: keeps words ending with h.
template <class Ring>
Element<Ring> project_right_suffix(const Word& h, const Element<Ring>& x) {
    return detail::filter_terms(x, [&](const Word& w) { return ends_with(w, h); });
}

// L_g^{(d)}: keeps words whose d-th letter is g; zero on words shorter than d.
template <class Ring>
Element<Ring> project_dth_letter(std::int32_t g, int d, const Element<Ring>& x) {
    if (g == 0)
        throw std::invalid_argument("project_dth_letter: letter must be nonzero");
    if (d < 1)
        throw std::invalid_argument("project_dth_letter: d must be >= 1");
    return detail::filter_terms(x, [&](const Word& w) {
        return w.length() >= static_cast<std::size_t>(d) && w.letter(d - 1) == g;
    });
}

// P_d: keeps words of length <= d.
template <class Ring>
Element<Ring> project_length_le(int d, const Element<Ring>& x) {
    return detail::filter_terms(
        x, [&](const Word& w) { return static_cast<int>(w.length()) <= d; });
}

// P_d^perp.
template <class Ring>
Element<Ring> project_length_gt(int d, const Element<Ring>& x) {
    return detail::filter_terms(
        x, [&](const Word& w) { return static_cast<int>(w.length()) > d; });
}

template <class Ring>
Element<Ring> project_length_eq(int d, const Element<Ring>& x) {
    return detail::filter_terms(
        x, [&](const Word& w) { return static_cast<int>(w.length()) == d; });
}

// E_k: projection onto the von Neumann subalgebra generated by lambda_{g_k},
// i.e. keeps words of the form g_k^m, m in Z (including the unit).
template <class Ring>
Element<Ring> project_subalg_power(int k, const Element<Ring>& x) {
    if (k < 1)
        throw std::invalid_argument("project_subalg_power: k must be >= 1");
    return detail::filter_terms(x, [&](const Word& w) {
        if (w.is_unit())
            return true;
        const std::int32_t l = w.first_letter();
        if (l != k && l != -k)
            return false;
        for (std::size_t j = 1; j < w.length(); ++j)
            if (w.letter(j) != l)
                return false;
        return true;
    });
}

// tau(x) lambda_e.
template <class Ring>
Element<Ring> project_trace(const Element<Ring>& x) {
    Element<Ring> out(x.dim());
    out.add_term(Word(), trace(x));
    return out;
}

// --- Hilbert transforms ---------------------------------------------------

namespace detail {
// All transforms here are Fourier multipliers: coefficient-wise scaling by
// a scalar weight depending on the word only.
template <class Ring, class Weight>
Element<Ring> apply_multiplier(const Element<Ring>& x, Weight weight) {
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms())
        out.add_term(w, coeff_scale(weight(w), c));
    return out;
}
} // namespace detail

// H_eps = eps_0 (Id (x) tau) + sum_{k in Z^*} eps_k L_{g_k}.
template <class Ring>
Element<Ring> hilbert_free(const Element<Ring>& x,
                           const Symbol<typename Ring::Scalar>& sym) {
    if (sym.kind() != SymbolKind::generator)
        throw std::invalid_argument("hilbert_free: symbol must be generator-signed");
    return detail::apply_multiplier(x, [&](const Word& w) {
        return w.is_unit() ? sym.unit() : sym.at_gen(w.first_letter());
    });
}

// The adjoint-side transform: on lambda_w the weight is the conjugate of the
// weight of H_eps at w^{-1} (first letter of w^{-1} = negated last letter).
template <class Ring>
Element<Ring> hilbert_free_op(const Element<Ring>& x,
                              const Symbol<typename Ring::Scalar>& sym) {
    if (sym.kind() != SymbolKind::generator)
        throw std::invalid_argument("hilbert_free_op: symbol must be generator-signed");
    return detail::apply_multiplier(x, [&](const Word& w) {
        return w.is_unit() ? star(sym.unit()) : star(sym.at_gen(-w.last_letter()));
    });
}

enum class BlockVariant { Ld, Rd, letter_d };

// H_eps^{Ld} = eps_e P_{d-1} + sum_{|h|=d} eps_h L_h,
// H_eps^{Rd} = eps_e P_{d-1} + sum_{|h|=d} eps_{h^{-1}} R_h,
// H_eps^{(d)} = eps_e P_{d-1} + sum_{|g|=1} eps_g L_g^{(d)}.
template <class Ring>
Element<Ring> hilbert_block(const Element<Ring>& x,
                            const Symbol<typename Ring::Scalar>& sym,
                            BlockVariant variant, int d) {
    if (d < 1)
        throw std::invalid_argument("hilbert_block: d must be >= 1");
    const bool needs_letter = variant == BlockVariant::letter_d;
    if (needs_letter && sym.kind() != SymbolKind::letter)
        throw std::invalid_argument("hilbert_block: letter_d needs a letter symbol");
    if (!needs_letter && sym.kind() != SymbolKind::length_block)
        throw std::invalid_argument("hilbert_block: Ld/Rd need a length-block symbol");
    if (sym.block_length() != d)
        throw std::invalid_argument("hilbert_block: symbol block length mismatch");

    const auto ud = static_cast<std::size_t>(d);
    return detail::apply_multiplier(x, [&](const Word& w) {
        if (w.length() < ud)
            return sym.unit();
        switch (variant) {
        case BlockVariant::Ld:
            return sym.at_word(w.head(ud));
        case BlockVariant::Rd:
            return sym.at_word(invert(w.tail_from(w.length() - ud)));
        case BlockVariant::letter_d:
            return sym.at_word(Word::generator(w.letter(ud - 1)));
        }
        return sym.unit();
    });
}

// --- paraproducts ---------------------------------------------------------

enum class ParaFlag { sharp, dagger };

// x sharp y  = sum over pairs with g^{-1} not <= h of c_g d_h lambda_{gh};
// x dagger y = sum over pairs with g^{-1} <  h. The pairs with g^{-1} = h
// contribute tau(xy) lambda_e, so sharp + dagger + tau(xy) lambda_e = xy.
template <class Ring>
Element<Ring> paraproduct(const Element<Ring>& x, const Element<Ring>& y, ParaFlag flag,
                          std::size_t cap = kDefaultSupportCap) {
    detail::require_same_ring(x, y);
    Element<Ring> out(x.dim());
    for (const auto& [g, cg] : x.terms()) {
        const Word gi = invert(g);
        for (const auto& [h, dh] : y.terms()) {
            const bool keep = flag == ParaFlag::sharp ? !prefix_leq(gi, h) : prefix_lt(gi, h);
            if (!keep)
                continue;
            out.add_term(reduce_concat(g, h), cg * dh);
            if (out.support_size() > cap)
                throw ResourceError("paraproduct: support growth exceeds cap");
        }
    }
    return out;
}

// --- Carre du champ and the number operator --------------------------------

namespace detail {
template <class Ring>
typename Ring::Scalar half_integer_scalar(int twice) {
    if constexpr (Ring::kExact)
        return RatComplex(make_rational(twice, 2), mpq_class(0));
    else
        return typename Ring::Scalar(0.5 * twice, 0.0);
}
} // namespace detail

// Gamma(x, y) = sum c_g^* d_{g'} <g^{-1}, g'> lambda_{g^{-1} g'}.
template <class Ring>
Element<Ring> carre_du_champ(const Element<Ring>& x, const Element<Ring>& y,
                             std::size_t cap = kDefaultSupportCap) {
    detail::require_same_ring(x, y);
    Element<Ring> out(x.dim());
    for (const auto& [g, cg] : x.terms()) {
        const Word gi = invert(g);
        const auto cgs = star(cg);
        for (const auto& [h, dh] : y.terms()) {
            const int twice = gromov_twice(gi, h);
            if (twice == 0)
                continue;
            out.add_term(reduce_concat(gi, h),
                         coeff_scale(detail::half_integer_scalar<Ring>(twice),
                                     static_cast<typename Ring::Coeff>(cgs * dh)));
            if (out.support_size() > cap)
                throw ResourceError("carre_du_champ: support growth exceeds cap");
        }
    }
    return out;
}

// A^r x = sum c_g |g|^r lambda_g for integer r; exact in every ring.
// r < 0 requires tau(x) = 0.
template <class Ring>
Element<Ring> number_operator(const Element<Ring>& x, int r) {
    if (r == 0)
        return x;
    if (r < 0 && x.find(Word()) != nullptr)
        throw std::invalid_argument("number_operator: negative power needs tau(x) = 0");
    return detail::apply_multiplier(x, [&](const Word& w) -> typename Ring::Scalar {
        const long l = static_cast<long>(w.length());
        if constexpr (Ring::kExact) {
            if (l == 0)
                return RatComplex(0);
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(l),
                          static_cast<unsigned long>(r > 0 ? r : -r));
            mpq_class q(p);
            if (r < 0)
                q = 1 / q;
            return RatComplex(q, mpq_class(0));
        } else {
            return typename Ring::Scalar(std::pow(static_cast<double>(l), r), 0.0);
        }
    });
}

// A^r for real r (float rings).
template <class Ring>
    requires(!Ring::kExact)
Element<Ring> number_operator(const Element<Ring>& x, double r) {
    if (r == 0.0)
        return x;
    if (r < 0 && x.find(Word()) != nullptr)
        throw std::invalid_argument("number_operator: negative power needs tau(x) = 0");
    return detail::apply_multiplier(x, [&](const Word& w) -> typename Ring::Scalar {
        if (w.is_unit())
            return typename Ring::Scalar(0.0, 0.0);
        return typename Ring::Scalar(std::pow(static_cast<double>(w.length()), r), 0.0);
    });
}

// --- the doubling embedding -----------------------------------------------

// pi(g_i) = g_i h_i with the two copies interleaved into one index space:
// generator i of the first copy becomes 2i-1, of the second copy 2i.
inline Word embed_double_word(const Word& w) {
    std::vector<std::int32_t> letters;
    letters.reserve(2 * w.length());
    for (std::int32_t l : w.letters()) {
        if (l > 0) {
            letters.push_back(2 * l - 1);
            letters.push_back(2 * l);
        } else {
            letters.push_back(2 * l);
            letters.push_back(2 * l + 1);
        }
    }
    // Images of reduced words stay reduced: interface letters of consecutive
    // images can only cancel if the original word had a cancellation.
    return Word::from_reduced(std::move(letters));
}

template <class Ring>
Element<Ring> embed_double(const Element<Ring>& x) {
    Element<Ring> out(x.dim());
    for (const auto& [w, c] : x.terms())
        out.add_term(embed_double_word(w), c);
    return out;
}

} // namespace fht
