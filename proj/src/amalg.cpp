#include "fht/amalg.hpp"

#include <optional>

namespace fht {

namespace {

std::optional<mpq_class> exact_sqrt(const mpq_class& q) {
    if (sgn(q) < 0)
        return std::nullopt;
    const mpz_class num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

// Shared Gram-Schmidt over the n-point function algebra. Real is mpq_class
// or double; Scalar the matching complex type.
template <class Scalar, class Real, class Sqrt>
FactorAlgebra<Scalar> build_points(const std::vector<Real>& weights, Sqrt sqrt_fn,
                                   const char* label_prefix) {
    const int n = static_cast<int>(weights.size());
    if (n < 2)
        throw std::invalid_argument("factor_points: need at least two points");
    Real total(0);
    for (const auto& w : weights) {
        if (!(w > 0))
            throw std::invalid_argument("factor_points: trace is not faithful (weight <= 0)");
        total += w;
    }
    bool normalized;
    if constexpr (std::is_same_v<Real, mpq_class>)
        normalized = (total == 1);
    else
        normalized = std::abs(total - 1.0) <= 1e-12;
    if (!normalized)
        throw std::invalid_argument("factor_points: weights must sum to 1");

    using Func = std::vector<Scalar>; // values at the n points
    auto inner = [&](const Func& a, const Func& b) {
        Scalar acc(0);
        for (int k = 0; k < n; ++k)
            acc = acc + Scalar(weights[static_cast<std::size_t>(k)], Real(0)) * star(a[k]) * b[k];
        return acc;
    };

    std::vector<Func> basis; // orthonormal: basis[0] = 1, then centered
    basis.push_back(Func(static_cast<std::size_t>(n), Scalar(1)));
    for (int i = 1; i < n; ++i) {
        Func v(static_cast<std::size_t>(n), Scalar(0));
        v[static_cast<std::size_t>(i)] = Scalar(1);
        for (const auto& f : basis) {
            const Scalar proj = inner(f, v);
            for (int k = 0; k < n; ++k)
                v[k] = v[k] - proj * f[k];
        }
        const Scalar nrm2 = inner(v, v);
        const Real nrm = sqrt_fn(nrm2);
        for (int k = 0; k < n; ++k)
            v[k] = Scalar(Real(1) / nrm, Real(0)) * v[k];
        basis.push_back(std::move(v));
    }

    const int d = n - 1;
    FactorAlgebra<Scalar> f;
    f.label = std::string(label_prefix) + "(" + std::to_string(n) + ")";
    f.centered_dim = d;
    f.unit_part.assign(d, std::vector<Scalar>(static_cast<std::size_t>(d), Scalar(0)));
    f.prod_part.assign(
        d, std::vector<std::vector<Scalar>>(static_cast<std::size_t>(d),
                                            std::vector<Scalar>(static_cast<std::size_t>(d), Scalar(0))));
    f.star_part.assign(d, std::vector<Scalar>(static_cast<std::size_t>(d), Scalar(0)));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Func prod(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                prod[k] = basis[i + 1][k] * basis[j + 1][k];
            f.unit_part[i][j] = inner(basis[0], prod);
            for (int m = 0; m < d; ++m)
                f.prod_part[i][j][m] = inner(basis[m + 1], prod);
        }
        Func conj_i(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            conj_i[k] = star(basis[i + 1][k]);
        for (int m = 0; m < d; ++m)
            f.star_part[i][m] = inner(basis[m + 1], conj_i);
    }
    return f;
}

} // namespace

FactorAlgebra<RatComplex> factor_points(const std::vector<mpq_class>& weights) {
    return build_points<RatComplex, mpq_class>(
        weights,
        [](const RatComplex& nrm2) {
            if (sgn(nrm2.im) != 0)
                throw std::invalid_argument("factor_points: non-real norm");
            auto r = exact_sqrt(nrm2.re);
            if (!r || sgn(*r) == 0)
                throw std::invalid_argument(
                    "factor_points: normalization is not a rational square; use float weights");
            return *r;
        },
        "points");
}

FactorAlgebra<std::complex<double>> factor_points(const std::vector<double>& weights) {
    return build_points<std::complex<double>, double>(
        weights,
        [](const std::complex<double>& nrm2) {
            const double r = std::sqrt(nrm2.real());
            if (!(r > 0))
                throw std::invalid_argument("factor_points: degenerate normalization");
            return r;
        },
        "points");
}

} // namespace fht
