#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace fht {

// Absolute threshold below which float coefficients are pruned to zero.
inline constexpr double kFloatPruneTol = 1e-14;

inline mpq_class make_rational(long num, long den = 1) {
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p/q" or "p" (base 10).
inline mpq_class rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

// Exact complex number with rational real and imaginary parts.
struct RatComplex {
    mpq_class re, im;

    RatComplex() : re(0), im(0) {}
    RatComplex(long r) : re(r), im(0) {}
    RatComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static RatComplex i() { return RatComplex(mpq_class(0), mpq_class(1)); }

    bool operator==(const RatComplex& o) const { return re == o.re && im == o.im; }
    bool operator!=(const RatComplex& o) const { return !(*this == o); }

    RatComplex operator+(const RatComplex& o) const { return {re + o.re, im + o.im}; }
    RatComplex operator-(const RatComplex& o) const { return {re - o.re, im - o.im}; }
    RatComplex operator-() const { return {-re, -im}; }
    RatComplex operator*(const RatComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RatComplex& operator+=(const RatComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    RatComplex& operator-=(const RatComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    RatComplex& operator*=(const RatComplex& o) { return *this = *this * o; }

    mpq_class abs2() const { return re * re + im * im; }
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline RatComplex conj(const RatComplex& c) { return {c.re, -c.im}; }

// --- coefficient rings ---------------------------------------------------

struct RationalRing {
    using Coeff = RatComplex;
    using Scalar = RatComplex;
    using Real = mpq_class;
    static constexpr bool kExact = true;
    static constexpr const char* kName = "rational";
};

struct FloatRing {
    using Coeff = std::complex<double>;
    using Scalar = std::complex<double>;
    using Real = double;
    static constexpr bool kExact = false;
    static constexpr const char* kName = "float";
};

struct MatrixRing {
    using Coeff = Eigen::MatrixXcd;
    using Scalar = std::complex<double>;
    using Real = double;
    static constexpr bool kExact = false;
    static constexpr const char* kName = "matrix";
};

// --- uniform coefficient operations --------------------------------------

inline RatComplex star(const RatComplex& c) { return conj(c); }
inline std::complex<double> star(const std::complex<double>& c) { return std::conj(c); }
inline Eigen::MatrixXcd star(const Eigen::MatrixXcd& m) { return m.adjoint(); }

inline bool coeff_is_zero(const RatComplex& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) {
    return std::abs(c.real()) <= kFloatPruneTol && std::abs(c.imag()) <= kFloatPruneTol;
}
inline bool coeff_is_zero(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().maxCoeff() <= kFloatPruneTol;
}

inline double coeff_abs_max(const RatComplex& c) {
    return std::max(std::abs(c.re.get_d()), std::abs(c.im.get_d()));
}
inline double coeff_abs_max(const std::complex<double>& c) {
    return std::max(std::abs(c.real()), std::abs(c.imag()));
}
inline double coeff_abs_max(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Normalized trace: identity on scalars, tr(m)/d on a d x d matrix, so that
// every lambda_g tensor identity has L2-norm one regardless of d.
inline RatComplex normalized_trace(const RatComplex& c) { return c; }
inline std::complex<double> normalized_trace(const std::complex<double>& c) { return c; }
inline std::complex<double> normalized_trace(const Eigen::MatrixXcd& m) {
    return m.trace() / static_cast<double>(m.rows());
}

template <class Ring>
typename Ring::Coeff coeff_zero(int dim) {
    if constexpr (std::is_same_v<Ring, MatrixRing>)
        return Eigen::MatrixXcd::Zero(dim, dim);
    else
        return typename Ring::Coeff(0);
}

template <class Ring>
typename Ring::Coeff coeff_one(int dim) {
    if constexpr (std::is_same_v<Ring, MatrixRing>)
        return Eigen::MatrixXcd::Identity(dim, dim);
    else
        return typename Ring::Coeff(1);
}

template <class Ring>
typename Ring::Coeff scalar_to_coeff(const typename Ring::Scalar& s, int dim) {
    if constexpr (std::is_same_v<Ring, MatrixRing>)
        return s * Eigen::MatrixXcd::Identity(dim, dim);
    else
        return s;
}

inline RatComplex coeff_scale(const RatComplex& s, const RatComplex& c) { return s * c; }
inline std::complex<double> coeff_scale(const std::complex<double>& s,
                                        const std::complex<double>& c) {
    return s * c;
}
inline Eigen::MatrixXcd coeff_scale(const std::complex<double>& s,
                                    const Eigen::MatrixXcd& m) {
    return s * m;
}

// --- scalar helpers (Scalar is RatComplex or std::complex<double>) -------

inline mpq_class scalar_abs2(const RatComplex& s) { return s.abs2(); }
inline double scalar_abs2(const std::complex<double>& s) { return std::norm(s); }

inline bool scalar_in_unit_disc(const RatComplex& s) { return s.abs2() <= 1; }
inline bool scalar_in_unit_disc(const std::complex<double>& s) {
    return std::norm(s) <= 1.0 + 1e-12;
}
inline bool scalar_unimodular(const RatComplex& s) { return s.abs2() == 1; }
inline bool scalar_unimodular(const std::complex<double>& s) {
    return std::abs(std::norm(s) - 1.0) <= 1e-12;
}

inline std::complex<double> to_complex(const RatComplex& s) { return s.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& s) { return s; }

} // namespace fht
