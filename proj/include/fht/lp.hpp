#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "fht/element.hpp"

namespace fht {

// Dense truncations beyond this side length are refused.
inline constexpr std::size_t kDefaultTruncationSideCap = 6000;

// tau(a b) without materializing the product.
template <class Ring>
typename Ring::Scalar trace_pair(const Element<Ring>& a, const Element<Ring>& b) {
    detail::require_same_ring(a, b);
    typename Ring::Scalar acc{0};
    for (const auto& [w, c] : a.terms()) {
        if (const auto* d = b.find(invert(w)))
            acc = acc + normalized_trace(static_cast<typename Ring::Coeff>(c * (*d)));
    }
    return acc;
}

namespace detail {
template <class Ring>
typename Ring::Real real_part(const typename Ring::Scalar& s) {
    if constexpr (Ring::kExact)
        return s.re;
    else
        return s.real();
}
} // namespace detail

// tau(y^m) by balanced convolution, m >= 0. Exact in the rational ring.
template <class Ring>
typename Ring::Real moment_power(const Element<Ring>& y, int m,
                                 std::size_t cap = kDefaultSupportCap) {
    if (m < 0)
        throw std::invalid_argument("moment_power: m must be >= 0");
    if (m == 0)
        return detail::real_part<Ring>(typename Ring::Scalar(1));
    const int half = m / 2;
    Element<Ring> low = Element<Ring>::unit(y.dim());
    for (int j = 0; j < half; ++j)
        low = multiply(low, y, cap);
    Element<Ring> high = (m % 2 == 0) ? low : multiply(low, y, cap);
    return detail::real_part<Ring>(trace_pair(high, low));
}

// tau((x^* x)^m) = ||x||_{2m}^{2m}, m >= 1.
template <class Ring>
typename Ring::Real moment_even(const Element<Ring>& x, int m,
                                std::size_t cap = kDefaultSupportCap) {
    if (m < 1)
        throw std::invalid_argument("moment_even: m must be >= 1");
    return moment_power(multiply(adjoint(x), x, cap), m, cap);
}

// --- truncated GNS representation -----------------------------------------

// Matrix of left multiplication by x on the span of a word ball: the entry
// block at (row w, column v) is the coefficient of x at w v^{-1}.
struct TruncatedRep {
    int radius = 0;
    int num_gens = 1;
    int dim = 1;
    std::vector<Word> basis; // canonical ball order; basis[0] = e
    Eigen::MatrixXcd op;
};

template <class Ring>
TruncatedRep build_truncation(const Element<Ring>& x, int radius, int num_gens = 0,
                              std::size_t side_cap = kDefaultTruncationSideCap) {
    if (num_gens == 0)
        num_gens = std::max<std::int32_t>(1, x.max_generator());
    if (radius < static_cast<int>(x.max_support_length()))
        throw std::invalid_argument("build_truncation: radius below support length");

    TruncatedRep rep;
    rep.radius = radius;
    rep.num_gens = num_gens;
    rep.dim = x.dim();
    rep.basis = enumerate_ball(num_gens, radius, side_cap);

    std::map<Word, int, WordOrder> index;
    for (std::size_t j = 0; j < rep.basis.size(); ++j)
        index.emplace(rep.basis[j], static_cast<int>(j));

    const int d = rep.dim;
    const auto side = static_cast<Eigen::Index>(rep.basis.size()) * d;
    rep.op = Eigen::MatrixXcd::Zero(side, side);
    for (std::size_t jv = 0; jv < rep.basis.size(); ++jv) {
        for (const auto& [g, c] : x.terms()) {
            const Word w = reduce_concat(g, rep.basis[jv]);
            auto it = index.find(w);
            if (it == index.end())
                continue;
            const auto jw = static_cast<Eigen::Index>(it->second);
            if constexpr (std::is_same_v<Ring, MatrixRing>)
                rep.op.block(jw * d, static_cast<Eigen::Index>(jv) * d, d, d) += c;
            else
                rep.op(jw, static_cast<Eigen::Index>(jv)) += to_complex(c);
        }
    }
    return rep;
}

// Spectrum of |x|^2 truncated, with the tau-weights of each eigenvector:
// tau(f(x^* x)) ~ sum_j weight_j f(eig_j) where weight_j is the squared
// delta_e component (averaged over the matrix leg when dim > 1).
struct TruncatedSpectrum {
    Eigen::VectorXd eigs;    // eigenvalues of (trunc x)^* (trunc x), ascending
    Eigen::VectorXd weights; // nonnegative, sum <= 1 (equal to 1 up to rounding)
};

inline TruncatedSpectrum spectrum_of(const TruncatedRep& rep) {
    const Eigen::MatrixXcd h = rep.op.adjoint() * rep.op;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectrum_of: eigensolver failure");

    // Residual gate for the solve itself.
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    const double residual =
        (h * solver.eigenvectors() -
         solver.eigenvectors() * solver.eigenvalues().asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-11 * scale)
        throw std::runtime_error("spectrum_of: eigensolver residual too large");

    TruncatedSpectrum spec;
    spec.eigs = solver.eigenvalues();
    spec.weights = Eigen::VectorXd::Zero(spec.eigs.size());
    for (Eigen::Index j = 0; j < spec.eigs.size(); ++j) {
        double wsum = 0;
        for (int i = 0; i < rep.dim; ++i)
            wsum += std::norm(solver.eigenvectors()(i, j));
        spec.weights(j) = wsum / rep.dim;
    }
    return spec;
}

// --- norm reports -----------------------------------------------------------

struct NormReport {
    double p = 2;
    enum class Method { exact_moment, spectral, op_lower } method = Method::spectral;
    double value = 0;
    int radius = 0;              // 0 when no truncation was used
    double error_indicator = std::numeric_limits<double>::quiet_NaN();
};

inline const char* method_name(NormReport::Method m) {
    switch (m) {
    case NormReport::Method::exact_moment: return "exact_moment";
    case NormReport::Method::spectral: return "spectral";
    case NormReport::Method::op_lower: return "op_lower";
    }
    return "?";
}

namespace detail {
inline double spectral_value(const TruncatedSpectrum& spec, double p) {
    if (std::isinf(p))
        return std::sqrt(std::max(0.0, spec.eigs(spec.eigs.size() - 1)));
    double acc = 0;
    for (Eigen::Index j = 0; j < spec.eigs.size(); ++j)
        acc += spec.weights(j) * std::pow(std::max(0.0, spec.eigs(j)), p / 2.0);
    return std::pow(acc, 1.0 / p);
}
} // namespace detail

// ||x||_p via the truncated GNS spectrum; for p = inf the largest singular
// value of the truncation (a lower bound of ||x||_inf, nondecreasing in R).
// Exact for even p = 2m whenever radius >= m * max support length.
template <class Ring>
NormReport norm_spectral(const Element<Ring>& x, double p, int radius,
                         std::size_t side_cap = kDefaultTruncationSideCap) {
    if (p < 1.0)
        throw std::invalid_argument("norm_spectral: p must be >= 1 (or inf)");
    NormReport report;
    report.p = p;
    report.method = std::isinf(p) ? NormReport::Method::op_lower
                                  : NormReport::Method::spectral;
    report.radius = radius;
    report.value = detail::spectral_value(spectrum_of(build_truncation(x, radius, 0, side_cap)), p);
    const int prev = radius - 1;
    if (prev >= static_cast<int>(x.max_support_length()) && prev >= 0) {
        const double value_prev =
            detail::spectral_value(spectrum_of(build_truncation(x, prev, 0, side_cap)), p);
        report.error_indicator = std::abs(report.value - value_prev);
    }
    return report;
}

template <class Ring>
NormReport op_lower(const Element<Ring>& x, int radius,
                    std::size_t side_cap = kDefaultTruncationSideCap) {
    return norm_spectral(x, std::numeric_limits<double>::infinity(), radius, side_cap);
}

// Even-integer p go through exact moments, everything else through the
// spectral truncation (radius 0 = choose automatically).
template <class Ring>
NormReport compute_norm(const Element<Ring>& x, double p, int radius = 0,
                        std::size_t side_cap = kDefaultTruncationSideCap) {
    if (x.is_zero()) {
        NormReport r;
        r.p = p;
        r.method = NormReport::Method::exact_moment;
        r.value = 0;
        return r;
    }
    const int maxlen = static_cast<int>(x.max_support_length());
    if (!std::isinf(p) && p >= 2 && std::abs(p - 2 * std::round(p / 2)) < 1e-12) {
        const int m = static_cast<int>(std::round(p / 2));
        NormReport r;
        r.p = p;
        r.method = NormReport::Method::exact_moment;
        if constexpr (Ring::kExact)
            r.value = std::pow(moment_even(x, m).get_d(), 1.0 / p);
        else
            r.value = std::pow(std::max(0.0, moment_even(x, m)), 1.0 / p);
        return r;
    }
    if (radius == 0) {
        const int want = std::isinf(p)
                             ? 3 * std::max(1, maxlen)
                             : (static_cast<int>(std::ceil(p / 4.0)) + 1) * std::max(1, maxlen);
        radius = std::max(want, maxlen);
    }
    return norm_spectral(x, p, radius, side_cap);
}

// --- square functions -------------------------------------------------------

enum class SquareMode { column, row, cr_max };

namespace detail {
// || S ||_q for a positive element S, q >= 1: exact moments for integer q,
// spectral otherwise.
template <class Ring>
double positive_norm(const Element<Ring>& s, double q, int radius,
                     std::size_t side_cap) {
    if (s.is_zero())
        return 0.0;
    if (!std::isinf(q) && std::abs(q - std::round(q)) < 1e-12) {
        const int m = static_cast<int>(std::round(q));
        if constexpr (Ring::kExact)
            return std::pow(moment_power(s, m).get_d(), 1.0 / q);
        else
            return std::pow(std::max(0.0, moment_power(s, m)), 1.0 / q);
    }
    if (radius == 0) {
        const int maxlen = std::max<int>(1, static_cast<int>(s.max_support_length()));
        radius = std::isinf(q) ? 3 * maxlen
                               : (static_cast<int>(std::ceil(q / 2.0)) + 1) * maxlen;
    }
    return norm_spectral(s, q, radius, side_cap).value;
}
} // namespace detail

// ||(x_k)||_{L^p(l_2^c)} = ||(sum x_k^* x_k)^{1/2}||_p and its row / cr_max
// companions; p >= 2 only (the p < 2 infimum form is out of scope).
template <class Ring>
double square_function_norm(const std::vector<Element<Ring>>& xs, double p, SquareMode mode,
                            int radius = 0, std::size_t side_cap = kDefaultTruncationSideCap) {
    if (p < 2.0)
        throw std::invalid_argument("square_function_norm: p must be >= 2");
    if (xs.empty())
        return 0.0;
    if (mode == SquareMode::cr_max)
        return std::max(square_function_norm(xs, p, SquareMode::column, radius, side_cap),
                        square_function_norm(xs, p, SquareMode::row, radius, side_cap));

    Element<Ring> s(xs.front().dim());
    for (const auto& x : xs) {
        if (mode == SquareMode::column)
            s = s + multiply(adjoint(x), x);
        else
            s = s + multiply(x, adjoint(x));
    }
    return std::sqrt(detail::positive_norm(s, p / 2.0, radius, side_cap));
}

// --- length reduction -------------------------------------------------------

// Schatten p-norm of a complex matrix, p >= 1 or inf.
inline double schatten_norm(const Eigen::MatrixXcd& m, double p) {
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (std::isinf(p))
        return sv.size() ? sv(0) : 0.0;
    double acc = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        acc += std::pow(sv(j), p);
    return std::pow(acc, 1.0 / p);
}

enum class IotaCombine { max, lp_sum };

struct IotaReport {
    // components[0]: depth-d column square function of the tail family;
    // components[1..d]: Schatten-p norms of the mixed blocks for
    // j = d-1, ..., 0 (components[d], with j = 0, is the plain row part).
    std::vector<double> components;
    double combined = 0;
};

// Norm data of the length-reduction map on words of length >= d.
template <class Ring>
IotaReport iota_norm(const Element<Ring>& x, int d, double p,
                     IotaCombine combine = IotaCombine::max,
                     std::size_t side_cap = kDefaultTruncationSideCap) {
    static_assert(!std::is_same_v<Ring, MatrixRing>,
                  "iota_norm: scalar coefficient rings only");
    if (d < 1)
        throw std::invalid_argument("iota_norm: d must be >= 1");
    if (p < 2.0)
        throw std::invalid_argument("iota_norm: p must be >= 2");
    for (const auto& [w, c] : x.terms())
        if (w.length() < static_cast<std::size_t>(d))
            throw std::invalid_argument("iota_norm: support must lie in words of length >= d");

    IotaReport report;
    if (x.is_zero()) {
        report.components.assign(static_cast<std::size_t>(d) + 1, 0.0);
        return report;
    }

    // Depth-d column part: tails indexed by the d-fold first letters.
    {
        std::map<Word, Element<Ring>, WordOrder> tails;
        for (const auto& [w, c] : x.terms())
            tails[w.head(static_cast<std::size_t>(d))].add_term(
                w.tail_from(static_cast<std::size_t>(d)), c);
        std::vector<Element<Ring>> family;
        family.reserve(tails.size());
        for (auto& [u, el] : tails)
            family.push_back(std::move(el));
        report.components.push_back(
            square_function_norm(family, p, SquareMode::column, 0, side_cap));
    }

    // Mixed blocks: for each j < d the matrix [c_{u t}] over prefixes |u| = j
    // and tails t; its Schatten-p norm is the C_p^{ox j} (x) R_p norm.
    for (int j = d - 1; j >= 0; --j) {
        std::map<Word, int, WordOrder> rows, cols;
        for (const auto& [w, c] : x.terms()) {
            rows.emplace(w.head(static_cast<std::size_t>(j)), 0);
            cols.emplace(w.tail_from(static_cast<std::size_t>(j)), 0);
        }
        int r = 0;
        for (auto& [u, idx] : rows)
            idx = r++;
        int cidx = 0;
        for (auto& [t, idx] : cols)
            idx = cidx++;
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(r, cidx);
        for (const auto& [w, c] : x.terms())
            a(rows[w.head(static_cast<std::size_t>(j))],
              cols[w.tail_from(static_cast<std::size_t>(j))]) = to_complex(c);
        report.components.push_back(schatten_norm(a, p));
    }

    if (combine == IotaCombine::max) {
        for (double v : report.components)
            report.combined = std::max(report.combined, v);
    } else {
        double acc = 0;
        for (double v : report.components)
            acc += std::pow(v, p);
        report.combined = std::pow(acc, 1.0 / p);
    }
    return report;
}

} // namespace fht
