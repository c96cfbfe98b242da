#pragma once

#include <set>

#include "fht/amalg.hpp"
#include "fht/lp.hpp"
#include "fht/multipliers.hpp"
#include "fht/paths.hpp"

// Residual evaluators: each returns LHS - RHS of one identity in canonical
// form, so a zero element certifies the identity on the given inputs.
namespace fht::identities {

// --- free-product side ------------------------------------------------------

// H_eps(g^*) - (H_eps^op(g))^*.
template <class S>
AmalgElement<S> ghid1_i_residual(const AmalgElement<S>& g, const AmalgSymbol<S>& eps,
                                 const AlgebraSpec<S>& spec) {
    return amalg_hilbert(amalg_adjoint(g, spec), eps, AmalgSide::left) -
           amalg_adjoint(amalg_hilbert(g, eps, AmalgSide::right), spec);
}

// H_eps(centered g) - centered H_eps(g).
template <class S>
AmalgElement<S> ghid1_ii_residual(const AmalgElement<S>& g, const AmalgSymbol<S>& eps) {
    return amalg_hilbert(amalg_center(g), eps, AmalgSide::left) -
           amalg_center(amalg_hilbert(g, eps, AmalgSide::left));
}

// H_eps H_{eps'}^op (g) - H_{eps'}^op H_eps (g).
template <class S>
AmalgElement<S> ghid1_iii_residual(const AmalgElement<S>& g, const AmalgSymbol<S>& eps,
                                   const AmalgSymbol<S>& eps2) {
    return amalg_hilbert(amalg_hilbert(g, eps2, AmalgSide::right), eps, AmalgSide::left) -
           amalg_hilbert(amalg_hilbert(g, eps, AmalgSide::left), eps2, AmalgSide::right);
}

// centered H_eps(g^* h) - centered (H_eps(g^*) h), valid when g is not a
// strict left-prefix of h at the index level.
template <class S>
AmalgElement<S> ghid_iv_residual(const AmalgElement<S>& g, const AmalgElement<S>& h,
                                 const AmalgSymbol<S>& eps, const AlgebraSpec<S>& spec) {
    const AmalgElement<S> gs = amalg_adjoint(g, spec);
    return amalg_center(amalg_hilbert(amalg_mul(gs, h, spec), eps, AmalgSide::left)) -
           amalg_center(amalg_mul(amalg_hilbert(gs, eps, AmalgSide::left), h, spec));
}

// centered H_eps^op(g^* h) - centered (g^* H_eps^op(h)), valid when h is not a
// strict right-prefix of g at the index level.
template <class S>
AmalgElement<S> ghid_v_residual(const AmalgElement<S>& g, const AmalgElement<S>& h,
                                const AmalgSymbol<S>& eps, const AlgebraSpec<S>& spec) {
    const AmalgElement<S> gs = amalg_adjoint(g, spec);
    return amalg_center(amalg_hilbert(amalg_mul(gs, h, spec), eps, AmalgSide::right)) -
           amalg_center(amalg_mul(gs, amalg_hilbert(h, eps, AmalgSide::right), spec));
}

// The centered Cotlar identity on elementary tensors, all g, h.
template <class S>
AmalgElement<S> ghid_vi_residual(const AmalgElement<S>& g, const AmalgElement<S>& h,
                                 const AmalgSymbol<S>& eps, const AmalgSymbol<S>& eps2,
                                 const AlgebraSpec<S>& spec) {
    const AmalgElement<S> gs = amalg_adjoint(g, spec);
    const AmalgElement<S> hop = amalg_hilbert(h, eps2, AmalgSide::right);
    const AmalgElement<S> lhs =
        amalg_center(amalg_mul(amalg_hilbert(gs, eps, AmalgSide::left), hop, spec));
    const AmalgElement<S> rhs =
        amalg_center(amalg_hilbert(amalg_mul(gs, hop, spec), eps, AmalgSide::left)) +
        amalg_center(amalg_hilbert(
            amalg_mul(amalg_hilbert(gs, eps, AmalgSide::left), h, spec), eps2,
            AmalgSide::right)) -
        amalg_center(amalg_hilbert(amalg_hilbert(amalg_mul(gs, h, spec), eps, AmalgSide::left),
                                   eps2, AmalgSide::right));
    return lhs - rhs;
}

// The uncentered Cotlar identity for the free product:
//   H_eps x (H_eps' y)^* - E[(H_eps x - eps_0 x)(H_eps' y - eps'_0 y)^*]
//     = H_eps(x H^op_eps'(y^*)) + H^op_eps'(H_eps(x) y^*) - H^op_eps' H_eps(x y^*).
template <class S>
AmalgElement<S> cotlar_amalg_residual(const AmalgElement<S>& x, const AmalgElement<S>& y,
                                      const AmalgSymbol<S>& eps, const AmalgSymbol<S>& eps2,
                                      const AlgebraSpec<S>& spec) {
    const AmalgElement<S> hx = amalg_hilbert(x, eps, AmalgSide::left);
    const AmalgElement<S> hy = amalg_hilbert(y, eps2, AmalgSide::left);
    const AmalgElement<S> ys = amalg_adjoint(y, spec);
    const AmalgElement<S> defect_l = hx - amalg_scale(eps.eps0(), x);
    const AmalgElement<S> defect_r = hy - amalg_scale(eps2.eps0(), y);
    const AmalgElement<S> lhs =
        amalg_mul(hx, amalg_adjoint(hy, spec), spec) -
        amalg_expect(amalg_mul(defect_l, amalg_adjoint(defect_r, spec), spec));
    const AmalgElement<S> rhs =
        amalg_hilbert(amalg_mul(x, amalg_hilbert(ys, eps2, AmalgSide::right), spec), eps,
                      AmalgSide::left) +
        amalg_hilbert(amalg_mul(hx, ys, spec), eps2, AmalgSide::right) -
        amalg_hilbert(amalg_hilbert(amalg_mul(x, ys, spec), eps, AmalgSide::left), eps2,
                      AmalgSide::right);
    return lhs - rhs;
}

// The four diagonal quantities of the expectation bound; the caller compares
// each against tau(x x^*).
template <class S>
std::vector<S> diag_quantities(const AmalgElement<S>& x, const AmalgSymbol<S>& eps,
                               const AlgebraSpec<S>& spec) {
    const AmalgElement<S> hx = amalg_hilbert(x, eps, AmalgSide::left);
    const AmalgElement<S> xs = amalg_adjoint(x, spec);
    return {
        amalg_trace(amalg_mul(hx, amalg_adjoint(hx, spec), spec)),
        amalg_trace(amalg_hilbert(
            amalg_mul(x, amalg_hilbert(xs, eps, AmalgSide::right), spec), eps, AmalgSide::left)),
        amalg_trace(amalg_hilbert(amalg_mul(hx, xs, spec), eps, AmalgSide::right)),
        amalg_trace(amalg_hilbert(amalg_hilbert(amalg_mul(x, xs, spec), eps, AmalgSide::left),
                                  eps, AmalgSide::right)),
    };
}

// H_eps(x sharp y) - H_eps(x) sharp y.
template <class S>
AmalgElement<S> paraid_sharp_residual(const AmalgElement<S>& x, const AmalgElement<S>& y,
                                      const AmalgSymbol<S>& eps, const AlgebraSpec<S>& spec) {
    return amalg_hilbert(amalg_paraproduct(x, y, AmalgPara::sharp, spec), eps, AmalgSide::left) -
           amalg_paraproduct(amalg_hilbert(x, eps, AmalgSide::left), y, AmalgPara::sharp, spec);
}

// x dagger H_eps^op(y) - H_eps^op(x dagger y).
template <class S>
AmalgElement<S> paraid_dagger_residual(const AmalgElement<S>& x, const AmalgElement<S>& y,
                                       const AmalgSymbol<S>& eps, const AlgebraSpec<S>& spec) {
    return amalg_paraproduct(x, amalg_hilbert(y, eps, AmalgSide::right), AmalgPara::dagger,
                             spec) -
           amalg_hilbert(amalg_paraproduct(x, y, AmalgPara::dagger, spec), eps,
                         AmalgSide::right);
}

// The sign-averaged form of the dagger: x dagger y = sum_k R_k(x dagger R_k y).
template <class S>
AmalgElement<S> idsharp_residual(const AmalgElement<S>& x, const AmalgElement<S>& y,
                                 const AlgebraSpec<S>& spec) {
    AmalgElement<S> rhs;
    for (int k = 1; k <= spec.num_factors(); ++k) {
        const AmalgElement<S> rky = amalg_project(AmalgProj::R, k, y);
        if (rky.is_zero())
            continue;
        rhs = rhs + amalg_project(AmalgProj::R, k,
                                  amalg_paraproduct(x, rky, AmalgPara::dagger, spec));
    }
    return amalg_paraproduct(x, y, AmalgPara::dagger, spec) - rhs;
}

// --- free-group side ----------------------------------------------------------

// Free-group Cotlar identity, E = tau(.) lambda_e.
template <class Ring>
Element<Ring> cotlar_free_residual(const Element<Ring>& x, const Element<Ring>& y,
                                   const Symbol<typename Ring::Scalar>& eps,
                                   const Symbol<typename Ring::Scalar>& eps2) {
    const Element<Ring> hx = hilbert_free(x, eps);
    const Element<Ring> hy = hilbert_free(y, eps2);
    const Element<Ring> ys = adjoint(y);
    const Element<Ring> defect_l = hx - scale(eps.unit(), x);
    const Element<Ring> defect_r = hy - scale(eps2.unit(), y);
    const Element<Ring> lhs = multiply(hx, adjoint(hy)) -
                              project_trace(multiply(defect_l, adjoint(defect_r)));
    const Element<Ring> rhs =
        hilbert_free(multiply(x, hilbert_free_op(ys, eps2)), eps) +
        hilbert_free_op(multiply(hx, ys), eps2) -
        hilbert_free_op(hilbert_free(multiply(x, ys), eps), eps2);
    return lhs - rhs;
}

// The length-block Cotlar identity behind the Haagerup bootstrap: the residual
// of the transcription with the suffix-side transform on the op slots,
// truncated by P_{2d-2}^perp.
template <class Ring>
Element<Ring> cotlar_block_residual(const Element<Ring>& x,
                                    const Symbol<typename Ring::Scalar>& eps, int d) {
    const auto h = [&](const Element<Ring>& z) { return hilbert_block(z, eps, BlockVariant::Ld, d); };
    const auto eps_conj = eps.conjugated();
    const auto hop = [&](const Element<Ring>& z) {
        return hilbert_block(z, eps_conj, BlockVariant::Rd, d);
    };
    const Element<Ring> hx = h(x);
    const Element<Ring> xs = adjoint(x);
    const Element<Ring> combo = multiply(hx, adjoint(hx)) - h(multiply(x, hop(xs))) -
                                hop(multiply(hx, xs)) + hop(h(multiply(x, xs)));
    return project_length_gt(2 * d - 2, combo);
}

// The literal reading of the block identity with the prefix-side transform in
// the inner/outer slots; kept callable so the oracle can exhibit its failure.
template <class Ring>
Element<Ring> cotlar_block_residual_prefix_form(const Element<Ring>& x,
                                                const Symbol<typename Ring::Scalar>& eps,
                                                int d) {
    const auto h = [&](const Element<Ring>& z) { return hilbert_block(z, eps, BlockVariant::Ld, d); };
    const auto hr = [&](const Element<Ring>& z) {
        return hilbert_block(z, eps, BlockVariant::Rd, d);
    };
    const Element<Ring> hx = h(x);
    const Element<Ring> xs = adjoint(x);
    const Element<Ring> combo = multiply(hx, adjoint(hx)) - h(multiply(x, h(xs))) -
                                h(multiply(hx, xs)) + hr(h(multiply(x, xs)));
    return project_length_gt(2 * d - 2, combo);
}

// Brute-force sum over all h != e of (L_h x)^* (L_h y); only prefixes of the
// support of x contribute.
template <class Ring>
Element<Ring> prefix_projection_sum(const Element<Ring>& x, const Element<Ring>& y) {
    std::set<Word, WordOrder> prefixes;
    for (const auto& [w, c] : x.terms())
        for (std::size_t l = 1; l <= w.length(); ++l)
            prefixes.insert(w.head(l));
    Element<Ring> acc(x.dim());
    for (const Word& h : prefixes)
        acc = acc + multiply(adjoint(project_left_prefix(h, x)), project_left_prefix(h, y));
    return acc;
}

// sum_{h != e} (L_h x)^* (L_h y) - kappa Gamma(x, y).
template <class Ring>
Element<Ring> gromov_carre_residual(const Element<Ring>& x, const Element<Ring>& y, int kappa) {
    Element<Ring> rhs = carre_du_champ(x, y);
    if (kappa != 1)
        rhs = scale(typename Ring::Scalar(kappa), rhs);
    return prefix_projection_sum(x, y) - rhs;
}

// A(x^*) y + x^* A(y) - A(x^* y) - 2 Gamma(x, y).
template <class Ring>
Element<Ring> carre_generator_residual(const Element<Ring>& x, const Element<Ring>& y) {
    const Element<Ring> xs = adjoint(x);
    const Element<Ring> lhs = multiply(number_operator(xs, 1), y) +
                              multiply(xs, number_operator(y, 1)) -
                              number_operator(multiply(xs, y), 1);
    return lhs - scale(typename Ring::Scalar(2), carre_du_champ(x, y));
}

// Gamma(H_eps x, H_eps y) - Gamma(x, y) for unimodular eps.
template <class Ring>
Element<Ring> carre_isometry_residual(const Element<Ring>& x, const Element<Ring>& y,
                                      const Symbol<typename Ring::Scalar>& eps) {
    return carre_du_champ(hilbert_free(x, eps), hilbert_free(y, eps)) - carre_du_champ(x, y);
}

// (T_n x)^*(T_n x) - sum_{g in P_n} |c_g|^2 lambda_e
//   - [ x^* dag (T_n x) + (x^* dag (T_n x))^* - (S_n x)^*(T_n x) - (T_n x)^*(S_n x) ].
template <class Ring>
Element<Ring> idTn_residual(const PathPartition& part, int n, const Element<Ring>& x) {
    const Element<Ring> tn = path_project(part, n, PathProj::T, x);
    const Element<Ring> sn = path_project(part, n, PathProj::S, x);
    const Element<Ring> xs = adjoint(x);
    const Element<Ring> dag = paraproduct(xs, tn, ParaFlag::dagger);
    Element<Ring> lhs = multiply(adjoint(tn), tn);
    lhs.add_term(Word(), coeff_scale(typename Ring::Scalar(-1),
                                     scalar_to_coeff<Ring>(l2_inner(tn, tn), x.dim())));
    const Element<Ring> rhs =
        dag + adjoint(dag) - multiply(adjoint(sn), tn) - multiply(adjoint(tn), sn);
    return lhs - rhs;
}

// sum_n [ |T_n x + S_n x|^2 - |S_n x|^2 ]
//   - [ x^* dag x + (x^* dag x)^* + (tau|x|^2 - |tau x|^2) lambda_e ].
// The partition covers ball \ {e}, so the unit-word coefficient drops the
// |tau x|^2 term relative to a partition containing e in its first path.
template <class Ring>
Element<Ring> sumTn_residual(const PathPartition& part, const Element<Ring>& x) {
    Element<Ring> lhs(x.dim());
    for (int n = 0; n < part.num_paths(); ++n) {
        const Element<Ring> tn = path_project(part, n, PathProj::T, x);
        if (tn.is_zero())
            continue; // |T+S|^2 - |S|^2 = T^*T + S^*T + T^*S vanishes with T
        const Element<Ring> sn = path_project(part, n, PathProj::S, x);
        const Element<Ring> ts = tn + sn;
        lhs = lhs + multiply(adjoint(ts), ts) - multiply(adjoint(sn), sn);
    }
    const Element<Ring> xs = adjoint(x);
    const Element<Ring> dag = paraproduct(xs, x, ParaFlag::dagger);
    Element<Ring> rhs = dag + adjoint(dag);
    const auto t = l2_inner(x, x);
    const auto te = scalar_trace(x);
    rhs.add_term(Word(), scalar_to_coeff<Ring>(
                             static_cast<typename Ring::Scalar>(t - star(te) * te), x.dim()));
    return lhs - rhs;
}

// E_{|k|} |R_{g_k} x|^2 - sum over concrete paths rooted in R_{g_k} of |T_n x|^2.
template <class Ring>
Element<Ring> lemma_new_residual(const PathPartition& part, std::int32_t k,
                                 const Element<Ring>& x) {
    const Element<Ring> rx = project_right_suffix(Word::generator(k), x);
    const Element<Ring> lhs =
        project_subalg_power(k > 0 ? k : -k, multiply(adjoint(rx), rx));
    Element<Ring> rhs(x.dim());
    for (int n = 0; n < part.num_paths(); ++n) {
        if (part.paths[static_cast<std::size_t>(n)].root().last_letter() != k)
            continue;
        const Element<Ring> tn = path_project(part, n, PathProj::T, x);
        if (!tn.is_zero())
            rhs = rhs + multiply(adjoint(tn), tn);
    }
    return lhs - rhs;
}

// The doubling-embedding intertwining: with letters 2k-1 carrying eps_k and
// letters 2k carrying eps_{-k}, the paired transform of pi(x) equals
// pi(H_eps x).
template <class Ring>
Element<Ring> main2_intertwine_residual(const Element<Ring>& x,
                                        const Symbol<typename Ring::Scalar>& eps,
                                        int num_gens) {
    using Sym = Symbol<typename Ring::Scalar>;
    Sym paired = Sym::generator_signed(eps.unit());
    for (int k = 1; k <= num_gens; ++k) {
        paired.set(2 * k - 1, eps.at_gen(k));
        paired.set(-(2 * k - 1), eps.at_gen(k));
        paired.set(2 * k, eps.at_gen(-k));
        paired.set(-2 * k, eps.at_gen(-k));
    }
    return hilbert_free(embed_double(x), paired) - embed_double(hilbert_free(x, eps));
}

// x - tau(x) lambda_e - sum_k L_{g_k} x over the letters present.
template <class Ring>
Element<Ring> resolution_residual(const Element<Ring>& x) {
    Element<Ring> sum = project_trace(x);
    for (int k = 1; k <= std::max<std::int32_t>(1, x.max_generator()); ++k) {
        sum = sum + project_left_prefix(Word::generator(k), x);
        sum = sum + project_left_prefix(Word::generator(-k), x);
    }
    return x - sum;
}

// xy - (x sharp y + x dagger y + tau(xy) lambda_e).
template <class Ring>
Element<Ring> paraproduct_decomposition_residual(const Element<Ring>& x,
                                                 const Element<Ring>& y) {
    const Element<Ring> xy = multiply(x, y);
    return xy - paraproduct(x, y, ParaFlag::sharp) - paraproduct(x, y, ParaFlag::dagger) -
           project_trace(xy);
}

} // namespace fht::identities
