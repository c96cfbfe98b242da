#include "fht/verify.hpp"

#include <array>
#include <cmath>

#include "fht/serialize.hpp"

namespace fht {

namespace {

constexpr std::array<std::pair<IdentityId, const char*>, 20> kIdentityNames{{
    {IdentityId::ghid1_i, "ghid1_i"},
    {IdentityId::ghid1_ii, "ghid1_ii"},
    {IdentityId::ghid1_iii, "ghid1_iii"},
    {IdentityId::ghid_iv, "ghid_iv"},
    {IdentityId::ghid_v, "ghid_v"},
    {IdentityId::ghid_vi, "ghid_vi"},
    {IdentityId::cotlar_amalg, "cotlar_amalg"},
    {IdentityId::cotlar_free, "cotlar_free"},
    {IdentityId::diag_bounds, "diag_bounds"},
    {IdentityId::paraid_sharp, "paraid_sharp"},
    {IdentityId::paraid_dagger, "paraid_dagger"},
    {IdentityId::idsharp, "idsharp"},
    {IdentityId::cotlar_Ld, "cotlar_Ld"},
    {IdentityId::gromov_carre, "gromov_carre"},
    {IdentityId::idTn, "idTn"},
    {IdentityId::sumTn, "sumTn"},
    {IdentityId::lemma_new_Ek, "lemma_new_Ek"},
    {IdentityId::main2_intertwine, "main2_intertwine"},
    {IdentityId::resolution_of_identity, "resolution_of_identity"},
    {IdentityId::paraproduct_decomposition, "paraproduct_decomposition"},
}};

} // namespace

const std::vector<IdentityId>& all_identities() {
    static const std::vector<IdentityId> ids = [] {
        std::vector<IdentityId> v;
        for (const auto& [id, name] : kIdentityNames)
            v.push_back(id);
        return v;
    }();
    return ids;
}

const char* identity_name(IdentityId id) {
    for (const auto& [key, name] : kIdentityNames)
        if (key == id)
            return name;
    return "?";
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
    for (const auto& [id, key] : kIdentityNames)
        if (name == key)
            return id;
    return std::nullopt;
}

namespace {

// --- drawing helpers ---------------------------------------------------------

template <class Ring>
typename Ring::Scalar draw_disc(SplitMix64& rng) {
    if constexpr (Ring::kExact) {
        return random_rational_disc(rng);
    } else {
        const double r = rng.unit();
        const double a = 2 * M_PI * rng.unit();
        return std::polar(r, a);
    }
}

template <class Ring>
typename Ring::Scalar draw_circle(SplitMix64& rng) {
    if constexpr (Ring::kExact) {
        return random_rational_circle(rng);
    } else {
        return std::polar(1.0, 2 * M_PI * rng.unit());
    }
}

template <class Ring>
Symbol<typename Ring::Scalar> draw_gen_symbol(SplitMix64& rng, int num_gens, bool unimodular) {
    using Sym = Symbol<typename Ring::Scalar>;
    auto draw = [&] { return unimodular ? draw_circle<Ring>(rng) : draw_disc<Ring>(rng); };
    Sym sym = Sym::generator_signed(draw());
    for (int k = 1; k <= num_gens; ++k) {
        sym.set(k, draw());
        sym.set(-k, draw());
    }
    if (unimodular)
        sym.declare_unimodular();
    return sym;
}

template <class Ring>
Symbol<typename Ring::Scalar> draw_block_symbol(SplitMix64& rng, int num_gens, int d) {
    using Sym = Symbol<typename Ring::Scalar>;
    Sym sym = Sym::length_block(d, draw_disc<Ring>(rng));
    for (const Word& h : enumerate_ball(num_gens, d))
        if (static_cast<int>(h.length()) == d)
            sym.set(h, draw_disc<Ring>(rng));
    return sym;
}

template <class Ring>
Element<Ring> draw_element(SplitMix64& rng, const FuzzProfile& prof, int max_len = -1) {
    const ElementProfile ep{max_len < 0 ? prof.max_len : max_len, prof.max_terms,
                            prof.num_gens, Ring::kExact ? CoeffLaw::grid : CoeffLaw::gaussian};
    return random_element<Ring>(ep, rng.next());
}

// Free-product scalars and specs (amalgamated side).
template <class Ring>
using AmalgScalar = std::conditional_t<Ring::kExact, RatComplex, std::complex<double>>;

template <class Ring>
AlgebraSpec<AmalgScalar<Ring>> draw_amalg_spec(SplitMix64& rng, int num_factors) {
    using S = AmalgScalar<Ring>;
    std::vector<FactorAlgebra<S>> factors;
    for (int k = 0; k < num_factors; ++k) {
        switch (rng.below(4)) {
        case 0: factors.push_back(factor_cyclic<S>(2)); break;
        case 1: factors.push_back(factor_cyclic<S>(3)); break;
        case 2: factors.push_back(factor_cyclic<S>(4)); break;
        default: factors.push_back(factor_matrix<S>(2)); break;
        }
    }
    return AlgebraSpec<S>(std::move(factors));
}

template <class Ring>
AmalgSymbol<AmalgScalar<Ring>> draw_amalg_symbol(SplitMix64& rng, int num_factors) {
    using S = AmalgScalar<Ring>;
    auto draw = [&] {
        if constexpr (Ring::kExact)
            return random_rational_disc(rng);
        else
            return std::polar(rng.unit(), 2 * M_PI * rng.unit());
    };
    AmalgSymbol<S> eps(draw());
    for (int k = 1; k <= num_factors; ++k)
        eps.set(k, draw());
    return eps;
}

template <class Ring>
AmalgElement<AmalgScalar<Ring>> draw_amalg_element(SplitMix64& rng, const FuzzProfile& prof,
                                                   const AlgebraSpec<AmalgScalar<Ring>>& spec) {
    const AmalgProfile ap{prof.max_len, prof.max_terms,
                          Ring::kExact ? CoeffLaw::grid : CoeffLaw::gaussian};
    return amalg_random(ap, rng.next(), spec);
}

// A single elementary tensor with a random coefficient (possibly the scalar 1).
template <class Ring>
AmalgElement<AmalgScalar<Ring>> draw_amalg_monomial(SplitMix64& rng, const FuzzProfile& prof,
                                                    const AlgebraSpec<AmalgScalar<Ring>>& spec,
                                                    TensorWord* word_out) {
    using S = AmalgScalar<Ring>;
    const int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(prof.max_len) + 1));
    TensorWord w;
    int prev = 0;
    for (int j = 0; j < len; ++j) {
        int factor;
        do {
            factor = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.num_factors()))) + 1;
        } while (factor == prev && spec.num_factors() > 1);
        if (factor == prev)
            break;
        w.push_back({factor, static_cast<int>(rng.below(
                                 static_cast<std::uint64_t>(spec.factor(factor - 1).centered_dim)))});
        prev = factor;
    }
    S c = draw_disc<Ring>(rng);
    if (coeff_is_zero(c))
        c = S(1);
    *word_out = w;
    if (w.empty())
        return AmalgElement<S>::unit(c);
    return AmalgElement<S>::monomial(w, c);
}

struct Trial {
    bool hypothesis_ok = true;
    bool pass = false;
    double residual = 0.0;
    std::string witness;
};

template <class Ring, class Residual>
void finish_group(Trial& t, const Residual& res, const json& inputs) {
    t.residual = max_abs_coeff(res);
    t.pass = Ring::kExact ? res.is_zero() : t.residual <= kFloatResidualTol;
    if (!t.pass) {
        json w = inputs;
        w["residual"] = t.residual;
        w["residual_element"] = element_to_json(res);
        t.witness = w.dump();
    }
}

template <class Ring, class S>
void finish_amalg(Trial& t, const AmalgElement<S>& res, const json& inputs) {
    t.residual = amalg_max_abs(res);
    t.pass = Ring::kExact ? res.is_zero() : t.residual <= kFloatResidualTol;
    if (!t.pass) {
        json w = inputs;
        w["residual"] = t.residual;
        w["residual_element"] = amalg_to_json(res);
        t.witness = w.dump();
    }
}

template <class Ring, class S>
void merge_amalg(Trial& t, const AmalgElement<S>& res, const json& inputs) {
    Trial sub;
    finish_amalg<Ring>(sub, res, inputs);
    if (t.witness.empty())
        t.witness = sub.witness;
    t.pass = t.pass && sub.pass;
    t.residual = std::max(t.residual, sub.residual);
}

template <class Ring, class Residual>
void merge_group(Trial& t, const Residual& res, const json& inputs) {
    Trial sub;
    finish_group<Ring>(sub, res, inputs);
    if (t.witness.empty())
        t.witness = sub.witness;
    t.pass = t.pass && sub.pass;
    t.residual = std::max(t.residual, sub.residual);
}

// --- the per-identity trial ----------------------------------------------------

template <class Ring>
Trial run_trial(IdentityId id, const FuzzProfile& prof, std::uint64_t seed) {
    using namespace identities;
    using S = AmalgScalar<Ring>;
    SplitMix64 rng(seed);
    Trial t;
    t.pass = true;

    switch (id) {
    case IdentityId::ghid1_i:
    case IdentityId::ghid1_ii:
    case IdentityId::ghid1_iii: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto g = draw_amalg_element<Ring>(rng, prof, spec);
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const auto eps2 = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const json inputs{{"g", amalg_to_json(g)}};
        if (id == IdentityId::ghid1_i)
            finish_amalg<Ring>(t, ghid1_i_residual(g, eps, spec), inputs);
        else if (id == IdentityId::ghid1_ii)
            finish_amalg<Ring>(t, ghid1_ii_residual(g, eps), inputs);
        else
            finish_amalg<Ring>(t, ghid1_iii_residual(g, eps, eps2), inputs);
        break;
    }
    case IdentityId::ghid_iv:
    case IdentityId::ghid_v: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        TensorWord gw, hw;
        const auto g = draw_amalg_monomial<Ring>(rng, prof, spec, &gw);
        const auto h = draw_amalg_monomial<Ring>(rng, prof, spec, &hw);
        // (iv) needs g not fully absorbed from the left in g^* h; (v) needs h
        // not fully absorbed, which is again a left-prefix condition on the
        // index words (the adjoint of the (iv) hypothesis).
        if (id == IdentityId::ghid_iv ? factors_prefix_lt(gw, hw) : factors_prefix_lt(hw, gw)) {
            t.hypothesis_ok = false;
            break;
        }
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const json inputs{{"g", amalg_to_json(g)}, {"h", amalg_to_json(h)}};
        if (id == IdentityId::ghid_iv)
            finish_amalg<Ring>(t, ghid_iv_residual(g, h, eps, spec), inputs);
        else
            finish_amalg<Ring>(t, ghid_v_residual(g, h, eps, spec), inputs);
        break;
    }
    case IdentityId::ghid_vi: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        TensorWord gw, hw;
        const auto g = draw_amalg_monomial<Ring>(rng, prof, spec, &gw);
        const auto h = draw_amalg_monomial<Ring>(rng, prof, spec, &hw);
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const auto eps2 = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        finish_amalg<Ring>(t, ghid_vi_residual(g, h, eps, eps2, spec),
                           json{{"g", amalg_to_json(g)}, {"h", amalg_to_json(h)}});
        break;
    }
    case IdentityId::cotlar_amalg: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto x = draw_amalg_element<Ring>(rng, prof, spec);
        const auto y = draw_amalg_element<Ring>(rng, prof, spec);
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const auto eps2 = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        finish_amalg<Ring>(t, cotlar_amalg_residual(x, y, eps, eps2, spec),
                           json{{"x", amalg_to_json(x)}, {"y", amalg_to_json(y)}});
        break;
    }
    case IdentityId::diag_bounds: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto x = draw_amalg_element<Ring>(rng, prof, spec);
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const S base = amalg_trace(amalg_mul(x, amalg_adjoint(x, spec), spec));
        double worst = 0.0;
        bool ok = true;
        for (const S& q : diag_quantities(x, eps, spec)) {
            if constexpr (Ring::kExact) {
                const mpq_class lhs2 = scalar_abs2(q);
                const mpq_class rhs2 = base.re * base.re;
                if (lhs2 > rhs2) {
                    ok = false;
                    worst = std::max(worst, std::sqrt(lhs2.get_d()) - base.re.get_d());
                }
            } else {
                const double excess = std::sqrt(scalar_abs2(q)) - std::abs(base);
                if (excess > kFloatResidualTol) {
                    ok = false;
                    worst = std::max(worst, excess);
                }
            }
        }
        t.pass = ok;
        t.residual = worst;
        if (!ok)
            t.witness = json{{"x", amalg_to_json(x)}, {"excess", worst}}.dump();
        break;
    }
    case IdentityId::paraid_sharp:
    case IdentityId::paraid_dagger:
    case IdentityId::idsharp: {
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto x = draw_amalg_element<Ring>(rng, prof, spec);
        const auto y = draw_amalg_element<Ring>(rng, prof, spec);
        const auto eps = draw_amalg_symbol<Ring>(rng, prof.num_gens);
        const json inputs{{"x", amalg_to_json(x)}, {"y", amalg_to_json(y)}};
        if (id == IdentityId::paraid_sharp)
            finish_amalg<Ring>(t, paraid_sharp_residual(x, y, eps, spec), inputs);
        else if (id == IdentityId::paraid_dagger)
            finish_amalg<Ring>(t, paraid_dagger_residual(x, y, eps, spec), inputs);
        else
            finish_amalg<Ring>(t, idsharp_residual(x, y, spec), inputs);
        break;
    }
    case IdentityId::cotlar_free: {
        const auto x = draw_element<Ring>(rng, prof);
        const auto y = draw_element<Ring>(rng, prof);
        const auto eps = draw_gen_symbol<Ring>(rng, prof.num_gens, false);
        const auto eps2 = draw_gen_symbol<Ring>(rng, prof.num_gens, false);
        finish_group<Ring>(t, cotlar_free_residual(x, y, eps, eps2),
                           json{{"x", element_to_json(x)},
                                {"y", element_to_json(y)},
                                {"eps", symbol_to_json(eps)},
                                {"eps2", symbol_to_json(eps2)}});
        break;
    }
    case IdentityId::cotlar_Ld: {
        const int d = prof.block_d;
        const int gens = std::min(prof.num_gens, 3);
        const auto eps = draw_block_symbol<Ring>(rng, gens, d);
        FuzzProfile p2 = prof;
        p2.num_gens = gens;
        const auto x = draw_element<Ring>(rng, p2);
        finish_group<Ring>(t, cotlar_block_residual(x, eps, d),
                           json{{"x", element_to_json(x)}, {"d", d}});
        break;
    }
    case IdentityId::gromov_carre: {
        const int kappa = carre_kappa();
        const auto x = draw_element<Ring>(rng, prof);
        const auto y = draw_element<Ring>(rng, prof);
        const auto eps = draw_gen_symbol<Ring>(rng, prof.num_gens, true);
        const json inputs{{"x", element_to_json(x)}, {"y", element_to_json(y)}};
        merge_group<Ring>(t, gromov_carre_residual(x, y, kappa), inputs);
        merge_group<Ring>(t, carre_generator_residual(x, y), inputs);
        merge_group<Ring>(t, carre_isometry_residual(x, y, eps), inputs);
        break;
    }
    case IdentityId::idTn:
    case IdentityId::sumTn: {
        const PathPartition part =
            prof.partition == PartitionKind::greedy
                ? greedy_partition(prof.num_gens, prof.radius, rng.next())
                : concrete_partition(prof.num_gens, prof.radius);
        const auto x = draw_element<Ring>(rng, prof, prof.radius - 1);
        const json inputs{{"x", element_to_json(x)}};
        if (id == IdentityId::sumTn) {
            finish_group<Ring>(t, sumTn_residual(part, x), inputs);
            break;
        }
        bool any = false;
        for (int n = 0; n < part.num_paths(); ++n) {
            if (path_project(part, n, PathProj::T, x).is_zero())
                continue;
            any = true;
            merge_group<Ring>(t, idTn_residual(part, n, x), inputs);
        }
        if (!any)
            merge_group<Ring>(t, idTn_residual(part, 0, x), inputs);
        break;
    }
    case IdentityId::lemma_new_Ek: {
        const PathPartition part = concrete_partition(prof.num_gens, prof.radius);
        const auto x = draw_element<Ring>(rng, prof, prof.radius - 1);
        std::int32_t k =
            static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(prof.num_gens))) + 1;
        if (rng.below(2))
            k = -k;
        finish_group<Ring>(t, lemma_new_residual(part, k, x),
                           json{{"x", element_to_json(x)}, {"k", k}});
        break;
    }
    case IdentityId::main2_intertwine: {
        const auto x = draw_element<Ring>(rng, prof);
        const auto eps = draw_gen_symbol<Ring>(rng, prof.num_gens, false);
        finish_group<Ring>(t, main2_intertwine_residual(x, eps, prof.num_gens),
                           json{{"x", element_to_json(x)}, {"eps", symbol_to_json(eps)}});
        break;
    }
    case IdentityId::resolution_of_identity: {
        const auto x = draw_element<Ring>(rng, prof);
        merge_group<Ring>(t, resolution_residual(x), json{{"x", element_to_json(x)}});
        // The free-product resolution E + sum_k L(k) = id.
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto a = draw_amalg_element<Ring>(rng, prof, spec);
        auto sum = amalg_expect(a);
        for (int k = 1; k <= spec.num_factors(); ++k)
            sum = sum + amalg_project(AmalgProj::L, k, a);
        merge_amalg<Ring>(t, a - sum, json{{"a", amalg_to_json(a)}});
        break;
    }
    case IdentityId::paraproduct_decomposition: {
        const auto x = draw_element<Ring>(rng, prof);
        const auto y = draw_element<Ring>(rng, prof);
        merge_group<Ring>(t, paraproduct_decomposition_residual(x, y),
                          json{{"x", element_to_json(x)}, {"y", element_to_json(y)}});
        const auto spec = draw_amalg_spec<Ring>(rng, prof.num_gens);
        const auto a = draw_amalg_element<Ring>(rng, prof, spec);
        const auto b = draw_amalg_element<Ring>(rng, prof, spec);
        const auto sharp = amalg_paraproduct(a, b, AmalgPara::sharp, spec);
        const auto dagger = amalg_paraproduct(a, b, AmalgPara::dagger, spec);
        const auto ab = amalg_mul(a, b, spec);
        const json inputs{{"a", amalg_to_json(a)}, {"b", amalg_to_json(b)}};
        merge_amalg<Ring>(t, ab - (sharp + dagger + amalg_expect(ab)), inputs);
        merge_amalg<Ring>(t, dagger - amalg_dagger_direct(a, b, spec), inputs);
        break;
    }
    }
    return t;
}

} // namespace

FuzzReport fuzz(IdentityId id, const FuzzProfile& profile, int trials, std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("fuzz: trials must be >= 1");
    FuzzReport report;
    report.id = id;
    report.arith = profile.arith;
    report.trials = trials;
    report.seed = seed;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t trial_seed = split_seed(seed, static_cast<std::uint64_t>(trial));
        Trial t;
        for (int attempt = 0;; ++attempt) {
            if (attempt > 64)
                throw std::runtime_error("fuzz: hypothesis guard kept rejecting draws");
            t = profile.arith == Arith::exact
                    ? run_trial<RationalRing>(id, profile,
                                              split_seed(trial_seed, static_cast<std::uint64_t>(attempt)))
                    : run_trial<FloatRing>(id, profile,
                                           split_seed(trial_seed, static_cast<std::uint64_t>(attempt)));
            if (t.hypothesis_ok)
                break;
            ++report.redraws;
        }
        report.max_residual = std::max(report.max_residual, t.residual);
        if (t.pass)
            ++report.passes;
        else if (!report.witness)
            report.witness = t.witness;
    }
    return report;
}

// --- the Carre du champ normalization oracle -----------------------------------

int resolve_carre_kappa(int num_gens, int max_len) {
    const std::vector<Word> ball = enumerate_ball(num_gens, max_len);
    bool fits1 = true, fits2 = true;
    for (const Word& g : ball) {
        for (const Word& h : ball) {
            const ElementQ x = ElementQ::monomial(g, RatComplex(1));
            const ElementQ y = ElementQ::monomial(h, RatComplex(1));
            if (!identities::gromov_carre_residual(x, y, 1).is_zero())
                fits1 = false;
            if (!identities::gromov_carre_residual(x, y, 2).is_zero())
                fits2 = false;
            if (!fits1 && !fits2)
                throw std::runtime_error("carre kappa oracle: neither normalization fits");
        }
    }
    if (fits1 == fits2)
        throw std::runtime_error("carre kappa oracle: normalization is ambiguous");
    return fits1 ? 1 : 2;
}

int carre_kappa() {
    static const int kappa = [] {
        const int resolved = resolve_carre_kappa();
        if (resolved != kPinnedCarreKappa)
            throw std::runtime_error("carre kappa oracle disagrees with the pinned value");
        return resolved;
    }();
    return kappa;
}

// --- the constant ledger ---------------------------------------------------------

double theoretical_bound(BoundKind kind, double p) {
    if (!(p > 1.0))
        throw std::invalid_argument("theoretical_bound: p must be > 1");
    switch (kind) {
    case BoundKind::c: {
        if (p < 2.0)
            return theoretical_bound(BoundKind::c, p / (p - 1.0));
        if (p == 2.0)
            return 1.0;
        // Climb the dyadic ladder to the first exponent q = 2^k >= p, then
        // interpolate: c_p <= c_q^theta with theta = (1 - 2/p)/(1 - 2/q).
        double q = 2.0, c = 1.0;
        while (q < p * (1.0 - 1e-12)) {
            c = c + std::sqrt(2.0 * c * c + 4.0);
            q *= 2.0;
        }
        const double theta = (1.0 - 2.0 / p) / (1.0 - 2.0 / q);
        return std::pow(c, theta);
    }
    case BoundKind::alpha: {
        if (!(p > 2.0))
            throw std::invalid_argument("theoretical_bound: alpha needs p > 2");
        if (p < 4.0) {
            const double c4 = theoretical_bound(BoundKind::c, 4.0);
            return 3.0 * c4 * c4;
        }
        const double ch = theoretical_bound(BoundKind::c, p / 2.0);
        return 2.0 * std::sqrt(2.0) * (ch * ch + ch);
    }
    case BoundKind::beta: {
        if (!(p > 2.0))
            throw std::invalid_argument("theoretical_bound: beta needs p > 2");
        return std::sqrt(2.0) * theoretical_bound(BoundKind::c, p) *
               (1.0 + theoretical_bound(BoundKind::alpha, p));
    }
    }
    throw std::invalid_argument("theoretical_bound: unknown kind");
}

double bound_growth_exponent() {
    return std::log1p(std::sqrt(2.0)) / std::log(2.0);
}

} // namespace fht
