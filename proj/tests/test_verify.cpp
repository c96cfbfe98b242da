#include "doctest.h"

#include <cmath>

#include "fht/serialize.hpp"
#include "fht/verify.hpp"

using namespace fht;

namespace {
Word w(std::vector<std::int32_t> ls) { return Word::from_reduced(std::move(ls)); }
ElementQ lam(std::vector<std::int32_t> ls, RatComplex c = RatComplex(1)) {
    return ElementQ::monomial(w(std::move(ls)), std::move(c));
}
} // namespace

TEST_CASE("identity names round-trip") {
    CHECK(all_identities().size() == 20);
    for (IdentityId id : all_identities()) {
        auto back = identity_from_name(identity_name(id));
        REQUIRE(back.has_value());
        CHECK(*back == id);
    }
    CHECK_FALSE(identity_from_name("nope").has_value());
}

TEST_CASE("free Cotlar identity on hand-checkable inputs") {
    // x = lambda_{g1}, y = lambda_{g1 g2}, +-1 signs.
    SymbolQ eps = SymbolQ::generator_signed(RatComplex(1));
    eps.set(1, RatComplex(-1));
    eps.set(2, RatComplex(1));
    eps.set(-1, RatComplex(1));
    eps.set(-2, RatComplex(-1));
    CHECK(identities::cotlar_free_residual(lam({1}), lam({1, 2}), eps, eps).is_zero());
    CHECK(identities::cotlar_free_residual(ElementQ(), ElementQ(), eps, eps).is_zero());

    // Non-unimodular rational-disc entries are covered by the identity too.
    SymbolQ half = SymbolQ::generator_signed(RatComplex(make_rational(1, 2), 0));
    half.set(1, RatComplex(make_rational(1, 3), make_rational(1, 3)));
    half.set(-1, RatComplex(0));
    CHECK(identities::cotlar_free_residual(lam({1}) + lam({-1, 2}), lam({1, 2}), half, half)
              .is_zero());
}

TEST_CASE("the uncentered Cotlar E-term needs the full transform in the defect") {
    // Reading the defect with eps_0 E(x) instead of H_eps(x) breaks the
    // identity: exhibit one witness.
    SymbolQ eps = SymbolQ::generator_signed(RatComplex(1));
    eps.set(1, RatComplex(-1));
    const ElementQ x = lam({1});
    const ElementQ y = lam({1});
    const ElementQ hx = hilbert_free(x, eps);
    const ElementQ hy = hilbert_free(y, eps);
    const ElementQ ys = adjoint(y);
    // Correct defect: (H_eps x - eps_0 x); corrupted: (eps_0 tau(x) - eps_0 x).
    const ElementQ good = hx - scale(eps.unit(), x);
    const ElementQ bad = scale(eps.unit(), project_trace(x) - x);
    const ElementQ rhs = hilbert_free(multiply(x, hilbert_free_op(ys, eps)), eps) +
                         hilbert_free_op(multiply(hx, ys), eps) -
                         hilbert_free_op(hilbert_free(multiply(x, ys), eps), eps);
    const ElementQ lhs_good =
        multiply(hx, adjoint(hy)) - project_trace(multiply(good, adjoint(good)));
    const ElementQ lhs_bad =
        multiply(hx, adjoint(hy)) - project_trace(multiply(bad, adjoint(bad)));
    CHECK((lhs_good - rhs).is_zero());
    CHECK_FALSE((lhs_bad - rhs).is_zero());
}

TEST_CASE("block Cotlar uses the suffix-side transform; the literal form fails") {
    SplitMix64 rng(4242);
    bool prefix_form_failed = false;
    for (int trial = 0; trial < 40; ++trial) {
        SymbolQ sym = SymbolQ::length_block(2, RatComplex(rng.below(2) ? 1 : -1));
        for (const Word& h : enumerate_ball(2, 2))
            if (h.length() == 2)
                sym.set(h, RatComplex(rng.below(2) ? 1 : -1));
        ElementQ x = random_element<RationalRing>({4, 5, 2, CoeffLaw::grid}, 7000 + trial);
        CHECK(identities::cotlar_block_residual(x, sym, 2).is_zero());
        if (!identities::cotlar_block_residual_prefix_form(x, sym, 2).is_zero())
            prefix_form_failed = true;
    }
    CHECK(prefix_form_failed);
}

TEST_CASE("hypothesis example for the prefix-restricted identity") {
    // g in factor 2, h in factor 1: the index word of g is not a prefix of h's.
    auto spec = AlgebraSpec<RatComplex>(
        {factor_cyclic<RatComplex>(2), factor_cyclic<RatComplex>(2)});
    const AmalgQ g = AmalgQ::monomial({{2, 0}}, RatComplex(1));
    const AmalgQ h = AmalgQ::monomial({{1, 0}}, RatComplex(1));
    AmalgSymbol<RatComplex> eps;
    eps.set(1, RatComplex(make_rational(1, 2), make_rational(1, 2)));
    eps.set(2, RatComplex(-1));
    CHECK(identities::ghid_iv_residual(g, h, eps, spec).is_zero());
    CHECK(factors_prefix_lt({{1, 0}}, {{1, 0}, {2, 0}}));
    CHECK_FALSE(factors_prefix_lt({{2, 0}}, {{1, 0}, {2, 0}}));
    CHECK(factors_suffix_lt({{2, 0}}, {{1, 0}, {2, 0}}));
}

TEST_CASE("the right-sided prefix identity needs the left-prefix guard") {
    // With three factors: g spanning (1,2,3) and h in factor 1. The index word
    // of h is a left-prefix of g's, so h is fully absorbed in g^* h and the
    // last-factor weight changes; the identity fails even though h's tuple is
    // not a right-tail of g's.
    auto spec = AlgebraSpec<RatComplex>({factor_cyclic<RatComplex>(2),
                                         factor_cyclic<RatComplex>(2),
                                         factor_cyclic<RatComplex>(4)});
    const AmalgQ g = AmalgQ::monomial({{1, 0}, {2, 0}, {3, 1}}, RatComplex(1));
    const AmalgQ h = AmalgQ::monomial({{1, 0}}, RatComplex(1));
    AmalgSymbol<RatComplex> eps;
    eps.set(1, RatComplex(-1));
    eps.set(2, RatComplex(make_rational(1, 2), 0));
    eps.set(3, RatComplex::i());
    CHECK_FALSE(factors_suffix_lt({{1, 0}}, {{1, 0}, {2, 0}, {3, 1}}));
    CHECK_FALSE(identities::ghid_v_residual(g, h, eps, spec).is_zero());

    // A genuine right-tail pair is harmless: h spanning (2,3) glues nowhere.
    const AmalgQ h2 = AmalgQ::monomial({{2, 0}, {3, 1}}, RatComplex(1));
    CHECK(identities::ghid_v_residual(g, h2, eps, spec).is_zero());
    // And any pair with h's tuple not a left-prefix of g's satisfies (v).
    const AmalgQ h3 = AmalgQ::monomial({{2, 0}}, RatComplex(1));
    CHECK(identities::ghid_v_residual(g, h3, eps, spec).is_zero());
}

TEST_CASE("carre kappa oracle resolves to 1") {
    CHECK(resolve_carre_kappa(2, 3) == 1);
    CHECK(carre_kappa() == 1);
    // kappa = 2 visibly fails on a one-letter example.
    CHECK_FALSE(identities::gromov_carre_residual(lam({1}), lam({1}), 2).is_zero());
}

TEST_CASE("every identity passes a short exact fuzz run") {
    FuzzProfile profile; // exact, len <= 5, support <= 6
    profile.max_len = 4;
    profile.max_terms = 4;
    for (IdentityId id : all_identities()) {
        FuzzReport report = fuzz(id, profile, 60, 0xfeed + static_cast<int>(id));
        INFO(identity_name(id));
        CHECK(report.pass());
        CHECK(report.max_residual == 0.0);
    }
}

TEST_CASE("identities hold in float arithmetic within tolerance") {
    FuzzProfile profile;
    profile.arith = Arith::floating;
    profile.max_len = 3;
    profile.max_terms = 4;
    for (IdentityId id : all_identities()) {
        FuzzReport report = fuzz(id, profile, 15, 99);
        INFO(identity_name(id));
        CHECK(report.pass());
        CHECK(report.max_residual <= kFloatResidualTol);
    }
}

TEST_CASE("fuzz reports are deterministic and count redraws") {
    FuzzProfile profile;
    profile.max_len = 3;
    profile.max_terms = 3;
    FuzzReport a = fuzz(IdentityId::ghid_iv, profile, 40, 1234);
    FuzzReport b = fuzz(IdentityId::ghid_iv, profile, 40, 1234);
    CHECK(a.passes == b.passes);
    CHECK(a.redraws == b.redraws);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.pass());
    // Guard rejections do occur for the prefix-hypothesis identities.
    FuzzReport c = fuzz(IdentityId::ghid_iv, profile, 300, 5);
    CHECK(c.redraws > 0);
}

TEST_CASE("path identities hold for both partition kinds") {
    for (PartitionKind kind : {PartitionKind::greedy, PartitionKind::powers}) {
        FuzzProfile profile;
        profile.partition = kind;
        profile.num_gens = 2;
        profile.radius = 4;
        profile.max_len = 3;
        for (IdentityId id : {IdentityId::idTn, IdentityId::sumTn}) {
            FuzzReport report = fuzz(id, profile, 40, 31337);
            INFO(identity_name(id));
            CHECK(report.pass());
        }
    }
}

TEST_CASE("constant ledger evaluates the recursion") {
    CHECK(theoretical_bound(BoundKind::c, 2.0) == 1.0);
    CHECK(theoretical_bound(BoundKind::c, 4.0) ==
          doctest::Approx(1.0 + std::sqrt(6.0)).epsilon(1e-12));
    const double c4 = 1.0 + std::sqrt(6.0);
    const double c8 = c4 + std::sqrt(2.0 * c4 * c4 + 4.0);
    CHECK(theoretical_bound(BoundKind::c, 8.0) == doctest::Approx(c8).epsilon(1e-12));
    CHECK(c8 == doctest::Approx(8.7218).epsilon(1e-4));

    // Duality and interpolation.
    CHECK(theoretical_bound(BoundKind::c, 4.0 / 3.0) ==
          doctest::Approx(theoretical_bound(BoundKind::c, 4.0)));
    const double c3 = theoretical_bound(BoundKind::c, 3.0);
    CHECK(c3 > 1.0);
    CHECK(c3 < c4);
    CHECK(theoretical_bound(BoundKind::c, 3.0) ==
          doctest::Approx(std::pow(c4, (1.0 - 2.0 / 3.0) / (1.0 - 2.0 / 4.0))));

    // alpha and beta compose from c.
    CHECK(theoretical_bound(BoundKind::alpha, 3.0) == doctest::Approx(3.0 * c4 * c4));
    CHECK(theoretical_bound(BoundKind::alpha, 4.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0) * 2.0)); // c_2 = 1
    CHECK(theoretical_bound(BoundKind::beta, 4.0) ==
          doctest::Approx(std::sqrt(2.0) * c4 * (1.0 + 4.0 * std::sqrt(2.0) / 2.0 * 2.0)));
    CHECK_THROWS_AS(theoretical_bound(BoundKind::c, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(theoretical_bound(BoundKind::alpha, 2.0), std::invalid_argument);
}

TEST_CASE("c_p grows like p^gamma") {
    const double gamma = bound_growth_exponent();
    CHECK(gamma == doctest::Approx(1.2715533).epsilon(1e-6));
    double lo = 1e9, hi = 0;
    for (double p = 2.0; p <= 1024.0; p *= 2.0) {
        const double ratio = theoretical_bound(BoundKind::c, p) / std::pow(p, gamma);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(lo > 0.2);
    CHECK(hi < 2.0);
    // The tail slope of the dyadic ladder settles on gamma.
    const double slope = (std::log(theoretical_bound(BoundKind::c, 1024.0)) -
                          std::log(theoretical_bound(BoundKind::c, 512.0))) /
                         std::log(2.0);
    CHECK(slope == doctest::Approx(gamma).epsilon(1e-6));
}
