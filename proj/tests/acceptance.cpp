// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run via ctest (target: acceptance) or directly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fht/experiments.hpp"
#include "fht/serialize.hpp"
#include "fht/verify.hpp"

using namespace fht;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// 1. Cotlar exactness: 1000 seeded exact trials per variant, rational
//    unit-disc symbols including non-unimodular ones, residual exactly zero.
void criterion_1() {
    FuzzProfile profile; // exact, len <= 5, support <= 6, disc-sampled eps
    bool ok = true;
    std::ostringstream detail;
    for (IdentityId id : {IdentityId::cotlar_free, IdentityId::cotlar_amalg}) {
        const auto t0 = std::chrono::steady_clock::now();
        const FuzzReport report = fuzz(id, profile, 1000, 20250810);
        const double elapsed = seconds_since(t0);
        ok = ok && report.pass() && report.max_residual == 0.0 && elapsed < 60.0;
        detail << identity_name(id) << ": " << report.passes << "/1000 in "
               << fmt(elapsed) << "s  ";
    }
    criterion(1, "Cotlar identities exactly zero over 1000 exact trials", ok, detail.str());
}

// 2. Full identity suite: 500 exact trials each; gromov_carre runs after the
//    one-time kappa sweep over all words of length <= 4.
void criterion_2() {
    bool ok = true;
    std::ostringstream detail;
    const int kappa = resolve_carre_kappa(2, 4);
    ok = ok && kappa == kPinnedCarreKappa && carre_kappa() == kappa;
    detail << "kappa=" << kappa << "  ";
    FuzzProfile profile;
    int worst_passes = 500;
    for (IdentityId id : all_identities()) {
        FuzzProfile p = profile;
        if (id == IdentityId::cotlar_Ld) {
            for (int d : {1, 2, 3}) {
                p.block_d = d;
                const FuzzReport r = fuzz(id, p, 500, 77000 + d);
                ok = ok && r.pass() && r.max_residual == 0.0;
                worst_passes = std::min(worst_passes, r.passes);
            }
            continue;
        }
        const FuzzReport r = fuzz(id, p, 500, 1000 + static_cast<int>(id));
        ok = ok && r.pass() && r.max_residual == 0.0;
        worst_passes = std::min(worst_passes, r.passes);
    }
    detail << "min passes " << worst_passes << "/500 across "
           << all_identities().size() << " identities (cotlar_Ld at d=1,2,3)";
    criterion(2, "full identity suite passes 500 exact trials per identity", ok, detail.str());
}

// 3. L2 isometry: ||H_eps x||_2 = ||x||_2 and H_eps H_{eps^*} = id exactly.
void criterion_3() {
    bool ok = true;
    SplitMix64 rng(33);
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const ElementQ x =
            random_element<RationalRing>({5, 6, 3, CoeffLaw::grid}, rng.next());
        SymbolQ sym = SymbolQ::generator_signed(random_rational_circle(rng));
        for (int k = 1; k <= 3; ++k) {
            sym.set(k, random_rational_circle(rng));
            sym.set(-k, random_rational_circle(rng));
        }
        sym.declare_unimodular();
        const ElementQ hx = hilbert_free(x, sym);
        ok = ok && l2_norm_sq(hx) == l2_norm_sq(x);
        ok = ok && hilbert_free(hx, sym.conjugated()) == x;
    }
    criterion(3, "unimodular transforms: exact L2 isometry and involution pair, 500 trials",
              ok, "");
}

// 4. Moment oracle: central binomials on both sides, spectral matches moments.
void criterion_4() {
    bool ok = true;
    std::ostringstream detail;
    const ElementQ s = ElementQ::monomial(Word::generator(1), RatComplex(1)) +
                       ElementQ::monomial(Word::generator(-1), RatComplex(1));
    const long expected[] = {2, 6, 20, 70, 252};
    for (int m = 1; m <= 5; ++m)
        ok = ok && moment_even(s, m) == expected[m - 1];
    detail << "group side 2,6,20,70,252 ";

    const AlgebraSpec<RatComplex> spec(
        {factor_cyclic<RatComplex>(2), factor_cyclic<RatComplex>(2)});
    const AmalgQ u = AmalgQ::monomial({{1, 0}}, RatComplex(1));
    const AmalgQ v = AmalgQ::monomial({{2, 0}}, RatComplex(1));
    for (int m = 1; m <= 5; ++m)
        ok = ok && amalg_moment_even(u + v, m, spec) == RatComplex(expected[m - 1]);
    detail << "| free-Bernoulli side equal ";

    double worst = 0;
    SplitMix64 rng(44);
    int checked = 0;
    while (checked < 50) {
        const ElementQ x = random_element<RationalRing>({2, 4, 2, CoeffLaw::grid}, rng.next());
        if (x.is_zero())
            continue;
        ++checked;
        const double exact = moment_even(x, 2).get_d();
        const int radius = 2 * std::max<int>(1, static_cast<int>(x.max_support_length()));
        const double spectral = std::pow(norm_spectral(x, 4.0, radius).value, 4.0);
        worst = std::max(worst, std::abs(spectral - exact) / std::max(1.0, exact));
    }
    ok = ok && worst <= 1e-9;
    detail << "| spectral vs moment rel err " << fmt(worst);
    criterion(4, "moment oracle and spectral agreement", ok, detail.str());
}

// 5. Operator-norm convergence against the tridiagonal truncation oracle.
void criterion_5() {
    bool ok = true;
    double prev = 0, worst = 0;
    const ElementQ s = ElementQ::monomial(Word::generator(1), RatComplex(1)) +
                       ElementQ::monomial(Word::generator(-1), RatComplex(1));
    for (int radius = 2; radius <= 20; ++radius) {
        // The radius-R ball over one generator spans 2R+1 words; the
        // compressed operator is the path-graph adjacency matrix with top
        // eigenvalue 2cos(pi/(2R+2)).
        const double oracle = 2.0 * std::cos(M_PI / (2 * radius + 2));
        const double value = op_lower(s, radius).value;
        worst = std::max(worst, std::abs(value - oracle));
        ok = ok && std::abs(value - oracle) <= 1e-9;
        ok = ok && value > prev && value < 2.0;
        prev = value;
    }
    criterion(5, "op_lower matches 2cos(pi/(2R+2)) within 1e-9 and increases to 2, R=2..20",
              ok, "max dev " + fmt(worst));
}

// 6. Bound respect: hilbert_ratio within [1/c_p, c_p] at p in {4, 8, 16}.
void criterion_6() {
    ExperimentConfig cfg;
    cfg.name = "hilbert_ratio";
    cfg.p_list = {4.0, 8.0, 16.0};
    cfg.trials = 200;
    cfg.seed = 606;
    cfg.profile = {3, 4, 3, CoeffLaw::circle};
    const ExperimentResult res = run_experiment(cfg);
    std::ostringstream detail;
    bool ok = res.ok;
    for (double p : cfg.p_list) {
        const auto& s = res.summary["stats"][fmt(p).c_str()];
        const double bound = theoretical_bound(BoundKind::c, p);
        ok = ok && s["max"].get<double>() <= bound && s["min"].get<double>() >= 1.0 / bound;
    }
    const double c4 = theoretical_bound(BoundKind::c, 4.0);
    const double c8 = theoretical_bound(BoundKind::c, 8.0);
    ok = ok && std::abs(c4 - (1.0 + std::sqrt(6.0))) <= 1e-12;
    ok = ok && std::abs(c8 - (c4 + std::sqrt(2 * c4 * c4 + 4))) <= 1e-12;
    detail << "c_4=" << fmt(c4) << " c_8=" << fmt(c8) << " slope "
           << fmt(res.summary["loglog_slope_max_ratio"].get<double>()) << " vs gamma "
           << fmt(bound_growth_exponent());
    criterion(6, "hilbert_ratio respects the ledger bounds at p=4,8,16 (200 trials)", ok,
              detail.str());
}

// 7. Khintchine/Parseval: exact identity at p = 2, two-sided bound at p = 4.
void criterion_7() {
    ExperimentConfig cfg;
    cfg.name = "khintchine";
    cfg.p_list = {2.0, 4.0};
    cfg.trials = 200;
    cfg.seed = 707;
    cfg.profile = {3, 5, 2, CoeffLaw::grid};
    const ExperimentResult res = run_experiment(cfg);
    bool ok = res.ok;
    const double bound = std::sqrt(2.0) * theoretical_bound(BoundKind::c, 4.0);
    const auto& s4 = res.summary["stats"]["4"];
    ok = ok && s4["max"].get<double>() <= bound && s4["min"].get<double>() >= 1.0 / bound;
    const auto& s2 = res.summary["stats"]["2"];
    ok = ok && s2["min"].get<double>() == 1.0 && s2["max"].get<double>() == 1.0;
    criterion(7, "square-function identity exact at p=2; p=4 ratios within sqrt2*c_4", ok,
              "p=4 in [" + fmt(s4["min"].get<double>()) + ", " + fmt(s4["max"].get<double>()) +
                  "] vs " + fmt(bound));
}

// 8. Haagerup sanity: op_lower(x, R) <= (d+1)||x||_2 on length-d supports.
void criterion_8() {
    bool ok = true;
    SplitMix64 rng(88);
    double worst_margin = 1e9;
    for (int d : {1, 2, 3}) {
        int checked = 0;
        while (checked < 100) {
            const ElementQ x = project_length_eq(
                d, random_element<RationalRing>({d, 6, 2, CoeffLaw::circle}, rng.next()));
            if (x.is_zero())
                continue;
            ++checked;
            const double bound = (d + 1) * l2_norm(x);
            const std::vector<int> radii =
                d <= 2 ? std::vector<int>{d, d + 1, d + 2} : std::vector<int>{d, d + 1};
            for (int radius : radii) {
                const double value = op_lower(x, radius).value;
                worst_margin = std::min(worst_margin, bound - value);
                ok = ok && value <= bound * (1 + 1e-12);
            }
        }
    }
    criterion(8, "op_lower never exceeds (d+1)||x||_2 on 100 length-d samples, d=1,2,3", ok,
              "min margin " + fmt(worst_margin));
}

// 9. Commutator probe: the truncated [R_{g1}, lambda_{g2 g1}] rank stabilizes.
void criterion_9() {
    const Word h = Word::generator(1);
    const ElementQ x = ElementQ::monomial(Word::from_reduced({2, 1}), RatComplex(1));
    bool ok = true;
    std::ostringstream detail;
    int prev = -1;
    for (int radius = 4; radius <= 7; ++radius) {
        const int rank = commutator_rank(h, x, radius);
        detail << "R" << radius << ":" << rank << " ";
        if (prev >= 0)
            ok = ok && rank == prev;
        prev = rank;
    }
    criterion(9, "truncated commutator rank identical across R=4..7", ok, detail.str());
}

// 10. Determinism: identical config, byte-identical CSV.
void criterion_10() {
    ExperimentConfig cfg;
    cfg.name = "hilbert_ratio";
    cfg.p_list = {2.0, 4.0};
    cfg.trials = 40;
    cfg.seed = 1010;
    const ExperimentResult a = run_experiment(cfg);
    const ExperimentResult b = run_experiment(cfg);
    bool ok = a.csv == b.csv && a.summary == b.summary;

    const auto dir_a = std::filesystem::temp_directory_path() / "fht_acc_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "fht_acc_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    cfg.out_dir = dir_a;
    emit_report(a, cfg);
    cfg.out_dir = dir_b;
    emit_report(b, cfg);
    std::ifstream fa(dir_a / "hilbert_ratio.csv", std::ios::binary);
    std::ifstream fb(dir_b / "hilbert_ratio.csv", std::ios::binary);
    const std::string ca((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    const std::string cb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    ok = ok && !ca.empty() && ca == cb;
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    criterion(10, "experiment reruns produce byte-identical CSV", ok, "");
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%s: %d/10 criteria passed in %.1fs\n", g_failures == 0 ? "PASS" : "FAIL",
                10 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
