#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fht/identities.hpp"
#include "fht/paths.hpp"

namespace fht {

// Every equation of the source material as a named machine-checkable residual.
enum class IdentityId {
    ghid1_i,
    ghid1_ii,
    ghid1_iii,
    ghid_iv,
    ghid_v,
    ghid_vi,
    cotlar_amalg,
    cotlar_free,
    diag_bounds,
    paraid_sharp,
    paraid_dagger,
    idsharp,
    cotlar_Ld,
    gromov_carre,
    idTn,
    sumTn,
    lemma_new_Ek,
    main2_intertwine,
    resolution_of_identity,
    paraproduct_decomposition,
};

const std::vector<IdentityId>& all_identities();
const char* identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

enum class Arith { exact, floating };

// Residuals above this bound fail a float-arithmetic trial; exact trials must
// come out identically zero.
inline constexpr double kFloatResidualTol = 1e-10;

struct FuzzProfile {
    Arith arith = Arith::exact;
    int max_len = 5;   // word length (group side) / tensor length (product side)
    int max_terms = 6; // support size per drawn element
    int num_gens = 3;  // free generators / free-product factors
    int block_d = 2;   // depth for the length-block Cotlar identity
    PartitionKind partition = PartitionKind::greedy;
    int radius = 4; // partition ball for the path identities
};

struct FuzzReport {
    IdentityId id{};
    Arith arith = Arith::exact;
    int trials = 0;
    int passes = 0;
    int redraws = 0; // hypothesis-violating draws that were re-drawn
    double max_residual = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::string> witness; // first failing input bundle
    bool pass() const { return trials > 0 && passes == trials; }
};

// Runs check-identity on seeded random inputs; deterministic per seed.
FuzzReport fuzz(IdentityId id, const FuzzProfile& profile, int trials, std::uint64_t seed);

// --- normalization oracle for the Carre du champ sum -------------------------

// Exhaustive sweep over all pairs of words of length <= max_len: picks the
// kappa in {1, 2} for which sum_{h != e} (L_h x)^*(L_h y) = kappa Gamma(x, y)
// holds identically. Throws if neither or both fit.
int resolve_carre_kappa(int num_gens = 2, int max_len = 4);

// The pinned value asserted by all future runs.
inline constexpr int kPinnedCarreKappa = 1;

// Memoized oracle run; throws if the sweep disagrees with the pinned value.
int carre_kappa();

// --- the theoretical constant ledger -----------------------------------------

enum class BoundKind { c, alpha, beta };

// c: c_2 = 1, c_{2p} = c_p + sqrt(2 c_p^2 + 4) on dyadic exponents,
//    interpolation c_p <= c_q^theta (theta = (1-2/p)/(1-2/q)) in between,
//    duality c_p = c_{p/(p-1)} below 2.
// alpha: 3 c_4^2 on (2, 4), 2 sqrt2 (c_{p/2}^2 + c_{p/2}) from 4 on.
// beta: sqrt2 c_p (1 + alpha_p).
double theoretical_bound(BoundKind kind, double p);

// ln(1 + sqrt 2) / ln 2: the growth exponent of c_p.
double bound_growth_exponent();

} // namespace fht
