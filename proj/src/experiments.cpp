#include "fht/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace fht {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json stats_of(const std::vector<double>& values) {
    if (values.empty())
        return json{{"count", 0}};
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return json{{"count", n}, {"min", sorted.front()}, {"max", sorted.back()}, {"median", median}};
}

// Least-squares slope of log(value) against log(p).
double loglog_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [p, v] : points) {
        const double x = std::log(p), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

constexpr double kRelTol = 1e-9;

template <class Ring>
Element<Ring> draw_nonzero(const ElementProfile& profile, SplitMix64& rng) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Element<Ring> x = random_element<Ring>(profile, rng.next());
        if (!x.is_zero())
            return x;
    }
    throw std::runtime_error("experiment: could not draw a nonzero element");
}

template <class Ring>
Symbol<typename Ring::Scalar> draw_unimodular_symbol(SplitMix64& rng, int num_gens) {
    using Sym = Symbol<typename Ring::Scalar>;
    Sym sym = [&] {
        if constexpr (Ring::kExact) {
            Sym s = Sym::generator_signed(random_rational_circle(rng));
            for (int k = 1; k <= num_gens; ++k) {
                s.set(k, random_rational_circle(rng));
                s.set(-k, random_rational_circle(rng));
            }
            return s;
        } else {
            Sym s = Sym::generator_signed(std::polar(1.0, 2 * M_PI * rng.unit()));
            for (int k = 1; k <= num_gens; ++k) {
                s.set(k, std::polar(1.0, 2 * M_PI * rng.unit()));
                s.set(-k, std::polar(1.0, 2 * M_PI * rng.unit()));
            }
            return s;
        }
    }();
    sym.declare_unimodular();
    return sym;
}

struct RowSink {
    std::string csv;
    void header(const std::string& h) { csv = h + "\n"; }
    template <class... Parts>
    void row(const Parts&... parts) {
        bool first = true;
        ((csv += (first ? "" : ",") + part_str(parts), first = false), ...);
        csv += "\n";
    }

private:
    static std::string part_str(const std::string& s) { return s; }
    static std::string part_str(const char* s) { return s; }
    static std::string part_str(double v) { return fmt(v); }
    static std::string part_str(int v) { return std::to_string(v); }
    static std::string part_str(std::size_t v) { return std::to_string(v); }
};

// --- individual experiments -----------------------------------------------------

template <class Ring>
ExperimentResult run_hilbert_ratio(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,terms,maxlen,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    json per_p = json::object();
    std::vector<std::pair<double, double>> max_points;
    for (double p : cfg.p_list) {
        const double bound = theoretical_bound(BoundKind::c, p);
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const Element<Ring> x = draw_nonzero<Ring>(cfg.profile, rng);
            const auto sym = draw_unimodular_symbol<Ring>(rng, cfg.profile.num_gens);
            const Element<Ring> hx = hilbert_free(x, sym);
            const double ratio = compute_norm(hx, p).value / compute_norm(x, p).value;
            ratios.push_back(ratio);
            sink.row(trial, p, x.support_size(), x.max_support_length(), ratio);
            if (ratio > bound * (1 + kRelTol) || ratio < (1 / bound) * (1 - kRelTol))
                out.ok = false;
        }
        json s = stats_of(ratios);
        s["bound_c"] = bound;
        per_p[fmt(p)] = s;
        max_points.emplace_back(p, *std::max_element(ratios.begin(), ratios.end()));
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    out.summary["loglog_slope_max_ratio"] = loglog_slope(max_points);
    out.summary["gamma"] = bound_growth_exponent();
    return out;
}

template <class Ring>
ExperimentResult run_khintchine(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,terms,maxlen,lhs,rhs,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    json per_p = json::object();
    for (double p : cfg.p_list) {
        const double bound = std::sqrt(2.0) * theoretical_bound(BoundKind::c, p);
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const Element<Ring> x = draw_nonzero<Ring>(cfg.profile, rng);
            std::vector<Element<Ring>> family;
            family.push_back(project_trace(x));
            for (int k = 1; k <= std::max<std::int32_t>(1, x.max_generator()); ++k) {
                family.push_back(project_left_prefix(Word::generator(k), x));
                family.push_back(project_left_prefix(Word::generator(-k), x));
            }
            double lhs, rhs, ratio;
            if (p == 2.0) {
                // Parseval row: ||x||_2^2 = |tau x|^2 + sum_h ||L_h x||_2^2.
                if constexpr (Ring::kExact) {
                    mpq_class rhs_exact = scalar_abs2(scalar_trace(x));
                    for (std::size_t j = 1; j < family.size(); ++j)
                        rhs_exact += l2_norm_sq(family[j]);
                    const mpq_class lhs_exact = l2_norm_sq(x);
                    if (lhs_exact != rhs_exact)
                        out.ok = false;
                    lhs = lhs_exact.get_d();
                    rhs = rhs_exact.get_d();
                } else {
                    lhs = l2_norm_sq(x);
                    rhs = scalar_abs2(scalar_trace(x));
                    for (std::size_t j = 1; j < family.size(); ++j)
                        rhs += l2_norm_sq(family[j]);
                    if (std::abs(lhs - rhs) > kFloatResidualTol * std::max(1.0, lhs))
                        out.ok = false;
                }
                ratio = rhs == 0 ? 1.0 : lhs / rhs;
            } else {
                lhs = square_function_norm(family, p, SquareMode::cr_max);
                rhs = compute_norm(x, p).value;
                ratio = lhs / rhs;
                if (ratio > bound * (1 + kRelTol) || ratio < (1 / bound) * (1 - kRelTol))
                    out.ok = false;
            }
            ratios.push_back(ratio);
            sink.row(trial, p, x.support_size(), x.max_support_length(), lhs, rhs, ratio);
        }
        json s = stats_of(ratios);
        s["bound"] = bound;
        per_p[fmt(p)] = s;
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    return out;
}

template <class Ring>
ExperimentResult run_rosenthal(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,terms,maxlen,norm_x,rhs,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    json per_p = json::object();
    const int n = cfg.profile.num_gens;
    for (double p : cfg.p_list) {
        if (!(p > 2.0))
            throw std::invalid_argument("rosenthal: p must be > 2");
        const double beta = theoretical_bound(BoundKind::beta, p);
        const double cp = theoretical_bound(BoundKind::c, p);
        const double lo = 1.0 / (beta * beta), hi = 2.0 * cp * cp + 2.0;
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Element<Ring> x = draw_nonzero<Ring>(cfg.profile, rng);
            x = x - project_trace(x); // a_k in L_{g_k}: trace part removed
            if (x.is_zero()) {
                sink.row(trial, p, 0, 0, 0.0, 0.0, 1.0);
                ratios.push_back(1.0);
                continue;
            }
            // The matrix term sum_{k,j} R_{g_j}(a_k) (x) e_{k,j}, with the
            // Schatten leg un-normalized: rescale by (2n)^{1/p}.
            const int dim = 2 * n;
            ElementM big(dim);
            int row = 0;
            for (int k = -n; k <= n; ++k) {
                if (k == 0)
                    continue;
                const Element<Ring> ak = project_left_prefix(Word::generator(k), x);
                int col = 0;
                for (int j = -n; j <= n; ++j) {
                    if (j == 0)
                        continue;
                    const Element<Ring> rjak = project_right_suffix(Word::generator(j), ak);
                    for (const auto& [w, c] : rjak.terms()) {
                        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
                        e(row, col) = to_complex(c);
                        big.add_term(w, e);
                    }
                    ++col;
                }
                ++row;
            }
            const double cterm =
                compute_norm(big, p).value * std::pow(static_cast<double>(dim), 1.0 / p);
            const double l2 = l2_norm(x);
            const double rhs = 2.0 * l2 + cterm;
            const double nx = compute_norm(x, p).value;
            const double ratio = rhs / nx;
            ratios.push_back(ratio);
            sink.row(trial, p, x.support_size(), x.max_support_length(), nx, rhs, ratio);
            if (ratio > hi * (1 + kRelTol) || ratio < lo * (1 - kRelTol))
                out.ok = false;
        }
        json s = stats_of(ratios);
        s["lower_bound"] = lo;
        s["upper_bound"] = hi;
        per_p[fmt(p)] = s;
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    return out;
}

template <class Ring>
ExperimentResult run_improvedfree(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,terms,maxlen,norm_x,mid,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    json per_p = json::object();
    for (double p : cfg.p_list) {
        const double hi = std::sqrt(2.0) * theoretical_bound(BoundKind::c, p);
        const double lo = p > 2.0 ? 1.0 / theoretical_bound(BoundKind::beta, p) : 1.0;
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const Element<Ring> x = draw_nonzero<Ring>(cfg.profile, rng);
            std::vector<Element<Ring>> family;
            family.push_back(project_trace(x));
            for (int k = 1; k <= std::max<std::int32_t>(1, x.max_generator()); ++k) {
                family.push_back(project_left_prefix(Word::generator(k), x));
                family.push_back(project_left_prefix(Word::generator(-k), x));
            }
            const double col = square_function_norm(family, p, SquareMode::column);
            const double mid = std::max(col, l2_norm(x));
            const double nx = compute_norm(x, p).value;
            const double ratio = mid / nx;
            ratios.push_back(ratio);
            sink.row(trial, p, x.support_size(), x.max_support_length(), nx, mid, ratio);
            if (p == 2.0) {
                if (std::abs(ratio - 1.0) > 1e-9)
                    out.ok = false;
            } else if (ratio > hi * (1 + kRelTol) || ratio < lo * (1 - kRelTol)) {
                out.ok = false;
            }
        }
        json s = stats_of(ratios);
        s["lower_bound"] = lo;
        s["upper_bound"] = hi;
        per_p[fmt(p)] = s;
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    return out;
}

template <class Ring>
ExperimentResult run_length_reduction(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,d,terms,maxlen,norm_x,iota,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    const int d = cfg.depth;
    json per_p = json::object();
    for (double p : cfg.p_list) {
        const double hi = std::pow(std::sqrt(2.0) * theoretical_bound(BoundKind::c, p),
                                   static_cast<double>(d));
        const double lo =
            p > 2.0 ? std::pow(theoretical_bound(BoundKind::beta, p), -static_cast<double>(d))
                    : 1.0;
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Element<Ring> x;
            for (int attempt = 0; attempt < 200 && x.is_zero(); ++attempt)
                x = project_length_gt(d - 1, draw_nonzero<Ring>(cfg.profile, rng));
            if (x.is_zero())
                throw std::runtime_error("length_reduction: profile too short for depth");
            const IotaReport iota = iota_norm(x, d, p);
            const double nx = compute_norm(x, p).value;
            const double ratio = iota.combined / nx;
            ratios.push_back(ratio);
            sink.row(trial, p, d, x.support_size(), x.max_support_length(), nx, iota.combined,
                     ratio);
            if (p == 2.0) {
                if (std::abs(ratio - 1.0) > 1e-9)
                    out.ok = false;
            } else if (ratio > hi * (1 + kRelTol) || ratio < lo * (1 - kRelTol)) {
                out.ok = false;
            }
        }
        json s = stats_of(ratios);
        s["lower_bound"] = lo;
        s["upper_bound"] = hi;
        per_p[fmt(p)] = s;
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    out.summary["depth"] = d;
    return out;
}

template <class Ring>
ExperimentResult run_lp_blocks(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,terms,maxlen,norm_x,sq_norm,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    const PathPartition part =
        cfg.partition == PartitionKind::greedy
            ? greedy_partition(cfg.profile.num_gens, cfg.radius, split_seed(cfg.seed, 1))
            : concrete_partition(cfg.profile.num_gens, cfg.radius);
    int max_dyadic = 0;
    while ((1 << (max_dyadic + 1)) <= cfg.radius)
        ++max_dyadic;
    json per_p = json::object();
    for (double p : cfg.p_list) {
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            ElementProfile prof = cfg.profile;
            prof.max_len = cfg.radius - 1;
            const Element<Ring> x = draw_nonzero<Ring>(prof, rng);
            std::vector<Element<Ring>> family;
            Element<Ring> reassembled(x.dim());
            for (int j = 0; j < part.num_paths(); ++j) {
                for (int n = 0; n <= max_dyadic; ++n) {
                    Element<Ring> block =
                        dyadic_block(part.paths[static_cast<std::size_t>(j)], n, x);
                    if (block.is_zero())
                        continue;
                    reassembled = reassembled + block;
                    family.push_back(std::move(block));
                }
            }
            // The dyadic blocks over all paths tile ball \ {e}.
            if (reassembled != x - project_trace(x))
                out.ok = false;
            const double sq =
                family.empty() ? 0.0 : square_function_norm(family, p, SquareMode::column);
            const double nx = compute_norm(x, p).value;
            const double ratio = sq / nx;
            ratios.push_back(ratio);
            sink.row(trial, p, x.support_size(), x.max_support_length(), nx, sq, ratio);
        }
        per_p[fmt(p)] = stats_of(ratios);
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    out.summary["partition"] = cfg.partition == PartitionKind::greedy ? "greedy" : "powers";
    return out;
}

template <class Ring>
ExperimentResult run_haagerup(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,d,R,norm2,op_lower,bound,ok");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    json per_d = json::object();
    for (int d = 1; d <= std::min(cfg.depth, 3); ++d) {
        std::vector<double> margins;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            ElementProfile prof = cfg.profile;
            prof.max_len = d;
            Element<Ring> x;
            for (int attempt = 0; attempt < 200 && x.is_zero(); ++attempt)
                x = project_length_eq(d, draw_nonzero<Ring>(prof, rng));
            const double l2 = l2_norm(x);
            const double bound = (d + 1) * l2;
            for (int radius : {d, d + 1, d + 2}) {
                const double op =
                    detail::spectral_value(spectrum_of(build_truncation(x, radius)),
                                           std::numeric_limits<double>::infinity());
                const bool row_ok = op <= bound * (1 + kRelTol);
                if (!row_ok)
                    out.ok = false;
                margins.push_back(bound - op);
                sink.row(trial, d, radius, l2, op, bound, row_ok ? 1 : 0);
            }
        }
        per_d[std::to_string(d)] = stats_of(margins);
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_d;
    return out;
}

} // namespace

// Rank of the ball-truncated commutator [R_h, x] acting on span(ball_R).
// Nonzero columns are collected into a compact dense block first.
int commutator_rank(const Word& h, const ElementQ& x, int radius) {
    const int gens = std::max({1, h.max_generator(), x.max_generator()});
    const std::vector<Word> ball = enumerate_ball(gens, radius);
    std::map<Word, int, WordOrder> index;
    for (std::size_t j = 0; j < ball.size(); ++j)
        index.emplace(ball[j], static_cast<int>(j));

    std::map<int, std::vector<std::pair<int, std::complex<double>>>> columns;
    for (std::size_t jv = 0; jv < ball.size(); ++jv) {
        const bool tail_v = ends_with(ball[jv], h);
        for (const auto& [g, c] : x.terms()) {
            const Word w = reduce_concat(g, ball[jv]);
            auto it = index.find(w);
            if (it == index.end())
                continue;
            const bool tail_w = ends_with(w, h);
            if (tail_w == tail_v)
                continue;
            columns[static_cast<int>(jv)].emplace_back(
                it->second, c.to_complex() * (tail_w ? 1.0 : -1.0));
        }
    }
    if (columns.empty())
        return 0;
    std::map<int, int> row_index;
    for (const auto& [col, entries] : columns)
        for (const auto& [row, val] : entries)
            row_index.emplace(row, 0);
    int r = 0;
    for (auto& [row, idx] : row_index)
        idx = r++;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, static_cast<int>(columns.size()));
    int col = 0;
    for (const auto& [jv, entries] : columns) {
        for (const auto& [row, val] : entries)
            m(row_index[row], col) += val;
        ++col;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0)
        return 0;
    int rank = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > 1e-9 * sv(0))
            ++rank;
    return rank;
}

namespace {

ExperimentResult run_commutator(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("R,rank");
    const Word h = Word::generator(1);
    const ElementQ x = ElementQ::monomial(
        Word::from_reduced({2, 1}), RatComplex(1)); // lambda_{g2 g1}
    std::vector<int> ranks;
    const int r_max = std::max(5, cfg.radius);
    for (int radius = 2; radius <= r_max; ++radius) {
        const int rank = commutator_rank(h, x, radius);
        ranks.push_back(rank);
        sink.row(radius, rank);
    }
    bool stabilized = true;
    for (int radius = 4; radius + 1 <= r_max; ++radius)
        if (ranks[static_cast<std::size_t>(radius - 2)] !=
            ranks[static_cast<std::size_t>(radius - 1)])
            stabilized = false;
    out.ok = stabilized;
    out.csv = std::move(sink.csv);
    out.summary["ranks"] = ranks;
    out.summary["stabilized_from_radius_4"] = stabilized;
    return out;
}

ExperimentResult run_cb_probe(const ExperimentConfig& cfg) {
    ExperimentResult out;
    out.name = cfg.name;
    RowSink sink;
    sink.header("trial,p,n,d,norm_x,norm_hx,ratio");
    SplitMix64 rng(split_seed(cfg.seed, 0));
    const int n = cfg.probe_gens;
    const int dim = std::max(cfg.matrix_dim, n);
    // The canonical witness sum_{i,j<=n} lambda(g_i g_j) (x) e_{ij}.
    ElementM x(dim);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(dim, dim);
            e(i - 1, j - 1) = 1.0;
            x.add_term(Word::from_reduced({i, j}), e);
        }
    }
    json per_p = json::object();
    for (double p : cfg.p_list) {
        const double nx = compute_norm(x, p).value;
        std::vector<double> ratios;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            SymbolC sym = SymbolC::length_block(2, std::complex<double>(1.0, 0.0));
            for (const Word& w : enumerate_ball(n, 2))
                if (w.length() == 2)
                    sym.set(w, std::complex<double>(rng.below(2) ? 1.0 : -1.0, 0.0));
            // Signs act on the matrix-ring element through the same multiplier.
            ElementM hx(dim);
            for (const auto& [w, c] : x.terms())
                hx.add_term(w, coeff_scale(sym.at_word(w.head(2)), c));
            const double nhx = compute_norm(hx, p).value;
            const double ratio = nhx / nx;
            ratios.push_back(ratio);
            sink.row(trial, p, n, dim, nx, nhx, ratio);
        }
        per_p[fmt(p)] = stats_of(ratios);
    }
    out.csv = std::move(sink.csv);
    out.summary["stats"] = per_p;
    out.summary["n"] = n;
    out.summary["dim"] = dim;
    return out;
}

template <class Ring>
ExperimentResult dispatch_ring(const ExperimentConfig& cfg) {
    if (cfg.name == "hilbert_ratio")
        return run_hilbert_ratio<Ring>(cfg);
    if (cfg.name == "khintchine")
        return run_khintchine<Ring>(cfg);
    if (cfg.name == "rosenthal")
        return run_rosenthal<Ring>(cfg);
    if (cfg.name == "improvedfree")
        return run_improvedfree<Ring>(cfg);
    if (cfg.name == "length_reduction")
        return run_length_reduction<Ring>(cfg);
    if (cfg.name == "lp_blocks")
        return run_lp_blocks<Ring>(cfg);
    if (cfg.name == "haagerup")
        return run_haagerup<Ring>(cfg);
    throw std::invalid_argument("unknown experiment '" + cfg.name + "'");
}

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{
        "hilbert_ratio", "khintchine", "rosenthal",  "improvedfree", "length_reduction",
        "lp_blocks",     "haagerup",   "commutator", "cb_probe"};
    return names;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    for (double p : cfg.p_list)
        if (!(p > 1.0))
            throw std::invalid_argument("experiment: p-list entries must be > 1");
    if (cfg.trials < 1)
        throw std::invalid_argument("experiment: trials must be >= 1");

    ExperimentResult result = [&] {
        if (cfg.name == "commutator")
            return run_commutator(cfg);
        if (cfg.name == "cb_probe")
            return run_cb_probe(cfg);
        if (cfg.ring == "rational")
            return dispatch_ring<RationalRing>(cfg);
        if (cfg.ring == "float") {
            ExperimentConfig c2 = cfg;
            if (c2.profile.law == CoeffLaw::circle || c2.profile.law == CoeffLaw::grid)
                c2.profile.law = CoeffLaw::gaussian;
            return dispatch_ring<FloatRing>(c2);
        }
        throw std::invalid_argument("experiment: ring must be rational or float");
    }();

    json echo{{"name", cfg.name},
              {"p_list", cfg.p_list},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"profile",
               {{"max_len", cfg.profile.max_len},
                {"max_terms", cfg.profile.max_terms},
                {"num_gens", cfg.profile.num_gens}}},
              {"radius", cfg.radius},
              {"depth", cfg.depth},
              {"ring", cfg.ring},
              {"partition", cfg.partition == PartitionKind::greedy ? "greedy" : "powers"}};
    result.summary["schema"] = "fht-experiment-v1";
    result.summary["config"] = std::move(echo);
    result.summary["ok"] = result.ok;
    return result;
}

void emit_report(const ExperimentResult& result, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    {
        std::ofstream csv(cfg.out_dir / (result.name + ".csv"), std::ios::binary);
        if (!csv)
            throw std::runtime_error("emit_report: cannot open csv output");
        csv << result.csv;
    }
    {
        std::ofstream js(cfg.out_dir / (result.name + "_summary.json"), std::ios::binary);
        if (!js)
            throw std::runtime_error("emit_report: cannot open summary output");
        js << result.summary.dump(2) << "\n";
    }
}

namespace {

bool agree_rec(const json& a, const json& b, double rel) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        return std::abs(x - y) <= rel * std::max({std::abs(x), std::abs(y), 1e-12});
    }
    if (a.is_object() && b.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key()))
                return false;
            if (!agree_rec(it.value(), b.at(it.key()), rel))
                return false;
        }
        return true;
    }
    return a == b;
}

} // namespace

bool summaries_agree(const json& pilot, const json& current, double rel_slack) {
    if (!pilot.contains("stats") || !current.contains("stats"))
        return false;
    return agree_rec(pilot.at("stats"), current.at("stats"), rel_slack);
}

} // namespace fht
