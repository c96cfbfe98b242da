#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "fht/amalg.hpp"
#include "fht/element.hpp"
#include "fht/lp.hpp"
#include "fht/multipliers.hpp"
#include "fht/paths.hpp"

namespace fht {

using json = nlohmann::json;

inline json word_to_json(const Word& w) {
    return json(w.letters());
}

inline Word word_from_json(const json& j) {
    return Word::from_reduced(j.get<std::vector<std::int32_t>>());
}

// Rationals travel as "num/den" strings to stay exact.
inline json coeff_to_json(const RatComplex& c) {
    return json{{"re", c.re.get_str()}, {"im", c.im.get_str()}};
}
inline json coeff_to_json(const std::complex<double>& c) {
    return json{{"re", c.real()}, {"im", c.imag()}};
}
inline json coeff_to_json(const Eigen::MatrixXcd& m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json rre = json::array(), rim = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rre.push_back(m(r, c).real());
            rim.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rre));
        im.push_back(std::move(rim));
    }
    return json{{"re", re}, {"im", im}};
}

template <class Ring>
json element_to_json(const Element<Ring>& x) {
    json terms = json::array();
    for (const auto& [w, c] : x.terms())
        terms.push_back(json{{"word", word_to_json(w)}, {"c", coeff_to_json(c)}});
    json out{{"ring", Ring::kName}, {"terms", std::move(terms)}};
    if constexpr (std::is_same_v<Ring, MatrixRing>)
        out["dim"] = x.dim();
    return out;
}

using AnyElement = std::variant<ElementQ, ElementC, ElementM>;

AnyElement element_from_json(const json& j);

template <class S>
json symbol_to_json(const Symbol<S>& sym) {
    json out;
    switch (sym.kind()) {
    case SymbolKind::generator: out["kind"] = "gen"; break;
    case SymbolKind::length_block: out["kind"] = "lenblock"; break;
    case SymbolKind::letter: out["kind"] = "letter"; break;
    }
    out["d"] = sym.block_length();
    out["e"] = coeff_to_json(sym.unit());
    json entries = json::array();
    for (const auto& [k, v] : sym.gen_entries())
        entries.push_back(json{{"k", k}, {"c", coeff_to_json(v)}});
    for (const auto& [h, v] : sym.word_entries())
        entries.push_back(json{{"word", word_to_json(h)}, {"c", coeff_to_json(v)}});
    out["entries"] = std::move(entries);
    return out;
}

template <class Scalar>
json algebra_spec_to_json(const AlgebraSpec<Scalar>& spec) {
    json factors = json::array();
    for (int k = 0; k < spec.num_factors(); ++k) {
        const auto& f = spec.factor(k);
        json unit = json::array(), prod = json::array(), star = json::array();
        for (int i = 0; i < f.centered_dim; ++i) {
            json urow = json::array(), prow = json::array(), srow = json::array();
            for (int j = 0; j < f.centered_dim; ++j) {
                urow.push_back(coeff_to_json(f.unit_part[i][j]));
                json cell = json::array();
                for (int m = 0; m < f.centered_dim; ++m)
                    cell.push_back(coeff_to_json(f.prod_part[i][j][m]));
                prow.push_back(std::move(cell));
                srow.push_back(coeff_to_json(f.star_part[i][j]));
            }
            unit.push_back(std::move(urow));
            prod.push_back(std::move(prow));
            star.push_back(std::move(srow));
        }
        factors.push_back(json{{"label", f.label},
                               {"centered_dim", f.centered_dim},
                               {"unit_part", std::move(unit)},
                               {"prod_part", std::move(prod)},
                               {"star_part", std::move(star)}});
    }
    return json{{"factors", std::move(factors)}};
}

template <class Scalar>
json amalg_to_json(const AmalgElement<Scalar>& x) {
    json terms = json::array();
    for (const auto& [w, c] : x.terms()) {
        json slots = json::array();
        for (const auto& s : w)
            slots.push_back(json{{"factor", s.factor}, {"basis", s.basis}});
        terms.push_back(json{{"word", std::move(slots)}, {"c", coeff_to_json(c)}});
    }
    return json{{"scalar", coeff_to_json(x.scalar_part())}, {"terms", std::move(terms)}};
}

inline json norm_report_to_json(const NormReport& r) {
    json out{{"p", std::isinf(r.p) ? json("inf") : json(r.p)},
             {"method", method_name(r.method)},
             {"value", r.value}};
    if (r.radius > 0)
        out["radius"] = r.radius;
    if (!std::isnan(r.error_indicator))
        out["error_indicator"] = r.error_indicator;
    return out;
}

inline json partition_to_json(const PathPartition& part) {
    json paths = json::array();
    for (const auto& p : part.paths) {
        json nodes = json::array();
        for (const auto& w : p.nodes)
            nodes.push_back(word_to_json(w));
        paths.push_back(std::move(nodes));
    }
    json out{{"kind", part.kind == PartitionKind::greedy ? "greedy" : "powers"},
             {"num_gens", part.num_gens},
             {"radius", part.radius},
             {"paths", std::move(paths)}};
    if (part.kind == PartitionKind::greedy)
        out["seed"] = part.seed;
    return out;
}

} // namespace fht
