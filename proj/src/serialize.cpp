#include "fht/serialize.hpp"

namespace fht {

namespace {

RatComplex rat_coeff_from_json(const json& j) {
    return RatComplex(rational_from_string(j.at("re").get<std::string>()),
                      rational_from_string(j.at("im").get<std::string>()));
}

std::complex<double> float_coeff_from_json(const json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Eigen::MatrixXcd matrix_coeff_from_json(const json& j, int dim) {
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            m(r, c) = std::complex<double>(re.at(r).at(c).get<double>(),
                                           im.at(r).at(c).get<double>());
    return m;
}

} // namespace

AnyElement element_from_json(const json& j) {
    const std::string ring = j.at("ring").get<std::string>();
    if (ring == "rational") {
        ElementQ x;
        for (const auto& t : j.at("terms"))
            x.add_term(word_from_json(t.at("word")), rat_coeff_from_json(t.at("c")));
        return x;
    }
    if (ring == "float") {
        ElementC x;
        for (const auto& t : j.at("terms"))
            x.add_term(word_from_json(t.at("word")), float_coeff_from_json(t.at("c")));
        return x;
    }
    if (ring == "matrix") {
        const int dim = j.at("dim").get<int>();
        ElementM x(dim);
        for (const auto& t : j.at("terms"))
            x.add_term(word_from_json(t.at("word")), matrix_coeff_from_json(t.at("c"), dim));
        return x;
    }
    throw std::invalid_argument("element_from_json: unknown ring tag '" + ring + "'");
}

} // namespace fht
