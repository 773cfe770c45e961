#include "latspec/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latspec {

namespace {

template <unsigned N>
Rule make_rule() {
    static_assert(N % 2 == 0, "even rules only");
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    Rule r;
    r.nodes.reserve(N);
    r.weights.reserve(N);
    for (std::size_t i = x.size(); i-- > 0;) {
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.nodes.push_back(x[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

}  // namespace

const Rule& gauss_legendre(int q) {
    static const Rule r8 = make_rule<8>();
    static const Rule r12 = make_rule<12>();
    static const Rule r16 = make_rule<16>();
    static const Rule r20 = make_rule<20>();
    static const Rule r24 = make_rule<24>();
    static const Rule r32 = make_rule<32>();
    switch (q) {
        case 8: return r8;
        case 12: return r12;
        case 16: return r16;
        case 20: return r20;
        case 24: return r24;
        case 32: return r32;
        default: throw std::invalid_argument("gauss_legendre: unsupported rule size");
    }
}

Rule gauss_on(double lo, double hi, int q) {
    const Rule& base = gauss_legendre(q);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Rule r;
    r.nodes.resize(base.size());
    r.weights.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        r.nodes[i] = mid + half * base.nodes[i];
        r.weights[i] = half * base.weights[i];
    }
    return r;
}

Rule graded_rule(double len, double sigma, int levels, int q) {
    if (!(len > 0.0) || !(sigma > 0.0 && sigma < 1.0) || levels < 0)
        throw std::invalid_argument("graded_rule: bad parameters");
    std::vector<double> breaks{0.0};
    for (int k = levels; k >= 0; --k) breaks.push_back(len * std::pow(sigma, k));
    Rule r;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Rule piece = gauss_on(breaks[i], breaks[i + 1], q);
        r.nodes.insert(r.nodes.end(), piece.nodes.begin(), piece.nodes.end());
        r.weights.insert(r.weights.end(), piece.weights.begin(), piece.weights.end());
    }
    return r;
}

}  // namespace latspec
