#include "latspec/classifier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latspec {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

GreenValues greens_at(int n, double z, const QuadratureConfig& cfg) {
    return z == 0.0 ? green_threshold(n, cfg) : green_values(n, z, cfg);
}

Eigen::VectorXd moments_of(const EigenState& s, const GreenValues& g) {
    const int n = s.params.n;
    // At z = 0 for n <= 2 only states with w_0 = 0 and sum w_j = 0 exist, and then
    // G w = (0, lambda (c - d) w_j).
    if (s.sector == Sector::Even && s.z == 0.0 && n <= 2) {
        Eigen::VectorXd u = s.w;
        u(0) = 0.0;
        u.tail(n) *= s.params.lambda * require(g.c_minus_d, "c-d") / kSqrt2;
        return u;
    }
    const auto G = build_bs_matrix<double>(s.params, s.sector, g).entries;
    Eigen::VectorXd u = G * s.w;
    if (s.sector == Sector::Even) u.tail(n) /= kSqrt2;
    else u /= kSqrt2;
    return u;
}

}  // namespace

std::string to_string(FormulaId f) {
    switch (f) {
        case FormulaId::E1: return "e1";
        case FormulaId::E11: return "e11";
        case FormulaId::E2: return "e2";
        case FormulaId::EigenSin: return "eigen-Sin";
        case FormulaId::Z0: return "z0";
        case FormulaId::Z1: return "z1";
        case FormulaId::Z2: return "z2";
        case FormulaId::Sake: return "sake";
    }
    return "?";
}

Eigen::VectorXd EigenState::numerator_coefficients() const {
    const int n = params.n;
    Eigen::VectorXd c = w;
    if (sector == Sector::Even) {
        c(0) *= params.mu;
        c.tail(n) *= params.lambda / kSqrt2;
    } else {
        c *= params.lambda / kSqrt2;
    }
    return c;
}

double EigenState::numerator(const Eigen::Ref<const Eigen::VectorXd>& p) const {
    const int n = params.n;
    if (p.size() != n) throw std::invalid_argument("numerator: point has wrong dimension");
    const Eigen::VectorXd c = numerator_coefficients();
    double v = 0.0;
    if (sector == Sector::Even) {
        v = c(0);
        for (int j = 0; j < n; ++j) v += c(j + 1) * std::cos(p(j));
    } else {
        for (int j = 0; j < n; ++j) v += c(j) * std::sin(p(j));
    }
    return v;
}

double EigenState::evaluate(const Eigen::Ref<const Eigen::VectorXd>& p) const {
    return numerator(p) / (dispersion(p) - z);
}

std::vector<EigenState> eigenstates(const ModelParams& params, const EigenvalueRecord& record,
                                    const QuadratureConfig& cfg) {
    validate(params);
    const int n = params.n;
    if (!(record.z <= 0.0)) throw std::invalid_argument("eigenstates: z must be <= 0");
    const GreenValues g = greens_at(n, record.z, cfg);
    const bool threshold = record.z == 0.0;
    std::vector<EigenState> out;
    auto finish = [&](EigenState s) {
        s.params = params;
        s.z = record.z;
        s.moments = moments_of(s, g);
        out.push_back(std::move(s));
    };

    switch (record.origin) {
        case EigenOrigin::EvenRankR: {
            if (threshold && n <= 2)
                throw std::invalid_argument("no even threshold state from delta_r for n <= 2");
            EigenState s;
            s.sector = Sector::Even;
            s.w.resize(n + 1);
            const double a = require(g.a, "a"), b = require(g.b, "b");
            if (params.lambda != 0.0) {
                const double den = kSqrt2 * (1.0 - params.mu * a);
                if (den == 0.0) throw std::invalid_argument("eigenstates: 1 - mu a vanishes with lambda != 0");
                s.w(0) = params.lambda * n * b / den;
                s.w.tail(n).setOnes();
                s.formula = threshold ? FormulaId::Z0 : FormulaId::E1;
            } else {
                s.w(0) = 1.0;
                s.w.tail(n).setConstant(kSqrt2 * params.mu * b);
                s.formula = threshold ? FormulaId::Z1 : FormulaId::E11;
            }
            finish(std::move(s));
            break;
        }
        case EigenOrigin::EvenRankC: {
            if (n < 2) throw std::invalid_argument("delta_c states need n >= 2");
            for (int j = 1; j < n; ++j) {
                EigenState s;
                s.sector = Sector::Even;
                s.w = Eigen::VectorXd::Zero(n + 1);
                s.w(j) = 1.0;
                s.w(j + 1) = -1.0;
                s.formula = threshold ? FormulaId::Z2 : FormulaId::E2;
                finish(std::move(s));
            }
            break;
        }
        case EigenOrigin::Odd: {
            for (int j = 0; j < n; ++j) {
                EigenState s;
                s.sector = Sector::Odd;
                s.w = Eigen::VectorXd::Unit(n, j);
                s.formula = threshold ? FormulaId::Sake : FormulaId::EigenSin;
                finish(std::move(s));
            }
            break;
        }
    }
    return out;
}

double residual(const EigenState& state, const QuadratureConfig& cfg) {
    validate(state.params);
    const int n = state.params.n;
    const Eigen::Index expect = state.sector == Sector::Even ? n + 1 : n;
    if (state.w.size() != expect) throw std::invalid_argument("residual: coefficient vector has wrong length");
    const double wmax = state.w.lpNorm<Eigen::Infinity>();
    if (!(wmax > 0.0)) throw std::invalid_argument("residual: zero coefficient vector");
    if (!(state.z <= 0.0)) throw std::invalid_argument("residual: z must be <= 0");
    const GreenValues g = greens_at(n, state.z, cfg);

    if (state.sector == Sector::Even && state.z == 0.0 && n <= 2) {
        // Entries a, b, c, d diverge; only w_0 = 0, sum w_j = 0 is admissible and then
        // (G - I) w = (0, (lambda (c - d) - 1) w_j).
        const double eps = 1e-12 * wmax;
        if (std::abs(state.w(0)) > eps || std::abs(state.w.tail(n).sum()) > eps)
            throw std::invalid_argument("residual: state not admissible at the threshold for n <= 2");
        const double f = state.params.lambda * require(g.c_minus_d, "c-d") - 1.0;
        return std::abs(f) * state.w.tail(n).lpNorm<Eigen::Infinity>() / wmax;
    }
    const auto G = build_bs_matrix<double>(state.params, state.sector, g).entries;
    const Eigen::VectorXd r = G * state.w - state.w;
    return r.lpNorm<Eigen::Infinity>() / wmax;
}

}  // namespace latspec
