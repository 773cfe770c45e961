#include "latspec/classifier.hpp"

#include "latspec/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Product rule on the unit sphere S^{n-1}: Gauss in the polar angles (with the
// sin^k Jacobian folded into the weights), trapezoid in the azimuth.
struct SphereRule {
    std::vector<Eigen::VectorXd> dirs;
    std::vector<double> weights;
};

SphereRule sphere_rule(int n) {
    SphereRule r;
    if (n == 1) {
        r.dirs = {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};
        r.weights = {1.0, 1.0};
        return r;
    }
    const int nphi = n == 2 ? 96 : 48;
    const int ntheta = n <= 3 ? 24 : 12;
    const Rule theta = gauss_on(0.0, kPi, ntheta);
    // odometer over n-2 polar angles
    std::vector<int> idx(static_cast<std::size_t>(n - 2), 0);
    while (true) {
        for (int k = 0; k < nphi; ++k) {
            const double phi = 2.0 * kPi * (k + 0.5) / nphi;
            Eigen::VectorXd x(n);
            double w = 2.0 * kPi / nphi;
            double radial = 1.0;
            for (int i = 0; i < n - 2; ++i) {
                const double th = theta.nodes[idx[i]];
                x(i) = radial * std::cos(th);
                w *= theta.weights[idx[i]] * std::pow(std::sin(th), n - 2 - i);
                radial *= std::sin(th);
            }
            x(n - 2) = radial * std::cos(phi);
            x(n - 1) = radial * std::sin(phi);
            r.dirs.push_back(std::move(x));
            r.weights.push_back(w);
        }
        int i = 0;
        while (i < n - 2 && ++idx[i] == static_cast<int>(theta.size())) idx[i++] = 0;
        if (i == n - 2) break;
    }
    return r;
}

double f_at(const EigenState& s, const Eigen::VectorXd& coef, const Eigen::VectorXd& p) {
    const int n = s.params.n;
    double num = s.sector == Sector::Even ? coef(0) : 0.0;
    double e = -s.z;
    for (int j = 0; j < n; ++j) {
        const double half = std::sin(0.5 * p(j));
        e += 2.0 * half * half;
        num += s.sector == Sector::Even ? coef(j + 1) * std::cos(p(j)) : coef(j) * std::sin(p(j));
    }
    return num / e;
}

double shell_integral(const EigenState& s, const SphereRule& sphere, double q, double r_in, double r_out) {
    const int n = s.params.n;
    const Eigen::VectorXd coef = s.numerator_coefficients();
    const Rule radial = gauss_on(std::log(r_in), std::log(r_out), 16);
    Accumulator acc;
    Eigen::VectorXd p(n);
    for (std::size_t i = 0; i < radial.size(); ++i) {
        const double r = std::exp(radial.nodes[i]);
        const double jac = std::pow(r, n) * radial.weights[i];  // r^{n-1} dr = r^n d(log r)
        double row = 0.0;
        for (std::size_t k = 0; k < sphere.dirs.size(); ++k) {
            p = r * sphere.dirs[k];
            row += sphere.weights[k] * std::pow(std::abs(f_at(s, coef, p)), q);
        }
        acc.add(jac * row);
    }
    return acc.value();
}

}  // namespace

std::string to_string(Integrability c) {
    switch (c) {
        case Integrability::L2: return "L2";
        case Integrability::L1NotL2: return "L1\\L2";
        case Integrability::LepsNotL1: return "Leps\\L1";
        case Integrability::NotLeps: return "not-Leps";
    }
    return "?";
}

int vanishing_order(const EigenState& state, double tol) {
    if (state.sector == Sector::Odd) return 1;
    const Eigen::VectorXd c = state.numerator_coefficients();
    const double at0 = c.sum();
    return std::abs(at0) <= tol * std::max(1.0, c.lpNorm<Eigen::Infinity>()) ? 2 : 0;
}

Integrability integrability_class(int n, int order) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    if (order < 0 || order > 2) throw std::invalid_argument("vanishing order must be 0, 1 or 2");
    // |f| ~ |p|^{-m}, m = 2 - order; int |p|^{-m q} d^n p converges near 0 iff m q < n.
    const int m = 2 - order;
    if (2 * m < n) return Integrability::L2;
    if (m < n) return Integrability::L1NotL2;
    if (m <= n) return Integrability::LepsNotL1;
    return Integrability::NotLeps;
}

Integrability integrability_class(const EigenState& state) {
    if (state.z != 0.0) throw std::invalid_argument("integrability_class expects a threshold state (z = 0)");
    return integrability_class(state.params.n, vanishing_order(state));
}

IntegrabilityProbe probe_integrability(const EigenState& state, double q, int min_level, int max_level) {
    if (state.z != 0.0) throw std::invalid_argument("probe_integrability expects a threshold state (z = 0)");
    if (!(q > 0.0)) throw std::invalid_argument("probe exponent q must be positive");
    if (min_level < 2 || max_level < min_level + 4)
        throw std::invalid_argument("probe needs levels 2 <= min < max - 3");
    const int n = state.params.n;
    const SphereRule sphere = sphere_rule(n);
    IntegrabilityProbe pr;
    pr.q = q;
    pr.predicted_exponent = n + q * (vanishing_order(state) - 2);
    const double outer = 0.5;
    double core = shell_integral(state, sphere, q, std::ldexp(1.0, -min_level), outer);
    for (int k = min_level; k <= max_level; ++k) {
        const double h = std::ldexp(1.0, -k);
        if (k > min_level) {
            const double inc = shell_integral(state, sphere, q, h, 2.0 * h);
            pr.increments.push_back(inc);
            core += inc;
        }
        pr.radii.push_back(h);
        pr.integrals.push_back(core);
    }
    const std::size_t m = pr.increments.size();
    double ratio = 0.0;
    int used = 0;
    for (std::size_t i = m >= 5 ? m - 4 : 1; i < m; ++i) {
        ratio += pr.increments[i] / pr.increments[i - 1];
        ++used;
    }
    pr.observed_ratio = ratio / used;
    pr.divergent = pr.observed_ratio >= 0.9;
    return pr;
}

}  // namespace latspec
