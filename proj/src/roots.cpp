#include "latspec/classifier.hpp"

#include "latspec/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <sstream>

namespace latspec {

namespace {

using Branch = std::function<double(double)>;

constexpr int kLadderOut = 60;    // |z| up to 2^60
constexpr int kLadderIn = 1020;   // |z| down to 2^-1020 (near-threshold roots for n <= 2)

[[noreturn]] void bracket_failure(const std::string& what, const std::vector<LadderSample>& table) {
    std::ostringstream msg;
    msg << "root bracketing failed for " << what << "; sign table:";
    for (const auto& s : table) msg << " (" << s.z << ", " << s.value << ")";
    throw NumericError(msg.str());
}

// f is monotone on (-inf, 0) with sign `at_inf` far out and the opposite sign near 0.
// Works in u = ln(-z): ladder u = k ln 2 from k = 0 outward or inward (steps grow past
// |k| = 60 since n = 2 roots can sit at |z| ~ 1e-100 and below), then TOMS 748 in u.
double monotone_root(const Branch& f, double at_inf, double root_tol, const std::string& what) {
    std::vector<LadderSample> table;
    auto g = [&](double u) { return f(-std::exp(u)); };
    auto eval = [&](int k) {
        const double z = -std::ldexp(1.0, k);
        const double v = f(z);
        table.push_back({z, v});
        return v;
    };
    auto same = [&](double v) { return v * at_inf > 0.0; };
    auto next = [](int k) { return std::abs(k) < 60 ? 1 : std::abs(k) / 4; };

    double v = eval(0);
    if (v == 0.0) return -1.0;
    // k_near is the ladder end closer to z = 0 (smaller u), k_far the end with sign at_inf
    int k_near, k_far;
    double f_near, f_far;
    if (same(v)) {
        // root in (-1, 0): move toward 0
        int k = 0;
        double fk = v;
        for (;;) {
            const int kn = k - next(k);
            if (kn < -kLadderIn) {
                std::ostringstream what_more;
                what_more << what << " (no sign change down to |z| = 2^-" << kLadderIn
                          << "; the root, if any, is below double range)";
                bracket_failure(what_more.str(), table);
            }
            const double vn = eval(kn);
            if (vn == 0.0) return -std::ldexp(1.0, kn);
            if (!same(vn)) {
                k_near = kn, f_near = vn;
                k_far = k, f_far = fk;
                break;
            }
            k = kn, fk = vn;
        }
    } else {
        int k = 0;
        double fk = v;
        for (;;) {
            const int kn = k + next(k);
            if (kn > kLadderOut) bracket_failure(what, table);
            const double vn = eval(kn);
            if (vn == 0.0) return -std::ldexp(1.0, kn);
            if (same(vn)) {
                k_far = kn, f_far = vn;
                k_near = k, f_near = fk;
                break;
            }
            k = kn, fk = vn;
        }
    }
    const double ua = k_near * std::log(2.0), ub = k_far * std::log(2.0);
    const double rel = std::max(root_tol, 8.0 * std::numeric_limits<double>::epsilon());
    auto stop = [rel](double a, double b) {
        return std::abs(b - a) <= std::max(rel, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a));
    };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(g, ua, ub, f_near, f_far, stop, iters);
    return -std::exp(0.5 * (r.first + r.second));
}

// lambda_inf(z) - lambda via a/b = 1 + (1 + z a)/(n b); keeps digits when lambda is close to 1
double lambda_inf_minus(const GreenValues& g, double lambda) {
    const double a = require(g.a, "a"), b = require(g.b, "b");
    return (1.0 - lambda) + (1.0 + g.z * a) / (g.n * b);
}

}  // namespace

std::string to_string(EigenOrigin o) {
    switch (o) {
        case EigenOrigin::EvenRankR: return "even-rank-r";
        case EigenOrigin::EvenRankC: return "even-rank-c";
        case EigenOrigin::Odd: return "odd";
    }
    return "?";
}

std::vector<EigenvalueRecord> negative_eigenvalues(const ModelParams& params, const ThresholdData& t,
                                                   const SolverConfig& cfg) {
    validate(params);
    if (t.n != params.n) throw std::invalid_argument("threshold data computed for a different n");
    const int n = params.n;
    const double lam = params.lambda, mu = params.mu;
    const double tol = cfg.region_tol;
    const double X = t.crit.lambda_inf0;
    auto green = [&](double z) { return green_values(n, z, cfg.quad); };

    std::vector<EigenvalueRecord> out;

    // delta_r = b H_z; its zeros are the crossings of the two hyperbola branches.
    const double f1 = X - lam, f2 = n - mu;
    const double h0 = (lam - X) * (mu - n) - n;
    const double left0 = (f1 > 0.0 && f2 > 0.0) ? h0 : -n;
    const double right0 = (f1 < 0.0 && f2 < 0.0) ? h0 : -n;
    if (left0 < -tol) {
        Branch left = [&](double z) {
            const GreenValues g = green(z);
            const double l = lambda_inf_minus(g, lam), m = (n - z) - mu;
            return (l > 0.0 && m > 0.0) ? l * m - n : -static_cast<double>(n);
        };
        out.push_back({monotone_root(left, 1.0, cfg.root_tol, "delta_r (left branch)"), 1, EigenOrigin::EvenRankR});
    }
    if (right0 > tol) {
        Branch right = [&](double z) {
            const GreenValues g = green(z);
            const double l = -lambda_inf_minus(g, lam), m = mu - (n - z);
            return (l > 0.0 && m > 0.0) ? l * m - n : -static_cast<double>(n);
        };
        out.push_back({monotone_root(right, -1.0, cfg.root_tol, "delta_r (right branch)"), 1, EigenOrigin::EvenRankR});
    }
    if (n >= 2 && lam - *t.crit.lambda_c > tol) {
        Branch fc = [&](double z) { return lam * require(green(z).c_minus_d, "c-d") - 1.0; };
        out.push_back({monotone_root(fc, -1.0, cfg.root_tol, "delta_c"), n - 1, EigenOrigin::EvenRankC});
    }
    if (lam - t.crit.lambda_s > tol) {
        Branch fs = [&](double z) { return lam * require(green(z).s, "s") - 1.0; };
        out.push_back({monotone_root(fs, -1.0, cfg.root_tol, "delta_s"), n, EigenOrigin::Odd});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.z < y.z; });
    return out;
}

std::vector<EigenvalueRecord> negative_eigenvalues(const ModelParams& params, const SolverConfig& cfg) {
    validate(params);
    return negative_eigenvalues(params, threshold_data(params.n, cfg.quad), cfg);
}

}  // namespace latspec
