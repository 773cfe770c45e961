#include "latspec/verify.hpp"

#include "latspec/classifier.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace latspec {

namespace {

class Check {
public:
    Check(std::string name, double threshold) { r_.name = std::move(name), r_.threshold = threshold; }

    // error must stay <= threshold
    void error(double e, const std::string& where = {}) {
        if (!(e <= r_.threshold)) fail(where);
        if (std::isnan(e) || e > r_.worst_error) r_.worst_error = e;
    }
    // predicate with a margin recorded as "error" (negative margin = violation)
    void require(bool ok, double margin, const std::string& where = {}) {
        if (!ok) fail(where);
        r_.worst_error = std::max(r_.worst_error, -margin);
    }
    CheckResult result() const { return r_; }

private:
    void fail(const std::string& where) {
        if (r_.passed && !where.empty()) r_.detail = "first failure at " + where;
        r_.passed = false;
    }
    CheckResult r_;
};

std::vector<double> log_ladder(double from, double to, int count) {
    // from, to < 0; ascending in z
    std::vector<double> z;
    const double l0 = std::log10(-from), l1 = std::log10(-to);
    for (int i = 0; i < count; ++i) z.push_back(-std::pow(10.0, l0 + (l1 - l0) * i / (count - 1)));
    return z;
}

std::string at(int n, double z) {
    std::ostringstream s;
    s << "n=" << n << ", z=" << z;
    return s.str();
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify_identities(int n_lo, int n_hi, int samples, const QuadratureConfig& cfg) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("verify_identities: bad n range");
    if (samples < 2) throw std::invalid_argument("verify_identities: need at least 2 samples");
    VerifyReport rep;
    rep.suite = "identities";
    Check ab("a - b = (1 + z a)/n", 1e-9), alpha("alpha = (n - z) b", 1e-9), gamma("a alpha - n b^2 = b", 1e-9);
    Check as("a s = b (n = 1)", 1e-9), appa("s = 1 + z (a + b) (n = 1)", 1e-9);
    Check asb("a s < b (n >= 2)", 0.0), cds("c - d < s (n >= 2)", 0.0);
    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<GreenValues> pts;
        for (double z : log_ladder(-50.0, -1e-4, samples)) pts.push_back(green_values(n, z, cfg));
        if (n >= 2) pts.push_back(green_threshold(n, cfg));  // the inequalities extend to z = 0
        for (const auto& g : pts) {
            const std::string w = at(n, g.z);
            if (g.z < 0.0) {
                const double a = *g.a, b = *g.b, z = g.z, al = *g.alpha();
                ab.error(std::abs(a - b - (1.0 + z * a) / n), w);
                alpha.error(std::abs(al - (n - z) * b), w);
                gamma.error(std::abs(*g.gamma() - b), w);
                if (n == 1) {
                    as.error(std::abs(a * *g.s - b), w);
                    appa.error(std::abs(*g.s - (1.0 + z * (a + b))), w);
                }
            }
            if (n >= 2) {
                if (g.a && g.b) {
                    const double margin = *g.b - *g.a * *g.s;
                    asb.require(margin > 0.0, margin, w);
                }
                const double m2 = *g.s - *g.c_minus_d;
                cds.require(m2 > 0.0, m2, w);
            }
        }
    }
    for (const Check* c : {&ab, &alpha, &gamma}) rep.checks.push_back(c->result());
    if (n_lo == 1) {
        rep.checks.push_back(as.result());
        rep.checks.push_back(appa.result());
    }
    if (n_hi >= 2) {
        rep.checks.push_back(asb.result());
        rep.checks.push_back(cds.result());
    }
    return rep;
}

VerifyReport verify_factorization(int n_lo, int n_hi, int samples, std::uint64_t seed, const QuadratureConfig& cfg) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("verify_factorization: bad n range");
    if (samples < 1) throw std::invalid_argument("verify_factorization: need samples >= 1");
    VerifyReport rep;
    rep.suite = "factorization";
    Check fact("det(G_e - I) = delta_r delta_c (relative)", 1e-8);
    Check hyp("delta_r = b H_z", 1e-9);
    Check odd("det(G_o - I) = (lambda s - 1)^n (relative)", 1e-12);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coupling(-5.0, 5.0), logz(std::log(1e-3), std::log(10.0));
    for (int n = n_lo; n <= n_hi; ++n) {
        for (int i = 0; i < samples; ++i) {
            const ModelParams p{n, coupling(rng), coupling(rng)};
            const double z = -std::exp(logz(rng));
            const GreenValues g = green_values(n, z, cfg);
            std::ostringstream w;
            w << "n=" << n << ", lambda=" << p.lambda << ", mu=" << p.mu << ", z=" << z;
            const auto Ge = build_bs_matrix<double>(p, Sector::Even, g).entries;
            const double det = (Ge - Eigen::MatrixXd::Identity(n + 1, n + 1)).partialPivLu().determinant();
            const double dr = delta_r(p, g).value, dc = delta_c(p, g);
            const double prod = dr * dc;
            const double scale = std::max(std::abs(det), std::abs(prod));
            fact.error(scale > 0.0 ? std::abs(det - prod) / scale : 0.0, w.str());
            const HyperbolaPoint h = hyperbola(p, g);
            hyp.error(std::abs(dr - *g.b * h.value) / std::max(1.0, std::abs(dr)), w.str());
            const auto Go = build_bs_matrix<double>(p, Sector::Odd, g).entries;
            const double dodd = (Go - Eigen::MatrixXd::Identity(n, n)).partialPivLu().determinant();
            const double ds = delta_s(p, g);
            odd.error(std::abs(dodd - ds) / std::max(std::abs(ds), 1e-300), w.str());
        }
    }
    rep.checks = {fact.result(), hyp.result(), odd.result()};
    return rep;
}

VerifyReport verify_monotonicity(int n_lo, int n_hi, int points, const QuadratureConfig& cfg) {
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("verify_monotonicity: bad n range");
    if (points < 3) throw std::invalid_argument("verify_monotonicity: need at least 3 points");
    VerifyReport rep;
    rep.suite = "monotonicity";
    Check pos("a, b, alpha, c - d, s positive", 0.0);
    Check inc("a, b, alpha, c - d, s strictly increasing", 0.0);
    Check vanish("integrals below 1e-3 at z = -1e4", 1e-3);
    Check ratio_dec("a/b strictly decreasing", 0.0);
    Check ratio_inf("a/b above 1e3 at z = -1e4", 0.0);
    Check sign("finite-difference (a/b)' < 0", 0.0);
    Check lim12("a/b within 5e-2 of 1 at z = -1e-6 (n = 1, 2)", 5e-2);
    Check lim3("a/b within 1e-2 (relative) of a(0)/b(0) at z = -1e-6 (n >= 3)", 1e-2);
    Check dr_inf("delta_r within 1e-2 of 1 at z = -1e4", 1e-2);
    Check dr_lim("delta_r limit 1 - mu/n on the limiting hyperbola at z = -1e-8 (n = 1, 2)", 1e-3);

    for (int n = n_lo; n <= n_hi; ++n) {
        const auto zs = log_ladder(-1e4, -1e-6, points);
        std::vector<GreenValues> gs;
        for (double z : zs) gs.push_back(green_values(n, z, cfg));
        auto quantities = [n](const GreenValues& g) {
            std::vector<double> q{*g.a, *g.b, *g.alpha(), *g.s};
            if (n >= 2) q.push_back(*g.c_minus_d);
            return q;
        };
        for (std::size_t i = 0; i < gs.size(); ++i) {
            const auto q = quantities(gs[i]);
            for (double v : q) pos.require(v > 0.0, v, at(n, zs[i]));
            if (i > 0) {
                const auto prev = quantities(gs[i - 1]);
                for (std::size_t k = 0; k < q.size(); ++k) inc.require(q[k] > prev[k], q[k] - prev[k], at(n, zs[i]));
                const double r = *gs[i].a / *gs[i].b, rp = *gs[i - 1].a / *gs[i - 1].b;
                ratio_dec.require(r < rp, rp - r, at(n, zs[i]));
            }
        }
        for (double v : quantities(gs.front())) vanish.error(v, at(n, zs.front()));
        const double rinf = *gs.front().a / *gs.front().b;
        ratio_inf.require(rinf > 1e3, rinf - 1e3, at(n, zs.front()));
        for (std::size_t i = 1; i + 1 < zs.size(); ++i) {
            const double z = zs[i], h = 1e-3 * std::abs(z);
            const GreenValues up = green_values(n, z + h, cfg), dn = green_values(n, z - h, cfg);
            const double d = (*up.a / *up.b - *dn.a / *dn.b) / (2.0 * h);
            sign.require(d < 0.0, -d, at(n, z));
        }
        const double r0 = *gs.back().a / *gs.back().b;
        if (n <= 2) {
            lim12.error(std::abs(r0 - 1.0), at(n, zs.back()));
        } else {
            const GreenValues g0 = green_threshold(n, cfg);
            const double X = *g0.a / *g0.b;
            lim3.error(std::abs(r0 - X) / X, at(n, zs.back()));
        }
        for (double lam : {-5.0, -1.0, 2.0, 5.0})
            for (double mu : {-5.0, 1.0, 5.0}) {
                const double v = delta_r({n, lam, mu}, gs.front()).value;
                dr_inf.error(std::abs(v - 1.0), at(n, zs.front()));
            }
        if (n <= 2) {
            const GreenValues g = green_values(n, -1e-8, cfg);
            for (double t : {-2.0, -0.5, 0.5, 2.0}) {
                const ModelParams p{n, 1.0 + t, n + n / t};
                const double v = delta_r(p, g).value;
                dr_lim.error(std::abs(v - (1.0 - p.mu / n)), at(n, -1e-8));
            }
        }
    }
    rep.checks = {pos.result(), inc.result(), vanish.result(), ratio_dec.result(), ratio_inf.result(), sign.result()};
    if (n_lo <= 2) rep.checks.push_back(lim12.result());
    if (n_hi >= 3) rep.checks.push_back(lim3.result());
    rep.checks.push_back(dr_inf.result());
    if (n_lo <= 2) rep.checks.push_back(dr_lim.result());
    return rep;
}

VerifyReport verify_oracle(const ModelParams& params, const std::vector<int>& ladder, const OracleConfig& cfg) {
    VerifyReport rep;
    rep.suite = "oracle";
    const OracleComparison cmp = compare(params, ladder, cfg);
    for (const auto& l : cmp.levels) {
        CheckResult c;
        c.name = "count below theta at L=" + std::to_string(l.L);
        c.passed = l.counts_agree;
        c.threshold = 0.0;
        c.worst_error = l.matched_errors.empty() ? 0.0 : *std::max_element(l.matched_errors.begin(), l.matched_errors.end());
        c.detail = "oracle " + std::to_string(l.count) + ", classifier " + std::to_string(l.expected);
        rep.checks.push_back(c);
    }
    CheckResult mono;
    mono.name = "matched eigenvalue error non-increasing along the L ladder";
    mono.passed = cmp.monotone_improvement;
    rep.checks.push_back(mono);
    return rep;
}

}  // namespace latspec
