#include "latspec/torus_green.hpp"

#include "latspec/bessel.hpp"
#include "latspec/errors.hpp"
#include "latspec/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace latspec {

namespace {

constexpr double kPi = std::numbers::pi;

enum Q { QA = 0, QB, QC, QD, QS, QCMD, QCount };
using Sums = std::array<double, QCount>;
constexpr std::array<const char*, QCount> kNames{"a", "b", "c", "d", "s", "c-d"};

// Which quantities are finite at z (z < 0: all but d for n = 1).
std::array<bool, QCount> finite_mask(int n, bool threshold) {
    std::array<bool, QCount> m{};
    m[QA] = m[QB] = m[QC] = !threshold || n >= 3;
    m[QD] = n >= 2 && (!threshold || n >= 3);
    m[QS] = true;
    m[QCMD] = n >= 2;
    return m;
}

GreenValues pack(int n, double z, const Sums& v, const std::array<bool, QCount>& mask,
                 const std::string& method, double err) {
    GreenValues g;
    g.n = n;
    g.z = z;
    auto opt = [&](int q) { return mask[q] ? std::optional<double>(v[q]) : std::nullopt; };
    g.a = opt(QA);
    g.b = opt(QB);
    g.c = opt(QC);
    g.d = opt(QD);
    g.s = opt(QS);
    g.c_minus_d = opt(QCMD);
    g.method = method;
    g.error_estimate = err;
    return g;
}

double rel_diff(double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

double max_rel_diff(const Sums& x, const Sums& y, const std::array<bool, QCount>& mask) {
    double worst = 0.0;
    for (int q = 0; q < QCount; ++q)
        if (mask[q]) worst = std::max(worst, rel_diff(x[q], y[q]));
    return worst;
}

// ---------------------------------------------------------------------------
// Tensor trapezoid on [0, pi]^n (the integrands are even in every p_j).

Sums trapezoid(int n, double z, int m) {
    const int k = m / 2;
    std::vector<double> cs(k + 1), sn2(k + 1), wt(k + 1);
    for (int i = 0; i <= k; ++i) {
        const double th = kPi * i / k;
        cs[i] = std::cos(th);
        const double sn = std::sin(th);
        sn2[i] = sn * sn;
        wt[i] = (i == 0 || i == k) ? 0.5 : 1.0;
    }
    if (k % 2 == 0) cs[k / 2] = 0.0;

    std::array<Accumulator, QCount> acc;
    if (n == 1) {
        Sums row{};
        for (int i = 0; i <= k; ++i) {
            const double inv = wt[i] / (1.0 - cs[i] - z);
            row[QA] += inv;
            row[QB] += cs[i] * inv;
            row[QC] += cs[i] * cs[i] * inv;
            row[QS] += sn2[i] * inv;
        }
        for (int q = 0; q < QCount; ++q) acc[q].add(row[q]);
    } else if (n == 2) {
        for (int i = 0; i <= k; ++i) {
            Sums row{};
            const double base = 2.0 - cs[i] - z;
            for (int j = 0; j <= k; ++j) {
                const double inv = wt[j] / (base - cs[j]);
                const double diff = cs[i] - cs[j];
                row[QA] += inv;
                row[QB] += cs[i] * inv;
                row[QC] += cs[i] * cs[i] * inv;
                row[QD] += cs[i] * cs[j] * inv;
                row[QS] += sn2[i] * inv;
                row[QCMD] += 0.5 * diff * diff * inv;
            }
            for (int q = 0; q < QCount; ++q) acc[q].add(wt[i] * row[q]);
        }
    } else if (n == 3) {
        for (int i = 0; i <= k; ++i) {
            for (int j = 0; j <= k; ++j) {
                // the p1, p2 factors are constant along the innermost line
                const double base = 3.0 - cs[i] - cs[j] - z;
                const double diff = cs[i] - cs[j];
                double s0 = 0.0;
                for (int l = 0; l <= k; ++l) s0 += wt[l] / (base - cs[l]);
                Sums row{};
                row[QA] = s0;
                row[QB] = cs[i] * s0;
                row[QC] = cs[i] * cs[i] * s0;
                row[QD] = cs[i] * cs[j] * s0;
                row[QS] = sn2[i] * s0;
                row[QCMD] = 0.5 * diff * diff * s0;
                for (int q = 0; q < QCount; ++q) acc[q].add(wt[i] * wt[j] * row[q]);
            }
        }
    } else {
        throw std::invalid_argument("tensor trapezoid supports n <= 3");
    }
    Sums out{};
    const double norm = std::pow(static_cast<double>(k), -n);
    for (int q = 0; q < QCount; ++q) out[q] = acc[q].value() * norm;
    return out;
}

struct Evaluation {
    Sums values{};
    double error = 0.0;
};

Evaluation trapezoid_adaptive(int n, double z, const QuadratureConfig& cfg, double tol) {
    if (n > 3) throw std::invalid_argument("tensor trapezoid supports n <= 3");
    int m = cfg.grid_points > 0 ? cfg.grid_points : (n <= 2 ? 256 : 128);
    if (m < 4 || m % 4 != 0) throw std::invalid_argument("grid_points must be a positive multiple of 4");
    int cap = cfg.max_grid_points > 0 ? cfg.max_grid_points : (n == 1 ? (1 << 22) : n == 2 ? (1 << 14) : 1024);
    cap = std::max(cap, m);
    const auto mask = finite_mask(n, false);
    Sums prev = trapezoid(n, z, m);
    while (2 * m <= cap) {
        m *= 2;
        Sums cur = trapezoid(n, z, m);
        const double err = max_rel_diff(prev, cur, mask);
        if (err <= tol) return {cur, err};
        prev = cur;
    }
    std::ostringstream msg;
    msg << "tensor trapezoid did not converge for n=" << n << ", z=" << z << " within " << cap
        << " points per period";
    throw NumericError(msg.str());
}

// ---------------------------------------------------------------------------
// Laplace-Bessel representation.

using Poly = std::vector<double>;  // coefficients in u = 1/t

constexpr int kTailTerms = 8;

Poly poly_mul(const Poly& x, const Poly& y) {
    Poly r(kTailTerms, 0.0);
    for (int i = 0; i < kTailTerms; ++i)
        for (int j = 0; i + j < kTailTerms; ++j) r[i + j] += x[i] * y[j];
    return r;
}

Poly poly_pow(const Poly& x, int e) {
    Poly r(kTailTerms, 0.0);
    r[0] = 1.0;
    for (int i = 0; i < e; ++i) r = poly_mul(r, x);
    return r;
}

// int_T^inf (2 pi t)^{-p/2} sum_m P_m t^{-m} dt
double tail_integral(const Poly& poly, int p, double t) {
    double sum = 0.0;
    for (int m = 0; m < kTailTerms; ++m) {
        if (poly[m] == 0.0) continue;
        const double e = 0.5 * p + m;
        if (e <= 1.0) throw std::logic_error("tail_integral: divergent tail requested");
        sum += poly[m] * std::pow(t, 1.0 - e) / (e - 1.0);
    }
    return sum * std::pow(2.0 * kPi, -0.5 * p);
}

Sums threshold_tails(int n, double t) {
    const Poly c0 = bessel_asymptotic_coefficients(0, kTailTerms);
    const Poly c1 = bessel_asymptotic_coefficients(1, kTailTerms);
    const Poly c2 = bessel_asymptotic_coefficients(2, kTailTerms);
    Poly half_sum(kTailTerms), shifted(kTailTerms, 0.0);
    for (int m = 0; m < kTailTerms; ++m) half_sum[m] = 0.5 * (c0[m] + c2[m]);
    for (int m = 1; m < kTailTerms; ++m) shifted[m] = c1[m - 1];  // I_1 / t

    Sums out{};
    const auto mask = finite_mask(n, true);
    const Poly base1 = poly_pow(c0, n - 1);
    if (mask[QA]) out[QA] = tail_integral(poly_mul(base1, c0), n, t);
    if (mask[QB]) out[QB] = tail_integral(poly_mul(base1, c1), n, t);
    if (mask[QC]) out[QC] = tail_integral(poly_mul(base1, half_sum), n, t);
    out[QS] = tail_integral(poly_mul(base1, shifted), n, t);
    if (n >= 2) {
        const Poly base2 = poly_pow(c0, n - 2);
        if (mask[QD]) out[QD] = tail_integral(poly_mul(base2, poly_mul(c1, c1)), n, t);
        Poly q = poly_mul(c0, half_sum);
        const Poly c11 = poly_mul(c1, c1);
        for (int m = 0; m < kTailTerms; ++m) q[m] -= c11[m];
        out[QCMD] = tail_integral(poly_mul(base2, q), n, t);
    }
    return out;
}

std::vector<std::pair<double, double>> laplace_panels(double z, const QuadratureConfig& cfg) {
    const double tmax = z < 0.0 ? cfg.laplace_cutoff / -z : cfg.laplace_tmax;
    const double scale = z < 0.0 ? 1.0 / -z : std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> panels;
    double t = 0.0;
    while (t < tmax) {
        double w = std::min(std::max(t, 0.25), scale);
        double next = std::min(t + w, tmax);
        panels.emplace_back(t, next);
        t = next;
    }
    return panels;
}

Sums laplace_sum(int n, double z, const std::vector<std::pair<double, double>>& panels, int q) {
    const Rule& base = gauss_legendre(q);
    std::array<Accumulator, QCount> acc;
    for (const auto& [lo, hi] : panels) {
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        Sums row{};
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double t = mid + half * base.nodes[i];
            const double w = half * base.weights[i] * std::exp(z * t);
            const ScaledBessel bs = scaled_bessel(t);
            const double p1 = std::pow(bs.i0, n - 1);
            row[QA] += w * p1 * bs.i0;
            row[QB] += w * p1 * bs.i1;
            row[QC] += w * p1 * 0.5 * (bs.i0 + bs.i2);
            row[QS] += w * p1 * bs.i1_over_t;
            if (n >= 2) {
                const double p2 = std::pow(bs.i0, n - 2);
                row[QD] += w * p2 * bs.i1 * bs.i1;
                row[QCMD] += w * p2 * (0.5 * bs.i0 * (bs.i0 + bs.i2) - bs.i1 * bs.i1);
            }
        }
        for (int k = 0; k < QCount; ++k) acc[k].add(row[k]);
    }
    Sums out{};
    for (int k = 0; k < QCount; ++k) out[k] = acc[k].value();
    return out;
}

Evaluation laplace(int n, double z, const QuadratureConfig& cfg, double tol) {
    if (cfg.laplace_nodes <= 0) throw std::invalid_argument("laplace_nodes must be positive");
    if (!(cfg.laplace_cutoff > 0.0) || !(cfg.laplace_tmax > 1.0))
        throw std::invalid_argument("Laplace truncation must be positive");
    const bool threshold = z == 0.0;
    const auto mask = finite_mask(n, threshold);
    const auto panels = laplace_panels(z, cfg);
    const int q1 = cfg.laplace_nodes;
    const int q2 = q1 + 8;
    Sums v1 = laplace_sum(n, z, panels, q1);
    Sums v2 = laplace_sum(n, z, panels, q2);
    if (threshold) {
        const Sums tail = threshold_tails(n, cfg.laplace_tmax);
        for (int k = 0; k < QCount; ++k) {
            v1[k] += tail[k];
            v2[k] += tail[k];
        }
    }
    const double err = max_rel_diff(v1, v2, mask);
    if (err > tol) {
        std::ostringstream msg;
        msg << "Laplace-Bessel quadrature did not reach tolerance " << tol << " for n=" << n
            << ", z=" << z << " (estimate " << err << ")";
        throw NumericError(msg.str());
    }
    return {v2, err};
}

// ---------------------------------------------------------------------------
// Threshold grid: integrate p_1 in closed form, then graded Gauss on [0, pi]^{n-1}.
// With A = 1 + sum_{j>=2} (1 - cos p_j) and R = sqrt(A^2 - 1):
//   <1/(A - cos)> = 1/R, <cos/(A - cos)> = (A - R)/R, <cos^2/(A - cos)> = A (A - R)/R,
//   <sin^2/(A - cos)> = A - R = 1/(A + R).

Sums reduced_grid(int n, int q, int levels) {
    Sums out{};
    if (n == 1) {
        out[QS] = 1.0;
        return out;
    }
    if (n > 3) throw std::invalid_argument("threshold grid supports n <= 3");
    const Rule r = graded_rule(kPi, 0.25, levels, q);
    std::vector<double> cs(r.size()), half2(r.size()), w(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        cs[i] = std::cos(r.nodes[i]);
        const double sh = std::sin(0.5 * r.nodes[i]);
        half2[i] = 2.0 * sh * sh;  // 1 - cos
        w[i] = r.weights[i] / kPi;
    }
    std::array<Accumulator, QCount> acc;
    auto point = [&](double am1, double cos2, double omc2, double weight, Sums& row) {
        const double A = 1.0 + am1;
        const double R = std::sqrt(am1 * (A + 1.0));
        const double js = 1.0 / (A + R);
        const double j1 = js / R;
        row[QA] += weight / R;
        row[QB] += weight * j1;
        row[QC] += weight * A * j1;
        row[QD] += weight * j1 * cos2;
        row[QS] += weight * js;
        row[QCMD] += weight * j1 * (am1 + omc2);
    };
    if (n == 2) {
        Sums row{};
        for (std::size_t i = 0; i < r.size(); ++i) point(half2[i], cs[i], half2[i], w[i], row);
        for (int k = 0; k < QCount; ++k) acc[k].add(row[k]);
    } else {
        for (std::size_t i = 0; i < r.size(); ++i) {
            Sums row{};
            for (std::size_t j = 0; j < r.size(); ++j)
                point(half2[i] + half2[j], cs[i], half2[i], w[i] * w[j], row);
            for (int k = 0; k < QCount; ++k) acc[k].add(row[k]);
        }
    }
    for (int k = 0; k < QCount; ++k) out[k] = acc[k].value();
    return out;
}

Evaluation threshold_grid(int n, double tol) {
    const auto mask = finite_mask(n, true);
    Sums coarse = reduced_grid(n, 16, 28);
    Sums fine = reduced_grid(n, 24, 36);
    const double err = max_rel_diff(coarse, fine, mask);
    if (err > tol) {
        std::ostringstream msg;
        msg << "threshold grid quadrature did not reach tolerance " << tol << " for n=" << n
            << " (estimate " << err << ")";
        throw NumericError(msg.str());
    }
    return {fine, err};
}

void check_agreement(const Evaluation& x, const Evaluation& y, const std::array<bool, QCount>& mask,
                     double limit, int n, double z) {
    for (int q = 0; q < QCount; ++q) {
        if (!mask[q]) continue;
        const double d = rel_diff(x.values[q], y.values[q]);
        if (d > limit) {
            std::ostringstream msg;
            msg << "quadrature methods disagree on " << kNames[q] << " for n=" << n << ", z=" << z
                << ": " << x.values[q] << " vs " << y.values[q] << " (relative " << d << ")";
            throw NumericError(msg.str());
        }
    }
}

void check_dimension(int n) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
}

}  // namespace

double dispersion(std::span<const double> p, int n) {
    if (static_cast<int>(p.size()) != n) throw std::invalid_argument("dispersion: length mismatch");
    double e = 0.0;
    for (double x : p) e += 1.0 - std::cos(x);
    return e;
}

std::string to_string(QuadratureMethod m) {
    switch (m) {
        case QuadratureMethod::TensorTrapezoid: return "tensor-trapezoid";
        case QuadratureMethod::LaplaceBessel: return "laplace-bessel";
        case QuadratureMethod::Both: return "both";
    }
    return "unknown";
}

QuadratureMethod parse_method(const std::string& s) {
    if (s == "tensor-trapezoid" || s == "grid") return QuadratureMethod::TensorTrapezoid;
    if (s == "laplace-bessel" || s == "laplace") return QuadratureMethod::LaplaceBessel;
    if (s == "both") return QuadratureMethod::Both;
    throw std::invalid_argument("unknown quadrature method: " + s);
}

double effective_tolerance(const QuadratureConfig& cfg, double z) {
    if (cfg.tolerance < 0.0) throw std::invalid_argument("tolerance must be > 0");
    if (cfg.tolerance > 0.0) return cfg.tolerance;
    return (z <= -1e-3 || z == 0.0) ? 1e-10 : 1e-8;
}

std::optional<double> GreenValues::alpha() const {
    if (!c) return std::nullopt;
    if (n == 1) return c;
    if (!d) return std::nullopt;
    return *c + (n - 1) * *d;
}

std::optional<double> GreenValues::gamma() const {
    const auto al = alpha();
    if (!a || !b || !al) return std::nullopt;
    return *a * *al - n * *b * *b;
}

double require(const std::optional<double>& v, const char* name) {
    if (!v) throw std::invalid_argument(std::string("integral ") + name + " is not finite here");
    return *v;
}

GreenValues green_values(int n, double z, const QuadratureConfig& cfg) {
    check_dimension(n);
    if (!(z < 0.0)) throw std::invalid_argument("green_values requires z < 0");
    const double tol = effective_tolerance(cfg, z);
    const auto mask = finite_mask(n, false);
    switch (cfg.method) {
        case QuadratureMethod::TensorTrapezoid: {
            auto e = trapezoid_adaptive(n, z, cfg, tol);
            return pack(n, z, e.values, mask, "tensor-trapezoid", e.error);
        }
        case QuadratureMethod::LaplaceBessel: {
            auto e = laplace(n, z, cfg, tol);
            return pack(n, z, e.values, mask, "laplace-bessel", e.error);
        }
        case QuadratureMethod::Both: {
            auto l = laplace(n, z, cfg, tol);
            auto t = trapezoid_adaptive(n, z, cfg, tol);
            check_agreement(l, t, mask, 10.0 * tol, n, z);
            return pack(n, z, l.values, mask, "both", std::max({l.error, t.error, max_rel_diff(l.values, t.values, mask)}));
        }
    }
    throw std::invalid_argument("unknown quadrature method");
}

GreenValues green_threshold(int n, const QuadratureConfig& cfg) {
    check_dimension(n);
    if (n == 1) {
        // quadrature still runs (and cross-checks under Both); s(0) = 1 is exact
        GreenValues g = green_threshold_quadrature(1, cfg);
        g.s = closed_form_s1(0.0);
        return g;
    }
    return green_threshold_quadrature(n, cfg);
}

GreenValues green_threshold_quadrature(int n, const QuadratureConfig& cfg) {
    check_dimension(n);
    const double tol = effective_tolerance(cfg, 0.0);
    const auto mask = finite_mask(n, true);
    switch (cfg.method) {
        case QuadratureMethod::TensorTrapezoid: {
            auto e = threshold_grid(n, tol);
            return pack(n, 0.0, e.values, mask, "tensor-trapezoid", e.error);
        }
        case QuadratureMethod::LaplaceBessel: {
            auto e = laplace(n, 0.0, cfg, tol);
            return pack(n, 0.0, e.values, mask, "laplace-bessel", e.error);
        }
        case QuadratureMethod::Both: {
            auto l = laplace(n, 0.0, cfg, tol);
            auto g = threshold_grid(n, tol);
            check_agreement(l, g, mask, 10.0 * tol, n, 0.0);
            return pack(n, 0.0, l.values, mask, "both", std::max({l.error, g.error, max_rel_diff(l.values, g.values, mask)}));
        }
    }
    throw std::invalid_argument("unknown quadrature method");
}

double closed_form_a1(double z) {
    if (!(z < 0.0)) throw std::invalid_argument("closed_form_a1 requires z < 0");
    return 1.0 / (std::sqrt(-z) * std::sqrt(2.0 - z));
}

double closed_form_b1(double z) {
    // (1 - z) a - 1 = 1 / (r (1 - z + r)) with r = sqrt(-z (2 - z))
    const double r = 1.0 / closed_form_a1(z);
    return 1.0 / (r * ((1.0 - z) + r));
}

double closed_form_s1(double z) {
    if (!(z <= 0.0)) throw std::invalid_argument("closed_form_s1 requires z <= 0");
    // 1 - z - sqrt(-z (2 - z)) = 1 / (1 - z + sqrt(-z (2 - z)))
    return 1.0 / ((1.0 - z) + std::sqrt(-z * (2.0 - z)));
}

}  // namespace latspec
