#include "latspec/classifier.hpp"

#include <cmath>
#include <stdexcept>

namespace latspec {

namespace {

LineSide side(double lambda, double line, double tol, bool& snapped) {
    const double diff = lambda - line;
    if (std::abs(diff) <= tol) {
        snapped = true;
        return LineSide::On;
    }
    return diff < 0.0 ? LineSide::Below : LineSide::Above;
}

void check(const ModelParams& params, const ThresholdData& t, double tol) {
    validate(params);
    if (t.n != params.n) throw std::invalid_argument("threshold data computed for a different n");
    if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
}

}  // namespace

std::string to_string(HyperbolaRegion r) {
    switch (r) {
        case HyperbolaRegion::G0: return "G0";
        case HyperbolaRegion::GammaL: return "Gamma_l";
        case HyperbolaRegion::G1: return "G1";
        case HyperbolaRegion::GammaR: return "Gamma_r";
        case HyperbolaRegion::G2: return "G2";
    }
    return "?";
}

std::string odd_label(LineSide s) {
    switch (s) {
        case LineSide::Below: return "S-";
        case LineSide::On: return "S0";
        case LineSide::Above: return "S+";
    }
    return "?";
}

std::string c_label(LineSide s) {
    switch (s) {
        case LineSide::Below: return "C-";
        case LineSide::On: return "C0";
        case LineSide::Above: return "C+";
    }
    return "?";
}

std::string cell_label(int n, HyperbolaRegion h, std::optional<LineSide> c_side, LineSide s_side) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
    const std::string N1 = std::to_string(n + 1), N2 = std::to_string(n + 2);
    const std::string N2n = std::to_string(2 * n), N2n1 = std::to_string(2 * n + 1);
    if (h == HyperbolaRegion::G0) return "D0";
    if (h == HyperbolaRegion::GammaL) return "B0";
    if (n == 1) {
        // lambda_s = X = 1, so Gamma_r and G2 lie entirely in S+.
        if (h == HyperbolaRegion::G1)
            return s_side == LineSide::Below ? "D1" : s_side == LineSide::On ? "S1" : "D2";
        if (h == HyperbolaRegion::GammaR) return s_side == LineSide::On ? "C" : "B2";
        return "D3";
    }
    const LineSide c = c_side.value_or(LineSide::Below);
    const int row = h == HyperbolaRegion::G1 ? 0 : h == HyperbolaRegion::GammaR ? 1 : 2;
    if (s_side == LineSide::Below) return row == 0 ? "D1" : row == 1 ? "B1" : "D2";
    if (s_side == LineSide::On) return row == 0 ? "S1" : row == 1 ? "A" : "S2";
    switch (c) {
        case LineSide::Below: return row == 0 ? "D" + N1 : row == 1 ? "B" + N1 : "D" + N2;
        case LineSide::On: return row == 0 ? "C" + N1 : row == 1 ? "B" : "C" + N2;
        case LineSide::Above: return row == 0 ? "D" + N2n : row == 1 ? "B" + N2n : "D" + N2n1;
    }
    return "?";
}

int table_count(int n, const std::string& cell) {
    if (cell == "A") return 1;
    if (cell == "B") return n + 1;
    if (cell == "C") return 1;  // n = 1 point Gamma_r with lambda = 1; empty set
    if (cell.size() < 2) throw std::invalid_argument("unknown cell label: " + cell);
    const char kind = cell[0];
    if (kind != 'D' && kind != 'B' && kind != 'S' && kind != 'C')
        throw std::invalid_argument("unknown cell label: " + cell);
    return std::stoi(cell.substr(1));
}

EvenRegion classify_even(const ModelParams& params, const ThresholdData& t, double tol) {
    check(params, t, tol);
    const int n = params.n;
    const double X = t.crit.lambda_inf0;
    EvenRegion r;
    r.h0 = (params.lambda - X) * (params.mu - n) - n;
    bool snapped = false;
    if (std::abs(r.h0) <= tol) {
        snapped = true;
        r.hyperbola = params.lambda < X ? HyperbolaRegion::GammaL : HyperbolaRegion::GammaR;
    } else if (r.h0 < 0.0) {
        r.hyperbola = HyperbolaRegion::G1;
    } else {
        r.hyperbola = params.lambda < X ? HyperbolaRegion::G0 : HyperbolaRegion::G2;
    }
    r.s_side = side(params.lambda, t.crit.lambda_s, tol, snapped);
    if (t.crit.lambda_c) r.c_side = side(params.lambda, *t.crit.lambda_c, tol, snapped);
    r.cell = cell_label(n, r.hyperbola, r.c_side, r.s_side);
    r.near_boundary = snapped;
    return r;
}

EvenRegion classify_even(const ModelParams& params, double tol, const QuadratureConfig& cfg) {
    validate(params);
    return classify_even(params, threshold_data(params.n, cfg), tol);
}

OddRegion classify_odd(const ModelParams& params, const ThresholdData& t, double tol) {
    check(params, t, tol);
    OddRegion r;
    r.side = side(params.lambda, t.crit.lambda_s, tol, r.near_boundary);
    return r;
}

OddRegion classify_odd(const ModelParams& params, double tol, const QuadratureConfig& cfg) {
    validate(params);
    return classify_odd(params, threshold_data(params.n, cfg), tol);
}

}  // namespace latspec
