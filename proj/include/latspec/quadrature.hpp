#pragma once

#include <cmath>
#include <vector>

namespace latspec {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre rule on [-1, 1]. Supported sizes: 8, 12, 16, 20, 24, 32.
const Rule& gauss_legendre(int q);

// Gauss-Legendre rule mapped to [lo, hi].
Rule gauss_on(double lo, double hi, int q);

// Composite Gauss rule on [0, len] with breakpoints len*sigma^k, k = levels..0,
// graded toward the origin.
Rule graded_rule(double len, double sigma, int levels, int q);

// Neumaier compensated accumulator.
class Accumulator {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace latspec
