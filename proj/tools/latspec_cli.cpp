#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "latspec/classifier.hpp"
#include "latspec/errors.hpp"
#include "latspec/golden.hpp"
#include "latspec/report.hpp"
#include "latspec/verify.hpp"

using namespace latspec;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3, kEmpty = 4 };

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Range {
    double lo = 0.0, hi = 0.0;
    int count = 1;

    double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw UsageError("not a finite number: '" + s + "'");
    return v;
}

// lo:hi:count, or a single value
Range parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ':');) parts.push_back(item);
    Range r;
    if (parts.size() == 1) {
        r.lo = r.hi = parse_number(parts[0]);
        return r;
    }
    if (parts.size() != 3) throw UsageError("range must be lo:hi:count, got '" + s + "'");
    r.lo = parse_number(parts[0]);
    r.hi = parse_number(parts[1]);
    const double c = parse_number(parts[2]);
    if (c != std::floor(c) || c < 1 || c > 1e5) throw UsageError("range count must be an integer in [1, 1e5]: '" + s + "'");
    r.count = static_cast<int>(c);
    if (r.count == 1 && r.lo != r.hi) throw UsageError("a range with count 1 needs lo == hi: '" + s + "'");
    if (r.count >= 2 && !(r.hi > r.lo)) throw UsageError("range needs lo < hi: '" + s + "'");
    return r;
}

// a..b inclusive, or a single n
std::pair<int, int> parse_n_range(const std::string& s) {
    auto to_int = [&](const std::string& t) {
        const double v = parse_number(t);
        if (v != std::floor(v) || v < 1 || v > 16) throw UsageError("dimension must be an integer in [1, 16]: '" + s + "'");
        return static_cast<int>(v);
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const int n = to_int(s);
        return {n, n};
    }
    const int lo = to_int(s.substr(0, dots)), hi = to_int(s.substr(dots + 2));
    if (hi < lo) throw UsageError("empty dimension range '" + s + "'");
    return {lo, hi};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        const double v = parse_number(item);
        if (v != std::floor(v) || v < 1) throw UsageError("box sizes must be positive integers: '" + s + "'");
        out.push_back(static_cast<int>(v));
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

struct Common {
    int n = 1;
    double lambda = 0.0;
    double mu = 0.0;
    double tol = 1e-9;
    std::string method = "laplace-bessel";
    bool pretty = false;
    bool compact = false;

    ModelParams params() const {
        ModelParams p{n, lambda, mu};
        validate(p);
        return p;
    }
    QuadratureConfig quad() const {
        QuadratureConfig q;
        q.method = parse_method(method);
        return q;
    }
    SolverConfig solver() const {
        SolverConfig s;
        s.quad = quad();
        s.region_tol = tol;
        return s;
    }
};

void add_output_flags(CLI::App* cmd, Common& c) {
    auto* p = cmd->add_flag("--pretty", c.pretty, "Indented JSON");
    auto* k = cmd->add_flag("--compact", c.compact, "Single-line JSON (default)");
    p->excludes(k);
}

void add_couplings(CLI::App* cmd, Common& c) {
    cmd->add_option("--n", c.n, "Lattice dimension")->required()->check(CLI::Range(1, 16));
    cmd->add_option("--lambda", c.lambda, "Nearest-neighbour coupling");
    cmd->add_option("--mu", c.mu, "Origin coupling");
    cmd->add_option("--tol", c.tol, "Snapping tolerance for the region boundaries")->check(CLI::NonNegativeNumber);
    cmd->add_option("--method", c.method, "Quadrature: laplace-bessel, tensor-trapezoid or both");
}

void emit(const Json& j, const Common& c) { std::cout << (c.pretty ? j.dump(2) : j.dump()) << "\n"; }

int cmd_integrals(const Common& c, double z) {
    if (!std::isfinite(z) || z > 0.0) throw UsageError("--z must be finite and <= 0");
    QuadratureConfig q = c.quad();
    const GreenValues g = z == 0.0 ? green_threshold(c.n, q) : green_values(c.n, z, q);
    emit(to_json(g), c);
    return kOk;
}

int cmd_classify(const Common& c) {
    const ModelParams p = c.params();
    const ThresholdData t = threshold_data_cached(p.n, c.quad());
    const EvenRegion even = classify_even(p, t, c.tol);
    Json j;
    j["schema"] = kSchemaVersion;
    j["n"] = p.n;
    j["lambda"] = p.lambda;
    j["mu"] = p.mu;
    j["region"] = even.cell;
    j["table_count"] = table_count(p.n, even.cell);
    j["even_region"] = to_json(even);
    j["odd_region"] = to_json(classify_odd(p, t, c.tol));
    emit(j, c);
    return kOk;
}

int cmd_summarize(const Common& c) {
    const ModelParams p = c.params();
    const SolverConfig s = c.solver();
    emit(to_json(summarize(p, threshold_data_cached(p.n, s.quad), s)), c);
    return kOk;
}

int cmd_scan(const Common& c, const std::string& lam, const std::string& mu, int threads) {
    const Range lr = parse_range(lam), mr = parse_range(mu);
    ModelParams probe{c.n, lr.lo, mr.lo};
    validate(probe);
    const ThresholdData t = threshold_data_cached(c.n, c.quad());
    const std::size_t total = static_cast<std::size_t>(lr.count) * mr.count;
    std::vector<std::string> label(total);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const ModelParams p{c.n, lr.at(static_cast<int>(k / mr.count)), mr.at(static_cast<int>(k % mr.count))};
            label[k] = classify_even(p, t, c.tol).cell;
        }
    };
    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(1, total / 256));
    if (workers <= 1) {
        work(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (std::size_t b = 0; b < total; b += chunk) pool.emplace_back(work, b, std::min(total, b + chunk));
    }
    std::string out = "lambda,mu,region_label,eigencount\n";
    for (std::size_t k = 0; k < total; ++k) {
        out += format_double(lr.at(static_cast<int>(k / mr.count))) + "," + format_double(mr.at(static_cast<int>(k % mr.count))) +
               "," + label[k] + "," + std::to_string(table_count(c.n, label[k])) + "\n";
    }
    std::cout << out;
    return kOk;
}

int cmd_eigenfunction(const Common& c, int index, bool threshold, int grid) {
    const ModelParams p = c.params();
    const SolverConfig s = c.solver();
    const ThresholdData t = threshold_data_cached(p.n, s.quad);
    std::vector<EigenState> states;
    if (threshold) {
        for (const auto& e : threshold_report(p, t, c.tol).entries)
            states.insert(states.end(), e.states.begin(), e.states.end());
    } else {
        for (const auto& r : negative_eigenvalues(p, t, s)) {
            const auto basis = eigenstates(p, r, s.quad);
            states.insert(states.end(), basis.begin(), basis.end());
        }
    }
    if (index < 0 || index >= static_cast<int>(states.size())) {
        std::cerr << "latspec: no " << (threshold ? "threshold" : "bound") << " state with index " << index << " (found "
                  << states.size() << ")\n";
        return kEmpty;
    }
    const EigenState& st = states[index];
    const double points = std::pow(static_cast<double>(grid), p.n);
    if (points > 4e6) throw UsageError("grid^n exceeds 4e6 samples");

    std::string out;
    auto vec = [](const Eigen::VectorXd& v) {
        std::string r;
        for (Eigen::Index i = 0; i < v.size(); ++i) r += (i ? " " : "") + format_double(v(i));
        return r;
    };
    out += "# n: " + std::to_string(p.n) + "\n";
    out += "# lambda: " + format_double(p.lambda) + "\n";
    out += "# mu: " + format_double(p.mu) + "\n";
    out += "# sector: " + to_string(st.sector) + "\n";
    out += "# z: " + format_double(st.z) + "\n";
    out += "# formula: " + to_string(st.formula) + "\n";
    out += "# w: " + vec(st.w) + "\n";
    out += "# residual: " + format_double(residual(st, s.quad)) + "\n";
    out += "# grid: midpoints of " + std::to_string(grid) + " cells per axis on [-pi, pi)\n";
    for (int j = 1; j <= p.n; ++j) out += "p" + std::to_string(j) + ",";
    out += "f\n";
    std::vector<int> idx(p.n, 0);
    Eigen::VectorXd pt(p.n);
    const double h = 2.0 * M_PI / grid;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(points); ++k) {
        for (int j = 0; j < p.n; ++j) {
            pt(j) = -M_PI + (idx[j] + 0.5) * h;
            out += format_double(pt(j)) + ",";
        }
        out += format_double(st.evaluate(pt)) + "\n";
        for (int j = p.n - 1; j >= 0; --j) {
            if (++idx[j] < grid) break;
            idx[j] = 0;
        }
    }
    std::cout << out;
    return kOk;
}

struct VerifyArgs {
    std::string suite;
    std::string n = "1..4";
    int samples = 0;
    std::uint64_t seed = 7;
    std::string ladder = "50,100,200";
    double theta = -1e-3;
    bool sectors = false;
};

int cmd_verify(const Common& c, const VerifyArgs& v) {
    VerifyReport rep;
    if (v.suite == "identities") {
        const auto [lo, hi] = parse_n_range(v.n);
        rep = verify_identities(lo, hi, v.samples > 0 ? v.samples : 20, c.quad());
    } else if (v.suite == "factorization") {
        const auto [lo, hi] = parse_n_range(v.n);
        rep = verify_factorization(lo, hi, v.samples > 0 ? v.samples : 200, v.seed, c.quad());
    } else if (v.suite == "monotonicity") {
        const auto [lo, hi] = parse_n_range(v.n);
        rep = verify_monotonicity(lo, hi, v.samples > 0 ? v.samples : 61, c.quad());
    } else if (v.suite == "oracle") {
        const auto [lo, hi] = parse_n_range(v.n);
        if (lo != hi) throw UsageError("the oracle suite takes a single --n");
        OracleConfig oc;
        oc.theta = v.theta;
        oc.attribute_sectors = v.sectors;
        oc.seed = v.seed;
        rep = verify_oracle(ModelParams{lo, c.lambda, c.mu}, parse_int_list(v.ladder), oc);
    } else {
        throw UsageError("unknown suite '" + v.suite + "'");
    }
    emit(to_json(rep), c);
    return rep.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound states and threshold analysis for -Delta - V on Z^n"};
    app.require_subcommand(1);
    Common c;

    double z = 0.0;
    auto* integrals = app.add_subcommand("integrals", "Torus integrals a, b, c, d, s at z <= 0");
    integrals->add_option("--n", c.n, "Lattice dimension")->required()->check(CLI::Range(1, 16));
    integrals->add_option("--z", z, "Spectral parameter (<= 0)")->required();
    integrals->add_option("--method", c.method, "Quadrature: laplace-bessel, tensor-trapezoid or both");
    add_output_flags(integrals, c);

    auto* classify = app.add_subcommand("classify", "Region of the coupling plane");
    add_couplings(classify, c);
    add_output_flags(classify, c);

    auto* summarize_cmd = app.add_subcommand("summarize", "Eigenvalues, region and threshold behaviour");
    add_couplings(summarize_cmd, c);
    add_output_flags(summarize_cmd, c);

    std::string lam_range, mu_range;
    int threads = 0;
    auto* scan = app.add_subcommand("scan", "CSV region map over a (lambda, mu) grid");
    scan->add_option("--n", c.n, "Lattice dimension")->required()->check(CLI::Range(1, 16));
    scan->add_option("--lambda", lam_range, "lo:hi:count")->required();
    scan->add_option("--mu", mu_range, "lo:hi:count")->required();
    scan->add_option("--tol", c.tol, "Snapping tolerance")->check(CLI::NonNegativeNumber);
    scan->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

    int index = 0, grid = 64;
    bool threshold = false;
    auto* eig = app.add_subcommand("eigenfunction", "CSV samples of f(p) for one state");
    add_couplings(eig, c);
    eig->add_option("--state", index, "Index into the basis, ordered by eigenvalue")->check(CLI::NonNegativeNumber);
    eig->add_flag("--threshold", threshold, "Select a threshold (z = 0) state instead of a bound state");
    eig->add_option("--grid", grid, "Cells per axis")->check(CLI::Range(2, 4096));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", va.suite, "identities, factorization, monotonicity or oracle")->required();
    verify->add_option("--n", va.n, "Dimension or inclusive range a..b");
    verify->add_option("--samples", va.samples, "Samples per dimension (suite default when 0)")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", va.seed, "RNG seed");
    verify->add_option("--lambda", c.lambda, "Oracle suite coupling");
    verify->add_option("--mu", c.mu, "Oracle suite coupling");
    verify->add_option("--L", va.ladder, "Comma-separated box half-widths");
    verify->add_option("--theta", va.theta, "Oracle count threshold (< 0)");
    verify->add_flag("--sectors", va.sectors, "Attribute oracle eigenvectors to parity sectors");
    verify->add_option("--method", c.method, "Quadrature method");
    add_output_flags(verify, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*integrals) return cmd_integrals(c, z);
        if (*classify) return cmd_classify(c);
        if (*summarize_cmd) return cmd_summarize(c);
        if (*scan) return cmd_scan(c, lam_range, mu_range, threads);
        if (*eig) return cmd_eigenfunction(c, index, threshold, grid);
        if (*verify) return cmd_verify(c, va);
    } catch (const NumericError& e) {
        std::cerr << "latspec: numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "latspec: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "latspec: " << e.what() << "\n";
        return kNumeric;
    }
    return kUsage;
}
