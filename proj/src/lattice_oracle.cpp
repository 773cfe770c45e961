#include "latspec/lattice_oracle.hpp"

#include "latspec/classifier.hpp"
#include "latspec/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace latspec {

namespace {

std::int64_t box_sites(int n, int L) {
    std::int64_t sites = 1;
    for (int i = 0; i < n; ++i) {
        sites *= 2 * static_cast<std::int64_t>(L) + 1;
        if (sites > (std::int64_t{1} << 40)) break;
    }
    return sites;
}

// Index of the mirror site -x, for parity attribution.
std::vector<Eigen::Index> mirror_map(int n, int L) {
    const Eigen::Index side = 2 * L + 1;
    const Eigen::Index N = static_cast<Eigen::Index>(box_sites(n, L));
    std::vector<Eigen::Index> m(static_cast<std::size_t>(N));
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::Index rest = i, mirrored = 0, stride = 1;
        for (int d = 0; d < n; ++d) {
            const Eigen::Index c = rest % side;
            rest /= side;
            mirrored += (side - 1 - c) * stride;
            stride *= side;
        }
        m[static_cast<std::size_t>(i)] = mirrored;
    }
    return m;
}

std::vector<Sector> parities(const TruncatedHamiltonian& h, const Eigen::MatrixXd& vecs) {
    const auto mirror = mirror_map(h.n, h.L);
    std::vector<Sector> out;
    for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
        double overlap = 0.0;
        for (Eigen::Index i = 0; i < vecs.rows(); ++i) overlap += vecs(i, k) * vecs(mirror[static_cast<std::size_t>(i)], k);
        out.push_back(overlap >= 0.0 ? Sector::Even : Sector::Odd);
    }
    return out;
}

void orthonormalize_against(Eigen::MatrixXd& W, const Eigen::MatrixXd& Q, Eigen::Index used, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
        for (int attempt = 0; attempt < 5; ++attempt) {
            const double before = W.col(c).norm();
            for (int pass = 0; pass < 2; ++pass) {
                if (used > 0) W.col(c) -= Q.leftCols(used) * (Q.leftCols(used).transpose() * W.col(c));
                if (c > 0) W.col(c) -= W.leftCols(c) * (W.leftCols(c).transpose() * W.col(c));
            }
            const double after = W.col(c).norm();
            if (after > 1e-8 * std::max(before, 1e-300)) {
                W.col(c) /= after;
                break;
            }
            // deflated direction: restart the column from a random vector
            for (Eigen::Index i = 0; i < W.rows(); ++i) W(i, c) = normal(rng);
            if (attempt == 4) throw NumericError("block Lanczos: unable to extend the Krylov basis");
        }
    }
}

struct RitzResult {
    std::vector<double> values;
    Eigen::MatrixXd vectors;
};

// Block Lanczos with full reorthogonalization. Returns the `want` smallest Ritz pairs once
// their residuals are below tol (relative to the spectral scale).
RitzResult block_lanczos(const Eigen::SparseMatrix<double>& H, int want, int block, const OracleConfig& cfg,
                         int want_below = -1, double theta = 0.0) {
    const Eigen::Index N = H.rows();
    const Eigen::Index cap = std::min<Eigen::Index>(N, std::max<Eigen::Index>(cfg.max_basis, 2 * want + 2 * block));
    double scale = 0.0;
    for (int k = 0; k < H.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(H, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
    scale *= 4.0;

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd Q(N, cap);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(cap, cap);
    Eigen::Index used = 0;

    Eigen::MatrixXd V(N, block);
    for (Eigen::Index i = 0; i < N; ++i)
        for (int c = 0; c < block; ++c) V(i, c) = normal(rng);
    orthonormalize_against(V, Q, used, rng);

    int steps = 0;
    while (true) {
        const Eigen::Index b = std::min<Eigen::Index>(V.cols(), cap - used);
        Q.middleCols(used, b) = V.leftCols(b);
        const Eigen::MatrixXd HV = H * V.leftCols(b);
        used += b;
        const Eigen::MatrixXd C = Q.leftCols(used).transpose() * HV;  // used x b
        T.block(0, used - b, used, b) = C;
        T.block(used - b, 0, b, used) = C.transpose();
        ++steps;

        const bool full = used >= cap;
        if (full || steps % 4 == 0 || used >= N) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T.topLeftCorner(used, used));
            const int k = static_cast<int>(std::min<Eigen::Index>(want, used));
            bool ok = true;
            int below = 0;
            Eigen::MatrixXd X = Q.leftCols(used) * es.eigenvectors().leftCols(k);
            for (int i = 0; i < k; ++i) {
                const double val = es.eigenvalues()(i);
                const double res = (H * X.col(i) - val * X.col(i)).norm();
                if (res > cfg.lanczos_tol * scale) ok = false;
                if (val < theta) ++below;
            }
            if (want_below >= 0 && ok && below < std::min(want_below, k)) ok = false;
            if (ok || full || used >= N) {
                if (!ok && !(used >= N)) {
                    std::ostringstream msg;
                    msg << "block Lanczos did not converge within " << cap << " basis vectors";
                    throw NumericError(msg.str());
                }
                RitzResult r;
                for (int i = 0; i < k; ++i) r.values.push_back(es.eigenvalues()(i));
                r.vectors = X;
                return r;
            }
        }
        Eigen::MatrixXd W = HV;
        orthonormalize_against(W, Q, used, rng);
        V = W;
    }
}

}  // namespace

Eigen::Index TruncatedHamiltonian::site_index(const std::vector<int>& x) const {
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("site_index: wrong dimension");
    Eigen::Index idx = 0;
    for (int d = 0; d < n; ++d) {
        if (x[d] < -L || x[d] > L) throw std::invalid_argument("site_index: site outside the box");
        idx = idx * (2 * L + 1) + (x[d] + L);
    }
    return idx;
}

TruncatedHamiltonian build_hamiltonian(int n, int L, double lambda, double mu, const OracleConfig& cfg) {
    validate({n, lambda, mu});
    if (L < 1) throw std::invalid_argument("box half-width L must be >= 1");
    const std::int64_t sites = box_sites(n, L);
    if (sites > cfg.max_sites) {
        std::ostringstream msg;
        msg << "box [-" << L << "," << L << "]^" << n << " has " << sites << " sites, above the budget of "
            << cfg.max_sites;
        throw std::invalid_argument(msg.str());
    }
    TruncatedHamiltonian h;
    h.n = n;
    h.L = L;
    h.lambda = lambda;
    h.mu = mu;
    const Eigen::Index N = static_cast<Eigen::Index>(sites);
    const Eigen::Index side = 2 * L + 1;
    std::vector<Eigen::Index> stride(static_cast<std::size_t>(n));
    {
        Eigen::Index s = 1;
        for (int d = n - 1; d >= 0; --d) {
            stride[static_cast<std::size_t>(d)] = s;
            s *= side;
        }
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(N) * (2 * n + 1));
    std::vector<int> x(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < N; ++i) {
        Eigen::Index rest = i;
        int norm1 = 0;
        for (int d = n - 1; d >= 0; --d) {
            x[static_cast<std::size_t>(d)] = static_cast<int>(rest % side) - L;
            rest /= side;
            norm1 += std::abs(x[static_cast<std::size_t>(d)]);
        }
        double diag = n;
        if (norm1 == 0) diag -= mu;
        else if (norm1 == 1) diag -= 0.5 * lambda;
        trip.emplace_back(i, i, diag);
        for (int d = 0; d < n; ++d) {
            const int c = x[static_cast<std::size_t>(d)];
            if (c > -L) trip.emplace_back(i, i - stride[static_cast<std::size_t>(d)], -0.5);
            if (c < L) trip.emplace_back(i, i + stride[static_cast<std::size_t>(d)], -0.5);
        }
    }
    h.matrix.resize(N, N);
    h.matrix.setFromTriplets(trip.begin(), trip.end());
    h.matrix.makeCompressed();
    return h;
}

int count_below(const TruncatedHamiltonian& h, double theta) {
    const Eigen::Index N = h.dimension();
    Eigen::SparseMatrix<double> shifted = h.matrix;
    for (Eigen::Index i = 0; i < N; ++i) shifted.coeffRef(i, i) -= theta;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw NumericError("LDL^T factorization of H - theta failed");
    const Eigen::VectorXd d = ldlt.vectorD();
    int neg = 0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) == 0.0) throw NumericError("theta is an eigenvalue of the truncated Hamiltonian");
        if (d(i) < 0.0) ++neg;
    }
    return neg;
}

OracleSpectrum lowest_eigenvalues(const TruncatedHamiltonian& h, int k, const OracleConfig& cfg) {
    const Eigen::Index N = h.dimension();
    if (k < 1 || k > N) throw std::invalid_argument("lowest_eigenvalues: need 1 <= k <= dim");
    OracleSpectrum out;
    out.L = h.L;
    out.dimension = N;
    out.theta = cfg.theta;
    if (N <= cfg.dense_limit) {
        const Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
            dense, cfg.attribute_sectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        for (int i = 0; i < k; ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
        if (cfg.attribute_sectors) out.sectors = parities(h, es.eigenvectors().leftCols(k));
        out.count_below = 0;
        for (Eigen::Index i = 0; i < N; ++i)
            if (es.eigenvalues()(i) < cfg.theta) ++out.count_below;
        out.solver = "dense";
        return out;
    }
    out.count_below = count_below(h, cfg.theta);
    const int block = std::max(2, h.n + 1);
    RitzResult r = block_lanczos(h.matrix, k, block, cfg, std::min(k, out.count_below), cfg.theta);
    out.eigenvalues = r.values;
    if (cfg.attribute_sectors) out.sectors = parities(h, r.vectors);
    out.solver = "block-lanczos";
    return out;
}

OracleSpectrum bound_states(const TruncatedHamiltonian& h, const OracleConfig& cfg) {
    const Eigen::Index N = h.dimension();
    if (N <= cfg.dense_limit) {
        OracleSpectrum all = lowest_eigenvalues(h, static_cast<int>(N), cfg);
        all.eigenvalues.resize(static_cast<std::size_t>(all.count_below));
        if (!all.sectors.empty()) all.sectors.resize(static_cast<std::size_t>(all.count_below));
        return all;
    }
    const int count = count_below(h, cfg.theta);
    OracleSpectrum out;
    out.L = h.L;
    out.dimension = N;
    out.theta = cfg.theta;
    out.count_below = count;
    out.solver = "block-lanczos";
    if (count == 0) return out;
    OracleSpectrum low = lowest_eigenvalues(h, count, cfg);
    for (double v : low.eigenvalues)
        if (v >= cfg.theta) throw NumericError("iterative solver missed an eigenvalue below theta");
    out.eigenvalues = low.eigenvalues;
    out.sectors = low.sectors;
    return out;
}

OracleComparison compare(const ModelParams& params, const std::vector<int>& ladder, const OracleConfig& cfg) {
    validate(params);
    if (ladder.empty()) throw std::invalid_argument("compare: empty L ladder");
    if (!(cfg.theta < 0.0)) throw std::invalid_argument("compare: theta must be < 0");
    const SpectralSummary summary = summarize(params);
    OracleComparison cmp;
    cmp.params = params;
    cmp.theta = cfg.theta;
    cmp.cell = summary.even.cell;
    for (const auto& e : summary.eigenvalues)
        if (e.z < cfg.theta)
            for (int m = 0; m < e.multiplicity; ++m) cmp.predicted.push_back(e.z);
    std::sort(cmp.predicted.begin(), cmp.predicted.end());
    const int expected = static_cast<int>(cmp.predicted.size());

    cmp.all_counts_agree = true;
    for (int L : ladder) {
        const TruncatedHamiltonian h = build_hamiltonian(params.n, L, params.lambda, params.mu, cfg);
        const OracleSpectrum sp = bound_states(h, cfg);
        OracleLevel lv;
        lv.L = L;
        lv.dimension = sp.dimension;
        lv.count = sp.count_below;
        lv.expected = expected;
        lv.counts_agree = lv.count == expected;
        lv.oracle_values = sp.eigenvalues;
        lv.sectors = sp.sectors;
        if (lv.counts_agree)
            for (int i = 0; i < expected; ++i) lv.matched_errors.push_back(std::abs(sp.eigenvalues[i] - cmp.predicted[i]));
        cmp.all_counts_agree = cmp.all_counts_agree && lv.counts_agree;
        cmp.levels.push_back(std::move(lv));
    }
    const auto& last = cmp.levels.back();
    cmp.successive_agree = cmp.levels.size() >= 2 && last.counts_agree &&
                           cmp.levels[cmp.levels.size() - 2].count == last.count;
    cmp.monotone_improvement = cmp.all_counts_agree;
    for (std::size_t l = 1; cmp.monotone_improvement && l < cmp.levels.size(); ++l)
        for (int i = 0; i < expected; ++i)
            if (cmp.levels[l].matched_errors[i] > cmp.levels[l - 1].matched_errors[i] + 1e-12)
                cmp.monotone_improvement = false;
    return cmp;
}

}  // namespace latspec
