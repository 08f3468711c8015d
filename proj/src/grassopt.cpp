#include "qce/grassopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qce/random.hpp"

namespace qce {

namespace {

constexpr double kMinEigenvalue = 1e-6;
constexpr int kRoundEvery = 25;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e6;

[[noreturn]] void bad_config(const char* what) { throw Error(ErrorCode::InvalidConfig, what); }

ComplexMatrix block_of(const DensityMatrix& rho, const ComplexMatrix& w) {
    ComplexMatrix c = w.adjoint() * rho.matrix() * w;
    return 0.5 * (c + c.adjoint());
}

// F evaluated on the block W^dagger rho W.
double block_F(const DensityMatrix& rho, const ComplexMatrix& w, const Tolerances& tol) {
    if (w.cols() <= 1) return 0.0;
    const ComplexMatrix c = block_of(rho, w);
    const double t = c.trace().real();
    return std::max(0.0, xlnx(t) - trace_xlnx(c, tol));
}

ComplexMatrix gradient_from_basis(const DensityMatrix& rho, const ComplexMatrix& w, const Tolerances& tol) {
    const ComplexMatrix c = block_of(rho, w);
    const double t = c.trace().real();
    if (t <= tol.support) throw Error(ErrorCode::ZeroCompression, "tr(Q rho Q) vanishes");
    const EigenSystem es = eig_hermitian(c, tol);
    if (es.values[es.values.size() - 1] <= tol.support) {
        throw Error(ErrorCode::NotStrictlyPositive, "Q rho Q is singular on range(Q)");
    }
    const ComplexMatrix log_c = spectral_function(es, [](double x) { return std::log(x); });
    const ComplexMatrix b = std::log(t) * (w * w.adjoint()) - w * log_c * w.adjoint();
    const ComplexMatrix g = Complex(0.0, 1.0) * commutator(b, rho.matrix());
    return 0.5 * (g + g.adjoint());
}

// Nearest rank-n projector to W W^dagger, returned as an orthonormal basis.
ComplexMatrix reround(const ComplexMatrix& w, const Tolerances& tol) {
    ComplexMatrix q = w * w.adjoint();
    q = 0.5 * (q + q.adjoint());
    return eig_hermitian(q, tol).vectors.leftCols(w.cols());
}

struct RestartOutcome {
    ComplexMatrix basis;
    double value = 0.0;
    double grad_norm = 0.0;
    int iters = 0;
    bool converged = false;
    std::vector<double> history;
};

RestartOutcome ascend(const DensityMatrix& rho, ComplexMatrix w, const OptimizeConfig& cfg, const Tolerances& tol) {
    RestartOutcome out;
    double f = block_F(rho, w, tol);
    out.history.push_back(f);
    double eta = cfg.step_init;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        if (iter > 0 && iter % kRoundEvery == 0) w = reround(w, tol);
        const ComplexMatrix g = gradient_from_basis(rho, w, tol);
        const double g2 = g.squaredNorm();
        out.grad_norm = std::sqrt(g2);
        if (out.grad_norm <= cfg.grad_tol) {
            out.converged = true;
            break;
        }
        const EigenSystem es = eig_hermitian(g, tol);
        bool accepted = false;
        ComplexMatrix w_next;
        double f_next = f;
        while (eta >= kMinStep) {
            w_next = exp_i(es, eta) * w;
            f_next = block_F(rho, w_next, tol);
            if (f_next >= f + cfg.armijo_c * eta * g2) {
                accepted = true;
                break;
            }
            eta *= cfg.shrink;
        }
        if (!accepted) break;
        w = std::move(w_next);
        f = f_next;
        out.history.push_back(f);
        out.iters = iter + 1;
        eta = std::min(eta / cfg.shrink, kMaxStep);
    }
    if (!out.converged) {
        out.grad_norm = std::sqrt(gradient_from_basis(rho, w, tol).squaredNorm());
        out.converged = out.grad_norm <= cfg.grad_tol;
    }
    out.basis = reround(w, tol);
    out.value = f;
    return out;
}

}  // namespace

void OptimizeConfig::validate() const {
    if (!(step_init > 0.0) || !std::isfinite(step_init)) bad_config("step_init must be > 0");
    if (!(armijo_c > 0.0 && armijo_c < 1.0)) bad_config("armijo_c must lie in (0, 1)");
    if (!(shrink > 0.0 && shrink < 1.0)) bad_config("shrink must lie in (0, 1)");
    if (!(grad_tol > 0.0) || !std::isfinite(grad_tol)) bad_config("grad_tol must be > 0");
    if (max_iters < 0) bad_config("max_iters must be >= 0");
    if (restarts < 1) bad_config("restarts must be >= 1");
}

ComplexMatrix variational_gradient(const DensityMatrix& rho, const Projector& q, const Tolerances& tol) {
    require_same_dim(rho.dim(), q.dim(), "variational_gradient");
    if (q.rank() == 0) throw Error(ErrorCode::ZeroCompression, "gradient needs rank Q >= 1");
    return gradient_from_basis(rho, q.basis(), tol);
}

OptimizeResult maximize_F_n(const DensityMatrix& rho, Index n, const OptimizeConfig& cfg, const Tolerances& tol) {
    cfg.validate();
    const Index dim = rho.dim();
    if (n < 1 || n > dim) throw Error(ErrorCode::InvalidConfig, "rank must satisfy 1 <= n <= dim");
    if (rho.min_eigenvalue() <= kMinEigenvalue) {
        throw Error(ErrorCode::NotStrictlyPositive, "maximize_F_n needs min eigenvalue > 1e-6");
    }

    OptimizeResult result;
    if (n == dim) {
        result.best_Q = Projector::identity(dim);
        result.best_F = vn_entropy(rho);
        result.restart_values = {result.best_F};
        result.history = {result.best_F};
        result.converged = true;
        return result;
    }
    if (n == 1) {
        // F vanishes on every rank-one projector; pick the one commuting with rho.
        result.best_Q = Projector::from_basis(rho.eigenvectors().leftCols(1), tol);
        result.restart_values = {0.0};
        result.history = {0.0};
        result.converged = true;
        result.commutation_residual = max_abs(commutator(rho.matrix(), result.best_Q.matrix()));
        return result;
    }

    double best = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        const ComplexMatrix start = random_unitary(dim, rng).leftCols(n);
        RestartOutcome run = ascend(rho, start, cfg, tol);
        const Projector q = Projector::from_basis(run.basis, tol);
        const double value = compression_entropy(rho, q, tol);
        result.restart_values.push_back(value);
        if (value > best) {
            best = value;
            result.best_Q = q;
            result.best_F = value;
            result.grad_norm = run.grad_norm;
            result.iters = run.iters;
            result.converged = run.converged;
            result.history = std::move(run.history);
        }
    }
    result.commutation_residual = max_abs(commutator(rho.matrix(), result.best_Q.matrix()));
    return result;
}

LemmaReport verify_lemma_FS(const DensityMatrix& rho, const OptimizeConfig& cfg, const Tolerances& tol) {
    LemmaReport report;
    report.entropy = vn_entropy(rho);
    report.min_gap = std::numeric_limits<double>::infinity();
    for (Index n = 1; n < rho.dim(); ++n) {
        const OptimizeResult r = maximize_F_n(rho, n, cfg, tol);
        LemmaRankEntry e{n, r.best_F, report.entropy - r.best_F, r.converged};
        report.min_gap = std::min(report.min_gap, e.gap);
        report.ranks.push_back(e);
    }
    if (report.ranks.empty()) report.min_gap = 0.0;
    report.strict = !report.ranks.empty() && report.min_gap > 0.0;
    return report;
}

std::vector<std::vector<Index>> integer_partitions(Index dim) {
    std::vector<std::vector<Index>> out;
    std::vector<Index> current;
    auto rec = [&](auto&& self, Index remaining, Index max_part) -> void {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (Index part = std::min(remaining, max_part); part >= 1; --part) {
            current.push_back(part);
            self(self, remaining - part, part);
            current.pop_back();
        }
    };
    if (dim >= 1) rec(rec, dim, dim);
    return out;
}

DeltaPatternEntry maximize_delta_pattern(std::span<const Index> pattern, const DeltaProbeConfig& cfg) {
    DeltaPatternEntry entry;
    entry.pattern.assign(pattern.begin(), pattern.end());
    const std::size_t k = pattern.size();
    if (k == 0) throw Error(ErrorCode::BadShape, "empty pattern");

    // Stationarity: -ln(w_i / d_i) - 1 - 2 w_i ln d_i = lambda, strictly
    // decreasing in w_i, so each w_i(lambda) is found by bisection and the
    // multiplier by a second bisection on sum_i w_i(lambda) = 1.
    auto slope = [&](std::size_t i, double w) {
        const double d = static_cast<double>(pattern[i]);
        return -std::log(w / d) - 1.0 - 2.0 * w * std::log(d);
    };
    auto weight_at = [&](std::size_t i, double lambda) {
        double lo = 0.0;
        double hi = 1.0;
        if (slope(i, hi) >= lambda) return hi;
        while (hi - lo > cfg.bisect_tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (slope(i, mid) > lambda) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto total = [&](double lambda) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += weight_at(i, lambda);
        return s;
    };
    double lam_lo = std::numeric_limits<double>::infinity();
    double lam_hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
        lam_lo = std::min(lam_lo, slope(i, 1.0) - 1.0);
        lam_hi = std::max(lam_hi, slope(i, 1.0 / static_cast<double>(k)));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lam_lo + lam_hi);
        if (total(mid) > 1.0) lam_lo = mid; else lam_hi = mid;
    }
    const double lambda = 0.5 * (lam_lo + lam_hi);
    entry.weights.resize(k);
    double mass = 0.0;
    for (std::size_t i = 0; i < k; ++i) mass += entry.weights[i] = weight_at(i, lambda);
    for (double& w : entry.weights) w /= mass;

    double value = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double w = entry.weights[i];
        const double d = static_cast<double>(pattern[i]);
        value += -w * std::log(w / d) - w * w * std::log(d);
    }
    entry.delta_s = value;

    entry.attained = true;
    for (std::size_t i = 0; i < k && entry.attained; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double ri = entry.weights[i] / static_cast<double>(pattern[i]);
            const double rj = entry.weights[j] / static_cast<double>(pattern[j]);
            if (std::abs(ri - rj) <= 1e-9) {
                entry.attained = false;
                break;
            }
        }
    }
    return entry;
}

DeltaProbeResult probe_max_deltaS(Index dim, const DeltaProbeConfig& cfg) {
    if (dim < 2) throw Error(ErrorCode::InvalidConfig, "probe_max_deltaS needs dim >= 2");
    DeltaProbeResult result;
    result.dim = dim;
    result.delta_s = -std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    for (const auto& pattern : integer_partitions(dim)) {
        result.patterns.push_back(maximize_delta_pattern(pattern, cfg));
        if (result.patterns.back().delta_s > result.delta_s) {
            result.delta_s = result.patterns.back().delta_s;
            best = result.patterns.size() - 1;
        }
    }
    const DeltaPatternEntry& top = result.patterns[best];
    result.pattern = top.pattern;
    result.attained = top.attained;

    const std::size_t k = top.pattern.size();
    std::vector<double> block(k);
    for (std::size_t i = 0; i < k; ++i) block[i] = top.weights[i] / static_cast<double>(top.pattern[i]);
    if (!top.attained) {
        // Shift block i by split * (i - c), with c chosen to keep the trace.
        double num = 0.0;
        for (std::size_t i = 0; i < k; ++i) num += static_cast<double>(top.pattern[i]) * static_cast<double>(i);
        const double c = num / static_cast<double>(dim);
        for (std::size_t i = 0; i < k; ++i) block[i] += cfg.split * (static_cast<double>(i) - c);
    }
    std::vector<double> spectrum;
    for (std::size_t i = 0; i < k; ++i) spectrum.insert(spectrum.end(), static_cast<std::size_t>(top.pattern[i]), block[i]);
    double mass = 0.0;
    for (double v : spectrum) mass += v;
    for (double& v : spectrum) v /= mass;
    result.rho = DensityMatrix::diagonal(spectrum);
    result.delta_s_at_rho = self_info_gain(result.rho);
    return result;
}

}  // namespace qce
