// One pass/fail line per acceptance criterion. Thresholds are fixed below and
// never read from the command line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qce/audit.hpp"
#include "qce/grassopt.hpp"

using namespace qce;

namespace {

constexpr double kLn2 = std::numbers::ln2;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

void require(Outcome& o, bool ok, const std::string& what) {
    if (!ok) {
        o.pass = false;
        o.detail += (o.detail.empty() ? "" : "; ") + ("failed: " + what);
    }
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

ComplexMatrix random_hermitian(Index d, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

Outcome ac1() {
    constexpr double kTol = 1e-10;
    Outcome o;
    const Example22Report r = example_2_2_probe(11);
    require(o, r.rows.size() == 11, "eleven kappa points");
    require(o, r.max_block_sum_error <= kTol, "F(rho,Q) + F(rho,I-Q) = ln 2");
    require(o, std::abs(r.rows.front().entropy - std::log(4.0)) <= kTol, "S(rho(0)) = ln 4");
    require(o, std::abs(r.rows.back().entropy - kLn2) <= kTol, "S(rho(1)) = ln 2");
    o.detail = "max |F+F-ln2| = " + fmt("%.2e", r.max_block_sum_error) + "; F+F > S anywhere: " +
               (r.sum_exceeds_entropy_somewhere ? "yes" : "no") + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome ac2() {
    Outcome o;
    const Example21Report r = example_2_1_probe(50);
    require(o, std::abs(r.rho1 - 0.9) <= 1e-15 && std::abs(r.cos2_phi1 - 0.1) <= 1e-12 &&
                   std::abs(r.cos2_phi2 - 0.9) <= 1e-12, "construction parameters");
    require(o, r.rho_q_error <= 1e-10, "rho_Q = Q/2");
    require(o, std::abs(r.entropy_q - kLn2) <= 1e-10, "S(rho_Q) = ln 2");
    require(o, std::abs(r.entropy - 0.325083) <= 1e-6, "S(rho) = 0.325083");
    require(o, r.entropy_q > r.entropy, "S(rho_Q) > S(rho)");
    require(o, std::abs(r.f - 0.18 * kLn2) <= 1e-10, "F = 0.18 ln 2");
    require(o, r.f <= r.entropy, "F <= S");
    require(o, r.grid == 50 && r.grid_bound_holds, "F <= S on the 50x50 grid");
    o.detail = "S(rho) = " + fmt("%.9f", r.entropy) + ", F = " + fmt("%.12f", r.f) + ", min grid slack " +
               fmt("%.2e", r.min_grid_slack) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

EnsembleConfig sweep_config(Index lo, Index hi, int trials) {
    EnsembleConfig cfg;
    cfg.dims.clear();
    for (Index d = lo; d <= hi; ++d) cfg.dims.push_back(d);
    cfg.trials = trials;
    cfg.seed = 2024;
    return cfg;
}

Outcome ac3() {
    Outcome o;
    const SweepReport r = shannon_sweep(sweep_config(2, 8, 2000));
    require(o, r.samples == 7 * 2000, "14000 samples");
    require(o, r.violations == 0, "no Shannon-inequality violations");
    require(o, r.min_lower_slack >= -1e-9 && r.min_upper_slack >= -1e-9, "slacks >= -1e-9");
    o.detail = fmt("%.0f samples", static_cast<double>(r.samples)) + ", min lower slack " + fmt("%.2e", r.min_lower_slack) +
               ", min upper slack " + fmt("%.2e", r.min_upper_slack) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome ac4() {
    Outcome o;
    const SweepReport r = concavity_sweep(sweep_config(2, 6, 2000));
    require(o, r.samples == 5 * 2000, "10000 samples");
    require(o, r.violations == 0 && r.min_lower_slack >= -1e-9, "concavity slack >= -1e-9");
    o.detail = "min slack " + fmt("%.2e", r.min_lower_slack) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome ac5() {
    Outcome o;
    Rng rng(55);
    std::size_t zero_checks = 0, nonzero = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Index d = 2 + trial % 7;
        const std::vector<Index> ones(static_cast<std::size_t>(d), 1);
        const DensityMatrix sigma = density_with_spectrum(random_spectrum(ones, 1e-3, rng), rng);
        const DensityMatrix rho = random_density(d, 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d)), rng);
        ++zero_checks;
        if (cond_entropy(rho, sigma).total != 0.0) ++nonzero;
    }
    require(o, nonzero == 0, "S(rho|sigma) = 0 exactly for nondegenerate sigma");

    double worst = 0.0;
    std::size_t planted = 0;
    int guard = 0;
    while (planted < 500 && guard++ < 100000) {
        const Index d = 2 + static_cast<Index>(rng() % 7);
        const std::vector<Index> pattern = random_composition(d, rng);
        if (pattern.size() == static_cast<std::size_t>(d)) continue;  // needs a degenerate block
        const DensityMatrix rho = density_with_spectrum(random_spectrum(pattern, 1e-3, rng), rng);
        worst = std::max(worst, std::abs(self_cond_entropy(rho) - cond_entropy(rho, rho).total));
        ++planted;
    }
    require(o, planted == 500, "500 planted degeneracies");
    require(o, worst <= 1e-9, "closed form matches S(rho|rho) within 1e-9");
    o.detail = fmt("%.0f nondegenerate draws", static_cast<double>(zero_checks)) + ", max closed-form error " +
               fmt("%.2e", worst) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome ac6() {
    Outcome o;
    const SweepReport r = pinch_sweep(sweep_config(2, 8, 2000));
    require(o, r.samples == 7 * 2000, "14000 samples");
    require(o, r.violations == 0 && r.min_lower_slack >= -1e-9, "S(E(rho)) - S(rho) >= -1e-9");
    o.detail = fmt("%.0f samples", static_cast<double>(r.samples)) + ", min slack " + fmt("%.2e", r.min_lower_slack) +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

// Relative error of tr(G K) against the central difference, measured against
// the larger of the two magnitudes. Ranks are drawn from [2, d - 1] so the
// directional derivative is generically nonzero; in dimension 2 every rank
// gives F constant along the orbit and both sides vanish.
Outcome ac7() {
    constexpr double kRelTol = 1e-5, kH = 1e-4, kZeroFloor = 1e-10;
    Outcome o;
    Rng rng(77);
    double worst = 0.0;
    int trivial = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Index d = 2 + trial % 5;
        const Index n = d == 2 ? 1 : 2 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d - 2));
        const DensityMatrix rho = random_density(d, d, rng);
        const Projector q = random_projector(d, n, rng);
        const ComplexMatrix k = random_hermitian(d, rng);
        const double analytic = (variational_gradient(rho, q) * k).trace().real();
        const auto f = [&](double s) {
            const ComplexMatrix u = oracle::exp_minus_i(k, s);
            return oracle::F(u * rho.matrix() * u.adjoint(), q.matrix());
        };
        const double fd = oracle::central_difference(f, kH);
        const double scale = std::max(std::abs(analytic), std::abs(fd));
        if (scale <= kZeroFloor) {
            ++trivial;
            continue;
        }
        worst = std::max(worst, std::abs(analytic - fd) / scale);
    }
    require(o, worst <= kRelTol, "relative error <= 1e-5");
    o.detail = "max relative error " + fmt("%.2e", worst) + fmt(", %.0f zero-derivative triples", trivial) +
               (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Outcome ac8() {
    Outcome o;
    Rng rng(88);
    double worst_gap = 0.0, worst_residual = 0.0;
    int runs = 0, unconverged = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Index d = 3 + trial % 4;
        const DensityMatrix rho =
            DensityMatrix::diagonal(random_spectrum(std::vector<Index>(static_cast<std::size_t>(d), 1), 1e-3, rng));
        for (Index n = 1; n < d; ++n) {
            OptimizeConfig cfg;
            cfg.seed = derive_seed(8, static_cast<std::uint64_t>(trial * 8 + n));
            const OptimizeResult r = maximize_F_n(rho, n, cfg);
            ++runs;
            worst_gap = std::max(worst_gap, std::abs(r.best_F - oracle::best_coordinate_F(rho.matrix(), n)));
            if (r.converged) worst_residual = std::max(worst_residual, r.commutation_residual);
            else ++unconverged;
        }
    }
    require(o, worst_gap <= 1e-6, "optimizer matches coordinate brute force within 1e-6");
    require(o, worst_residual <= 1e-4, "commutation residual <= 1e-4 at convergence");

    double min_gap = INFINITY;
    bool strict = true;
    for (int trial = 0; trial < 10; ++trial) {
        const Index d = 2 + trial % 5;
        DensityMatrix rho = random_density(d, d, rng);
        if (rho.min_eigenvalue() <= 1e-6) continue;
        const LemmaReport lr = verify_lemma_FS(rho);
        strict = strict && lr.strict;
        min_gap = std::min(min_gap, lr.min_gap);
    }
    require(o, strict, "F_n < S(rho) for every n < dim");
    o.detail = fmt("%.0f runs", runs) + ", max |F - brute force| " + fmt("%.2e", worst_gap) + ", max residual " +
               fmt("%.2e", worst_residual) + fmt(", %.0f unconverged", unconverged) + ", min lemma gap " +
               fmt("%.3e", min_gap) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

IdentityResolution coarsen(const IdentityResolution& fine, Rng& rng) {
    std::vector<Projector> out;
    std::size_t k = 0;
    while (k < fine.size()) {
        const std::size_t take = 1 + static_cast<std::size_t>(rng() % (fine.size() - k));
        ComplexMatrix sum = ComplexMatrix::Zero(fine.dim(), fine.dim());
        for (std::size_t i = 0; i < take; ++i) sum += fine[k++].matrix();
        out.emplace_back(sum);
    }
    return IdentityResolution(out);
}

std::vector<Index> nontrivial_composition(Index d, Rng& rng) {
    for (;;) {
        std::vector<Index> c = random_composition(d, rng);
        if (c.size() >= 2) return c;
    }
}

Outcome ac9() {
    Outcome o;
    Rng rng(99);
    double worst_bayes = 0.0, worst_sym = 0.0;
    int pairs = 0;
    while (pairs < 1000) {
        const Index d = 2 + pairs % 7;
        const IdentityResolution p = random_resolution(d, nontrivial_composition(d, rng), rng);
        const IdentityResolution q = random_resolution(d, nontrivial_composition(d, rng), rng);
        double comm = 0.0;
        for (const Projector& a : p.projectors())
            for (const Projector& b : q.projectors()) comm = std::max(comm, max_abs(commutator(a.matrix(), b.matrix())));
        if (comm <= 1e-6) continue;
        ++pairs;
        const ClassicalPartitionData data = bayes_data(p, q);
        const RealMatrix j = data.joint();
        double err = (j - data.joint_via_q()).cwiseAbs().maxCoeff();
        for (std::size_t a = 0; a < data.n(); ++a) err = std::max(err, std::abs(j.row(static_cast<Index>(a)).sum() - data.p()[a]));
        for (std::size_t b = 0; b < data.m(); ++b) {
            err = std::max(err, std::abs(j.col(static_cast<Index>(b)).sum() - data.q()[b]));
            if (data.q()[b] > 0.0) err = std::max(err, std::abs(data.p_given_q().col(static_cast<Index>(b)).sum() - 1.0));
        }
        err = std::max(err, std::abs(j.sum() - 1.0));
        worst_bayes = std::max(worst_bayes, err);
        worst_sym = std::max(worst_sym, std::abs(resolution_joint_entropy(p, q) - resolution_joint_entropy(q, p)));
    }
    require(o, worst_bayes <= 1e-9, "partition-data identities within 1e-9");
    require(o, worst_sym <= 1e-9, "joint entropy swap-symmetric within 1e-9");

    int agree = 0, refinements = 0;
    for (int c = 0; c < 200; ++c) {
        const Index d = 2 + c % 7;
        const IdentityResolution p = random_resolution(d, random_composition(d, rng), rng);
        // Even cases: Q a refinement of P built by splitting P's blocks; odd cases: an unrelated Q.
        IdentityResolution q = c % 2 == 0 ? IdentityResolution::trivial(d) : random_resolution(d, random_composition(d, rng), rng);
        if (c % 2 == 0) {
            const IdentityResolution fine = random_resolution(d, std::vector<Index>(static_cast<std::size_t>(d), 1), rng);
            // P is recast as a coarsening of `fine`, so Q = fine refines it.
            const IdentityResolution coarse = coarsen(fine, rng);
            q = fine;
            const bool zero = std::abs(resolution_cond_entropy(coarse, q)) <= 1e-9;
            const bool leq = resolution_leq(q, coarse).holds;
            refinements += leq ? 1 : 0;
            agree += zero == leq ? 1 : 0;
            continue;
        }
        const bool zero = std::abs(resolution_cond_entropy(p, q)) <= 1e-9;
        const bool leq = resolution_leq(q, p).holds;
        agree += zero == leq ? 1 : 0;
    }
    require(o, agree == 200, "H(P|Q) = 0 iff Q <= P on all 200 cases");
    require(o, refinements == 100, "100 refinement cases");
    o.detail = "max identity error " + fmt("%.2e", worst_bayes) + ", max asymmetry " + fmt("%.2e", worst_sym) +
               fmt(", iff agrees on %.0f/200", agree) + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

Verdict verdict(const AuditReport& r, const char* c) {
    const ConditionEntry* e = r.find(c);
    return e != nullptr ? e->verdict : Verdict::HoldsOnSample;
}

Outcome ac10() {
    Outcome o;
    EnsembleConfig cfg;  // dims 2, 3, 4; 100 trials; seed 1
    const AuditReport s = axiom_audit(FunctionalId::SCond, cfg);
    const AuditReport h = axiom_audit(FunctionalId::HResOfDensities, cfg);
    const Verdict holds = Verdict::HoldsOnSample, fails = Verdict::FailsWithWitness;

    require(o, verdict(s, "1-invariance") == holds, "S_cond condition 1 holds");
    require(o, verdict(s, "6-concavity-rho") == holds, "S_cond concave in rho");
    require(o, verdict(s, "2-self-zero") == fails, "S_cond S(rho|rho) = 0 fails");
    if (const ConditionEntry* e = s.find("2-self-zero"); e && e->witness) {
        require(o, self_cond_entropy(DensityMatrix(e->witness->inputs.at(0))) > 1e-9, "self-zero witness is degenerate");
    }
    require(o, verdict(s, "3-commuting-joint-symmetry") == fails, "S_cond joint asymmetric on a commuting pair");
    if (const ConditionEntry* e = s.find("3-commuting-joint-symmetry"); e && e->witness) {
        require(o, max_abs(commutator(e->witness->inputs.at(0), e->witness->inputs.at(1))) <= 1e-8, "commuting witness");
    }
    require(o, verdict(s, "4-joint-symmetry") == fails, "S_cond condition 4 fails");

    EnsembleConfig two = cfg;
    two.dims = {2};
    const AuditReport s2 = axiom_audit(FunctionalId::SCond, two);
    require(o, verdict(s2, "5-continuity-sigma") == fails, "S_cond sigma-discontinuity in dimension 2");
    if (const ConditionEntry* e = s2.find("5-continuity-sigma"); e && e->witness) {
        require(o, max_abs(e->witness->inputs.at(1) - ComplexMatrix::Identity(2, 2) * 0.5) <= 1e-12,
                "dimension-2 jump starts at I/2");
    }

    require(o, verdict(h, "1-invariance") == holds, "H_res condition 1 holds");
    require(o, verdict(h, "2-self-zero") == holds && verdict(h, "2-trivial") == holds, "H_res condition-2 equalities hold");
    require(o, verdict(h, "4-joint-symmetry") == holds, "H_res condition 4 holds");
    require(o, verdict(h, "5-continuity-sigma") == fails, "H_res condition 5 fails");

    for (const AuditReport* r : {&s, &h, &s2})
        for (const ConditionEntry& e : r->entries)
            if (e.witness) {
                const double v = replay_witness(r->functional, *e.witness).violation;
                require(o, std::abs(v - e.witness->violation) <= 1e-10, "witness replay for " + e.condition);
            }

    require(o, axiom_audit(FunctionalId::SCond, cfg) == s, "S_cond audit deterministic");
    require(o, axiom_audit(FunctionalId::HResOfDensities, cfg) == h, "H_res audit deterministic");
    if (o.pass) o.detail = "every verdict, witness replay and rerun as expected";
    return o;
}

Outcome ac11() {
    Outcome o;
    const ImpossibilityReport r = impossibility_demos();
    std::vector<Index> seen;
    for (const ContradictionEntry& e : r.contradictions) {
        seen.push_back(e.dim);
        require(o, e.self_zero_requirement == 0.0, "self-zero side is exactly 0");
        require(o, e.trivial_requirement == std::log(static_cast<double>(e.dim)), "trivial side is exactly ln d");
    }
    require(o, seen == std::vector<Index>{2, 3, 4}, "d = 2, 3, 4");
    std::string pairs;
    for (const ContradictionEntry& e : r.contradictions)
        pairs += (pairs.empty() ? "" : ", ") + fmt("(0, ln %.0f)", static_cast<double>(e.dim));
    o.detail = pairs + (o.detail.empty() ? "" : "; " + o.detail);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC1", "four-level example block sums", 1.0, ac1},
        {"AC2", "compression example", 5.0, ac2},
        {"AC3", "Shannon-inequality sweep", 60.0, ac3},
        {"AC4", "concavity sweep", 60.0, ac4},
        {"AC5", "nondegenerate conditioning and S(rho|rho) closed form", 30.0, ac5},
        {"AC6", "pinching monotonicity", 60.0, ac6},
        {"AC7", "gradient vs finite differences", 30.0, ac7},
        {"AC8", "optimizer oracle equivalence and strict gaps", 300.0, ac8},
        {"AC9", "resolution layer", 60.0, ac9},
        {"AC10", "axiom audit verdicts", 120.0, ac10},
        {"AC11", "impossibility contradiction", 1e9, ac11},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs >= c.budget_s) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s budget", c.budget_s);
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
