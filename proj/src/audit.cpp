#include "qce/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qce {

namespace {

constexpr double kInvarianceThreshold = 1e-8;
constexpr double kThreshold = 1e-9;
constexpr double kPathStep = 1e-3;
constexpr int kPathSteps = 5;
constexpr double kJumpFactor = 10.0;

std::uint64_t trial_seed(std::uint64_t base, std::size_t stream, Index dim, std::size_t trial) {
    return derive_seed(derive_seed(derive_seed(base, stream), static_cast<std::uint64_t>(dim)), trial);
}

DensityMatrix mix(double lambda, const DensityMatrix& a, const DensityMatrix& b) {
    ComplexMatrix m = lambda * a.matrix() + (1.0 - lambda) * b.matrix();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

DensityMatrix draw_state(Index dim, RankProfile profile, Rng& rng) {
    Index rank = dim;
    if (profile == RankProfile::RandomRank) rank = std::uniform_int_distribution<Index>(1, dim)(rng);
    return random_density(dim, rank, rng);
}

DensityMatrix draw_planted(Index dim, double gap_floor, Rng& rng) {
    const std::vector<Index> pattern = random_composition(dim, rng);
    const std::vector<double> spectrum = random_spectrum(pattern, gap_floor, rng);
    return density_with_spectrum(spectrum, rng);
}

// At least one block of rank >= 2.
DensityMatrix draw_degenerate(Index dim, double gap_floor, Rng& rng) {
    std::vector<Index> pattern;
    do {
        pattern = random_composition(dim, rng);
    } while (std::all_of(pattern.begin(), pattern.end(), [](Index d) { return d == 1; }));
    return density_with_spectrum(random_spectrum(pattern, gap_floor, rng), rng);
}

DensityMatrix draw_nondegenerate(Index dim, double gap_floor, Rng& rng) {
    const std::vector<Index> pattern(static_cast<std::size_t>(dim), 1);
    return density_with_spectrum(random_spectrum(pattern, gap_floor, rng), rng);
}

// Two states diagonal in one Haar basis, each with its own degeneracy pattern.
std::pair<DensityMatrix, DensityMatrix> draw_commuting(Index dim, double gap_floor, Rng& rng) {
    const ComplexMatrix u = random_unitary(dim, rng);
    auto one = [&]() {
        std::vector<double> spec = random_spectrum(random_composition(dim, rng), gap_floor, rng);
        std::shuffle(spec.begin(), spec.end(), rng);
        RealVector d(dim);
        for (Index k = 0; k < dim; ++k) d[k] = spec[static_cast<std::size_t>(k)];
        ComplexMatrix m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
        return DensityMatrix(0.5 * (m + m.adjoint()));
    };
    DensityMatrix a = one();
    DensityMatrix b = one();
    return {std::move(a), std::move(b)};
}

// ---- condition evaluators -------------------------------------------------
// Each takes the raw inputs a witness stores, so replay recomputes exactly.

using Inputs = std::vector<ComplexMatrix>;

Evaluation eval_invariance(FunctionalId id, const Inputs& in, const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const DensityMatrix sigma(in.at(1), tol);
    const ComplexMatrix& u = in.at(2);
    const double a = functional_value(id, rho, sigma, tol);
    const double b = functional_value(id, rho.conjugated(u), sigma.conjugated(u), tol);
    return {{a, b}, std::abs(a - b)};
}

Evaluation eval_bounds(FunctionalId id, const Inputs& in, bool native, const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const DensityMatrix sigma(in.at(1), tol);
    const double f = functional_value(id, rho, sigma, tol);
    const double upper = native ? functional_entropy(id, rho, tol) : vn_entropy(rho);
    return {{f, upper}, std::max(-f, f - upper)};
}

Evaluation eval_self_zero(FunctionalId id, const Inputs& in, const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const double f = functional_value(id, rho, rho, tol);
    return {{f}, std::abs(f)};
}

Evaluation eval_trivial(FunctionalId id, const Inputs& in, const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const double f = functional_value(id, rho, DensityMatrix::maximally_mixed(rho.dim()), tol);
    const double e = functional_entropy(id, rho, tol);
    return {{f, e}, std::abs(f - e)};
}

Evaluation eval_joint_symmetry(FunctionalId id, const Inputs& in, const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const DensityMatrix sigma(in.at(1), tol);
    const double a = functional_joint(id, rho, sigma, tol);
    const double b = functional_joint(id, sigma, rho, tol);
    return {{a, b}, std::abs(a - b)};
}

// Jump at t = 0 minus kJumpFactor times the largest step-to-step change
// further along the path.
Evaluation eval_continuity(FunctionalId id, const Inputs& in, const std::vector<double>& params,
                           const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const DensityMatrix sigma_deg(in.at(1), tol);
    const DensityMatrix sigma_nondeg(in.at(2), tol);
    const double step = params.at(0);
    const int steps = static_cast<int>(params.at(1));
    Evaluation e;
    for (int k = 0; k <= steps; ++k) {
        const double t = step * k;
        e.values.push_back(functional_value(id, rho, mix(1.0 - t, sigma_deg, sigma_nondeg), tol));
    }
    const double jump = std::abs(e.values[1] - e.values[0]);
    double smooth = 0.0;
    for (int k = 1; k < steps; ++k) {
        smooth = std::max(smooth, std::abs(e.values[static_cast<std::size_t>(k) + 1] - e.values[static_cast<std::size_t>(k)]));
    }
    e.violation = jump - kJumpFactor * smooth;
    return e;
}

Evaluation eval_concavity_rho(FunctionalId id, const Inputs& in, const std::vector<double>& params,
                              const Tolerances& tol) {
    const DensityMatrix rho1(in.at(0), tol);
    const DensityMatrix rho2(in.at(1), tol);
    const DensityMatrix sigma(in.at(2), tol);
    const double lambda = params.at(0);
    const double a = functional_value(id, rho1, sigma, tol);
    const double b = functional_value(id, rho2, sigma, tol);
    const double m = functional_value(id, mix(lambda, rho1, rho2), sigma, tol);
    return {{a, b, m}, lambda * a + (1.0 - lambda) * b - m};
}

Evaluation eval_concavity_sigma(FunctionalId id, const Inputs& in, const std::vector<double>& params,
                                const Tolerances& tol) {
    const DensityMatrix rho(in.at(0), tol);
    const DensityMatrix sigma1(in.at(1), tol);
    const DensityMatrix sigma2(in.at(2), tol);
    const double lambda = params.at(0);
    const double a = functional_value(id, rho, sigma1, tol);
    const double b = functional_value(id, rho, sigma2, tol);
    const double m = functional_value(id, rho, mix(lambda, sigma1, sigma2), tol);
    return {{a, b, m}, lambda * a + (1.0 - lambda) * b - m};
}

struct ConditionSpec {
    const char* id;
    const char* description;
    double threshold;
};

const std::vector<ConditionSpec>& condition_specs() {
    static const std::vector<ConditionSpec> specs = {
        {"1-invariance", "f(U rho U* | U sigma U*) = f(rho | sigma) under Haar U", kInvarianceThreshold},
        {"2-bounds", "0 <= f(rho | sigma) <= S(rho)", kThreshold},
        {"2-bounds-native", "0 <= f(rho | sigma) <= E(rho), E the functional's own entropy", kThreshold},
        {"2-self-zero", "f(rho | rho) = 0", kThreshold},
        {"2-trivial", "f(rho | I/d) = E(rho)", kThreshold},
        {"3-commuting-joint-symmetry", "E(sigma) + f(rho | sigma) symmetric on commuting pairs", kThreshold},
        {"4-joint-symmetry", "E(sigma) + f(rho | sigma) symmetric under rho <-> sigma", kThreshold},
        {"5-continuity-sigma", "no jump along sigma(t) leaving a degenerate sigma", kThreshold},
        {"6-concavity-rho", "f concave in rho", kThreshold},
        {"6-concavity-sigma", "f concave in sigma", kThreshold},
    };
    return specs;
}

Evaluation evaluate(FunctionalId id, const std::string& condition, const Inputs& in,
                    const std::vector<double>& params, const Tolerances& tol) {
    if (condition == "1-invariance") return eval_invariance(id, in, tol);
    if (condition == "2-bounds") return eval_bounds(id, in, false, tol);
    if (condition == "2-bounds-native") return eval_bounds(id, in, true, tol);
    if (condition == "2-self-zero") return eval_self_zero(id, in, tol);
    if (condition == "2-trivial") return eval_trivial(id, in, tol);
    if (condition == "3-commuting-joint-symmetry" || condition == "4-joint-symmetry") {
        return eval_joint_symmetry(id, in, tol);
    }
    if (condition == "5-continuity-sigma") return eval_continuity(id, in, params, tol);
    if (condition == "6-concavity-rho") return eval_concavity_rho(id, in, params, tol);
    if (condition == "6-concavity-sigma") return eval_concavity_sigma(id, in, params, tol);
    throw Error(ErrorCode::InvalidConfig, "unknown audit condition: " + condition);
}

struct Sample {
    Inputs inputs;
    std::vector<double> params;
};

Sample draw_sample(const std::string& condition, Index dim, std::size_t trial, const EnsembleConfig& cfg,
                   Rng& rng) {
    const double gap = cfg.gap_floor;
    const bool even = trial % 2 == 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (condition == "1-invariance") {
        return {{draw_planted(dim, gap, rng).matrix(), draw_planted(dim, gap, rng).matrix(), random_unitary(dim, rng)}, {}};
    }
    if (condition == "2-bounds" || condition == "2-bounds-native") {
        const DensityMatrix rho = draw_state(dim, cfg.rank_profile, rng);
        const DensityMatrix sigma = even ? draw_degenerate(dim, gap, rng) : draw_state(dim, cfg.rank_profile, rng);
        return {{rho.matrix(), sigma.matrix()}, {}};
    }
    if (condition == "2-self-zero") {
        const DensityMatrix rho = even ? draw_degenerate(dim, gap, rng) : draw_planted(dim, gap, rng);
        return {{rho.matrix()}, {}};
    }
    if (condition == "2-trivial") {
        const DensityMatrix rho = even ? draw_state(dim, cfg.rank_profile, rng) : draw_planted(dim, gap, rng);
        return {{rho.matrix()}, {}};
    }
    if (condition == "3-commuting-joint-symmetry") {
        auto [rho, sigma] = draw_commuting(dim, gap, rng);
        return {{rho.matrix(), sigma.matrix()}, {}};
    }
    if (condition == "4-joint-symmetry") {
        if (even) {
            auto [rho, sigma] = draw_commuting(dim, gap, rng);
            return {{rho.matrix(), sigma.matrix()}, {}};
        }
        return {{draw_planted(dim, gap, rng).matrix(), draw_planted(dim, gap, rng).matrix()}, {}};
    }
    if (condition == "5-continuity-sigma") {
        const DensityMatrix rho = random_density(dim, dim, rng);
        const DensityMatrix deg = draw_degenerate(dim, gap, rng);
        const DensityMatrix nondeg = draw_nondegenerate(dim, gap, rng);
        return {{rho.matrix(), deg.matrix(), nondeg.matrix()}, {kPathStep, static_cast<double>(kPathSteps)}};
    }
    if (condition == "6-concavity-rho") {
        const DensityMatrix rho1 = draw_state(dim, cfg.rank_profile, rng);
        const DensityMatrix rho2 = draw_state(dim, cfg.rank_profile, rng);
        const DensityMatrix sigma = even ? draw_degenerate(dim, gap, rng) : draw_planted(dim, gap, rng);
        return {{rho1.matrix(), rho2.matrix(), sigma.matrix()}, {unit(rng)}};
    }
    if (condition == "6-concavity-sigma") {
        const DensityMatrix rho = draw_state(dim, cfg.rank_profile, rng);
        const DensityMatrix sigma1 = trial % 4 == 0 ? DensityMatrix::maximally_mixed(dim) : draw_degenerate(dim, gap, rng);
        const DensityMatrix sigma2 = draw_planted(dim, gap, rng);
        return {{rho.matrix(), sigma1.matrix(), sigma2.matrix()}, {unit(rng)}};
    }
    throw Error(ErrorCode::InvalidConfig, "unknown audit condition: " + condition);
}

double max_or(double current, double v) { return std::isnan(current) ? v : std::max(current, v); }

}  // namespace

std::string_view to_string(FunctionalId id) {
    return id == FunctionalId::SCond ? "scond" : "hres";
}

std::optional<FunctionalId> parse_functional(std::string_view name) {
    if (name == "scond") return FunctionalId::SCond;
    if (name == "hres") return FunctionalId::HResOfDensities;
    return std::nullopt;
}

std::string_view to_string(RankProfile profile) {
    return profile == RankProfile::Full ? "full" : "random-rank";
}

std::optional<RankProfile> parse_rank_profile(std::string_view name) {
    if (name == "full") return RankProfile::Full;
    if (name == "random-rank") return RankProfile::RandomRank;
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    return v == Verdict::HoldsOnSample ? "holds-on-sample" : "fails-with-witness";
}

void EnsembleConfig::validate() const {
    if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
    if (dims.empty()) throw Error(ErrorCode::InvalidConfig, "dims must be nonempty");
    for (Index d : dims) {
        if (d < 2) throw Error(ErrorCode::InvalidConfig, "every dim must be >= 2");
    }
    if (!(gap_floor > 0.0) || !std::isfinite(gap_floor)) throw Error(ErrorCode::InvalidConfig, "gap_floor must be > 0");
}

double functional_value(FunctionalId id, const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    if (id == FunctionalId::SCond) return cond_entropy(rho, sigma, tol).total;
    return res_cond_of_densities(rho, sigma, tol);
}

double functional_entropy(FunctionalId id, const DensityMatrix& rho, const Tolerances& tol) {
    if (id == FunctionalId::SCond) return vn_entropy(rho);
    return res_entropy_of_density(rho, tol);
}

double functional_joint(FunctionalId id, const DensityMatrix& rho, const DensityMatrix& sigma, const Tolerances& tol) {
    return functional_entropy(id, sigma, tol) + functional_value(id, rho, sigma, tol);
}

const ConditionEntry* AuditReport::find(std::string_view condition) const {
    for (const ConditionEntry& e : entries) {
        if (e.condition == condition) return &e;
    }
    return nullptr;
}

const std::vector<std::string>& audit_conditions() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const ConditionSpec& s : condition_specs()) out.emplace_back(s.id);
        return out;
    }();
    return ids;
}

AuditReport axiom_audit(FunctionalId id, const EnsembleConfig& cfg, const Tolerances& tol) {
    cfg.validate();
    AuditReport report;
    report.functional = id;
    report.config = cfg;
    const auto& specs = condition_specs();
    for (std::size_t c = 0; c < specs.size(); ++c) {
        ConditionEntry entry;
        entry.condition = specs[c].id;
        entry.description = specs[c].description;
        entry.threshold = specs[c].threshold;
        double worst = std::numeric_limits<double>::quiet_NaN();
        for (Index dim : cfg.dims) {
            for (std::size_t trial = 0; trial < static_cast<std::size_t>(cfg.trials); ++trial) {
                const std::uint64_t seed = trial_seed(cfg.seed, c, dim, trial);
                Rng rng(seed);
                Evaluation ev;
                Sample sample;
                try {
                    sample = draw_sample(entry.condition, dim, trial, cfg, rng);
                    ev = evaluate(id, entry.condition, sample.inputs, sample.params, tol);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::ClusterAmbiguity) throw;
                    ++entry.skipped;
                    continue;
                }
                ++entry.samples;
                worst = max_or(worst, ev.violation);
                if (ev.violation > entry.threshold && !entry.witness) {
                    entry.verdict = Verdict::FailsWithWitness;
                    entry.witness = Witness{entry.condition, seed,        trial,     dim, std::move(sample.inputs),
                                            std::move(sample.params), ev.values, ev.violation};
                }
            }
        }
        entry.max_violation = std::isnan(worst) ? 0.0 : worst;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

Evaluation replay_witness(FunctionalId id, const Witness& w, const Tolerances& tol) {
    return evaluate(id, w.condition, w.inputs, w.params, tol);
}

double max_dominated_weight(const DensityMatrix& rho, const DensityMatrix& rho1, const Tolerances& tol) {
    require_same_dim(rho.dim(), rho1.dim(), "max_dominated_weight");
    if (rho.min_eigenvalue() <= tol.support) throw Error(ErrorCode::NotStrictlyPositive, "rho must be > 0");
    const ComplexMatrix r = spectral_function(rho.eigensystem(), [](double x) { return 1.0 / std::sqrt(x); });
    ComplexMatrix m = r * rho1.matrix() * r;
    m = 0.5 * (m + m.adjoint());
    return 1.0 / eig_hermitian(m, tol).values[0];
}

ImpossibilityReport impossibility_demos(std::uint64_t seed, const Tolerances& tol) {
    ImpossibilityReport report;
    for (Index d : {Index{2}, Index{3}, Index{4}}) {
        report.contradictions.push_back({d, 0.0, std::log(static_cast<double>(d))});
    }
    report.argument =
        "At rho = sigma = I/d, f(rho|rho) = 0 demands f(I/d | I/d) = 0 while f(rho | I/d) = S(rho) demands "
        "f(I/d | I/d) = ln d, so no functional meets both for d >= 2. For rho > 0 and lambda rho1 <= rho, "
        "rho = lambda rho1 + (1 - lambda) rho2 with rho2 a state; concavity, nonnegativity and f(rho|rho) = 0 "
        "give 0 = f(rho|rho) >= lambda f(rho1|rho) + (1 - lambda) f(rho2|rho) >= 0, forcing f(rho1|rho) = 0 "
        "for every rho1, which the candidate H(P(rho1) | P(rho)) violates.";

    auto chain = [&](const DensityMatrix& rho, const DensityMatrix& rho1) {
        ConcavityChainEntry e;
        e.rho = rho.matrix();
        e.rho1 = rho1.matrix();
        e.lambda = max_dominated_weight(rho, rho1, tol);
        ComplexMatrix rest = (rho.matrix() - e.lambda * rho1.matrix()) / (1.0 - e.lambda);
        Tolerances relaxed = tol;
        relaxed.psd = std::max(tol.psd, 1e-9);
        const DensityMatrix rho2(0.5 * (rest + rest.adjoint()), relaxed);
        e.rho2 = rho2.matrix();
        e.f_rho = res_cond_of_densities(rho, rho, tol);
        e.f_rho1 = res_cond_of_densities(rho1, rho, tol);
        e.f_rho2 = res_cond_of_densities(rho2, rho, tol);
        e.concavity_gap = e.lambda * e.f_rho1 + (1.0 - e.lambda) * e.f_rho2 - e.f_rho;
        e.violates_concavity = e.concavity_gap > kThreshold;
        report.chains.push_back(std::move(e));
    };
    chain(DensityMatrix::diagonal({0.6, 0.4}), DensityMatrix::diagonal({0.3, 0.7}));
    for (Index d : {Index{2}, Index{3}, Index{4}}) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(d)));
        const DensityMatrix rho = random_density(d, d, rng);
        const DensityMatrix rho1 = random_density(d, d, rng);
        chain(rho, rho1);
    }
    return report;
}

SweepReport shannon_sweep(const EnsembleConfig& cfg, const Tolerances& tol) {
    cfg.validate();
    SweepReport r;
    r.name = "shannon";
    r.config = cfg;
    r.min_lower_slack = std::numeric_limits<double>::infinity();
    r.min_upper_slack = std::numeric_limits<double>::infinity();
    for (Index dim : cfg.dims) {
        for (std::size_t trial = 0; trial < static_cast<std::size_t>(cfg.trials); ++trial) {
            const std::uint64_t seed = trial_seed(cfg.seed, 100, dim, trial);
            Rng rng(seed);
            const DensityMatrix rho = draw_state(dim, cfg.rank_profile, rng);
            const int kind = static_cast<int>(trial % 3);
            const DensityMatrix sigma = kind == 0   ? draw_degenerate(dim, cfg.gap_floor, rng)
                                        : kind == 1 ? draw_nondegenerate(dim, cfg.gap_floor, rng)
                                                    : draw_state(dim, cfg.rank_profile, rng);
            double value = 0.0;
            try {
                value = cond_entropy(rho, sigma, tol).total;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ClusterAmbiguity) throw;
                ++r.skipped;
                continue;
            }
            const double s = vn_entropy(rho);
            ++r.samples;
            r.min_lower_slack = std::min(r.min_lower_slack, value);
            r.min_upper_slack = std::min(r.min_upper_slack, s - value);
            if (kind == 1) {
                ++r.nondegenerate_checks;
                if (value != 0.0) ++r.nondegenerate_nonzero;
            }
            const double violation = std::max(-value, value - s);
            if (violation > kSweepTol) {
                ++r.violations;
                if (!r.witness) r.witness = Witness{"shannon", seed, trial, dim, {rho.matrix(), sigma.matrix()}, {}, {value, s}, violation};
            }
        }
    }
    return r;
}

SweepReport pinch_sweep(const EnsembleConfig& cfg, const Tolerances& tol) {
    cfg.validate();
    SweepReport r;
    r.name = "pinch";
    r.config = cfg;
    r.min_lower_slack = std::numeric_limits<double>::infinity();
    r.min_upper_slack = 0.0;
    for (Index dim : cfg.dims) {
        for (std::size_t trial = 0; trial < static_cast<std::size_t>(cfg.trials); ++trial) {
            const std::uint64_t seed = trial_seed(cfg.seed, 200, dim, trial);
            Rng rng(seed);
            const DensityMatrix rho = draw_state(dim, cfg.rank_profile, rng);
            const std::vector<Index> blocks = random_composition(dim, rng);
            const IdentityResolution q = random_resolution(dim, blocks, rng);
            const double slack = vn_entropy(pinch(rho, q, tol)) - vn_entropy(rho);
            ++r.samples;
            r.min_lower_slack = std::min(r.min_lower_slack, slack);
            if (-slack > kSweepTol) {
                ++r.violations;
                if (!r.witness) {
                    Inputs in{rho.matrix()};
                    for (const Projector& p : q.projectors()) in.push_back(p.matrix());
                    r.witness = Witness{"pinch", seed, trial, dim, std::move(in), {}, {slack}, -slack};
                }
            }
        }
    }
    return r;
}

SweepReport concavity_sweep(const EnsembleConfig& cfg, const Tolerances& tol) {
    cfg.validate();
    SweepReport r;
    r.name = "concavity";
    r.config = cfg;
    r.min_lower_slack = std::numeric_limits<double>::infinity();
    r.min_upper_slack = std::numeric_limits<double>::infinity();
    for (Index dim : cfg.dims) {
        for (std::size_t trial = 0; trial < static_cast<std::size_t>(cfg.trials); ++trial) {
            const std::uint64_t seed = trial_seed(cfg.seed, 300, dim, trial);
            Rng rng(seed);
            Sample sample = draw_sample("6-concavity-rho", dim, trial, cfg, rng);
            Evaluation ev;
            double joint_slack = 0.0;
            try {
                ev = eval_concavity_rho(FunctionalId::SCond, sample.inputs, sample.params, tol);
                const DensityMatrix sigma(sample.inputs[2], tol);
                const double lambda = sample.params[0];
                const double s_sigma = vn_entropy(sigma);
                joint_slack = (s_sigma + ev.values[2]) - lambda * (s_sigma + ev.values[0]) -
                              (1.0 - lambda) * (s_sigma + ev.values[1]);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ClusterAmbiguity) throw;
                ++r.skipped;
                continue;
            }
            ++r.samples;
            const double slack = -ev.violation;
            r.min_lower_slack = std::min(r.min_lower_slack, slack);
            r.min_upper_slack = std::min(r.min_upper_slack, joint_slack);
            if (-std::min(slack, joint_slack) > kSweepTol) {
                ++r.violations;
                if (!r.witness) {
                    r.witness = Witness{"6-concavity-rho", seed, trial, dim, std::move(sample.inputs),
                                        std::move(sample.params), ev.values, ev.violation};
                }
            }
        }
    }
    return r;
}

DensityMatrix example22_state(double kappa) {
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    m(0, 3) = m(3, 0) = m(1, 2) = m(2, 1) = kappa;
    return DensityMatrix(m / 4.0);
}

Example22Report example_2_2_probe(int grid, const Tolerances& tol) {
    if (grid < 2) throw Error(ErrorCode::InvalidConfig, "grid must have at least 2 points");
    Example22Report r;
    r.pinched_bound_holds = true;
    const Projector q = Projector::coordinate(4, {0, 1});
    const Projector qc = q.complement();
    const IdentityResolution split({q, qc}, tol);
    for (int k = 0; k < grid; ++k) {
        Example22Row row;
        row.kappa = static_cast<double>(k) / (grid - 1);
        const DensityMatrix rho = example22_state(row.kappa);
        row.f_q = compression_entropy(rho, q, tol);
        row.f_complement = compression_entropy(rho, qc, tol);
        row.block_sum = row.f_q + row.f_complement;
        row.entropy = vn_entropy(rho);
        row.entropy_closed_form =
            std::numbers::ln2 - 0.5 * (xlnx(1.0 + row.kappa) + xlnx(1.0 - row.kappa));
        row.entropy_pinched = vn_entropy(pinch(rho, split, tol));
        r.max_block_sum_error = std::max(r.max_block_sum_error, std::abs(row.block_sum - std::numbers::ln2));
        r.max_closed_form_discrepancy = std::max(r.max_closed_form_discrepancy, std::abs(row.entropy - row.entropy_closed_form));
        if (row.block_sum > row.entropy + kThreshold) r.sum_exceeds_entropy_somewhere = true;
        if (row.block_sum > row.entropy_pinched + kThreshold) r.pinched_bound_holds = false;
        r.rows.push_back(row);
    }
    return r;
}

DensityMatrix example21_state(double rho1, double phi1, double phi2) {
    ComplexVector a = ComplexVector::Zero(4);
    ComplexVector b = ComplexVector::Zero(4);
    a[0] = std::cos(phi1);
    a[2] = std::sin(phi1);
    b[1] = std::cos(phi2);
    b[3] = std::sin(phi2);
    ComplexMatrix m = rho1 * a * a.adjoint() + (1.0 - rho1) * b * b.adjoint();
    return DensityMatrix(0.5 * (m + m.adjoint()));
}

Example21Report example_2_1_probe(int grid, const Tolerances& tol) {
    if (grid < 1) throw Error(ErrorCode::InvalidConfig, "grid must be >= 1");
    Example21Report r;
    r.rho1 = 0.9;
    r.cos2_phi1 = 0.1;
    r.cos2_phi2 = 0.9;
    const double phi1 = std::acos(std::sqrt(r.cos2_phi1));
    const double phi2 = std::acos(std::sqrt(r.cos2_phi2));
    const Projector q = Projector::coordinate(4, {0, 1});
    const DensityMatrix rho = example21_state(r.rho1, phi1, phi2);
    const DensityMatrix rho_q = normalized_compression(rho, q, tol);
    r.rho_q = rho_q.matrix();
    r.rho_q_error = max_abs(rho_q.matrix() - 0.5 * q.matrix());
    r.entropy = vn_entropy(rho);
    r.entropy_q = vn_entropy(rho_q);
    r.f = compression_entropy(rho, q, tol);
    r.grid = grid;
    r.min_grid_slack = std::numeric_limits<double>::infinity();
    const double h = 0.5 * std::numbers::pi / grid;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const DensityMatrix s = example21_state(r.rho1, (i + 0.5) * h, (j + 0.5) * h);
            r.min_grid_slack = std::min(r.min_grid_slack, vn_entropy(s) - compression_entropy(s, q, tol));
        }
    }
    r.grid_bound_holds = r.min_grid_slack >= -kThreshold;
    return r;
}

Dim2Report dim2_demo(std::uint64_t seed, const Tolerances& tol) {
    Dim2Report r;
    Rng rng(derive_seed(seed, 2));
    const DensityMatrix rho = random_density(2, 2, rng);
    const DensityMatrix sigma = draw_nondegenerate(2, 0.1, rng);
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
    r.rho = rho.matrix();
    r.sigma_nondeg = sigma.matrix();
    r.entropy = vn_entropy(rho);
    r.cond_maximally_mixed = cond_entropy(rho, mixed, tol).total;
    r.cond_nondeg = cond_entropy(rho, sigma, tol).total;
    for (int k = 0; k <= kPathSteps; ++k) {
        const double t = kPathStep * k;
        r.path_t.push_back(t);
        r.path_values.push_back(cond_entropy(rho, mix(1.0 - t, mixed, sigma), tol).total);
    }
    return r;
}

}  // namespace qce
