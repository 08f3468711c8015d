#include "qce/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "qce/cli/serialize.hpp"

namespace qce::cli {

namespace {

// Result keys whose numeric values are entropies; only these are rescaled by
// --units bits.
const std::set<std::string>& entropy_keys() {
    static const std::set<std::string> keys = {
        "entropy", "total", "factor", "best_F", "restart_values", "history", "gap", "min_gap", "delta_s",
        "delta_s_at_rho", "values", "violation", "max_violation", "min_lower_slack", "min_upper_slack",
        "self_zero_requirement", "trivial_requirement", "f_rho", "f_rho1", "f_rho2", "concavity_gap", "f_q",
        "f_complement", "block_sum", "entropy_closed_form", "entropy_pinched", "max_block_sum_error",
        "max_closed_form_discrepancy", "entropy_q", "f", "min_grid_slack", "cond_maximally_mixed", "cond_nondeg",
        "path_values", "cond_entropy", "joint_entropy", "info_gain", "self_cond_entropy", "self_info_gain",
        "degeneracy_correction", "block_entropy", "entropy_before", "entropy_after", "slack", "H_X", "H_Y",
        "H_X_given_Y", "H_Y_given_X", "H_joint", "mutual_info", "H_P", "H_Q", "H_P_given_Q", "H_Q_given_P",
        "entropy_rho", "entropy_sigma"};
    return keys;
}

std::string escape_pointer_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

void scale_leaf(Json& v, double factor, const std::string& path, std::vector<std::string>& pointers) {
    if (v.is_number()) {
        v = v.get<double>() * factor;
        pointers.push_back(path);
    } else if (v.is_null()) {
        pointers.push_back(path);
    }
}

void scale_entropies(Json& node, double factor, const std::string& path, std::vector<std::string>& pointers) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            const std::string child = path + "/" + escape_pointer_token(it.key());
            Json& v = it.value();
            if (entropy_keys().count(it.key()) != 0 && (v.is_number() || v.is_null())) {
                scale_leaf(v, factor, child, pointers);
            } else if (entropy_keys().count(it.key()) != 0 && v.is_array() &&
                       std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number() || x.is_null(); })) {
                for (std::size_t k = 0; k < v.size(); ++k) scale_leaf(v[k], factor, child + "/" + std::to_string(k), pointers);
            } else {
                scale_entropies(v, factor, child, pointers);
            }
        }
    } else if (node.is_array()) {
        for (std::size_t k = 0; k < node.size(); ++k) scale_entropies(node[k], factor, path + "/" + std::to_string(k), pointers);
    }
}

struct Options {
    std::string units = "nats";
    std::string format = "text";
    std::string tol_profile = "default";
    double cluster_tol = 0.0;  // 0 keeps the profile value
    std::uint64_t seed = 1;
};

Tolerances tolerances_of(const Options& o) {
    auto t = Tolerances::profile(o.tol_profile);
    if (!t) throw Error(ErrorCode::InvalidConfig, "unknown tolerance profile " + o.tol_profile);
    if (o.cluster_tol < 0.0 || !std::isfinite(o.cluster_tol)) throw Error(ErrorCode::InvalidConfig, "--cluster-tol must be > 0");
    if (o.cluster_tol > 0.0) t->cluster = o.cluster_tol;
    return *t;
}

std::string format_value(const Json& v) {
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << v.get<double>();
        return os.str();
    }
    if (v.is_null()) return "inf";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& node, const std::string& path, const std::string& pointer, const std::set<std::string>& entropy,
             const std::string& unit, std::ostream& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), pointer + "/" + escape_pointer_token(it.key()),
                    entropy, unit, out);
        }
        return;
    }
    if (node.is_array()) {
        const bool scalars = std::all_of(node.begin(), node.end(), [](const Json& x) { return x.is_primitive(); });
        if (scalars && !node.empty() && entropy.count(pointer + "/0") == 0) {
            out << path << " = [";
            for (std::size_t k = 0; k < node.size(); ++k) out << (k ? ", " : "") << format_value(node[k]);
            out << "]\n";
            return;
        }
        for (std::size_t k = 0; k < node.size(); ++k) {
            flatten(node[k], path + "[" + std::to_string(k) + "]", pointer + "/" + std::to_string(k), entropy, unit, out);
        }
        return;
    }
    out << path << " = " << format_value(node);
    if (entropy.count(pointer) != 0) out << " " << unit;
    out << "\n";
}

void emit(std::ostream& out, const Options& o, const std::string& command, Json result, const Tolerances& tol) {
    const double factor = o.units == "bits" ? 1.0 / std::numbers::ln2 : 1.0;
    std::vector<std::string> pointers;
    scale_entropies(result, factor, "/result", pointers);
    OptimizeConfig opt;
    opt.seed = o.seed;
    EnsembleConfig ens;
    ens.seed = o.seed;
    Json defaults = {{"tolerances", tol}, {"optimizer", opt}, {"ensemble", ens}};
    if (o.format == "json") {
        Json root = {{"schema", std::string(kSchema)},
                     {"command", command},
                     {"units", o.units},
                     {"defaults", defaults},
                     {"result", result},
                     {"entropy_fields", pointers}};
        out << root.dump(2) << "\n";
        return;
    }
    out << "# schema: " << kSchema << "\n# command: " << command << "\n# units: " << o.units << "\n";
    for (auto it = defaults.begin(); it != defaults.end(); ++it) {
        out << "# " << it.key() << ":";
        for (auto f = it.value().begin(); f != it.value().end(); ++f) out << " " << f.key() << "=" << format_value(f.value());
        out << "\n";
    }
    const std::set<std::string> entropy(pointers.begin(), pointers.end());
    for (auto it = result.begin(); it != result.end(); ++it) {
        flatten(it.value(), it.key(), "/result/" + escape_pointer_token(it.key()), entropy, o.units, out);
    }
}

DensityMatrix density_arg(const std::string& arg, const Tolerances& tol) { return DensityMatrix(parse_matrix(arg), tol); }

Json breakdown_json(const EntropyBreakdown& b) { return Json(b); }

std::uint64_t default_seed() {
    const char* env = std::getenv("QCE_SEED");
    if (env == nullptr || *env == '\0') return 1;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::char_traits<char>::length(env)) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, std::string("QCE_SEED is not an unsigned integer: ") + env);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    try {
        o.seed = default_seed();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    CLI::App app{"Conditional entropy toolkit for finite-dimensional quantum states", "qce"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--units", o.units, "Entropy units for display")->check(CLI::IsMember({"nats", "bits"}));
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--tol-profile", o.tol_profile, "Tolerance profile")->check(CLI::IsMember({"default", "strict", "loose"}));
    app.add_option("--cluster-tol", o.cluster_tol, "Eigenvalue clustering tolerance (overrides the profile)");
    app.add_option("--seed", o.seed, "Seed for random ensembles and restarts (default: QCE_SEED or 1)");

    std::vector<std::string> pos;
    std::function<int(const Tolerances&)> action;

    auto* entropy = app.add_subcommand("entropy", "Von Neumann entropy and spectral data of a density matrix");
    entropy->add_option("rho", pos, "Density matrix document")->required()->expected(1);
    entropy->callback([&] {
        action = [&](const Tolerances& tol) {
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            const SpectralResolution sr = spectral_resolution(rho, tol);
            Json r = {{"dim", rho.dim()},
                      {"eigenvalues", sr.eigenvalues()},
                      {"ranks", sr.ranks()},
                      {"entropy", vn_entropy(rho)},
                      {"block_entropy", classical_entropy(block_distribution(rho, tol))},
                      {"degeneracy_correction", degeneracy_correction(rho, tol)},
                      {"self_cond_entropy", self_cond_entropy(rho, tol)},
                      {"self_info_gain", self_info_gain(rho, tol)},
                      {"commutant_dim", commutant_dim(rho, tol)}};
            emit(out, o, "entropy", r, tol);
            return int{kExitOk};
        };
    });

    auto* cond = app.add_subcommand("cond", "Conditional entropy S(rho | sigma)");
    cond->add_option("states", pos, "rho and sigma documents")->required()->expected(2);
    cond->callback([&] {
        action = [&](const Tolerances& tol) {
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            const DensityMatrix sigma = density_arg(pos.at(1), tol);
            const EntropyBreakdown b = cond_entropy(rho, sigma, tol);
            Json r = {{"cond_entropy", b.total},
                      {"breakdown", breakdown_json(b)},
                      {"entropy", vn_entropy(rho)},
                      {"joint_entropy", joint_entropy(rho, sigma, tol)},
                      {"info_gain", info_gain(rho, sigma, tol)}};
            emit(out, o, "cond", r, tol);
            return int{kExitOk};
        };
    });

    auto* cond_res = app.add_subcommand("cond-res", "Conditional entropy S(rho | Q) for a resolution of the identity");
    cond_res->add_option("inputs", pos, "rho document and resolution document")->required()->expected(2);
    cond_res->callback([&] {
        action = [&](const Tolerances& tol) {
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            const IdentityResolution q = parse_resolution(pos.at(1), tol);
            Json r = {{"cond_entropy", cond_entropy_resolution(rho, q, tol)}, {"entropy", vn_entropy(rho)}};
            emit(out, o, "cond-res", r, tol);
            return int{kExitOk};
        };
    });

    auto* pinch_cmd = app.add_subcommand("pinch", "Pinching sum_j Q_j rho Q_j and its entropy change");
    pinch_cmd->add_option("inputs", pos, "rho document and resolution document")->required()->expected(2);
    pinch_cmd->callback([&] {
        action = [&](const Tolerances& tol) {
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            const IdentityResolution q = parse_resolution(pos.at(1), tol);
            const DensityMatrix p = pinch(rho, q, tol);
            const double before = vn_entropy(rho);
            const double after = vn_entropy(p);
            Json r = {{"pinched", matrix_to_json(p.matrix())},
                      {"entropy_before", before},
                      {"entropy_after", after},
                      {"slack", after - before}};
            emit(out, o, "pinch", r, tol);
            return int{kExitOk};
        };
    });

    auto* classical = app.add_subcommand("classical", "Shannon quantities of partition data");
    classical->add_option("data", pos, "Partition data document")->required()->expected(1);
    classical->callback([&] {
        action = [&](const Tolerances& tol) {
            const ClassicalPartitionData d = parse_partition(pos.at(0));
            Json r = {{"H_X", shannon_entropy(d.p())},
                      {"H_Y", shannon_entropy(d.q())},
                      {"H_X_given_Y", shannon_cond(d)},
                      {"H_Y_given_X", shannon_cond(d.swapped())},
                      {"H_joint", shannon_joint(d)},
                      {"mutual_info", mutual_info(d)}};
            emit(out, o, "classical", r, tol);
            return int{kExitOk};
        };
    });

    auto* hres = app.add_subcommand("hres", "Entropies of two resolutions of the identity");
    hres->add_option("resolutions", pos, "P and Q resolution documents")->required()->expected(2);
    hres->callback([&] {
        action = [&](const Tolerances& tol) {
            const IdentityResolution p = parse_resolution(pos.at(0), tol);
            const IdentityResolution q = parse_resolution(pos.at(1), tol);
            Json r = {{"H_P", resolution_entropy(p)},
                      {"H_Q", resolution_entropy(q)},
                      {"H_P_given_Q", resolution_cond_entropy(p, q)},
                      {"H_Q_given_P", resolution_cond_entropy(q, p)},
                      {"H_joint", resolution_joint_entropy(p, q)},
                      {"bayes_data", partition_to_json(bayes_data(p, q))}};
            emit(out, o, "hres", r, tol);
            return int{kExitOk};
        };
    });

    auto* orders = app.add_subcommand("orders", "Refinement and more-mixed orders between two states");
    orders->add_option("states", pos, "rho and sigma documents")->required()->expected(2);
    orders->callback([&] {
        action = [&](const Tolerances& tol) {
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            const DensityMatrix sigma = density_arg(pos.at(1), tol);
            const OrderWitness w = resolution_leq(spectral_resolution(rho, tol).resolution(),
                                                  spectral_resolution(sigma, tol).resolution(), tol);
            Json r = {{"refines", w},
                      {"more_mixed", density_more_mixed(rho, sigma, tol)},
                      {"commutant_dim_rho", commutant_dim(rho, tol)},
                      {"commutant_dim_sigma", commutant_dim(sigma, tol)},
                      {"entropy_rho", vn_entropy(rho)},
                      {"entropy_sigma", vn_entropy(sigma)}};
            emit(out, o, "orders", r, tol);
            return int{kExitOk};
        };
    });

    OptimizeConfig opt;
    Index rank = 0;
    bool lemma = false;
    auto* optimize = app.add_subcommand("optimize", "Maximize F(rho, Q) over rank-n projectors");
    optimize->add_option("rho", pos, "Density matrix document")->required()->expected(1);
    optimize->add_option("--rank", rank, "Projector rank n");
    optimize->add_flag("--lemma", lemma, "Run every rank n < dim and report the gaps to S(rho)");
    optimize->add_option("--restarts", opt.restarts, "Random restarts");
    optimize->add_option("--max-iters", opt.max_iters, "Iterations per restart");
    optimize->add_option("--grad-tol", opt.grad_tol, "Gradient norm treated as stationary");
    optimize->add_option("--step-init", opt.step_init, "Initial step length");
    optimize->callback([&] {
        action = [&](const Tolerances& tol) {
            opt.seed = o.seed;
            const DensityMatrix rho = density_arg(pos.at(0), tol);
            if (lemma) {
                const LemmaReport rep = verify_lemma_FS(rho, opt, tol);
                emit(out, o, "optimize", Json(rep), tol);
                const bool all = std::all_of(rep.ranks.begin(), rep.ranks.end(), [](const LemmaRankEntry& e) { return e.converged; });
                return int{all ? kExitOk : kExitNoConvergence};
            }
            if (rank < 1) throw Error(ErrorCode::InvalidConfig, "--rank is required unless --lemma is given");
            const OptimizeResult res = maximize_F_n(rho, rank, opt, tol);
            emit(out, o, "optimize", Json(res), tol);
            return int{res.converged ? kExitOk : kExitNoConvergence};
        };
    });

    Index probe_dim = 2;
    auto* probe = app.add_subcommand("delta-probe", "Maximize S(rho) - S(rho|rho) over degeneracy patterns");
    probe->add_option("--dim", probe_dim, "Hilbert space dimension")->required();
    probe->callback([&] {
        action = [&](const Tolerances& tol) {
            emit(out, o, "delta-probe", Json(probe_max_deltaS(probe_dim)), tol);
            return int{kExitOk};
        };
    });

    EnsembleConfig ens;
    std::string functional = "scond";
    std::string rank_profile = "full";
    auto add_ensemble = [&](CLI::App* sub) {
        sub->add_option("--dims", ens.dims, "Dimensions to sample")->delimiter(',');
        sub->add_option("--trials", ens.trials, "Trials per dimension");
        sub->add_option("--rank-profile", rank_profile, "full or random-rank")->check(CLI::IsMember({"full", "random-rank"}));
        sub->add_option("--gap-floor", ens.gap_floor, "Minimum spectral gap of nondegenerate draws");
    };
    auto finish_ensemble = [&] {
        ens.seed = o.seed;
        ens.rank_profile = *parse_rank_profile(rank_profile);
        ens.validate();
    };

    auto* audit = app.add_subcommand("audit", "Test the conditional-entropy axioms on a random ensemble");
    audit->add_option("--functional", functional, "scond or hres")->check(CLI::IsMember({"scond", "hres"}));
    add_ensemble(audit);
    audit->callback([&] {
        action = [&](const Tolerances& tol) {
            finish_ensemble();
            emit(out, o, "audit", Json(axiom_audit(*parse_functional(functional), ens, tol)), tol);
            return int{kExitOk};
        };
    });

    std::string sweep_kind;
    auto* sweep = app.add_subcommand("sweep", "Inequality sweep; exits 5 when a violation is found");
    sweep->add_option("kind", sweep_kind, "shannon, pinch or concavity")
        ->required()
        ->check(CLI::IsMember({"shannon", "pinch", "concavity"}));
    add_ensemble(sweep);
    sweep->callback([&] {
        action = [&](const Tolerances& tol) {
            finish_ensemble();
            const SweepReport rep = sweep_kind == "shannon" ? shannon_sweep(ens, tol)
                                    : sweep_kind == "pinch" ? pinch_sweep(ens, tol)
                                                            : concavity_sweep(ens, tol);
            emit(out, o, "sweep", Json(rep), tol);
            const bool clean = rep.violations == 0 && rep.nondegenerate_nonzero == 0;
            return int{clean ? kExitOk : kExitSweepViolation};
        };
    });

    std::string demo_name;
    int grid = 0;
    auto* demo = app.add_subcommand("demo", "Worked examples");
    demo->add_option("name", demo_name, "dim2, ex21, ex22 or impossibility")
        ->required()
        ->check(CLI::IsMember({"dim2", "ex21", "ex22", "impossibility"}));
    demo->add_option("--grid", grid, "Grid size for ex21 (per angle) and ex22 (kappa points)");
    demo->callback([&] {
        action = [&](const Tolerances& tol) {
            Json r;
            if (demo_name == "dim2") r = dim2_demo(o.seed, tol);
            if (demo_name == "ex21") r = example_2_1_probe(grid > 0 ? grid : 50, tol);
            if (demo_name == "ex22") r = example_2_2_probe(grid > 0 ? grid : 11, tol);
            if (demo_name == "impossibility") r = impossibility_demos(o.seed, tol);
            emit(out, o, "demo " + demo_name, r, tol);
            return int{kExitOk};
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        const Tolerances tol = tolerances_of(o);
        return action ? action(tol) : int{kExitParse};
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::ParseError) return kExitParse;
        if (e.code() == ErrorCode::NoConvergence) return kExitNoConvergence;
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace qce::cli
