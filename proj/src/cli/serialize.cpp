#include "qce/cli/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qce::cli {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) parse_error("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) parse_error(std::string("missing field \"") + key + "\"");
    return *it;
}

RealMatrix real_rows(const Json& j, Index rows, Index cols, const char* name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
        parse_error(std::string(name) + " must have " + std::to_string(rows) + " rows");
    }
    RealMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            parse_error(std::string(name) + " row " + std::to_string(r) + " must have " + std::to_string(cols) +
                        " entries");
        }
        for (Index c = 0; c < cols; ++c) {
            const Json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) parse_error(std::string(name) + " entries must be numbers");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

Json rows_to_json(const RealMatrix& m) {
    Json out = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(real_to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

RealMatrix rows_from_json(const Json& j, const char* name) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) parse_error(std::string(name) + " must be a nonempty 2-D array");
    return real_rows(j, static_cast<Index>(j.size()), static_cast<Index>(j[0].size()), name);
}

std::vector<double> reals_from_json(const Json& j) {
    if (!j.is_array()) parse_error("expected an array of numbers");
    std::vector<double> out;
    for (const Json& v : j) out.push_back(real_from_json(v));
    return out;
}

Json reals_to_json(const std::vector<double>& v) {
    Json out = Json::array();
    for (double x : v) out.push_back(real_to_json(x));
    return out;
}

Json matrices_to_json(const std::vector<ComplexMatrix>& ms) {
    Json out = Json::array();
    for (const ComplexMatrix& m : ms) out.push_back(matrix_to_json(m));
    return out;
}

std::vector<ComplexMatrix> matrices_from_json(const Json& j) {
    if (!j.is_array()) parse_error("expected an array of matrix documents");
    std::vector<ComplexMatrix> out;
    for (const Json& m : j) out.push_back(matrix_from_json(m));
    return out;
}

}  // namespace

Json real_to_json(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

double real_from_json(const Json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    if (!j.is_number()) parse_error("expected a number or null");
    return j.get<double>();
}

Json matrix_to_json(const ComplexMatrix& m, std::string_view label) {
    Json j;
    j["dim"] = m.rows();
    j["re"] = rows_to_json(m.real());
    j["im"] = rows_to_json(m.imag());
    if (!label.empty()) j["label"] = std::string(label);
    return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
    const Json& dim_field = field(j, "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 0) parse_error("dim must be a non-negative integer");
    const auto dim = static_cast<Index>(dim_field.get<long long>());
    const RealMatrix re = real_rows(field(j, "re"), dim, dim, "re");
    RealMatrix im = RealMatrix::Zero(dim, dim);
    if (j.contains("im")) im = real_rows(j["im"], dim, dim, "im");
    if (j.contains("label") && !j["label"].is_string()) parse_error("label must be a string");
    ComplexMatrix m(dim, dim);
    m.real() = re;
    m.imag() = im;
    return m;
}

Json resolution_to_json(const IdentityResolution& r) {
    Json j;
    j["dim"] = r.dim();
    j["blocks"] = Json::array();
    for (const Projector& p : r.projectors()) j["blocks"].push_back(matrix_to_json(p.matrix()));
    return j;
}

IdentityResolution resolution_from_json(const Json& j, const Tolerances& tol) {
    const Json& dim_field = field(j, "dim");
    if (!dim_field.is_number_integer()) parse_error("dim must be an integer");
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array() || blocks.empty()) parse_error("blocks must be a nonempty array");
    std::vector<Projector> projectors;
    for (const Json& b : blocks) {
        const ComplexMatrix m = matrix_from_json(b);
        if (m.rows() != dim_field.get<Index>()) parse_error("block dim differs from resolution dim");
        projectors.emplace_back(m, tol);
    }
    return IdentityResolution(std::move(projectors), tol);
}

Json partition_to_json(const ClassicalPartitionData& d) {
    Json j;
    j["p"] = reals_to_json(d.p().weights());
    j["q"] = reals_to_json(d.q().weights());
    j["p_given_q"] = rows_to_json(d.p_given_q());
    j["q_given_p"] = rows_to_json(d.q_given_p());
    return j;
}

ClassicalPartitionData partition_from_json(const Json& j) {
    if (!j.is_object()) parse_error("partition data must be an object");
    if (j.contains("joint")) return ClassicalPartitionData::from_joint(rows_from_json(j["joint"], "joint"));
    std::vector<double> p = reals_from_json(field(j, "p"));
    std::vector<double> q = reals_from_json(field(j, "q"));
    const auto n = static_cast<Index>(p.size());
    const auto m = static_cast<Index>(q.size());
    RealMatrix pq = real_rows(field(j, "p_given_q"), n, m, "p_given_q");
    RealMatrix qp = real_rows(field(j, "q_given_p"), m, n, "q_given_p");
    return ClassicalPartitionData::from_conditionals(std::move(p), std::move(q), std::move(pq), std::move(qp));
}

Json parse_document(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        parse_error(std::string("malformed JSON: ") + e.what());
    }
}

Json load_document(const std::string& path_or_text) {
    const auto first = path_or_text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && path_or_text[first] == '{') return parse_document(path_or_text);
    std::ifstream in(path_or_text);
    if (!in) parse_error("cannot open " + path_or_text);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

ComplexMatrix parse_matrix(const std::string& path_or_text) { return matrix_from_json(load_document(path_or_text)); }

IdentityResolution parse_resolution(const std::string& path_or_text, const Tolerances& tol) {
    return resolution_from_json(load_document(path_or_text), tol);
}

ClassicalPartitionData parse_partition(const std::string& path_or_text) {
    return partition_from_json(load_document(path_or_text));
}

}  // namespace qce::cli

namespace qce {

using cli::matrices_from_json;
using cli::matrices_to_json;
using cli::matrix_from_json;
using cli::matrix_to_json;
using cli::real_from_json;
using cli::real_to_json;
using cli::reals_from_json;
using cli::reals_to_json;
using Json = nlohmann::json;

namespace {

double real_at(const Json& j, const char* key) { return real_from_json(j.at(key)); }

// A dim x rank orthonormal basis. Rebuilding a projector from its basis
// reproduces the stored matrix bit for bit, which the matrix form alone does not.
Json basis_to_json(const ComplexMatrix& w) {
    return {{"rows", w.rows()}, {"cols", w.cols()}, {"re", cli::rows_to_json(w.real())}, {"im", cli::rows_to_json(w.imag())}};
}

ComplexMatrix basis_from_json(const Json& j) {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    ComplexMatrix w(rows, cols);
    w.real() = cli::real_rows(j.at("re"), rows, cols, "re");
    w.imag() = cli::real_rows(j.at("im"), rows, cols, "im");
    return w;
}

}  // namespace

void to_json(Json& j, const Tolerances& t) {
    j = {{"herm", t.herm},   {"idem", t.idem},       {"orth", t.orth},       {"psd", t.psd},
         {"trace", t.trace}, {"cluster", t.cluster}, {"support", t.support}};
}

void from_json(const Json& j, Tolerances& t) {
    j.at("herm").get_to(t.herm);
    j.at("idem").get_to(t.idem);
    j.at("orth").get_to(t.orth);
    j.at("psd").get_to(t.psd);
    j.at("trace").get_to(t.trace);
    j.at("cluster").get_to(t.cluster);
    j.at("support").get_to(t.support);
}

void to_json(Json& j, const OptimizeConfig& c) {
    j = {{"step_init", c.step_init}, {"armijo_c", c.armijo_c},   {"shrink", c.shrink}, {"grad_tol", c.grad_tol},
         {"max_iters", c.max_iters}, {"restarts", c.restarts}, {"seed", c.seed}};
}

void from_json(const Json& j, OptimizeConfig& c) {
    j.at("step_init").get_to(c.step_init);
    j.at("armijo_c").get_to(c.armijo_c);
    j.at("shrink").get_to(c.shrink);
    j.at("grad_tol").get_to(c.grad_tol);
    j.at("max_iters").get_to(c.max_iters);
    j.at("restarts").get_to(c.restarts);
    j.at("seed").get_to(c.seed);
}

void to_json(Json& j, const EnsembleConfig& c) {
    j = {{"dims", c.dims},
         {"trials", c.trials},
         {"seed", c.seed},
         {"rank_profile", std::string(to_string(c.rank_profile))},
         {"gap_floor", c.gap_floor}};
}

void from_json(const Json& j, EnsembleConfig& c) {
    j.at("dims").get_to(c.dims);
    j.at("trials").get_to(c.trials);
    j.at("seed").get_to(c.seed);
    const auto profile = parse_rank_profile(j.at("rank_profile").get<std::string>());
    if (!profile) throw Error(ErrorCode::ParseError, "unknown rank_profile");
    c.rank_profile = *profile;
    j.at("gap_floor").get_to(c.gap_floor);
}

void to_json(Json& j, const BlockTerm& b) {
    j = {{"block", b.block}, {"weight", real_to_json(b.weight)}, {"factor", real_to_json(b.factor)}};
}

void from_json(const Json& j, BlockTerm& b) {
    j.at("block").get_to(b.block);
    b.weight = real_at(j, "weight");
    b.factor = real_at(j, "factor");
}

void to_json(Json& j, const EntropyBreakdown& e) {
    j = {{"total", real_to_json(e.total)}, {"per_block", e.per_block}};
}

void from_json(const Json& j, EntropyBreakdown& e) {
    e.total = real_at(j, "total");
    j.at("per_block").get_to(e.per_block);
}

void to_json(Json& j, const OrderWitness& w) {
    j = {{"holds", w.holds}, {"assignment", w.assignment}, {"violation", w.violation}};
}

void from_json(const Json& j, OrderWitness& w) {
    j.at("holds").get_to(w.holds);
    j.at("assignment").get_to(w.assignment);
    j.at("violation").get_to(w.violation);
}

void to_json(Json& j, const OptimizeResult& r) {
    j = {{"best_Q", matrix_to_json(r.best_Q.matrix())},
         {"best_Q_basis", basis_to_json(r.best_Q.basis())},
         {"rank", r.best_Q.rank()},
         {"best_F", real_to_json(r.best_F)},
         {"grad_norm", r.grad_norm},
         {"iters", r.iters},
         {"restart_values", reals_to_json(r.restart_values)},
         {"commutation_residual", r.commutation_residual},
         {"converged", r.converged},
         {"history", reals_to_json(r.history)}};
}

void from_json(const Json& j, OptimizeResult& r) {
    r.best_Q = j.contains("best_Q_basis") ? Projector::from_basis(basis_from_json(j.at("best_Q_basis")))
                                          : Projector(matrix_from_json(j.at("best_Q")));
    r.best_F = real_at(j, "best_F");
    j.at("grad_norm").get_to(r.grad_norm);
    j.at("iters").get_to(r.iters);
    r.restart_values = reals_from_json(j.at("restart_values"));
    j.at("commutation_residual").get_to(r.commutation_residual);
    j.at("converged").get_to(r.converged);
    r.history = reals_from_json(j.at("history"));
}

void to_json(Json& j, const LemmaRankEntry& e) {
    j = {{"rank", e.rank}, {"best_F", real_to_json(e.best_F)}, {"gap", real_to_json(e.gap)}, {"converged", e.converged}};
}

void from_json(const Json& j, LemmaRankEntry& e) {
    j.at("rank").get_to(e.rank);
    e.best_F = real_at(j, "best_F");
    e.gap = real_at(j, "gap");
    j.at("converged").get_to(e.converged);
}

void to_json(Json& j, const LemmaReport& r) {
    j = {{"entropy", real_to_json(r.entropy)}, {"ranks", r.ranks}, {"min_gap", real_to_json(r.min_gap)}, {"strict", r.strict}};
}

void from_json(const Json& j, LemmaReport& r) {
    r.entropy = real_at(j, "entropy");
    j.at("ranks").get_to(r.ranks);
    r.min_gap = real_at(j, "min_gap");
    j.at("strict").get_to(r.strict);
}

void to_json(Json& j, const DeltaPatternEntry& e) {
    j = {{"pattern", e.pattern}, {"weights", reals_to_json(e.weights)}, {"delta_s", real_to_json(e.delta_s)}, {"attained", e.attained}};
}

void from_json(const Json& j, DeltaPatternEntry& e) {
    j.at("pattern").get_to(e.pattern);
    e.weights = reals_from_json(j.at("weights"));
    e.delta_s = real_at(j, "delta_s");
    j.at("attained").get_to(e.attained);
}

void to_json(Json& j, const DeltaProbeResult& r) {
    j = {{"dim", r.dim},
         {"delta_s", real_to_json(r.delta_s)},
         {"pattern", r.pattern},
         {"attained", r.attained},
         {"rho", matrix_to_json(r.rho.matrix())},
         {"delta_s_at_rho", real_to_json(r.delta_s_at_rho)},
         {"patterns", r.patterns}};
}

void from_json(const Json& j, DeltaProbeResult& r) {
    j.at("dim").get_to(r.dim);
    r.delta_s = real_at(j, "delta_s");
    j.at("pattern").get_to(r.pattern);
    j.at("attained").get_to(r.attained);
    r.rho = DensityMatrix(matrix_from_json(j.at("rho")));
    r.delta_s_at_rho = real_at(j, "delta_s_at_rho");
    j.at("patterns").get_to(r.patterns);
}

void to_json(Json& j, const Witness& w) {
    j = {{"condition", w.condition},
         {"seed", w.seed},
         {"trial", w.trial},
         {"dim", w.dim},
         {"inputs", matrices_to_json(w.inputs)},
         {"params", reals_to_json(w.params)},
         {"values", reals_to_json(w.values)},
         {"violation", real_to_json(w.violation)}};
}

void from_json(const Json& j, Witness& w) {
    j.at("condition").get_to(w.condition);
    j.at("seed").get_to(w.seed);
    j.at("trial").get_to(w.trial);
    j.at("dim").get_to(w.dim);
    w.inputs = matrices_from_json(j.at("inputs"));
    w.params = reals_from_json(j.at("params"));
    w.values = reals_from_json(j.at("values"));
    w.violation = real_at(j, "violation");
}

void to_json(Json& j, const ConditionEntry& e) {
    j = {{"condition", e.condition},
         {"description", e.description},
         {"verdict", std::string(to_string(e.verdict))},
         {"max_violation", real_to_json(e.max_violation)},
         {"threshold", e.threshold},
         {"samples", e.samples},
         {"skipped", e.skipped},
         {"witness", e.witness ? Json(*e.witness) : Json(nullptr)}};
}

void from_json(const Json& j, ConditionEntry& e) {
    j.at("condition").get_to(e.condition);
    j.at("description").get_to(e.description);
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == to_string(Verdict::HoldsOnSample)) {
        e.verdict = Verdict::HoldsOnSample;
    } else if (verdict == to_string(Verdict::FailsWithWitness)) {
        e.verdict = Verdict::FailsWithWitness;
    } else {
        throw Error(ErrorCode::ParseError, "unknown verdict " + verdict);
    }
    e.max_violation = real_at(j, "max_violation");
    j.at("threshold").get_to(e.threshold);
    j.at("samples").get_to(e.samples);
    j.at("skipped").get_to(e.skipped);
    if (j.at("witness").is_null()) {
        e.witness.reset();
    } else {
        e.witness = j.at("witness").get<Witness>();
    }
}

void to_json(Json& j, const AuditReport& r) {
    j = {{"functional", std::string(to_string(r.functional))}, {"config", r.config}, {"entries", r.entries}};
}

void from_json(const Json& j, AuditReport& r) {
    const auto id = parse_functional(j.at("functional").get<std::string>());
    if (!id) throw Error(ErrorCode::ParseError, "unknown functional");
    r.functional = *id;
    j.at("config").get_to(r.config);
    j.at("entries").get_to(r.entries);
}

void to_json(Json& j, const SweepReport& r) {
    j = {{"name", r.name},
         {"config", r.config},
         {"samples", r.samples},
         {"min_lower_slack", real_to_json(r.min_lower_slack)},
         {"min_upper_slack", real_to_json(r.min_upper_slack)},
         {"violations", r.violations},
         {"nondegenerate_checks", r.nondegenerate_checks},
         {"nondegenerate_nonzero", r.nondegenerate_nonzero},
         {"skipped", r.skipped},
         {"witness", r.witness ? Json(*r.witness) : Json(nullptr)}};
}

void from_json(const Json& j, SweepReport& r) {
    j.at("name").get_to(r.name);
    j.at("config").get_to(r.config);
    j.at("samples").get_to(r.samples);
    r.min_lower_slack = real_at(j, "min_lower_slack");
    r.min_upper_slack = real_at(j, "min_upper_slack");
    j.at("violations").get_to(r.violations);
    j.at("nondegenerate_checks").get_to(r.nondegenerate_checks);
    j.at("nondegenerate_nonzero").get_to(r.nondegenerate_nonzero);
    j.at("skipped").get_to(r.skipped);
    if (j.at("witness").is_null()) {
        r.witness.reset();
    } else {
        r.witness = j.at("witness").get<Witness>();
    }
}

void to_json(Json& j, const ContradictionEntry& e) {
    j = {{"dim", e.dim},
         {"self_zero_requirement", real_to_json(e.self_zero_requirement)},
         {"trivial_requirement", real_to_json(e.trivial_requirement)}};
}

void from_json(const Json& j, ContradictionEntry& e) {
    j.at("dim").get_to(e.dim);
    e.self_zero_requirement = real_at(j, "self_zero_requirement");
    e.trivial_requirement = real_at(j, "trivial_requirement");
}

void to_json(Json& j, const ConcavityChainEntry& e) {
    j = {{"rho", matrix_to_json(e.rho)},
         {"rho1", matrix_to_json(e.rho1)},
         {"rho2", matrix_to_json(e.rho2)},
         {"lambda", e.lambda},
         {"f_rho", real_to_json(e.f_rho)},
         {"f_rho1", real_to_json(e.f_rho1)},
         {"f_rho2", real_to_json(e.f_rho2)},
         {"concavity_gap", real_to_json(e.concavity_gap)},
         {"violates_concavity", e.violates_concavity}};
}

void from_json(const Json& j, ConcavityChainEntry& e) {
    e.rho = matrix_from_json(j.at("rho"));
    e.rho1 = matrix_from_json(j.at("rho1"));
    e.rho2 = matrix_from_json(j.at("rho2"));
    j.at("lambda").get_to(e.lambda);
    e.f_rho = real_at(j, "f_rho");
    e.f_rho1 = real_at(j, "f_rho1");
    e.f_rho2 = real_at(j, "f_rho2");
    e.concavity_gap = real_at(j, "concavity_gap");
    j.at("violates_concavity").get_to(e.violates_concavity);
}

void to_json(Json& j, const ImpossibilityReport& r) {
    j = {{"contradictions", r.contradictions}, {"chains", r.chains}, {"argument", r.argument}};
}

void from_json(const Json& j, ImpossibilityReport& r) {
    j.at("contradictions").get_to(r.contradictions);
    j.at("chains").get_to(r.chains);
    j.at("argument").get_to(r.argument);
}

void to_json(Json& j, const Example22Row& r) {
    j = {{"kappa", r.kappa},
         {"f_q", real_to_json(r.f_q)},
         {"f_complement", real_to_json(r.f_complement)},
         {"block_sum", real_to_json(r.block_sum)},
         {"entropy", real_to_json(r.entropy)},
         {"entropy_closed_form", real_to_json(r.entropy_closed_form)},
         {"entropy_pinched", real_to_json(r.entropy_pinched)}};
}

void from_json(const Json& j, Example22Row& r) {
    j.at("kappa").get_to(r.kappa);
    r.f_q = real_at(j, "f_q");
    r.f_complement = real_at(j, "f_complement");
    r.block_sum = real_at(j, "block_sum");
    r.entropy = real_at(j, "entropy");
    r.entropy_closed_form = real_at(j, "entropy_closed_form");
    r.entropy_pinched = real_at(j, "entropy_pinched");
}

void to_json(Json& j, const Example22Report& r) {
    j = {{"rows", r.rows},
         {"max_block_sum_error", real_to_json(r.max_block_sum_error)},
         {"sum_exceeds_entropy_somewhere", r.sum_exceeds_entropy_somewhere},
         {"pinched_bound_holds", r.pinched_bound_holds},
         {"max_closed_form_discrepancy", real_to_json(r.max_closed_form_discrepancy)}};
}

void from_json(const Json& j, Example22Report& r) {
    j.at("rows").get_to(r.rows);
    r.max_block_sum_error = real_at(j, "max_block_sum_error");
    j.at("sum_exceeds_entropy_somewhere").get_to(r.sum_exceeds_entropy_somewhere);
    j.at("pinched_bound_holds").get_to(r.pinched_bound_holds);
    r.max_closed_form_discrepancy = real_at(j, "max_closed_form_discrepancy");
}

void to_json(Json& j, const Example21Report& r) {
    j = {{"rho1", r.rho1},
         {"cos2_phi1", r.cos2_phi1},
         {"cos2_phi2", r.cos2_phi2},
         {"rho_q", matrix_to_json(r.rho_q)},
         {"rho_q_error", r.rho_q_error},
         {"entropy", real_to_json(r.entropy)},
         {"entropy_q", real_to_json(r.entropy_q)},
         {"f", real_to_json(r.f)},
         {"grid", r.grid},
         {"min_grid_slack", real_to_json(r.min_grid_slack)},
         {"grid_bound_holds", r.grid_bound_holds}};
}

void from_json(const Json& j, Example21Report& r) {
    j.at("rho1").get_to(r.rho1);
    j.at("cos2_phi1").get_to(r.cos2_phi1);
    j.at("cos2_phi2").get_to(r.cos2_phi2);
    r.rho_q = matrix_from_json(j.at("rho_q"));
    j.at("rho_q_error").get_to(r.rho_q_error);
    r.entropy = real_at(j, "entropy");
    r.entropy_q = real_at(j, "entropy_q");
    r.f = real_at(j, "f");
    j.at("grid").get_to(r.grid);
    r.min_grid_slack = real_at(j, "min_grid_slack");
    j.at("grid_bound_holds").get_to(r.grid_bound_holds);
}

void to_json(Json& j, const Dim2Report& r) {
    j = {{"rho", matrix_to_json(r.rho)},
         {"sigma_nondeg", matrix_to_json(r.sigma_nondeg)},
         {"entropy", real_to_json(r.entropy)},
         {"cond_maximally_mixed", real_to_json(r.cond_maximally_mixed)},
         {"cond_nondeg", real_to_json(r.cond_nondeg)},
         {"path_t", r.path_t},
         {"path_values", reals_to_json(r.path_values)}};
}

void from_json(const Json& j, Dim2Report& r) {
    r.rho = matrix_from_json(j.at("rho"));
    r.sigma_nondeg = matrix_from_json(j.at("sigma_nondeg"));
    r.entropy = real_at(j, "entropy");
    r.cond_maximally_mixed = real_at(j, "cond_maximally_mixed");
    r.cond_nondeg = real_at(j, "cond_nondeg");
    j.at("path_t").get_to(r.path_t);
    r.path_values = reals_from_json(j.at("path_values"));
}

}  // namespace qce
