#pragma once

// JSON documents for inputs (matrices, resolutions, partition data) and for
// every report type. Non-finite reals are written as null and read back as
// +infinity.

#include <string>
#include <string_view>

#include "json.hpp"

#include "qce/audit.hpp"
#include "qce/grassopt.hpp"
#include "qce/resolutions.hpp"

namespace qce::cli {

using Json = nlohmann::json;

inline constexpr std::string_view kSchema = "qce/1";

Json real_to_json(double x);
double real_from_json(const Json& j);

/// {"dim": n, "re": [[...]], "im": [[...]], "label": "..."}; "im" may be omitted.
Json matrix_to_json(const ComplexMatrix& m, std::string_view label = {});
ComplexMatrix matrix_from_json(const Json& j);

/// {"dim": n, "blocks": [matrix document, ...]}.
Json resolution_to_json(const IdentityResolution& r);
IdentityResolution resolution_from_json(const Json& j, const Tolerances& tol = {});

/// {"p", "q", "p_given_q", "q_given_p"} or {"joint": [[...]]}.
Json partition_to_json(const ClassicalPartitionData& d);
ClassicalPartitionData partition_from_json(const Json& j);

/// Parses JSON text; ParseError on malformed input.
Json parse_document(std::string_view text);
/// Inline JSON when the argument starts with '{', otherwise a file path.
Json load_document(const std::string& path_or_text);

ComplexMatrix parse_matrix(const std::string& path_or_text);
IdentityResolution parse_resolution(const std::string& path_or_text, const Tolerances& tol = {});
ClassicalPartitionData parse_partition(const std::string& path_or_text);

/// Runs a from_json conversion, turning library type errors into ParseError.
template <class T>
T decode(const Json& j) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace qce::cli

namespace qce {

void to_json(nlohmann::json& j, const Tolerances& t);
void from_json(const nlohmann::json& j, Tolerances& t);
void to_json(nlohmann::json& j, const OptimizeConfig& c);
void from_json(const nlohmann::json& j, OptimizeConfig& c);
void to_json(nlohmann::json& j, const EnsembleConfig& c);
void from_json(const nlohmann::json& j, EnsembleConfig& c);

void to_json(nlohmann::json& j, const BlockTerm& b);
void from_json(const nlohmann::json& j, BlockTerm& b);
void to_json(nlohmann::json& j, const EntropyBreakdown& e);
void from_json(const nlohmann::json& j, EntropyBreakdown& e);

void to_json(nlohmann::json& j, const OrderWitness& w);
void from_json(const nlohmann::json& j, OrderWitness& w);

void to_json(nlohmann::json& j, const OptimizeResult& r);
void from_json(const nlohmann::json& j, OptimizeResult& r);
void to_json(nlohmann::json& j, const LemmaRankEntry& e);
void from_json(const nlohmann::json& j, LemmaRankEntry& e);
void to_json(nlohmann::json& j, const LemmaReport& r);
void from_json(const nlohmann::json& j, LemmaReport& r);
void to_json(nlohmann::json& j, const DeltaPatternEntry& e);
void from_json(const nlohmann::json& j, DeltaPatternEntry& e);
void to_json(nlohmann::json& j, const DeltaProbeResult& r);
void from_json(const nlohmann::json& j, DeltaProbeResult& r);

void to_json(nlohmann::json& j, const Witness& w);
void from_json(const nlohmann::json& j, Witness& w);
void to_json(nlohmann::json& j, const ConditionEntry& e);
void from_json(const nlohmann::json& j, ConditionEntry& e);
void to_json(nlohmann::json& j, const AuditReport& r);
void from_json(const nlohmann::json& j, AuditReport& r);
void to_json(nlohmann::json& j, const SweepReport& r);
void from_json(const nlohmann::json& j, SweepReport& r);
void to_json(nlohmann::json& j, const ContradictionEntry& e);
void from_json(const nlohmann::json& j, ContradictionEntry& e);
void to_json(nlohmann::json& j, const ConcavityChainEntry& e);
void from_json(const nlohmann::json& j, ConcavityChainEntry& e);
void to_json(nlohmann::json& j, const ImpossibilityReport& r);
void from_json(const nlohmann::json& j, ImpossibilityReport& r);
void to_json(nlohmann::json& j, const Example22Row& r);
void from_json(const nlohmann::json& j, Example22Row& r);
void to_json(nlohmann::json& j, const Example22Report& r);
void from_json(const nlohmann::json& j, Example22Report& r);
void to_json(nlohmann::json& j, const Example21Report& r);
void from_json(const nlohmann::json& j, Example21Report& r);
void to_json(nlohmann::json& j, const Dim2Report& r);
void from_json(const nlohmann::json& j, Dim2Report& r);

}  // namespace qce
