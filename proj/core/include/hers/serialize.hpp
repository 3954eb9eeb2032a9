#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hers/estimation.hpp"
#include "hers/game.hpp"
#include "hers/perturbation.hpp"
#include "hers/scoring.hpp"

namespace hers {

using Json = nlohmann::json;

// Extended reals in JSON: finite values are numbers, the infinities are the
// strings "inf" / "-inf" (JSON has no infinity literal).
Json ext_real_to_json(double value);
double ext_real_from_json(const Json& j);

// Deterministic shortest round-trip formatting, used for all CSV numbers so
// repeated runs are byte-identical.
std::string format_double(double value);

// Matrices: {"dim": d, "entries": [[re, im], ...]} row-major. State loads are
// tolerance-checked by the DensityMatrix constructor.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json density_to_json(const DensityMatrix& state);
DensityMatrix density_from_json(const Json& j);

// {"kind": "hers" | "brier", "c": ..., "d": ...}
Json rule_to_json(const ScoringRule& rule);
ScoringRule rule_from_json(const Json& j);

// {"effects": [matrix, ...]}
Json record_to_json(const MeasurementRecord& record);
MeasurementRecord record_from_json(const Json& j);

// {"kind": "hilbert-schmidt" | "bures-like" | "discrete-ensemble",
//  "dim": d, "ensemble": [{"probability": p, "state": matrix}, ...]}
Json prior_to_json(const PriorSpec& spec);
PriorSpec prior_from_json(const Json& j);

Json transcript_summary_to_json(const GameTranscript& transcript);
// CSV columns: round,outcome,payoff
void write_transcript_csv(std::ostream& os, const GameTranscript& transcript);

// CSV columns: estimator,N,trial,relative_entropy_risk,trace_distance,
// rank_deficient_flag
void write_risk_csv_header(std::ostream& os);
void write_risk_csv_rows(std::ostream& os, const RiskTable& table);
Json risk_table_to_json(const RiskTable& table);

Json verification_report_to_json(const VerificationReport& report);
std::string verification_report_text(const VerificationReport& report);

Json counterexample_report_to_json(const FidelityCounterexampleReport& report);

const char* estimator_name(Estimator estimator);

}  // namespace hers
