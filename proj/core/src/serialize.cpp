#include "hers/serialize.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace hers {
namespace {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const char* what) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument(std::string("unknown key \"") + item.key() +
                                  "\" in " + what);
    }
  }
}

}  // namespace

Json ext_real_to_json(double value) {
  if (value == kPosInf) return Json("inf");
  if (value == kNegInf) return Json("-inf");
  return Json(value);
}

double ext_real_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kPosInf;
    if (s == "-inf") return kNegInf;
    throw std::invalid_argument("extended real string must be \"inf\" or \"-inf\"");
  }
  return j.get<double>();
}

std::string format_double(double value) {
  if (value == kPosInf) return "inf";
  if (value == kNegInf) return "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return Json{{"dim", m.rows()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  require_keys(j, {"dim", "entries"}, "matrix");
  if (!j.contains("dim") || !j.contains("entries")) {
    throw std::invalid_argument("matrix JSON needs \"dim\" and \"entries\"");
  }
  const int dim = j.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("matrix dim must be >= 1");
  const Json& entries = j.at("entries");
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim) * dim) {
    std::ostringstream os;
    os << "matrix entries must be a row-major list of " << dim * dim
       << " [re, im] pairs";
    throw std::invalid_argument(os.str());
  }
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c, ++k) {
      const Json& pair = entries.at(k);
      if (!pair.is_array() || pair.size() != 2) {
        throw std::invalid_argument("matrix entries must be [re, im] pairs");
      }
      m(r, c) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  }
  return m;
}

Json density_to_json(const DensityMatrix& state) {
  return matrix_to_json(state.matrix());
}

DensityMatrix density_from_json(const Json& j) {
  return DensityMatrix(matrix_from_json(j));
}

Json rule_to_json(const ScoringRule& rule) {
  return Json{{"kind", rule.kind == ScoreKind::Hers ? "hers" : "brier"},
              {"c", rule.c},
              {"d", rule.d}};
}

ScoringRule rule_from_json(const Json& j) {
  require_keys(j, {"kind", "c", "d"}, "scoring rule");
  ScoringRule rule;
  const std::string kind = j.value("kind", "hers");
  if (kind == "hers") {
    rule.kind = ScoreKind::Hers;
  } else if (kind == "brier") {
    rule.kind = ScoreKind::Brier;
  } else {
    throw std::invalid_argument("scoring rule kind must be \"hers\" or \"brier\"");
  }
  rule.c = j.value("c", 0.0);
  rule.d = j.value("d", 1.0);
  validate(rule);
  return rule;
}

Json record_to_json(const MeasurementRecord& record) {
  Json effects = Json::array();
  for (const Matrix& e : record.effects()) effects.push_back(matrix_to_json(e));
  return Json{{"effects", std::move(effects)}};
}

MeasurementRecord record_from_json(const Json& j) {
  require_keys(j, {"effects"}, "measurement record");
  if (!j.contains("effects") || !j.at("effects").is_array()) {
    throw std::invalid_argument("record JSON needs an \"effects\" array");
  }
  std::vector<Matrix> effects;
  effects.reserve(j.at("effects").size());
  for (const Json& e : j.at("effects")) effects.push_back(matrix_from_json(e));
  return MeasurementRecord(std::move(effects));
}

Json prior_to_json(const PriorSpec& spec) {
  const char* kind = nullptr;
  switch (spec.kind) {
    case PriorKind::HilbertSchmidt:
      kind = "hilbert-schmidt";
      break;
    case PriorKind::BuresLike:
      kind = "bures-like";
      break;
    case PriorKind::DiscreteEnsemble:
      kind = "discrete-ensemble";
      break;
  }
  Json j{{"kind", kind}, {"dim", spec.dim}};
  if (spec.kind == PriorKind::DiscreteEnsemble) {
    Json ensemble = Json::array();
    for (const auto& ws : spec.ensemble) {
      ensemble.push_back(Json{{"probability", ws.probability},
                              {"state", density_to_json(ws.state)}});
    }
    j["ensemble"] = std::move(ensemble);
  }
  return j;
}

PriorSpec prior_from_json(const Json& j) {
  require_keys(j, {"kind", "dim", "ensemble"}, "prior spec");
  const std::string kind = j.value("kind", "hilbert-schmidt");
  if (kind == "hilbert-schmidt") {
    return PriorSpec::hilbert_schmidt(j.value("dim", 2));
  }
  if (kind == "bures-like") {
    return PriorSpec::bures_like(j.value("dim", 2));
  }
  if (kind != "discrete-ensemble") {
    throw std::invalid_argument(
        "prior kind must be \"hilbert-schmidt\", \"bures-like\" or "
        "\"discrete-ensemble\"");
  }
  if (!j.contains("ensemble") || !j.at("ensemble").is_array()) {
    throw std::invalid_argument("discrete-ensemble prior needs an \"ensemble\" array");
  }
  std::vector<WeightedState> ensemble;
  for (const Json& item : j.at("ensemble")) {
    require_keys(item, {"probability", "state"}, "ensemble member");
    ensemble.push_back(WeightedState{density_from_json(item.at("state")),
                                     item.at("probability").get<double>()});
  }
  return PriorSpec::discrete(std::move(ensemble));
}

Json transcript_summary_to_json(const GameTranscript& transcript) {
  return Json{{"rounds", transcript.payoffs.size()},
              {"mean_payoff", ext_real_to_json(transcript.mean_payoff)},
              {"analytic_expected", ext_real_to_json(transcript.analytic_expected)},
              {"payoff_std", transcript.payoff_std}};
}

void write_transcript_csv(std::ostream& os, const GameTranscript& transcript) {
  os << "round,outcome,payoff\n";
  for (std::size_t r = 0; r < transcript.payoffs.size(); ++r) {
    os << r << ',' << transcript.outcomes[r] << ','
       << format_double(transcript.payoffs[r]) << '\n';
  }
}

void write_risk_csv_header(std::ostream& os) {
  os << "estimator,N,trial,relative_entropy_risk,trace_distance,rank_deficient_flag\n";
}

void write_risk_csv_rows(std::ostream& os, const RiskTable& table) {
  for (const RiskRow& row : table.rows) {
    os << estimator_name(table.estimator) << ',' << table.copies << ','
       << row.trial << ',' << format_double(row.relative_entropy_risk) << ','
       << format_double(row.trace_distance) << ',' << (row.rank_deficient ? 1 : 0)
       << '\n';
  }
}

Json risk_table_to_json(const RiskTable& table) {
  return Json{{"estimator", estimator_name(table.estimator)},
              {"N", table.copies},
              {"trials", table.rows.size()},
              {"mean_risk", ext_real_to_json(table.summary.mean_risk)},
              {"median_risk", ext_real_to_json(table.summary.median)},
              {"q25_risk", ext_real_to_json(table.summary.q25)},
              {"q75_risk", ext_real_to_json(table.summary.q75)},
              {"infinite_fraction", table.summary.infinite_fraction}};
}

Json verification_report_to_json(const VerificationReport& report) {
  Json witnesses = Json::array();
  for (const CurveWitness& w : report.witnesses) {
    Json populations = Json::array();
    Json constants = Json::array();
    for (Eigen::Index i = 0; i < w.populations.size(); ++i) {
      populations.push_back(w.populations(i));
      constants.push_back(w.constants(i));
    }
    witnesses.push_back(Json{{"populations", std::move(populations)},
                             {"constants", std::move(constants)},
                             {"generator", matrix_to_json(w.generator)},
                             {"second_derivative", w.second_derivative},
                             {"witness_t", w.witness_t},
                             {"witness_g", w.witness_g}});
  }
  return Json{{"dim", report.dim},
              {"trials", report.trials},
              {"seed", report.seed},
              {"equal_constants",
               Json{{"violations", report.equal_violation_count},
                    {"min_second_derivative",
                     ext_real_to_json(report.equal_min_second_derivative)}}},
              {"unequal_constants",
               Json{{"trials", report.unequal_trials},
                    {"failures", report.unequal_failure_count},
                    {"witnesses", std::move(witnesses)}}},
              {"passed", report.passed}};
}

std::string verification_report_text(const VerificationReport& report) {
  std::ostringstream os;
  os << "reward-offset equality check (dim " << report.dim << ", "
     << report.trials << " trials, seed " << report.seed << ")\n";
  os << "  equal offsets:   " << report.equal_violation_count
     << " negative-curvature violations (min curvature "
     << format_double(report.equal_min_second_derivative) << ")\n";
  os << "  unequal offsets: " << report.unequal_failure_count << " of "
     << report.unequal_trials << " trials failed to produce a violation\n";
  if (!report.witnesses.empty()) {
    const CurveWitness& w = report.witnesses.front();
    os << "  sample witness:  curvature " << format_double(w.second_derivative)
       << ", g(" << format_double(w.witness_t) << ") = "
       << format_double(w.witness_g) << "\n";
  }
  os << "  verdict: " << (report.passed ? "PASS" : "FAIL")
     << " (propriety forces one shared offset)\n";
  return os.str();
}

Json counterexample_report_to_json(const FidelityCounterexampleReport& report) {
  return Json{
      {"mean_state", density_to_json(report.mean_state)},
      {"top_eigenvalue", report.top_eigenvalue},
      {"fidelity_optimal_report", density_to_json(report.fidelity_optimal)},
      {"reward_optimal_report", density_to_json(report.reward_optimal)},
      {"average_fidelity_of_fidelity_optimal", report.fidelity_of_fidelity_optimal},
      {"average_fidelity_of_mean", report.fidelity_of_mean},
      {"expected_reward_of_mean", ext_real_to_json(report.reward_of_mean)},
      {"expected_reward_of_fidelity_optimal",
       ext_real_to_json(report.reward_of_fidelity_optimal)}};
}

const char* estimator_name(Estimator estimator) {
  return estimator == Estimator::BayesMean ? "bayes-mean" : "mle";
}

}  // namespace hers
