#pragma once

#include <string>

#include "json.hpp"
#include "mirrorcount/pipelines.hpp"

namespace mirrorcount {

enum class OutputFormat { json, csv };

/// JSON report bodies. Keys are emitted in canonical (sorted) order and
/// every count is a decimal string, so identical configurations produce
/// byte-identical reports regardless of thread count.
nlohmann::json to_json(const CongruenceExperimentResult& r);
nlohmann::json to_json(const UnitExperimentResult& r);
nlohmann::json to_json(const CountExperimentResult& r);
nlohmann::json to_json(const TwistedCountResult& r);
nlohmann::json to_json(const QuotientCountResult& r);
nlohmann::json to_json(const ZetaExperimentResult& r);
nlohmann::json to_json(const SmoothnessResult& r);
nlohmann::json to_json(const NewtonHodgeResult& r);
nlohmann::json to_json(const HodgeData& h);

/// CSV bodies, one row per k (or per lambda for sweeps).
std::string to_csv(const CongruenceExperimentResult& r);
std::string to_csv(const UnitExperimentResult& r);
std::string to_csv(const CountExperimentResult& r);
std::string to_csv(const TwistedCountResult& r);
std::string to_csv(const QuotientCountResult& r);
std::string to_csv(const ZetaExperimentResult& r);
std::string to_csv(const SmoothnessResult& r);
std::string to_csv(const NewtonHodgeResult& r);
std::string to_csv(const HodgeData& h);

/// Final serialization of a JSON report (stable two-space indentation
/// plus a trailing newline).
std::string report_emit(const nlohmann::json& j);

template <typename R>
std::string report_emit(const R& r, OutputFormat format) {
    if (format == OutputFormat::csv) return to_csv(r);
    return report_emit(to_json(r));
}

}  // namespace mirrorcount
