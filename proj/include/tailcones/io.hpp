#ifndef TAILCONES_IO_HPP
#define TAILCONES_IO_HPP

#include <string>

#include "json.hpp"
#include "tailcones/evaluate.hpp"
#include "tailcones/fit.hpp"
#include "tailcones/simulate.hpp"

namespace tailcones {

// JSON schemas. Cone keys are their "1,3,4"-style labels throughout, so the
// files stay readable regardless of dimension.

nlohmann::json to_json(const MassDistribution& m);
MassDistribution mass_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitConfig& cfg);
FitConfig fit_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FitResult& r);
FitResult fit_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MaxMixtureSpec& spec);
MaxMixtureSpec mixture_from_json(const nlohmann::json& j);

// Field-wise exact comparison, for the write-then-reread round trip.
bool equal(const FitResult& a, const FitResult& b);

std::string to_csv(const StabilityTable& table);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a half-written file.
void write_text_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace tailcones

#endif
