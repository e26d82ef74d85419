#ifndef TAILCONES_EXPERIMENT_HPP
#define TAILCONES_EXPERIMENT_HPP

#include <optional>
#include <set>

#include "json.hpp"
#include "tailcones/evaluate.hpp"
#include "tailcones/simulate.hpp"

namespace tailcones {

// A batch of simulate-fit-score replicates against a known model.
struct ExperimentSpec {
    MaxMixtureSpec model;
    std::size_t n = 10000;
    std::size_t replicates = 1;
    std::vector<FitConfig> configs;       // at most one per method
    std::set<std::string> metrics;        // subset of {"hellinger", "auc", "counts"}
    std::uint64_t seed = 0;

    void validate() const;
};

/// The five-dimensional max-mixture study spec with its default protocol
/// (n = 10^4, both methods at their defaults, all metrics).
ExperimentSpec preset_maxmix42(double alpha, double rho);

/// Asymmetric logistic on `faces` cones drawn at random (distinct, jointly
/// covering every coordinate); deterministic in the seed.
MaxMixtureSpec asymlog_preset(int d, int faces, double alpha, std::uint64_t seed);

struct ReplicateRow {
    std::size_t replicate = 0;            // 1-based
    std::uint64_t seed = 0;
    int method = 0;
    int count = 0;                        // cones retained
    std::optional<double> hellinger;
    std::optional<double> auc;
};

struct ExperimentReport {
    ExperimentSpec spec;
    MassDistribution truth;
    std::vector<ReplicateRow> rows;
    // e.g. "method1.mean_auc" -> value; only requested metrics appear
    std::map<std::string, double> summary;
    // per method, cone -> number of replicates detecting it (metric "counts")
    std::map<int, std::map<ConeId, int>> detections;
};

ExperimentReport run_experiment(const ExperimentSpec& spec);

nlohmann::json to_json(const ExperimentReport& report);
std::string rows_to_csv(const ExperimentReport& report);

/// Writes report.json and replicates.csv under `dir` (created if missing).
void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace tailcones

#endif
