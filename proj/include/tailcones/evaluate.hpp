#ifndef TAILCONES_EVALUATE_HPP
#define TAILCONES_EVALUATE_HPP

#include <set>

#include "tailcones/fit.hpp"

namespace tailcones {

/// Hellinger distance between two mass distributions over the union of their
/// charged cones; in [0,1], zero iff equal.
double hellinger(const MassDistribution& p, const MassDistribution& p_hat);

struct RocCurve {
    // (false positive rate, true positive rate), ordered by the pi sweep from
    // pi = 0 (all cones detected) to pi = 1 (none)
    std::vector<std::pair<double, double>> points;
    double auc = 0;
};

/// Sweeps the negligible-mass threshold pi over the estimate's own mass
/// values and scores detection against the set of truly charged cones.
RocCurve roc_curve(const MassDistribution& masses, const std::set<ConeId>& truth);

/// Per-cone count of replicates assigning it mass above pi.
std::map<ConeId, int> detection_counts(const std::vector<FitResult>& results, double pi);

struct StabilityTable {
    std::vector<double> grid;     // p (Method 1) or delta (Method 2)
    std::vector<int> counts;      // cones with mass >= pi on the original data
    std::vector<int> ci_low;      // 95% bootstrap percentile bounds
    std::vector<int> ci_high;
    std::size_t bootstrap_count = 0;
};

/// Refits over a grid of tuning values (p for Method 1, delta for Method 2),
/// counting detected cones, with percentile confidence bounds from B
/// row-resampled datasets. Deterministic given (data, cfg, grid, B, seed).
StabilityTable stability(const SampleMatrix& x, const FitConfig& cfg_base,
                         const std::vector<double>& grid, std::size_t bootstrap_count, double pi);

struct FeasibilityViolation {
    enum class Kind { singleton_excess, uncovered_coordinate };
    Kind kind;
    int coordinate = 0;  // 1-based
    double mass = 0;     // singleton_excess only
    std::string describe() const;
};

/// Moment-constraint screening: a vertex cone cannot carry more than 1/d of
/// the mass, and every coordinate must appear in some retained cone.
std::vector<FeasibilityViolation> feasibility_check(const MassDistribution& masses);

}  // namespace tailcones

#endif
