#ifndef TAILCONES_METHOD2_HPP
#define TAILCONES_METHOD2_HPP

#include "tailcones/fit.hpp"

namespace tailcones {

// Overlapping cone-shaped regions: a row lies in the region for C (|C| < d)
// iff its max over the complement is at most (its min over C)^delta; rows in
// no proper region fall to the region for the full set.
struct RegionMembership {
    int d = 0;
    double delta = 0;
    // regions containing each row, as cone bitmasks
    std::vector<std::vector<std::uint32_t>> per_row;
    struct ConeRows {
        std::vector<std::size_t> rows;
        std::vector<double> structure;  // min over C per member row
    };
    std::map<ConeId, ConeRows> per_cone;
};

RegionMembership assign_regions_tilde(const SampleMatrix& x, double delta);

/// Empirical region probabilities with each observation's contribution split
/// equally across the regions containing it; sums to one exactly.
std::map<ConeId, double> weighted_region_prob(const RegionMembership& mem);

/// The delta > 0 procedure: overlapping regions, per-region censored tail
/// fits on the min-projection, recombination at the pooled extrapolation
/// level, sparsification at pi.
FitResult fit_method2(const SampleMatrix& x, const FitConfig& cfg);

}  // namespace tailcones

#endif
