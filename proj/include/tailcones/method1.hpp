#ifndef TAILCONES_METHOD1_HPP
#define TAILCONES_METHOD1_HPP

#include "tailcones/fit.hpp"
#include "tailcones/margins.hpp"

namespace tailcones {

/// Partition of the truncated sample: each row is keyed by the cone of its
/// positive coordinates, carrying Q = min of those coordinates.
std::map<ConeId, std::vector<double>> assign_regions(const TruncatedMatrix& t);

/// The delta = 0 procedure: truncate at p, fit the censored tail model per
/// region, recombine at the extrapolation level q, sparsify at pi.
/// Input must already be on the standard Frechet scale.
FitResult fit_method1(const SampleMatrix& x, const FitConfig& cfg);

}  // namespace tailcones

#endif
