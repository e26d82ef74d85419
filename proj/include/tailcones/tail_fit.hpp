#ifndef TAILCONES_TAIL_FIT_HPP
#define TAILCONES_TAIL_FIT_HPP

#include <span>
#include <vector>

#include "tailcones/types.hpp"

namespace tailcones {

// Fitted censored power-law tail for one region: pr(Q > q) = k_hat * q^{-1/tau_hat}
// above the threshold u.
struct TailFit {
    double tau_hat = 0;    // clamped to (0,1]
    double tau_raw = 0;    // Hill estimate before clamping
    double k_hat = 0;
    double u = 0;
    std::size_t n_total = 0;
    std::size_t n_exceed = 0;
};

/// Closed-form censored maximum likelihood fit. tau_hat is the mean of
/// log(q/u) over strict exceedances of u, clamped to (0,1]; k_hat is
/// recomputed after clamping so that the survival estimate at q = u stays
/// equal to the empirical exceedance fraction.
TailFit censored_fit(std::span<const double> q_values, double u);

/// k_hat * q^{-1/tau_hat}, valid for q >= u only.
double survival_estimate(const TailFit& fit, double q);

/// Empirical quantile with type-7 interpolation. Sorts a copy.
double quantile_type7(std::vector<double> values, double p);
/// Same, for data already sorted ascending.
double quantile_type7_sorted(std::span<const double> sorted, double p);

}  // namespace tailcones

#endif
