#ifndef TAILCONES_FIT_HPP
#define TAILCONES_FIT_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailcones/tail_fit.hpp"
#include "tailcones/types.hpp"

namespace tailcones {

// Tuning parameters for both inference methods, with the defaults used in the
// simulation studies.
struct FitConfig {
    enum class Method { one, two };
    Method method = Method::one;
    double p = 0.5;           // truncation quantile (Method 1)
    double delta = 0.5;       // region exponent in [0,1) (Method 2)
    double u_quantile = 0.75; // per-region threshold quantile
    double q_quantile = 0.9999;
    double pi = 0.001;        // negligible-mass cutoff
    std::size_t m = 1;        // minimum region size for fitting
    std::uint64_t seed = 0;

    static FitConfig method1();
    static FitConfig method2();
    void validate() const;
};

struct ConeFitInfo {
    std::optional<TailFit> fit;
    std::size_t n = 0;        // points in the region
    double raw_weight = 0;    // empirical region probability
};

struct FitResult {
    MassDistribution masses;
    std::map<ConeId, ConeFitInfo> per_cone;
    double q_used = 0;        // extrapolation level
    std::vector<std::string> diagnostics;
};

/// Zeroes entries below pi and renormalizes; throws AllMassNegligible when
/// nothing survives.
MassDistribution sparsify(const MassDistribution& masses, double pi);

namespace detail {
// survival_estimate without the q >= u restriction: the fitted power law is
// used as-is when extrapolating.
inline double extrapolate(const TailFit& fit, double q) {
    const double frac = static_cast<double>(fit.n_exceed) / static_cast<double>(fit.n_total);
    return frac * std::pow(q / fit.u, -1.0 / fit.tau_hat);
}
}  // namespace detail

}  // namespace tailcones

#endif
