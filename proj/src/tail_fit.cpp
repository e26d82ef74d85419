#include "tailcones/tail_fit.hpp"

#include <algorithm>
#include <cmath>

namespace tailcones {

TailFit censored_fit(std::span<const double> q_values, double u) {
    if (!(u > 0.0)) throw std::invalid_argument("censored_fit: threshold must be positive");
    TailFit fit;
    fit.u = u;
    fit.n_total = q_values.size();
    double log_sum = 0;
    for (double q : q_values) {
        if (q > u) {
            ++fit.n_exceed;
            log_sum += std::log(q / u);
        }
    }
    if (fit.n_exceed == 0) throw NoExceedances("censored_fit: no values exceed the threshold");
    fit.tau_raw = log_sum / static_cast<double>(fit.n_exceed);
    fit.tau_hat = std::min(fit.tau_raw, 1.0);
    const double frac = static_cast<double>(fit.n_exceed) / static_cast<double>(fit.n_total);
    fit.k_hat = frac * std::pow(u, 1.0 / fit.tau_hat);
    return fit;
}

double survival_estimate(const TailFit& fit, double q) {
    if (q < fit.u) throw std::invalid_argument("survival_estimate: q below the fitted threshold");
    // ratio form of k_hat * q^{-1/tau_hat}; avoids overflow for tiny tau_hat
    const double frac = static_cast<double>(fit.n_exceed) / static_cast<double>(fit.n_total);
    return frac * std::pow(q / fit.u, -1.0 / fit.tau_hat);
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile: p out of [0,1]");
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double quantile_type7(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return quantile_type7_sorted(values, p);
}

}  // namespace tailcones
