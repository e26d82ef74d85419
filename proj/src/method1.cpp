#include "tailcones/method1.hpp"

#include <algorithm>

namespace tailcones {

std::map<ConeId, std::vector<double>> assign_regions(const TruncatedMatrix& t) {
    const std::size_t n = t.values.rows();
    const int d = t.values.cols();
    if (n == 0) throw EmptyModel("assign_regions: empty truncated sample");
    std::map<ConeId, std::vector<double>> regions;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t bits = 0;
        double q = std::numeric_limits<double>::infinity();
        for (int j = 0; j < d; ++j) {
            double v = t.values(i, j);
            if (v > 0.0) {
                bits |= 1u << j;
                q = std::min(q, v);
            }
        }
        regions[ConeId(bits, d)].push_back(q);  // bits nonzero: all-zero rows were dropped
    }
    return regions;
}

FitResult fit_method1(const SampleMatrix& x, const FitConfig& cfg) {
    if (cfg.method != FitConfig::Method::one)
        throw std::invalid_argument("fit_method1: config is not for Method 1");
    cfg.validate();

    TruncatedMatrix t = truncate(x, cfg.p);
    if (t.values.rows() == 0)
        throw EmptyModel("fit_method1: truncation removed every observation");
    auto regions = assign_regions(t);
    const double n_kept = static_cast<double>(t.values.rows());

    std::vector<double> pooled;
    pooled.reserve(t.values.rows());
    for (const auto& [cone, qs] : regions) pooled.insert(pooled.end(), qs.begin(), qs.end());
    std::sort(pooled.begin(), pooled.end());

    FitResult result;
    result.masses = MassDistribution(x.cols());
    result.q_used = quantile_type7_sorted(pooled, cfg.q_quantile);

    for (const auto& [cone, qs] : regions) {
        ConeFitInfo info;
        info.n = qs.size();
        info.raw_weight = static_cast<double>(qs.size()) / n_kept;
        double score = 0;
        if (qs.size() > cfg.m) {
            const double u = quantile_type7(qs, cfg.u_quantile);
            try {
                info.fit = censored_fit(qs, u);
                score = detail::extrapolate(*info.fit, result.q_used) * info.raw_weight;
            } catch (const NoExceedances&) {
                result.diagnostics.push_back("region " + cone.label() +
                                             ": no exceedances above its threshold; mass set to 0");
            }
        }
        result.masses.set(cone, score);
        result.per_cone.emplace(cone, std::move(info));
    }

    if (!(result.masses.total() > 0))
        throw EmptyModel("fit_method1: every region was skipped or had no exceedances");
    result.masses.normalize();
    result.masses = sparsify(result.masses, cfg.pi);
    return result;
}

}  // namespace tailcones
