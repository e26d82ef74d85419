#include "tailcones/method2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace tailcones {

RegionMembership assign_regions_tilde(const SampleMatrix& x, double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("assign_regions_tilde: delta must lie in [0,1)");
    const std::size_t n = x.rows();
    const int d = x.cols();
    const std::uint32_t full = ConeId::full(d).bits;

    RegionMembership mem;
    mem.d = d;
    mem.delta = delta;
    mem.per_row.resize(n);

    // per-mask min over C and max over complement, built coordinate by coordinate
    std::vector<double> row_min(full + 1), row_max(full + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = &x.data()[i * d];
        row_min[0] = std::numeric_limits<double>::infinity();
        row_max[0] = 0.0;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            const std::uint32_t low = mask & (~mask + 1);
            const int j = std::countr_zero(low);
            row_min[mask] = std::min(row_min[mask ^ low], row[j]);
            row_max[mask] = std::max(row_max[mask ^ low], row[j]);
        }
        auto& regions = mem.per_row[i];
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            const double lo = row_min[mask];
            if (row_max[full & ~mask] <= std::pow(lo, delta)) {
                regions.push_back(mask);
                auto& entry = mem.per_cone[ConeId(mask, d)];
                entry.rows.push_back(i);
                entry.structure.push_back(lo);
            }
        }
        if (regions.empty()) {
            regions.push_back(full);
            auto& entry = mem.per_cone[ConeId(full, d)];
            entry.rows.push_back(i);
            entry.structure.push_back(row_min[full]);
        }
    }
    return mem;
}

std::map<ConeId, double> weighted_region_prob(const RegionMembership& mem) {
    const std::size_t n = mem.per_row.size();
    if (n == 0) throw std::invalid_argument("weighted_region_prob: empty membership");
    std::map<ConeId, double> weights;
    for (const auto& regions : mem.per_row) {
        const double share = 1.0 / static_cast<double>(regions.size());
        for (std::uint32_t bits : regions) weights[ConeId(bits, mem.d)] += share;
    }
    for (auto& [cone, w] : weights) w /= static_cast<double>(n);
    return weights;
}

FitResult fit_method2(const SampleMatrix& x, const FitConfig& cfg) {
    if (cfg.method != FitConfig::Method::two)
        throw std::invalid_argument("fit_method2: config is not for Method 2");
    cfg.validate();
    x.validate();

    auto mem = assign_regions_tilde(x, cfg.delta);
    auto weights = weighted_region_prob(mem);

    std::vector<double> pooled(x.data());
    std::sort(pooled.begin(), pooled.end());

    FitResult result;
    result.masses = MassDistribution(x.cols());
    result.q_used = quantile_type7_sorted(pooled, cfg.q_quantile);

    for (const auto& [cone, entry] : mem.per_cone) {
        ConeFitInfo info;
        info.n = entry.rows.size();
        info.raw_weight = weights.at(cone);
        double score = 0;
        if (entry.structure.size() > cfg.m) {
            const double u = quantile_type7(entry.structure, cfg.u_quantile);
            try {
                info.fit = censored_fit(entry.structure, u);
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
        throw EmptyModel("fit_method2: every region was skipped or had no exceedances");
    result.masses.normalize();
    result.masses = sparsify(result.masses, cfg.pi);
    return result;
}

}  // namespace tailcones
