#include "tailcones/evaluate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "tailcones/method1.hpp"
#include "tailcones/method2.hpp"
#include "tailcones/rng.hpp"

namespace tailcones {

double hellinger(const MassDistribution& p, const MassDistribution& p_hat) {
    if (p.dim() != p_hat.dim()) throw std::invalid_argument("hellinger: dimension mismatch");
    std::set<ConeId> cones;
    for (const auto& [c, v] : p.entries()) cones.insert(c);
    for (const auto& [c, v] : p_hat.entries()) cones.insert(c);
    double sum = 0;
    for (const auto& c : cones) {
        const double diff = std::sqrt(p.mass(c)) - std::sqrt(p_hat.mass(c));
        sum += diff * diff;
    }
    return std::sqrt(sum / 2.0);
}

RocCurve roc_curve(const MassDistribution& masses, const std::set<ConeId>& truth) {
    const int d = masses.dim();
    const double n_cones = std::pow(2.0, d) - 1.0;
    if (truth.empty()) throw std::invalid_argument("roc_curve: truth set is empty");
    if (static_cast<double>(truth.size()) >= n_cones)
        throw std::invalid_argument("roc_curve: truth covers every cone; rates undefined");
    for (const auto& c : truth)
        if (c.dim != d) throw std::invalid_argument("roc_curve: truth dimension mismatch");

    const double n_true = static_cast<double>(truth.size());
    const double n_false = n_cones - n_true;

    auto rates = [&](auto&& detected_pred) {
        double tp = 0, fp = 0;
        const std::uint32_t full = ConeId::full(d).bits;
        for (std::uint32_t bits = 1; bits <= full; ++bits) {
            ConeId c(bits, d);
            if (!detected_pred(c)) continue;
            if (truth.count(c)) ++tp; else ++fp;
        }
        return std::pair<double, double>{fp / n_false, tp / n_true};
    };

    RocCurve roc;
    // pi = 0: every cone counts as detected
    roc.points.emplace_back(1.0, 1.0);
    std::vector<double> thresholds;
    for (const auto& [c, v] : masses.entries())
        if (v > 0) thresholds.push_back(v);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    for (double pi : thresholds)
        roc.points.push_back(rates([&](const ConeId& c) { return masses.mass(c) >= pi; }));
    // pi = 1: nothing detected (a cone of mass exactly 1 was handled above)
    roc.points.emplace_back(0.0, 0.0);

    auto sorted = roc.points;
    std::sort(sorted.begin(), sorted.end());
    double auc = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        auc += (sorted[i].first - sorted[i - 1].first) *
               (sorted[i].second + sorted[i - 1].second) / 2.0;
    roc.auc = auc;
    return roc;
}

std::map<ConeId, int> detection_counts(const std::vector<FitResult>& results, double pi) {
    if (results.empty()) throw std::invalid_argument("detection_counts: empty result list");
    const int d = results.front().masses.dim();
    std::map<ConeId, int> counts;
    for (const auto& r : results) {
        if (r.masses.dim() != d) throw std::invalid_argument("detection_counts: dimension mismatch");
        for (const auto& [c, v] : r.masses.entries())
            if (v > pi) ++counts[c];
    }
    return counts;
}

namespace {

// Type-7 quantile via selection instead of a full sort; bootstrap refits call
// this on ~n*d pooled values, where sorting would dominate the runtime.
double quantile_nth(std::vector<double>& v, double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    std::nth_element(v.begin(), v.begin() + lo, v.end());
    const double a = v[lo];
    if (frac == 0.0 || lo + 1 >= v.size()) return a;
    const double b = *std::min_element(v.begin() + lo + 1, v.end());
    return a + frac * (b - a);
}

// Count of cones surviving sparsification at pi; 0 when nothing would remain.
int count_detected(const std::map<ConeId, double>& scores, double pi) {
    double total = 0;
    for (const auto& [c, v] : scores) total += v;
    if (!(total > 0)) return 0;
    int count = 0;
    for (const auto& [c, v] : scores)
        if (v > 0 && v / total >= pi) ++count;
    return count;
}

int method1_count(const SampleMatrix& x, const FitConfig& cfg) {
    try {
        FitResult r = fit_method1(x, cfg);
        return static_cast<int>(r.masses.entries().size());
    } catch (const EmptyModel&) {
        return 0;
    } catch (const AllMassNegligible&) {
        return 0;
    }
}

// Precomputed per-row region data for Method 2 at a fixed delta, reused
// across bootstrap resamples.
struct Method2Rows {
    std::vector<std::vector<std::uint32_t>> regions;    // per row
    std::vector<std::vector<double>> structure;         // aligned with regions
    const SampleMatrix* x = nullptr;
};

Method2Rows precompute_method2(const SampleMatrix& x, double delta) {
    auto mem = assign_regions_tilde(x, delta);
    Method2Rows rows;
    rows.x = &x;
    rows.regions = std::move(mem.per_row);
    rows.structure.resize(rows.regions.size());
    const int d = x.cols();
    for (std::size_t i = 0; i < rows.regions.size(); ++i) {
        const double* row = &x.data()[i * d];
        for (std::uint32_t bits : rows.regions[i])
            rows.structure[i].push_back(min_projection(std::span(row, d), ConeId(bits, d)));
    }
    return rows;
}

int method2_count(const Method2Rows& rows, const std::vector<std::size_t>& idx,
                  const FitConfig& cfg, double pi) {
    const int d = rows.x->cols();
    const double n = static_cast<double>(idx.size());

    std::map<std::uint32_t, std::vector<double>> structure;
    std::map<std::uint32_t, double> weight;
    std::vector<double> pooled;
    pooled.reserve(idx.size() * d);
    for (std::size_t i : idx) {
        const auto& regs = rows.regions[i];
        const double share = 1.0 / static_cast<double>(regs.size());
        for (std::size_t k = 0; k < regs.size(); ++k) {
            structure[regs[k]].push_back(rows.structure[i][k]);
            weight[regs[k]] += share;
        }
        const double* row = &rows.x->data()[i * d];
        pooled.insert(pooled.end(), row, row + d);
    }
    const double q = quantile_nth(pooled, cfg.q_quantile);

    std::map<ConeId, double> scores;
    for (auto& [bits, values] : structure) {
        double score = 0;
        if (values.size() > cfg.m) {
            const double u = quantile_type7(values, cfg.u_quantile);
            try {
                TailFit fit = censored_fit(values, u);
                score = detail::extrapolate(fit, q) * weight[bits] / n;
            } catch (const NoExceedances&) {
            }
        }
        scores[ConeId(bits, d)] = score;
    }
    return count_detected(scores, pi);
}

}  // namespace

StabilityTable stability(const SampleMatrix& x, const FitConfig& cfg_base,
                         const std::vector<double>& grid, std::size_t bootstrap_count, double pi) {
    if (grid.empty()) throw std::invalid_argument("stability: empty grid");
    if (bootstrap_count < 1) throw std::invalid_argument("stability: need B >= 1");
    for (double g : grid) {
        FitConfig probe = cfg_base;
        if (probe.method == FitConfig::Method::one) probe.p = g; else probe.delta = g;
        probe.validate();
    }

    const std::size_t n = x.rows();
    StabilityTable table;
    table.grid = grid;
    table.bootstrap_count = bootstrap_count;

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        FitConfig cfg = cfg_base;
        cfg.pi = pi;
        int count;
        std::vector<int> boot_counts(bootstrap_count);

        if (cfg_base.method == FitConfig::Method::one) {
            cfg.p = grid[gi];
            count = method1_count(x, cfg);
            std::vector<double> values(n * static_cast<std::size_t>(x.cols()));
            for (std::size_t b = 0; b < bootstrap_count; ++b) {
                Rng rng(derive_seed(cfg_base.seed, (gi << 32) | (b + 1)));
                std::uniform_int_distribution<std::size_t> pick(0, n - 1);
                for (std::size_t i = 0; i < n; ++i) {
                    std::size_t src = pick(rng);
                    for (int j = 0; j < x.cols(); ++j)
                        values[i * x.cols() + j] = x(src, j);
                }
                SampleMatrix resampled(n, x.cols(), values);
                boot_counts[b] = method1_count(resampled, cfg);
            }
        } else {
            cfg.delta = grid[gi];
            auto rows = precompute_method2(x, cfg.delta);
            std::vector<std::size_t> idx(n);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            count = method2_count(rows, idx, cfg, pi);
            for (std::size_t b = 0; b < bootstrap_count; ++b) {
                Rng rng(derive_seed(cfg_base.seed, (gi << 32) | (b + 1)));
                std::uniform_int_distribution<std::size_t> pick(0, n - 1);
                for (std::size_t i = 0; i < n; ++i) idx[i] = pick(rng);
                boot_counts[b] = method2_count(rows, idx, cfg, pi);
            }
        }

        std::sort(boot_counts.begin(), boot_counts.end());
        std::vector<double> as_double(boot_counts.begin(), boot_counts.end());
        int lo = static_cast<int>(std::floor(quantile_type7_sorted(as_double, 0.025)));
        int hi = static_cast<int>(std::ceil(quantile_type7_sorted(as_double, 0.975)));
        table.counts.push_back(count);
        table.ci_low.push_back(std::min(lo, count));
        table.ci_high.push_back(std::max(hi, count));
    }
    return table;
}

std::string FeasibilityViolation::describe() const {
    if (kind == Kind::singleton_excess)
        return "vertex cone {" + std::to_string(coordinate) + "} carries mass " +
               std::to_string(mass) + ", above the moment-constraint bound 1/d";
    return "coordinate " + std::to_string(coordinate) + " appears in no retained cone";
}

std::vector<FeasibilityViolation> feasibility_check(const MassDistribution& masses) {
    masses.validate(1e-6);
    const int d = masses.dim();
    std::vector<bool> covered(d, false);
    std::vector<FeasibilityViolation> violations;
    for (const auto& [c, v] : masses.entries()) {
        if (v <= 0) continue;
        for (int i = 0; i < d; ++i)
            if (c.contains(i)) covered[i] = true;
        if (c.size() == 1 && v > 1.0 / d + 1e-12) {
            FeasibilityViolation viol;
            viol.kind = FeasibilityViolation::Kind::singleton_excess;
            viol.coordinate = std::countr_zero(c.bits) + 1;
            viol.mass = v;
            violations.push_back(viol);
        }
    }
    for (int i = 0; i < d; ++i)
        if (!covered[i]) {
            FeasibilityViolation viol;
            viol.kind = FeasibilityViolation::Kind::uncovered_coordinate;
            viol.coordinate = i + 1;
            violations.push_back(viol);
        }
    return violations;
}

}  // namespace tailcones
