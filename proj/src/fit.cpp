#include "tailcones/fit.hpp"

namespace tailcones {

FitConfig FitConfig::method1() {
    FitConfig cfg;
    cfg.method = Method::one;
    cfg.p = 0.5;
    cfg.u_quantile = 0.75;
    return cfg;
}

FitConfig FitConfig::method2() {
    FitConfig cfg;
    cfg.method = Method::two;
    cfg.delta = 0.5;
    cfg.u_quantile = 0.85;
    return cfg;
}

void FitConfig::validate() const {
    if (method == Method::one && !(p > 0.0 && p < 1.0))
        throw std::invalid_argument("FitConfig: p must lie in (0,1)");
    if (method == Method::two && !(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("FitConfig: delta must lie in [0,1)");
    if (!(u_quantile > 0.0 && u_quantile < 1.0))
        throw std::invalid_argument("FitConfig: u_quantile must lie in (0,1)");
    if (!(q_quantile > 0.0 && q_quantile < 1.0))
        throw std::invalid_argument("FitConfig: q_quantile must lie in (0,1)");
    if (!(pi >= 0.0 && pi < 1.0)) throw std::invalid_argument("FitConfig: pi must lie in [0,1)");
}

MassDistribution sparsify(const MassDistribution& masses, double pi) {
    if (!(pi >= 0.0 && pi < 1.0)) throw std::invalid_argument("sparsify: pi must lie in [0,1)");
    MassDistribution out(masses.dim());
    for (const auto& [cone, v] : masses.entries())
        if (v >= pi && v > 0.0) out.set(cone, v);
    if (out.entries().empty())
        throw AllMassNegligible("sparsify: every estimated proportion is below pi");
    out.normalize();
    return out;
}

}  // namespace tailcones
