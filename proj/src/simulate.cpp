#include "tailcones/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tailcones/linalg.hpp"
#include "tailcones/rng.hpp"

namespace tailcones {

namespace {

// Chambers-Mallows-Stuck draw of a positive alpha-stable variable with
// Laplace transform exp(-s^alpha), alpha in (0,1).
double positive_stable(double alpha, Rng& rng) {
    const double u = uniform_open(rng) * std::numbers::pi;
    const double w = exponential(rng);
    const double a = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
    const double b = std::pow(std::sin((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
    return a * b;
}

// Fills `out` with one draw from the |C|-variate symmetric logistic in
// standard Frechet margins via positive-stable mixing. alpha = 1 is exact
// independence.
void logistic_row(double alpha, Rng& rng, double* out, int k) {
    if (alpha == 1.0) {
        for (int i = 0; i < k; ++i) out[i] = frechet(rng);
        return;
    }
    const double s = positive_stable(alpha, rng);
    for (int i = 0; i < k; ++i) out[i] = std::pow(s / exponential(rng), alpha);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

// Phi clamped away from 0 and 1 so the Frechet value stays positive and finite.
double gauss_to_frechet(double z) {
    double u = normal_cdf(z);
    u = std::clamp(u, 1e-300, 1.0 - 1e-16);
    return -1.0 / std::log(u);
}

void check_alpha(double alpha, bool allow_one) {
    if (!(alpha > 0.0) || alpha > 1.0 || (!allow_one && alpha == 1.0))
        throw std::invalid_argument("logistic alpha out of range");
}

}  // namespace

SampleMatrix sample_logistic(std::size_t n, int d, double alpha, std::uint64_t seed) {
    check_alpha(alpha, true);
    if (d < 2) throw std::invalid_argument("sample_logistic: need d >= 2");
    SampleMatrix x(n, d);
    Rng rng(derive_seed(seed, 0));
    for (std::size_t i = 0; i < n; ++i) logistic_row(alpha, rng, &x.data()[i * d], d);
    return x;
}

SampleMatrix sample_gaussian_copula(std::size_t n, const std::vector<double>& sigma, int d,
                                    std::uint64_t seed) {
    if (sigma.size() != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("sample_gaussian_copula: sigma size mismatch");
    for (int i = 0; i < d; ++i) {
        if (std::abs(sigma[i * d + i] - 1.0) > 1e-12)
            throw std::invalid_argument("sample_gaussian_copula: diagonal must be 1");
        for (int j = 0; j < d; ++j)
            if (std::abs(sigma[i * d + j] - sigma[j * d + i]) > 1e-12)
                throw std::invalid_argument("sample_gaussian_copula: sigma not symmetric");
    }
    std::vector<double> l;
    if (int m = cholesky(sigma, d, l); m != 0)
        throw std::invalid_argument("sample_gaussian_copula: sigma not positive definite "
                                    "(leading minor " + std::to_string(m) + ")");
    SampleMatrix x(n, d);
    Rng rng(derive_seed(seed, 0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) g[j] = gauss(rng);
        for (int j = 0; j < d; ++j) {
            double z = 0;
            for (int k = 0; k <= j; ++k) z += l[j * d + k] * g[k];
            x(i, j) = gauss_to_frechet(z);
        }
    }
    return x;
}

SampleMatrix sample_inverted_logistic(std::size_t n, int d, double alpha, std::uint64_t seed) {
    check_alpha(alpha, false);
    SampleMatrix x = sample_logistic(n, d, alpha, seed);
    for (double& v : x.data()) {
        // survival flip: U = 1 - exp(-1/V), then back to Frechet scale
        double u = -std::expm1(-1.0 / v);
        u = std::clamp(u, 1e-300, 1.0 - 1e-16);
        v = -1.0 / std::log(u);
    }
    return x;
}

void MaxMixtureSpec::validate() const {
    if (d < 2) throw std::invalid_argument("MaxMixtureSpec: need d >= 2");
    std::set<std::uint32_t> seen;
    std::vector<double> coord_sum(d, 0.0);
    for (const auto& comp : components) {
        if (comp.cone.dim != d) throw std::invalid_argument("MaxMixtureSpec: cone dimension mismatch");
        if (!seen.insert(comp.cone.bits).second)
            throw std::invalid_argument("MaxMixtureSpec: duplicate component cone " + comp.cone.label());
        if (comp.theta.size() != static_cast<std::size_t>(comp.cone.size()))
            throw std::invalid_argument("MaxMixtureSpec: theta size mismatch for cone " + comp.cone.label());
        switch (comp.family) {
            case MixtureComponent::Family::logistic:
                if (!(comp.alpha > 0.0) || comp.alpha > 1.0)
                    throw std::invalid_argument("MaxMixtureSpec: logistic alpha out of (0,1]");
                break;
            case MixtureComponent::Family::gaussian:
                if (!(comp.rho > -1.0 && comp.rho < 1.0))
                    throw std::invalid_argument("MaxMixtureSpec: gaussian rho out of (-1,1)");
                break;
            case MixtureComponent::Family::point:
                if (comp.cone.size() != 1)
                    throw std::invalid_argument("MaxMixtureSpec: point family requires a singleton cone");
                break;
        }
        int k = 0;
        for (int i = 0; i < d; ++i)
            if (comp.cone.contains(i)) {
                double t = comp.theta[k++];
                if (t < 0.0 || t > 1.0)
                    throw std::invalid_argument("MaxMixtureSpec: theta out of [0,1] for coordinate " +
                                                std::to_string(i + 1));
                coord_sum[i] += t;
            }
    }
    for (int i = 0; i < d; ++i)
        if (std::abs(coord_sum[i] - 1.0) > 1e-12)
            throw std::invalid_argument("MaxMixtureSpec: theta weights for coordinate " +
                                        std::to_string(i + 1) + " sum to " +
                                        std::to_string(coord_sum[i]) + ", expected 1");
}

SampleMatrix sample_max_mixture(std::size_t n, const MaxMixtureSpec& spec, std::uint64_t seed) {
    spec.validate();
    const int d = spec.d;
    SampleMatrix x(n, d);
    std::fill(x.data().begin(), x.data().end(), 0.0);

    std::vector<double> z;
    for (const auto& comp : spec.components) {
        // Stream keyed by the cone bitmask: component order never changes results.
        Rng rng(derive_seed(seed, comp.cone.bits));
        const int k = comp.cone.size();
        z.resize(k);
        std::vector<int> coords;
        for (int i = 0; i < d; ++i)
            if (comp.cone.contains(i)) coords.push_back(i);

        std::vector<double> l;  // gaussian only
        std::normal_distribution<double> gauss(0.0, 1.0);
        if (comp.family == MixtureComponent::Family::gaussian) {
            auto sigma = equicorrelation(k, comp.rho);
            if (int m = cholesky(sigma, k, l); m != 0)
                throw std::invalid_argument("sample_max_mixture: gaussian block for cone " +
                                            comp.cone.label() + " not positive definite");
        }

        std::vector<double> g(k);
        for (std::size_t row = 0; row < n; ++row) {
            switch (comp.family) {
                case MixtureComponent::Family::logistic:
                    logistic_row(comp.alpha, rng, z.data(), k);
                    break;
                case MixtureComponent::Family::gaussian:
                    for (int j = 0; j < k; ++j) g[j] = gauss(rng);
                    for (int j = 0; j < k; ++j) {
                        double v = 0;
                        for (int c = 0; c <= j; ++c) v += l[j * k + c] * g[c];
                        z[j] = gauss_to_frechet(v);
                    }
                    break;
                case MixtureComponent::Family::point:
                    z[0] = frechet(rng);
                    break;
            }
            for (int j = 0; j < k; ++j) {
                double v = comp.theta[j] * z[j];
                double& cell = x(row, coords[j]);
                cell = std::max(cell, v);
            }
        }
    }
    if (n > 0) x.validate();
    return x;
}

MaxMixtureSpec asymmetric_logistic_spec(int d, const std::vector<ConeId>& faces, double alpha) {
    check_alpha(alpha, false);
    std::vector<int> cover(d, 0);
    for (const auto& f : faces) {
        if (f.dim != d) throw std::invalid_argument("asymmetric_logistic_spec: face dimension mismatch");
        for (int i = 0; i < d; ++i)
            if (f.contains(i)) ++cover[i];
    }
    for (int i = 0; i < d; ++i)
        if (cover[i] == 0)
            throw std::invalid_argument("asymmetric_logistic_spec: coordinate " +
                                        std::to_string(i + 1) + " appears in no face");
    MaxMixtureSpec spec;
    spec.d = d;
    for (const auto& f : faces) {
        MixtureComponent comp;
        comp.cone = f;
        comp.family = f.size() == 1 ? MixtureComponent::Family::point
                                    : MixtureComponent::Family::logistic;
        comp.alpha = alpha;
        for (int i = 0; i < d; ++i)
            if (f.contains(i)) comp.theta.push_back(1.0 / cover[i]);
        spec.components.push_back(std::move(comp));
    }
    return spec;
}

SampleMatrix sample_asymmetric_logistic(std::size_t n, int d, const std::vector<ConeId>& faces,
                                        double alpha, std::uint64_t seed) {
    return sample_max_mixture(n, asymmetric_logistic_spec(d, faces, alpha), seed);
}

MassDistribution true_mass(const MaxMixtureSpec& spec) {
    spec.validate();
    MassDistribution mass(spec.d);
    for (const auto& comp : spec.components) {
        const bool dependent = comp.family == MixtureComponent::Family::logistic && comp.alpha < 1.0 &&
                               comp.cone.size() > 1;
        int k = 0;
        for (int i = 0; i < spec.d; ++i) {
            if (!comp.cone.contains(i)) continue;
            double contrib = comp.theta[k++] / spec.d;
            if (contrib == 0.0) continue;
            mass.add(dependent ? comp.cone : ConeId::singleton(i, spec.d), contrib);
        }
    }
    mass.validate(1e-9);
    return mass;
}

MaxMixtureSpec maxmix_5d_spec(double alpha, double rho) {
    MaxMixtureSpec spec;
    spec.d = 5;
    auto cone = [](std::initializer_list<int> idx) {
        std::uint32_t bits = 0;
        for (int i : idx) bits |= 1u << (i - 1);
        return ConeId(bits, 5);
    };
    MixtureComponent g12{cone({1, 2}), MixtureComponent::Family::gaussian, 0.5, rho, {5.0 / 7, 5.0 / 7}};
    MixtureComponent g45{cone({4, 5}), MixtureComponent::Family::gaussian, 0.5, rho, {5.0 / 7, 5.0 / 7}};
    MixtureComponent l123{cone({1, 2, 3}), MixtureComponent::Family::logistic, alpha, 0.0,
                          {1.0 / 7, 1.0 / 7, 3.0 / 7}};
    MixtureComponent l345{cone({3, 4, 5}), MixtureComponent::Family::logistic, alpha, 0.0,
                          {3.0 / 7, 1.0 / 7, 1.0 / 7}};
    MixtureComponent lall{cone({1, 2, 3, 4, 5}), MixtureComponent::Family::logistic, alpha, 0.0,
                          {1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7, 1.0 / 7}};
    spec.components = {g12, g45, l123, l345, lall};
    return spec;
}

std::vector<double> equicorrelation(int d, double rho) {
    std::vector<double> s(static_cast<std::size_t>(d) * d, rho);
    for (int i = 0; i < d; ++i) s[i * d + i] = 1.0;
    return s;
}

}  // namespace tailcones
