#ifndef TAILCONES_SIMULATE_HPP
#define TAILCONES_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "tailcones/types.hpp"

namespace tailcones {

// One block of a max-mixture model. Gaussian blocks are equicorrelated with
// parameter rho; `point` marks independent Frechet noise on a singleton.
struct MixtureComponent {
    enum class Family { logistic, gaussian, point };
    ConeId cone;
    Family family = Family::logistic;
    double alpha = 0.5;              // logistic dependence, in (0,1]
    double rho = 0.0;                // gaussian equicorrelation, in (-1,1)
    std::vector<double> theta;       // weight per coordinate of `cone`, in order
};

struct MaxMixtureSpec {
    int d = 0;
    std::vector<MixtureComponent> components;

    // Per-coordinate theta sums must equal 1 (within 1e-12) and parameters
    // must lie in their stated ranges; throws naming the offending coordinate.
    void validate() const;
};

SampleMatrix sample_logistic(std::size_t n, int d, double alpha, std::uint64_t seed);
SampleMatrix sample_gaussian_copula(std::size_t n, const std::vector<double>& sigma,
                                    int d, std::uint64_t seed);
SampleMatrix sample_inverted_logistic(std::size_t n, int d, double alpha, std::uint64_t seed);
SampleMatrix sample_max_mixture(std::size_t n, const MaxMixtureSpec& spec, std::uint64_t seed);

// Asymmetric logistic with mass on the given faces: theta_{i,C} = 1/#{faces
// containing i}, logistic(alpha) per face, point family for singletons.
SampleMatrix sample_asymmetric_logistic(std::size_t n, int d, const std::vector<ConeId>& faces,
                                        double alpha, std::uint64_t seed);
MaxMixtureSpec asymmetric_logistic_spec(int d, const std::vector<ConeId>& faces, double alpha);

// Closed-form cone-mass ground truth: logistic (alpha<1) components charge
// their own cone with sum(theta)/d; gaussian, point and alpha=1 components
// charge each member vertex with theta/d.
MassDistribution true_mass(const MaxMixtureSpec& spec);

// The five-dimensional max-mixture example with Gaussian blocks {1,2},{4,5}
// and logistic blocks {1,2,3},{3,4,5},{1,..,5}; equal mass on seven cones.
MaxMixtureSpec maxmix_5d_spec(double alpha, double rho);

// Equicorrelated d x d correlation matrix, row-major.
std::vector<double> equicorrelation(int d, double rho);

}  // namespace tailcones

#endif
