#ifndef TAILCONES_THEORY_HPP
#define TAILCONES_THEORY_HPP

#include <map>
#include <vector>

#include "tailcones/types.hpp"

namespace tailcones {

// Copula families with published closed forms for tau_C(delta).
struct TauModel {
    enum class Kind {
        independence,
        logistic,                  // trivariate symmetric logistic, alpha in (0,1)
        logistic_pair_plus_indep,  // (X1,X2) bivariate logistic, X3 independent
        inverted_logistic,         // trivariate inverted logistic
        bivariate_ev,              // bivariate EV with regularly varying spectral density
        gaussian,                  // gaussian copula, correlation matrix sigma
    };
    Kind kind = Kind::independence;
    double alpha = 0.5;
    double theta1 = 0, theta2 = 0;  // bivariate EV vertex masses
    double s1 = 0, s2 = 0;          // spectral density tail exponents, > -1
    std::vector<double> sigma;      // row-major, gaussian only
    int d = 3;

    static TauModel independence(int d = 3);
    static TauModel logistic(double alpha);
    static TauModel logistic_pair_plus_indep(double alpha);
    static TauModel inverted_logistic(double alpha);
    static TauModel bivariate_ev(double theta1, double theta2, double s1, double s2);
    static TauModel gaussian(std::vector<double> sigma, int d);
};

struct TauQuery {
    TauModel model;
    ConeId cone;
    double delta = 0;
};

// tau_C(delta), or a certified upper bound where the paper gives none
// (gaussian, 2 <= |C| < d, delta < 1).
struct TauValue {
    double value = 0;
    bool upper_bound_only = false;
};

// Exact published formulas; throws NoClosedForm for unsupported combinations
// rather than guessing.
struct NoClosedForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

TauValue tau_oracle(const TauQuery& q);

// (1^T Sigma_C^{-1} 1)^{-1} over the |C| x |C| submatrix; requires |C| >= 2.
double eta_gaussian(const std::vector<double>& sigma, int d, const ConeId& c);

// Trivariate gaussian vertex predicate: true iff delta >= max_{j != i} rho_ij^2,
// which signals tau_i(delta) = 1.
bool gaussian_vertex_condition(const std::vector<double>& sigma, int d, int i, double delta);

// eta_C = max over supersets Cbar of tau_{Cbar}(1); the map must contain
// every superset of C.
double eta_from_tau(const std::map<ConeId, double>& taus_at_one, const ConeId& c);

}  // namespace tailcones

#endif
