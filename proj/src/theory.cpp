#include "tailcones/theory.hpp"

#include <cmath>

#include "tailcones/linalg.hpp"

namespace tailcones {

TauModel TauModel::independence(int d) {
    TauModel m;
    m.kind = Kind::independence;
    m.d = d;
    return m;
}

TauModel TauModel::logistic(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("logistic alpha out of (0,1)");
    TauModel m;
    m.kind = Kind::logistic;
    m.alpha = alpha;
    return m;
}

TauModel TauModel::logistic_pair_plus_indep(double alpha) {
    auto m = logistic(alpha);
    m.kind = Kind::logistic_pair_plus_indep;
    return m;
}

TauModel TauModel::inverted_logistic(double alpha) {
    auto m = logistic(alpha);
    m.kind = Kind::inverted_logistic;
    return m;
}

TauModel TauModel::bivariate_ev(double theta1, double theta2, double s1, double s2) {
    if (theta1 < 0 || theta2 < 0 || theta1 + theta2 > 1.0)
        throw std::invalid_argument("bivariate_ev: invalid vertex masses");
    if (!(s1 > -1.0) || !(s2 > -1.0))
        throw std::invalid_argument("bivariate_ev: spectral exponents must exceed -1");
    TauModel m;
    m.kind = Kind::bivariate_ev;
    m.theta1 = theta1;
    m.theta2 = theta2;
    m.s1 = s1;
    m.s2 = s2;
    m.d = 2;
    return m;
}

TauModel TauModel::gaussian(std::vector<double> sigma, int d) {
    if (sigma.size() != static_cast<std::size_t>(d) * d)
        throw std::invalid_argument("gaussian: sigma size mismatch");
    TauModel m;
    m.kind = Kind::gaussian;
    m.sigma = std::move(sigma);
    m.d = d;
    return m;
}

namespace {

std::vector<double> submatrix(const std::vector<double>& sigma, int d, const ConeId& c) {
    std::vector<int> idx;
    for (int i = 0; i < d; ++i)
        if (c.contains(i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    std::vector<double> sub(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub[i * k + j] = sigma[idx[i] * d + idx[j]];
    return sub;
}

}  // namespace

TauValue tau_oracle(const TauQuery& q) {
    const auto& m = q.model;
    const ConeId& c = q.cone;
    const double delta = q.delta;
    const double a = m.alpha;
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("tau_oracle: delta out of [0,1]");
    if (c.dim != m.d) throw std::invalid_argument("tau_oracle: cone dimension mismatch");
    const int k = c.size();

    switch (m.kind) {
        case TauModel::Kind::independence:
            return {1.0 / k, false};
        case TauModel::Kind::logistic:
            if (m.d != 3) throw NoClosedForm("logistic oracle published for d = 3 only");
            if (k == 1) return {a / (1.0 + a * delta - delta), false};
            if (k == 2) return {a / (2.0 + a * delta - 2.0 * delta), false};
            return {1.0, false};
        case TauModel::Kind::logistic_pair_plus_indep: {
            if (m.d != 3) throw NoClosedForm("logistic-pair oracle published for d = 3 only");
            const bool has3 = c.contains(2);
            if (k == 1) return has3 ? TauValue{1.0, false}
                                    : TauValue{a / (1.0 + a * delta - delta), false};
            if (k == 2)
                return has3 ? TauValue{a / (a * delta + 1.0 + a - delta), false}
                            : TauValue{1.0, false};
            return {0.5, false};
        }
        case TauModel::Kind::inverted_logistic:
            if (m.d != 3) throw NoClosedForm("inverted logistic oracle published for d = 3 only");
            return {std::pow(static_cast<double>(k), -a), false};
        case TauModel::Kind::bivariate_ev: {
            if (k == 2) return {m.theta1 + m.theta2 < 1.0 ? 1.0 : 0.5, false};
            const bool is1 = c.contains(0);
            const double theta = is1 ? m.theta1 : m.theta2;
            const double s = is1 ? m.s1 : m.s2;
            if (theta > 0.0) return {1.0, false};
            return {1.0 / ((s + 2.0) - delta * (s + 1.0)), false};
        }
        case TauModel::Kind::gaussian: {
            if (k == 1)
                throw NoClosedForm("gaussian vertex tau has no closed form; "
                                   "use gaussian_vertex_condition");
            const double eta = eta_gaussian(m.sigma, m.d, c);
            // For proper subsets below delta = 1 only the bound tau <= eta is known.
            return {eta, k < m.d};
        }
    }
    throw NoClosedForm("unsupported model");
}

double eta_gaussian(const std::vector<double>& sigma, int d, const ConeId& c) {
    if (c.size() < 2) throw std::invalid_argument("eta_gaussian: need |C| >= 2");
    if (c.dim != d) throw std::invalid_argument("eta_gaussian: cone dimension mismatch");
    auto sub = submatrix(sigma, d, c);
    return 1.0 / ones_quadratic_inverse(sub, c.size());
}

bool gaussian_vertex_condition(const std::vector<double>& sigma, int d, int i, double delta) {
    if (d != 3) throw NoClosedForm("gaussian vertex condition stated for d = 3 only");
    if (i < 0 || i >= d) throw std::invalid_argument("gaussian_vertex_condition: bad coordinate");
    double max_rho_sq = 0;
    for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        double rho = sigma[i * d + j];
        if (!(rho >= 0.0))
            throw std::invalid_argument("gaussian_vertex_condition: correlations must be positive");
        max_rho_sq = std::max(max_rho_sq, rho * rho);
    }
    return delta >= max_rho_sq;
}

double eta_from_tau(const std::map<ConeId, double>& taus_at_one, const ConeId& c) {
    const std::uint32_t full = ConeId::full(c.dim).bits;
    double best = -1;
    // enumerate supersets: c.bits | s over subsets s of the complement
    const std::uint32_t comp = full & ~c.bits;
    std::uint32_t s = 0;
    while (true) {
        ConeId super(c.bits | s, c.dim);
        auto it = taus_at_one.find(super);
        if (it == taus_at_one.end())
            throw std::invalid_argument("eta_from_tau: missing superset " + super.label());
        best = std::max(best, it->second);
        if (s == comp) break;
        s = (s - comp) & comp;  // next subset of comp
    }
    return best;
}

}  // namespace tailcones
