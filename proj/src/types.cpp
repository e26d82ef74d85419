#include "tailcones/types.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace tailcones {

ConeId::ConeId(std::uint32_t b, int d) : bits(b), dim(d) {
    if (d < 1 || d > 31) throw std::invalid_argument("ConeId: dimension out of range");
    if (b == 0) throw std::invalid_argument("ConeId: empty coordinate set");
    if (b >> d) throw std::invalid_argument("ConeId: bit set at position >= d");
}

int ConeId::size() const { return std::popcount(bits); }

bool ConeId::is_subset_of(const ConeId& other) const {
    return dim == other.dim && (bits & ~other.bits) == 0;
}

ConeId ConeId::complement() const {
    std::uint32_t mask = (dim == 31) ? 0x7fffffffu : ((1u << dim) - 1u);
    ConeId c;
    c.bits = mask & ~bits;  // may be empty when *this is the full set
    c.dim = dim;
    return c;
}

std::string ConeId::label() const {
    std::ostringstream out;
    bool first = true;
    for (int i = 0; i < dim; ++i) {
        if (contains(i)) {
            if (!first) out << ',';
            out << (i + 1);
            first = false;
        }
    }
    return out.str();
}

ConeId ConeId::parse(const std::string& label, int dim) {
    std::uint32_t bits = 0;
    std::istringstream in(label);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        int idx = std::stoi(tok);
        if (idx < 1 || idx > dim) throw std::invalid_argument("ConeId::parse: index out of range: " + tok);
        bits |= (1u << (idx - 1));
    }
    return ConeId(bits, dim);
}

ConeId ConeId::full(int dim) {
    return ConeId((dim == 31) ? 0x7fffffffu : ((1u << dim) - 1u), dim);
}

ConeId ConeId::singleton(int i, int dim) { return ConeId(1u << i, dim); }

SampleMatrix::SampleMatrix(std::size_t n, int d) : n_(n), d_(d), values_(n * d, 0.0) {}

SampleMatrix::SampleMatrix(std::size_t n, int d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (values_.size() != n * static_cast<std::size_t>(d))
        throw std::invalid_argument("SampleMatrix: size mismatch");
}

void SampleMatrix::validate() const {
    if (d_ < 2) throw DataError("SampleMatrix: need d >= 2");
    if (n_ < 1) throw DataError("SampleMatrix: need n >= 1");
    for (std::size_t i = 0; i < n_; ++i)
        for (int j = 0; j < d_; ++j) {
            double v = (*this)(i, j);
            if (!(v > 0.0) || !std::isfinite(v))
                throw DataError("SampleMatrix: non-positive or non-finite entry at row " +
                                std::to_string(i + 1) + ", column " + std::to_string(j + 1));
        }
}

double MassDistribution::mass(const ConeId& c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? 0.0 : it->second;
}

void MassDistribution::set(const ConeId& c, double value) {
    if (c.dim != d_) throw std::invalid_argument("MassDistribution: dimension mismatch");
    entries_[c] = value;
}

void MassDistribution::add(const ConeId& c, double value) {
    if (c.dim != d_) throw std::invalid_argument("MassDistribution: dimension mismatch");
    entries_[c] += value;
}

double MassDistribution::total() const {
    double s = 0;
    for (const auto& [c, v] : entries_) s += v;
    return s;
}

void MassDistribution::normalize() {
    double s = total();
    if (!(s > 0)) throw AllMassNegligible("MassDistribution: total mass is zero");
    for (auto& [c, v] : entries_) v /= s;
}

void MassDistribution::validate(double tol) const {
    for (const auto& [c, v] : entries_) {
        if (c.dim != d_) throw std::invalid_argument("MassDistribution: key dimension mismatch");
        if (v < 0) throw std::invalid_argument("MassDistribution: negative proportion");
    }
    if (std::abs(total() - 1.0) > tol)
        throw std::invalid_argument("MassDistribution: proportions do not sum to one");
}

}  // namespace tailcones
