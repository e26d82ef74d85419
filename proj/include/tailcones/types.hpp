#ifndef TAILCONES_TYPES_HPP
#define TAILCONES_TYPES_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailcones {

// Identifies a sub-cone of [0,inf]^d by the set of coordinates that are
// positive there. Bit i (0-based) set <=> coordinate i+1 belongs to the set.
struct ConeId {
    std::uint32_t bits = 0;
    int dim = 0;

    ConeId() = default;
    ConeId(std::uint32_t b, int d);

    int size() const;
    bool contains(int i) const { return (bits >> i) & 1u; }
    bool is_subset_of(const ConeId& other) const;
    ConeId complement() const;

    // Canonical label: sorted 1-based indices joined by commas, e.g. "1,3,4".
    std::string label() const;
    static ConeId parse(const std::string& label, int dim);

    // Full set {1,...,d}.
    static ConeId full(int dim);
    static ConeId singleton(int i, int dim);

    friend bool operator==(const ConeId&, const ConeId&) = default;
    friend auto operator<=>(const ConeId&, const ConeId&) = default;
};

// n x d matrix of positive reals on the standard Frechet scale, row-major.
class SampleMatrix {
  public:
    SampleMatrix() = default;
    SampleMatrix(std::size_t n, int d);
    SampleMatrix(std::size_t n, int d, std::vector<double> values);

    double& operator()(std::size_t i, int j) { return values_[i * d_ + j]; }
    double operator()(std::size_t i, int j) const { return values_[i * d_ + j]; }

    std::size_t rows() const { return n_; }
    int cols() const { return d_; }
    const std::vector<double>& data() const { return values_; }
    std::vector<double>& data() { return values_; }

    // Entry validation per the carrier contract: positive, finite, d>=2, n>=1.
    void validate() const;

  private:
    std::size_t n_ = 0;
    int d_ = 0;
    std::vector<double> values_;
};

// Result of the marginal truncation: entries are 0 or strictly above threshold,
// all-zero rows removed.
struct TruncatedMatrix {
    SampleMatrix values;   // may have fewer rows than the input
    double threshold = 0;  // -1/log p
    double p = 0;          // truncation quantile
};

// Map cone -> proportion of extremal mass. Both ground truth and estimates.
class MassDistribution {
  public:
    MassDistribution() = default;
    explicit MassDistribution(int d) : d_(d) {}

    int dim() const { return d_; }
    double mass(const ConeId& c) const;
    void set(const ConeId& c, double value);
    void add(const ConeId& c, double value);
    const std::map<ConeId, double>& entries() const { return entries_; }

    double total() const;
    // Scales entries to sum to one. Throws if the total is zero.
    void normalize();
    // Checks non-negativity, key validity and sum-to-one within tol.
    void validate(double tol = 1e-9) const;

  private:
    int d_ = 0;
    std::map<ConeId, double> entries_;
};

// Error taxonomy shared across modules.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoExceedances : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyModel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AllMassNegligible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tailcones

#endif
