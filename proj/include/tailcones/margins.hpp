#ifndef TAILCONES_MARGINS_HPP
#define TAILCONES_MARGINS_HPP

#include <span>
#include <string>

#include "tailcones/types.hpp"

namespace tailcones {

/// Rank-based transform of each column to standard Frechet margins.
/// Entry (i,j) becomes -1/log(r_ij/(n+1)) with r_ij the within-column rank
/// (1 = smallest, ties broken by original row order). Also reports whether
/// exact ties were present; ties distort ranks and should be surfaced.
SampleMatrix to_frechet(const SampleMatrix& raw, bool* had_ties = nullptr);

/// Marginal truncation at quantile p: entries at or below -1/log p are set to
/// zero, and rows that become all-zero are dropped.
TruncatedMatrix truncate(const SampleMatrix& x, double p);

/// Minimum over the coordinates indexed by C. C must be nonempty.
double min_projection(std::span<const double> row, const ConeId& c);

/// Maximum over the coordinates indexed by C; an empty C yields 0 so that the
/// complement of the full set needs no special casing.
double max_projection(std::span<const double> row, const ConeId& c);

/// CSV ingestion: comma-delimited numeric matrix, one observation per row,
/// optional single header row.
SampleMatrix read_csv(const std::string& path, bool header);
void write_csv(const std::string& path, const SampleMatrix& x);

}  // namespace tailcones

#endif
