#include "tailcones/margins.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tailcones {

SampleMatrix to_frechet(const SampleMatrix& raw, bool* had_ties) {
    const std::size_t n = raw.rows();
    const int d = raw.cols();
    if (n < 2) throw DataError("to_frechet: need at least 2 rows");
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j)
            if (!std::isfinite(raw(i, j)))
                throw DataError("to_frechet: non-finite entry at row " + std::to_string(i + 1) +
                                ", column " + std::to_string(j + 1));

    bool ties = false;
    SampleMatrix out(n, d);
    std::vector<std::size_t> order(n);
    for (int j = 0; j < d; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return raw(a, j) < raw(b, j); });
        for (std::size_t k = 0; k + 1 < n; ++k)
            if (raw(order[k], j) == raw(order[k + 1], j)) ties = true;
        for (std::size_t k = 0; k < n; ++k) {
            double u = static_cast<double>(k + 1) / static_cast<double>(n + 1);
            out(order[k], j) = -1.0 / std::log(u);
        }
    }
    if (had_ties) *had_ties = ties;
    return out;
}

TruncatedMatrix truncate(const SampleMatrix& x, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("truncate: p must lie in (0,1)");
    const double threshold = -1.0 / std::log(p);
    const std::size_t n = x.rows();
    const int d = x.cols();

    std::vector<double> kept;
    kept.reserve(x.data().size());
    std::size_t rows_kept = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool any = false;
        for (int j = 0; j < d; ++j)
            if (x(i, j) > threshold) { any = true; break; }
        if (!any) continue;
        for (int j = 0; j < d; ++j)
            kept.push_back(x(i, j) > threshold ? x(i, j) : 0.0);
        ++rows_kept;
    }
    TruncatedMatrix t;
    t.values = SampleMatrix(rows_kept, d, std::move(kept));
    t.threshold = threshold;
    t.p = p;
    return t;
}

double min_projection(std::span<const double> row, const ConeId& c) {
    if (c.bits == 0) throw std::invalid_argument("min_projection: empty coordinate set");
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < c.dim; ++i)
        if (c.contains(i)) m = std::min(m, row[i]);
    return m;
}

double max_projection(std::span<const double> row, const ConeId& c) {
    double m = 0.0;
    for (int i = 0; i < c.dim; ++i)
        if (c.contains(i)) m = std::max(m, row[i]);
    return m;
}

SampleMatrix read_csv(const std::string& path, bool header) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::vector<double> values;
    std::string line;
    int d = -1;
    std::size_t n = 0, line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (header && line_no == 1) continue;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int cols = 0;
        while (std::getline(row, cell, ',')) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw DataError(path + ": non-numeric value '" + cell + "' on line " +
                                std::to_string(line_no));
            }
            while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\r')) ++pos;
            if (pos != cell.size())
                throw DataError(path + ": non-numeric value '" + cell + "' on line " +
                                std::to_string(line_no));
            values.push_back(v);
            ++cols;
        }
        if (d < 0) d = cols;
        else if (cols != d)
            throw DataError(path + ": inconsistent column count on line " + std::to_string(line_no));
        ++n;
    }
    if (n == 0 || d < 1) throw DataError(path + ": no data rows");
    return SampleMatrix(n, d, std::move(values));
}

void write_csv(const std::string& path, const SampleMatrix& x) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    out.precision(17);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            if (j) out << ',';
            out << x(i, j);
        }
        out << '\n';
    }
}

}  // namespace tailcones
