#pragma once

#include "ansyz/rat.hpp"

#include <vector>

namespace ansyz {

// Dense exact-rational matrices, just big enough for the rank and span
// computations in the verification suites (dimensions stay well below 100).
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat& at(size_t r, size_t c) { return data_[r * cols_ + c]; }
    const Rat& at(size_t r, size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Rat>& row)
    {
        if (cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) throw invalid_parameter("row length mismatch");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    size_t rank() const
    {
        RatMatrix m = *this;
        size_t rk = 0;
        for (size_t col = 0; col < m.cols_ && rk < m.rows_; ++col) {
            size_t pivot = rk;
            while (pivot < m.rows_ && m.at(pivot, col) == 0) ++pivot;
            if (pivot == m.rows_) continue;
            if (pivot != rk)
                for (size_t c = 0; c < m.cols_; ++c) std::swap(m.at(pivot, c), m.at(rk, c));
            Rat inv = m.at(rk, col);
            for (size_t r = rk + 1; r < m.rows_; ++r) {
                if (m.at(r, col) == 0) continue;
                Rat f = m.at(r, col) / inv;
                for (size_t c = col; c < m.cols_; ++c) m.at(r, c) -= f * m.at(rk, c);
            }
            ++rk;
        }
        return rk;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> data_;
};

// True iff target lies in the row span of basis.
inline bool in_row_span(const RatMatrix& basis, const std::vector<Rat>& target)
{
    RatMatrix ext = basis;
    ext.append_row(target);
    return ext.rank() == basis.rank();
}

// dim span{ h^t (h-1)^i : t_lo <= t <= t_hi, 0 <= i <= m } inside the
// univariate polynomial ring, by exact rank. This is the single-column
// building block of the pole-filtered dimension tables.
inline size_t poly_shift_span_dim(long t_lo, long t_hi, int m)
{
    if (t_lo > t_hi) return 0;
    size_t window = size_t(t_hi - t_lo + 1);
    size_t maxdeg = window - 1 + size_t(m);
    RatMatrix rows(0, maxdeg + 1);
    for (size_t t = 0; t < window; ++t) {
        for (int i = 0; i <= m; ++i) {
            std::vector<Rat> row(maxdeg + 1, Rat(0));
            Int c = 1;
            for (int j = 0; j <= i; ++j) {
                Int coef = c;
                if ((i - j) % 2 == 1) coef = -coef;
                row[t + size_t(j)] += Rat(coef);
                c = c * (i - j) / (j + 1);
            }
            rows.append_row(row);
        }
    }
    return rows.rank();
}

} // namespace ansyz
