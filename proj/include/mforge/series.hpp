#pragma once

#include <algorithm>
#include <vector>

#include "mforge/common.hpp"
#include "mforge/fields.hpp"

namespace mforge::series {

/// Truncated power series over a coefficient field K: the element is known
/// modulo t^precision.  Arithmetic carries the minimum precision of its
/// operands; dividing by an element of valuation v costs v digits.
template <class K>
class Series {
  public:
    Series() = default;
    Series(std::vector<K> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) fail(errc::invalid_input, "precision must be >= 1");
    }

    /// The zero series at a given precision (needs a field exemplar for K=Fp).
    static Series zeros(int precision, const K& exemplar) {
        if (precision < 1) fail(errc::invalid_input, "precision must be >= 1");
        return Series(std::vector<K>(static_cast<size_t>(precision), exemplar - exemplar));
    }

    static Series monomial(const K& coeff, int power, int precision) {
        Series s = zeros(precision, coeff);
        if (power < precision) s.c_[static_cast<size_t>(power)] = coeff;
        return s;
    }

    int precision() const { return static_cast<int>(c_.size()); }
    const K& coeff(int k) const { return c_[static_cast<size_t>(k)]; }
    const std::vector<K>& coeffs() const { return c_; }
    K field_zero() const { return c_.front() - c_.front(); }

    Valuation valuation() const {
        for (int k = 0; k < precision(); ++k)
            if (!is_zero(c_[static_cast<size_t>(k)])) return Valuation::exact(k);
        return Valuation::at_least(precision());
    }

    bool is_zero_to_precision() const { return !valuation().is_exact; }

    /// Equality of the overlapping coefficient window.
    bool agrees_with(const Series& o) const {
        int n = std::min(precision(), o.precision());
        for (int k = 0; k < n; ++k)
            if (!(c_[static_cast<size_t>(k)] == o.c_[static_cast<size_t>(k)])) return false;
        return true;
    }

    Series truncated(int precision) const {
        if (precision < 1) fail(errc::insufficient_precision, "precision exhausted");
        std::vector<K> out(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), precision));
        while (static_cast<int>(out.size()) < precision) out.push_back(field_zero());
        return Series(std::move(out));
    }

    Series operator+(const Series& o) const { return zip(o, [](const K& a, const K& b) { return a + b; }); }
    Series operator-(const Series& o) const { return zip(o, [](const K& a, const K& b) { return a - b; }); }
    Series operator-() const {
        Series r = *this;
        for (K& x : r.c_) x = -x;
        return r;
    }

    Series operator*(const Series& o) const {
        int n = std::min(precision(), o.precision());
        std::vector<K> out(static_cast<size_t>(n), field_zero());
        for (int i = 0; i < n; ++i) {
            if (is_zero(c_[static_cast<size_t>(i)])) continue;
            for (int j = 0; i + j < n; ++j)
                out[static_cast<size_t>(i + j)] =
                    out[static_cast<size_t>(i + j)] + c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
        }
        return Series(std::move(out));
    }

    Series scaled(const K& a) const {
        Series r = *this;
        for (K& x : r.c_) x = a * x;
        return r;
    }

    /// Exact quotient by a divisor of valuation v <= our valuation; the
    /// result is known modulo t^(min precision - v).
    Series divided_by(const Series& d) const {
        Valuation dv = d.valuation();
        if (!dv.is_exact)
            fail(errc::insufficient_precision, "division by a series indistinguishable from 0");
        int v = dv.value;
        Valuation nv = valuation();
        if (nv.is_exact && nv.value < v)
            fail(errc::invalid_input, "dividend valuation below divisor valuation");
        int out_prec = std::min(precision(), d.precision()) - v;
        if (out_prec < 1) fail(errc::insufficient_precision, "precision exhausted in division");
        // Shift both by t^-v, then divide by the resulting unit via the
        // standard triangular recurrence.
        std::vector<K> num(static_cast<size_t>(out_prec), field_zero());
        for (int k = 0; k < out_prec; ++k)
            if (v + k < precision()) num[static_cast<size_t>(k)] = c_[static_cast<size_t>(v + k)];
        K lead = d.c_[static_cast<size_t>(v)];
        K lead_inv = lead.inverse();
        std::vector<K> out(static_cast<size_t>(out_prec), field_zero());
        for (int k = 0; k < out_prec; ++k) {
            K acc = num[static_cast<size_t>(k)];
            for (int j = 0; j < k; ++j)
                acc = acc - out[static_cast<size_t>(j)] * d.c_[static_cast<size_t>(v + k - j)];
            out[static_cast<size_t>(k)] = acc * lead_inv;
        }
        return Series(std::move(out));
    }

    bool operator==(const Series& o) const { return c_ == o.c_; }

  private:
    template <class F>
    Series zip(const Series& o, F&& f) const {
        int n = std::min(precision(), o.precision());
        std::vector<K> out;
        out.reserve(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
            out.push_back(f(c_[static_cast<size_t>(k)], o.c_[static_cast<size_t>(k)]));
        return Series(std::move(out));
    }

    std::vector<K> c_;
};

/// Rectangular matrix of truncated series.  Public constructors enforce the
/// uniform-precision invariant; elimination routines may relax it internally.
template <class K>
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols, const Series<K>& fill)
        : rows_(rows), cols_(cols), proto_(fill), e_(static_cast<size_t>(rows * cols), fill) {
        if (rows < 0 || cols < 0) fail(errc::invalid_input, "negative matrix dimensions");
    }

    static Mat from_rows(const std::vector<std::vector<Series<K>>>& rows) {
        if (rows.empty() || rows.front().empty()) fail(errc::invalid_input, "empty matrix");
        Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), rows[0][0]);
        int prec = rows[0][0].precision();
        for (int i = 0; i < m.rows_; ++i) {
            if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != m.cols_)
                fail(errc::invalid_input, "ragged matrix");
            for (int j = 0; j < m.cols_; ++j) {
                const Series<K>& s = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (s.precision() != prec) fail(errc::invalid_input, "mixed precisions in matrix");
                m.at(i, j) = s;
            }
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Series<K>& proto() const { return proto_; }

    Series<K>& at(int i, int j) { return e_[static_cast<size_t>(i * cols_ + j)]; }
    const Series<K>& at(int i, int j) const { return e_[static_cast<size_t>(i * cols_ + j)]; }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) fail(errc::invalid_input, "dimension mismatch");
        Series<K> zero = Series<K>::zeros(proto_.precision(), proto_.field_zero());
        Mat r(rows_, o.cols_, zero);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < o.cols_; ++j) {
                Series<K> acc = zero;
                for (int k = 0; k < cols_; ++k) acc = acc + at(i, k) * o.at(k, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    bool is_zero_to_precision() const {
        for (const Series<K>& s : e_)
            if (!s.is_zero_to_precision()) return false;
        return true;
    }

    Mat submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        Mat r(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()), proto_);
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j)
                r.at(static_cast<int>(i), static_cast<int>(j)) = at(row_idx[i], col_idx[j]);
        return r;
    }

  private:
    int rows_ = 0;
    int cols_ = 0;
    Series<K> proto_;
    std::vector<Series<K>> e_;
};

/// Determinant by cofactor expansion; division-free, exact at the ambient
/// precision.  Intended for the small blocks used in minor enumeration.
template <class K>
Series<K> laplace_det(const Mat<K>& m) {
    if (m.rows() != m.cols()) fail(errc::invalid_input, "determinant of non-square matrix");
    int n = m.rows();
    if (n == 1) return m.at(0, 0);
    Series<K> acc = Series<K>::zeros(m.at(0, 0).precision(), m.at(0, 0).field_zero());
    std::vector<int> cols(static_cast<size_t>(n - 1));
    for (int j = 0; j < n; ++j) {
        int k = 0;
        for (int c = 0; c < n; ++c)
            if (c != j) cols[static_cast<size_t>(k++)] = c;
        std::vector<int> rws(static_cast<size_t>(n - 1));
        for (int r = 1; r < n; ++r) rws[static_cast<size_t>(r - 1)] = r;
        Series<K> minor = laplace_det(m.submatrix(rws, cols));
        Series<K> term = m.at(0, j) * minor;
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace mforge::series
