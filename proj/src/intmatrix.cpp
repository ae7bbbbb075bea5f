#include "galcoh/intmatrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace galcoh {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged row list");
        std::size_t j = 0;
        for (long v : row) m.at(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += a * rhs.at(k, j);
        }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("shape mismatch");
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

IntMatrix IntMatrix::operator*(const Int& scalar) const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * scalar;
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.at(j, i) = at(i, j);
    return out;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * x[j];
    return out;
}

IntMatrix IntMatrix::column(std::size_t j) const {
    IntMatrix out(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) out.at(i, 0) = at(i, j);
    return out;
}

void IntMatrix::set_column(std::size_t j, const std::vector<Int>& v) {
    if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::vector<Int> IntMatrix::column_vec(std::size_t j) const {
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
    return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
    if (rows_ != other.rows_ && cols_ != 0 && other.cols_ != 0)
        throw std::invalid_argument("hconcat row mismatch");
    std::size_t r = std::max(rows_, other.rows_);
    IntMatrix out(r, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, cols_ + j) = other.at(i, j);
    return out;
}

IntMatrix IntMatrix::vconcat(const IntMatrix& other) const {
    if (cols_ != other.cols_ && rows_ != 0 && other.rows_ != 0)
        throw std::invalid_argument("vconcat column mismatch");
    std::size_t c = std::max(cols_, other.cols_);
    IntMatrix out(rows_ + other.rows_, c);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) out.at(rows_ + i, j) = other.at(i, j);
    return out;
}

IntMatrix IntMatrix::submatrix(std::size_t row0, std::size_t col0,
                               std::size_t nrows, std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_)
        throw std::invalid_argument("submatrix out of range");
    IntMatrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            out.at(i, j) = at(row0 + i, col0 + j);
    return out;
}

Int IntMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_divexact(m.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << '[';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << at(i, j).get_str();
        }
        os << "]\n";
    }
    return os.str();
}

std::vector<Int> SnfResult::diagonal() const {
    std::size_t k = std::min(d.rows(), d.cols());
    std::vector<Int> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

struct SnfWork {
    IntMatrix d, u, v;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < d.cols(); ++j) std::swap(d.at(a, j), d.at(b, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(a, j), u.at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < d.rows(); ++i) std::swap(d.at(i, a), d.at(i, b));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, a), v.at(i, b));
    }
    void add_row(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(dst, j) += f * d.at(src, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(dst, j) += f * u.at(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const Int& f) {
        if (f == 0) return;
        for (std::size_t i = 0; i < d.rows(); ++i) d.at(i, dst) += f * d.at(i, src);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, dst) += f * v.at(i, src);
    }
    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < d.cols(); ++j) d.at(a, j) = -d.at(a, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(a, j) = -u.at(a, j);
    }

    // Smallest nonzero |entry| in the trailing block starting at (s, s).
    bool locate_min(std::size_t s, std::size_t& bi, std::size_t& bj) const {
        bool found = false;
        Int best;
        for (std::size_t i = s; i < d.rows(); ++i)
            for (std::size_t j = s; j < d.cols(); ++j) {
                if (d.at(i, j) == 0) continue;
                Int a = abs(d.at(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        return found;
    }

    bool pivot_clear(std::size_t s) {
        bool clean = true;
        for (std::size_t i = s + 1; i < d.rows(); ++i)
            if (d.at(i, s) != 0) { clean = false; break; }
        if (clean)
            for (std::size_t j = s + 1; j < d.cols(); ++j)
                if (d.at(s, j) != 0) { clean = false; break; }
        return clean;
    }
};

}  // namespace

SnfResult snf_decompose(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfWork w{a, IntMatrix::identity(m), IntMatrix::identity(n)};
    const std::size_t nmin = std::min(m, n);

    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t bi = s, bj = s;
        if (!w.locate_min(s, bi, bj)) break;  // trailing block zero
        w.swap_rows(s, bi);
        w.swap_cols(s, bj);

        for (;;) {
            // Eliminate below/right of the pivot, re-pivoting on the minimal
            // entry each round to limit coefficient growth.
            bool reduced_any = false;
            for (std::size_t i = s + 1; i < m; ++i) {
                if (w.d.at(i, s) == 0) continue;
                Int q = w.d.at(i, s) / w.d.at(s, s);
                w.add_row(i, s, -q);
                if (w.d.at(i, s) != 0) reduced_any = true;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (w.d.at(s, j) == 0) continue;
                Int q = w.d.at(s, j) / w.d.at(s, s);
                w.add_col(j, s, -q);
                if (w.d.at(s, j) != 0) reduced_any = true;
            }
            if (!w.pivot_clear(s) || reduced_any) {
                w.locate_min(s, bi, bj);
                w.swap_rows(s, bi);
                w.swap_cols(s, bj);
                continue;
            }
            // Pivot is lone; enforce divisibility into the trailing block.
            bool divides_all = true;
            std::size_t ri = 0, rj = 0;
            for (std::size_t i = s + 1; i < m && divides_all; ++i)
                for (std::size_t j = s + 1; j < n; ++j)
                    if (w.d.at(i, j) % w.d.at(s, s) != 0) {
                        divides_all = false;
                        ri = i;
                        rj = j;
                        break;
                    }
            if (divides_all) break;
            w.add_row(s, ri, 1);
            (void)rj;
        }
        if (w.d.at(s, s) < 0) w.negate_row(s);
    }
    return SnfResult{std::move(w.u), std::move(w.d), std::move(w.v)};
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("inverse of non-square matrix");
    SnfResult s = snf_decompose(u);
    for (std::size_t i = 0; i < u.rows(); ++i)
        if (s.d.at(i, i) != 1) throw std::invalid_argument("matrix is not unimodular");
    // U' u V' = I  =>  u^{-1} = V' U'
    return s.v * s.u;
}

IntMatrix kernel_lattice(const IntMatrix& a) {
    SnfResult s = snf_decompose(a);
    const std::size_t n = a.cols();
    std::vector<std::size_t> zero_cols;
    for (std::size_t j = 0; j < n; ++j) {
        bool zero = j >= a.rows() || s.d.at(j, j) == 0;
        if (zero) zero_cols.push_back(j);
    }
    IntMatrix out(n, zero_cols.size());
    for (std::size_t k = 0; k < zero_cols.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            out.at(i, k) = s.v.at(i, zero_cols[k]);
    return out;
}

IntMatrix preimage_lattice(const IntMatrix& a, const IntMatrix& l) {
    if (l.rows() != a.rows() && l.cols() != 0)
        throw std::invalid_argument("preimage lattice shape mismatch");
    IntMatrix combined = a.hconcat(l);
    IntMatrix ker = kernel_lattice(combined);
    return ker.submatrix(0, 0, a.cols(), ker.cols());
}

IntMatrix lattice_basis(const IntMatrix& span) {
    SnfResult s = snf_decompose(span);
    IntMatrix uinv = unimodular_inverse(s.u);
    std::size_t nmin = std::min(span.rows(), span.cols());
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < nmin; ++i)
        if (s.d.at(i, i) != 0) nonzero.push_back(i);
    IntMatrix out(span.rows(), nonzero.size());
    for (std::size_t k = 0; k < nonzero.size(); ++k)
        for (std::size_t i = 0; i < span.rows(); ++i)
            out.at(i, k) = uinv.at(i, nonzero[k]) * s.d.at(nonzero[k], nonzero[k]);
    return out;
}

namespace {

std::optional<std::vector<Int>> solve_from_snf(const SnfResult& s, std::size_t rows,
                                               std::size_t cols, const std::vector<Int>& b) {
    if (b.size() != rows) throw std::invalid_argument("rhs length mismatch");
    std::vector<Int> c = s.u.apply(b);
    std::vector<Int> y(cols, 0);
    std::size_t nmin = std::min(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Int di = i < nmin ? s.d.at(i, i) : Int(0);
        if (di == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % di != 0) return std::nullopt;
            if (i < cols) y[i] = c[i] / di;
        }
    }
    return s.v.apply(y);
}

}  // namespace

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b) {
    return solve_from_snf(snf_decompose(a), a.rows(), a.cols(), b);
}

IntSolver::IntSolver(const IntMatrix& a)
    : snf_(snf_decompose(a)), rows_(a.rows()), cols_(a.cols()) {}

std::optional<std::vector<Int>> IntSolver::solve(const std::vector<Int>& b) const {
    return solve_from_snf(snf_, rows_, cols_, b);
}

}  // namespace galcoh
