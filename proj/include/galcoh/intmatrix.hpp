#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace galcoh {

using Int = mpz_class;

// Dense integer matrix with arbitrary-precision entries, row-major.
// SNF coefficient growth on random 6x6 matrices already exceeds 64 bits,
// so fixed-width entries are not an option anywhere in this library.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntMatrix operator*(const Int& scalar) const;

    IntMatrix transpose() const;
    bool is_zero() const;

    std::vector<Int> apply(const std::vector<Int>& x) const;  // matrix * column vector
    IntMatrix column(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Int>& v);
    std::vector<Int> column_vec(std::size_t j) const;

    // Columns of `other` appended on the right.
    IntMatrix hconcat(const IntMatrix& other) const;
    // Rows of `other` appended below.
    IntMatrix vconcat(const IntMatrix& other) const;
    IntMatrix submatrix(std::size_t row0, std::size_t col0,
                        std::size_t nrows, std::size_t ncols) const;

    // Exact determinant (fraction-free Bareiss elimination).
    Int determinant() const;

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

// U * A * V = D with D diagonal, d_i >= 0, d_i | d_{i+1}, U and V unimodular.
struct SnfResult {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    std::vector<Int> diagonal() const;
};

SnfResult snf_decompose(const IntMatrix& a);

// Inverse of a unimodular matrix (throws if |det| != 1).
IntMatrix unimodular_inverse(const IntMatrix& u);

// Basis of the lattice { x : A x = 0 }, as matrix columns.
IntMatrix kernel_lattice(const IntMatrix& a);

// Generators of the lattice { x : A x in column-span(L) }, as matrix columns.
IntMatrix preimage_lattice(const IntMatrix& a, const IntMatrix& l);

// Basis of the lattice spanned by the columns of `span`.
IntMatrix lattice_basis(const IntMatrix& span);

// One integer solution of A x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, const std::vector<Int>& b);

// Factors A once and solves A x = b for many right-hand sides.
class IntSolver {
public:
    explicit IntSolver(const IntMatrix& a);
    std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    SnfResult snf_;
    std::size_t rows_, cols_;
};

}  // namespace galcoh
