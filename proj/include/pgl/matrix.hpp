#pragma once

#include <optional>
#include <vector>

#include "pgl/fq.hpp"

namespace pgl {

/// Dense row-major matrix over an FqField.  Value type; all operations pure.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldPtr field, int rows, int cols)
        : F_(std::move(field)), rows_(rows), cols_(cols),
          a_(static_cast<std::size_t>(rows) * cols, 0) {}

    static Matrix identity(FieldPtr field, int n);

    const FieldPtr& field() const { return F_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    FqElem& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    FqElem at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(FqElem c) const;
    Matrix transpose() const;
    FqElem trace() const;
    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    std::vector<FqElem> apply(const std::vector<FqElem>& v) const;  // M v
    std::vector<FqElem> apply_row(const std::vector<FqElem>& v) const;  // v M

    const std::vector<FqElem>& data() const { return a_; }
    std::vector<FqElem>& data() { return a_; }

private:
    FieldPtr F_;
    int rows_ = 0, cols_ = 0;
    std::vector<FqElem> a_;
};

struct RrefResult {
    Matrix r;
    int rank = 0;
    std::vector<int> pivots;
};

/// Reduced row-echelon form.  Idempotent: rref(rref(M)).r == rref(M).r.
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

/// Rows form a basis of the right nullspace {x : Mx = 0}.
Matrix kernel_basis(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

struct SolveResult {
    bool consistent = false;
    std::vector<FqElem> particular;  // one solution of Ax = b
    Matrix nullspace;                // rows span ker A
};

/// Solves Ax = b; inconsistency is a distinct outcome, not an error.
SolveResult solve_linear(const Matrix& a, const std::vector<FqElem>& b);

/// Basis of {X : X * acts1[i] = acts2[i] * X for all i}, X of shape
/// (n2 x n1); the space of module homomorphisms from (V1, acts1) to
/// (V2, acts2) with matrices acting on column vectors.
std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& acts1,
                                      const std::vector<Matrix>& acts2);

/// Echelonized spanning: returns the rref of the matrix whose rows are the
/// given vectors (zero rows dropped).
Matrix row_space(FieldPtr field, const std::vector<std::vector<FqElem>>& rows, int cols);

/// Incremental reduced row-echelon basis; rows stay mutually reduced so a
/// single elimination pass per insert is enough.
class EchelonBasis {
public:
    EchelonBasis(FieldPtr f, int n) : F_(std::move(f)), n_(n) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return n_; }

    /// Returns true when v was independent and got inserted.
    bool add(std::vector<FqElem> v);

    /// True when v lies in the current span.
    bool contains(const std::vector<FqElem>& v) const;

    /// Rows sorted by pivot column: the canonical rref of the span.
    Matrix to_matrix() const;

    const std::vector<std::vector<FqElem>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    FieldPtr F_;
    int n_;
    std::vector<std::vector<FqElem>> rows_;
    std::vector<int> pivots_;
};

}  // namespace pgl
