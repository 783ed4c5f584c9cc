// Dense exact matrices with rank/determinant/kernel machinery, the fixed
// column-major vectorization convention, Kronecker products, the commutation
// matrix and companion matrices.
#pragma once

#include <optional>
#include <vector>

#include "glstab/field.hpp"

namespace glstab {

// vec() stacks columns: basis index k in [0, n^2) corresponds to E_{i,j}
// with i = k mod n, j = k div n (0-based). This convention is fixed
// globally and stated in every serialized endomorphism.
inline constexpr const char* kVecConvention = "col-major";

struct Echelon;

class Matrix {
public:
    Matrix(FieldSpec f, int rows, int cols); // zero-filled
    static Matrix identity(const FieldSpec& f, int n);
    static Matrix from_ints(const FieldSpec& f,
                            const std::vector<std::vector<long>>& rows);
    // n x 1 column with a single 1 at position i
    static Matrix basis_vector(const FieldSpec& f, int n, int i);

    const FieldSpec& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& at(int i, int j);
    const Scalar& at(int i, int j) const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-() const;
    Matrix scaled(const Scalar& c) const;
    Matrix transpose() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;

    Scalar det() const; // NotSquare
    bool is_invertible() const { return is_square() && !det().is_zero(); }
    int rank() const;
    Matrix rref() const;
    Echelon echelon() const;
    Matrix inverse() const; // SingularMatrix

    // Canonical RREF-derived bases, each element an n x 1 column.
    std::vector<Matrix> kernel_basis() const;
    std::vector<Matrix> image_basis() const;

    std::optional<Matrix> try_solve(const Matrix& b) const; // particular solution
    Matrix solve(const Matrix& b) const;                    // NoSolution

    Matrix submatrix(int r0, int c0, int nrows, int ncols) const;
    Matrix column(int j) const;
    Matrix row(int i) const;
    // Stack vertically / horizontally.
    static Matrix vstack(const std::vector<Matrix>& blocks);
    static Matrix hstack(const std::vector<Matrix>& blocks);

private:
    void check_compatible(const Matrix& o, bool same_shape) const;
    FieldSpec field_;
    int rows_, cols_;
    std::vector<Scalar> a_; // row-major
};

struct Echelon {
    Matrix reduced;
    std::vector<int> pivots;
};

Matrix vec(const Matrix& m);              // column-major stacking, (rows*cols) x 1
Matrix unvec(const Matrix& v, int n);     // inverse for square targets
Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutation_matrix(const FieldSpec& f, int n); // K vec(M) = vec(M^t)
// Companion matrix with subdiagonal ones and the coefficient column last:
// for x^3 - 2 this is [[0,0,2],[1,0,0],[0,1,0]].
Matrix companion_matrix(const Polynomial& p); // DegreeZero
Polynomial minimal_polynomial(const Matrix& a);
// Evaluate p at a square matrix argument.
Matrix poly_eval_matrix(const Polynomial& p, const Matrix& a);

// First nonzero coordinate scaled to 1; ZeroVector on zero input.
Matrix normalize_first_nonzero(const Matrix& v);

} // namespace glstab
