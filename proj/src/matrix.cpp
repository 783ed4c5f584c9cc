#include "glstab/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace glstab {

Matrix::Matrix(FieldSpec f, int rows, int cols)
    : field_(f), rows_(rows), cols_(cols),
      a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Scalar::zero(f)) {
    if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
}

Matrix Matrix::identity(const FieldSpec& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::from_ints(const FieldSpec& f, const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw DimensionMismatch("ragged row list");
        for (int j = 0; j < c; ++j)
            m.at(i, j) = Scalar::from_int(f, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
}

Matrix Matrix::basis_vector(const FieldSpec& f, int n, int i) {
    Matrix v(f, n, 1);
    v.at(i, 0) = Scalar::one(f);
    return v;
}

Scalar& Matrix::at(int i, int j) {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
}

const Scalar& Matrix::at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)];
}

void Matrix::check_compatible(const Matrix& o, bool same_shape) const {
    if (field_ != o.field_) throw FieldMismatch("matrix fields differ");
    if (same_shape && (rows_ != o.rows_ || cols_ != o.cols_))
        throw DimensionMismatch("matrix shapes differ");
}

Matrix Matrix::operator+(const Matrix& o) const {
    check_compatible(o, true);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
    check_compatible(o, true);
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
    check_compatible(o, false);
    if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

Matrix Matrix::transpose() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool Matrix::operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace {

// Fraction-free Bareiss determinant of an integer matrix.
mpz_class bareiss_det(std::vector<mpz_class> m, int n) {
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[idx(i, k)] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m[idx(piv, j)], m[idx(k, j)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = m[idx(i, j)] * m[idx(k, k)] - m[idx(i, k)] * m[idx(k, j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[idx(i, j)] = t;
            }
            m[idx(i, k)] = 0;
        }
        prev = m[idx(k, k)];
    }
    return sign > 0 ? m[idx(n - 1, n - 1)] : mpz_class(-m[idx(n - 1, n - 1)]);
}

} // namespace

Scalar Matrix::det() const {
    if (!is_square()) throw NotSquare("determinant of a non-square matrix");
    int n = rows_;
    if (n == 0) return Scalar::one(field_);
    if (field_.is_rational()) {
        // Clear denominators row by row, then run Bareiss on the integer matrix.
        std::vector<mpz_class> im(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        mpq_class scale = 1;
        for (int i = 0; i < n; ++i) {
            mpz_class l = 1;
            for (int j = 0; j < n; ++j) l = lcm(l, at(i, j).rat().get_den());
            scale *= l;
            for (int j = 0; j < n; ++j) {
                mpq_class v = at(i, j).rat() * l;
                im[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = v.get_num();
            }
        }
        mpq_class d(bareiss_det(std::move(im), n));
        d /= scale;
        d.canonicalize();
        return Scalar::from_mpq(d);
    }
    // Gaussian elimination over GF(p)
    std::uint64_t p = field_.modulus;
    std::vector<std::uint64_t> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i * n + j)] = at(i, j).residue_value();
    std::uint64_t detv = 1;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m[static_cast<std::size_t>(i * n + k)] != 0) { piv = i; break; }
        if (piv < 0) return Scalar::zero(field_);
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<std::size_t>(piv * n + j)], m[static_cast<std::size_t>(k * n + j)]);
            detv = (p - detv) % p;
        }
        std::uint64_t pivval = m[static_cast<std::size_t>(k * n + k)];
        detv = detv * pivval % p;
        std::uint64_t inv = Scalar::residue(field_, pivval).inverse().residue_value();
        for (int i = k + 1; i < n; ++i) {
            std::uint64_t f = m[static_cast<std::size_t>(i * n + k)] * inv % p;
            if (f == 0) continue;
            for (int j = k; j < n; ++j) {
                std::uint64_t sub = f * m[static_cast<std::size_t>(k * n + j)] % p;
                std::uint64_t& cell = m[static_cast<std::size_t>(i * n + j)];
                cell = (cell + p - sub) % p;
            }
        }
    }
    return Scalar::residue(field_, detv);
}

Echelon Matrix::echelon() const {
    Matrix m = *this;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int piv = -1;
        for (int i = r; i < rows_; ++i)
            if (!m.at(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (int j = c; j < cols_; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < rows_; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (int j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

Matrix Matrix::rref() const { return echelon().reduced; }

int Matrix::rank() const { return static_cast<int>(echelon().pivots.size()); }

Matrix Matrix::inverse() const {
    if (!is_square()) throw NotSquare("inverse of a non-square matrix");
    int n = rows_;
    Matrix aug(field_, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = Scalar::one(field_);
    }
    Echelon e = aug.echelon();
    if (static_cast<int>(e.pivots.size()) < n || e.pivots[static_cast<std::size_t>(n - 1)] >= n)
        throw SingularMatrix("matrix is singular");
    return e.reduced.submatrix(0, n, n, n);
}

std::vector<Matrix> Matrix::kernel_basis() const {
    Echelon e = this->echelon();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
    for (int c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Matrix> basis;
    for (int fc = 0; fc < cols_; ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        Matrix v(field_, cols_, 1);
        v.at(fc, 0) = Scalar::one(field_);
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            int pc = e.pivots[r];
            v.at(pc, 0) = -e.reduced.at(static_cast<int>(r), fc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Matrix> Matrix::image_basis() const {
    // canonical basis of the column space: RREF the transpose
    Echelon e = transpose().echelon();
    std::vector<Matrix> basis;
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        basis.push_back(e.reduced.row(static_cast<int>(r)).transpose());
    return basis;
}

std::optional<Matrix> Matrix::try_solve(const Matrix& b) const {
    check_compatible(b, false);
    if (b.rows() != rows_) throw DimensionMismatch("solve: right-hand side height mismatch");
    Matrix aug = hstack({*this, b});
    Echelon e = aug.echelon();
    for (int c : e.pivots)
        if (c >= cols_) return std::nullopt; // pivot in the RHS block: inconsistent
    Matrix x(field_, cols_, b.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (int j = 0; j < b.cols(); ++j)
            x.at(e.pivots[r], j) = e.reduced.at(static_cast<int>(r), cols_ + j);
    return x;
}

Matrix Matrix::solve(const Matrix& b) const {
    auto x = try_solve(b);
    if (!x) throw NoSolution("inconsistent linear system");
    return *x;
}

Matrix Matrix::submatrix(int r0, int c0, int nrows, int ncols) const {
    if (r0 < 0 || c0 < 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
        throw DimensionMismatch("submatrix out of range");
    Matrix m(field_, nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        for (int j = 0; j < ncols; ++j) m.at(i, j) = at(r0 + i, c0 + j);
    return m;
}

Matrix Matrix::column(int j) const { return submatrix(0, j, rows_, 1); }
Matrix Matrix::row(int i) const { return submatrix(i, 0, 1, cols_); }

Matrix Matrix::vstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw DimensionMismatch("vstack of nothing");
    int cols = blocks[0].cols();
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw DimensionMismatch("vstack width mismatch");
        rows += b.rows();
    }
    Matrix m(blocks[0].field(), rows, cols);
    int r = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) m.at(r + i, j) = b.at(i, j);
        r += b.rows();
    }
    return m;
}

Matrix Matrix::hstack(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) throw DimensionMismatch("hstack of nothing");
    int rows = blocks[0].rows();
    int cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw DimensionMismatch("hstack height mismatch");
        cols += b.cols();
    }
    Matrix m(blocks[0].field(), rows, cols);
    int c = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < b.cols(); ++j) m.at(i, c + j) = b.at(i, j);
        c += b.cols();
    }
    return m;
}

// ----------------------------------------------- vec / kron / companions

Matrix vec(const Matrix& m) {
    Matrix v(m.field(), m.rows() * m.cols(), 1);
    int k = 0;
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) v.at(k++, 0) = m.at(i, j);
    return v;
}

Matrix unvec(const Matrix& v, int n) {
    if (v.cols() != 1 || v.rows() != n * n)
        throw DimensionMismatch("unvec expects an n^2 x 1 column");
    Matrix m(v.field(), n, n);
    for (int k = 0; k < n * n; ++k) m.at(k % n, k / n) = v.at(k, 0);
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldMismatch("kron field mismatch");
    Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Scalar& aij = a.at(i, j);
            if (aij.is_zero()) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return r;
}

Matrix commutation_matrix(const FieldSpec& f, int n) {
    Matrix k(f, n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            k.at(j * n + i, i * n + j) = Scalar::one(f); // vec index of (i,j) is j*n+i
    return k;
}

Matrix companion_matrix(const Polynomial& p) {
    if (p.degree() < 1) throw DegreeZero("companion matrix needs degree >= 1");
    Polynomial m = p.monic();
    int n = m.degree();
    Matrix a(p.field(), n, n);
    for (int i = 1; i < n; ++i) a.at(i, i - 1) = Scalar::one(p.field());
    for (int i = 0; i < n; ++i) a.at(i, n - 1) = -m.coeff(i);
    return a;
}

Polynomial minimal_polynomial(const Matrix& a) {
    if (!a.is_square()) throw NotSquare("minimal polynomial of a non-square matrix");
    const FieldSpec& f = a.field();
    int n = a.rows();
    // Stack vec(A^0), vec(A^1), ... as columns until dependent.
    std::vector<Matrix> powers{Matrix::identity(f, n)};
    for (int d = 1; d <= n; ++d) powers.push_back(powers.back() * a);
    for (int d = 1; d <= n; ++d) {
        std::vector<Matrix> cols;
        for (int k = 0; k < d; ++k) cols.push_back(vec(powers[static_cast<std::size_t>(k)]));
        Matrix lhs = Matrix::hstack(cols);
        auto sol = lhs.try_solve(vec(powers[static_cast<std::size_t>(d)]));
        if (sol) {
            // A^d = sum c_k A^k  =>  x^d - sum c_k x^k
            std::vector<Scalar> cs;
            for (int k = 0; k < d; ++k) cs.push_back(-sol->at(k, 0));
            cs.push_back(Scalar::one(f));
            return Polynomial(f, std::move(cs));
        }
    }
    throw InternalAnomaly("minimal polynomial not found below dimension bound");
}

Matrix poly_eval_matrix(const Polynomial& p, const Matrix& a) {
    if (!a.is_square()) throw NotSquare("polynomial evaluation needs a square matrix");
    Matrix acc(a.field(), a.rows(), a.cols());
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * a;
        Scalar c = p.coeff(k);
        for (int i = 0; i < a.rows(); ++i) acc.at(i, i) += c;
    }
    return acc;
}

Matrix normalize_first_nonzero(const Matrix& v) {
    for (int i = 0; i < v.rows(); ++i)
        for (int j = 0; j < v.cols(); ++j)
            if (!v.at(i, j).is_zero()) return v.scaled(v.at(i, j).inverse());
    throw ZeroVector("cannot normalize the zero vector");
}

} // namespace glstab
