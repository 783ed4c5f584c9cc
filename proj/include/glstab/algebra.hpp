// Structure-constant division algebras and the two-way bridge with full
// non-singular subspaces of M_n(K), plus certified presets.
#pragma once

#include "glstab/subspace.hpp"

namespace glstab {

// Bilinear product on K^n: (x * y)_k = sum_{i,j} c[i][j][k] x_i y_j. No unit
// or associativity is assumed.
struct DivisionAlgebraSpec {
    FieldSpec field;
    int n = 0;
    std::vector<Scalar> c; // n^3 entries, index (i*n + j)*n + k
    std::optional<NonSingularityCertificate> certificate;

    DivisionAlgebraSpec(FieldSpec f, int dim);
    const Scalar& at(int i, int j, int k) const;
    Scalar& at(int i, int j, int k);
    // coordinates of x*y
    Matrix product(const Matrix& x, const Matrix& y) const;
    bool operator==(const DivisionAlgebraSpec& o) const {
        return field == o.field && n == o.n && c == o.c;
    }
};

Matrix left_mult(const DivisionAlgebraSpec& alg, const Matrix& a);  // L a . y = a*y
Matrix right_mult(const DivisionAlgebraSpec& alg, const Matrix& b); // R b . x = x*b

struct DivisionVerdict {
    enum class Tag { Division, NotDivision, Unknown };
    Tag tag = Tag::Unknown;
    NonSingularityCertificate cert;    // Division
    std::optional<Matrix> witness_a;   // NotDivision: a != 0 with singular left_mult(a)
    std::optional<Matrix> witness_y;   // NotDivision: y != 0 with a*y = 0
    std::uint64_t samples_tested = 0;
};
DivisionVerdict is_division(const DivisionAlgebraSpec& alg,
                            std::uint64_t budget = kDefaultBudget,
                            std::uint64_t samples = 2000, std::uint64_t seed = 1);

// V = span{left_mult(e_1), ..., left_mult(e_n)}; the stored basis is the
// left-multiplication basis so the bridge roundtrips are exact.
MatrixSubspace to_subspace(const DivisionAlgebraSpec& alg, bool override_unverified = false);
// x*y = (sum_i x_i B_i) y over V's stored basis.
DivisionAlgebraSpec from_subspace(const MatrixSubspace& v);

DivisionAlgebraSpec preset_companion(const Polynomial& p);
DivisionAlgebraSpec preset_gaussian_pair(const FieldSpec& f);
DivisionAlgebraSpec preset_hamilton_quaternions();
DivisionAlgebraSpec preset_octonions(std::uint64_t monomial_budget = kMonomialCap);
// name in {companion, gaussian_pair, hamilton_quaternions, octonions};
// companion takes the polynomial argument.
DivisionAlgebraSpec preset(const std::string& name, const FieldSpec& f,
                           const std::optional<Polynomial>& poly = std::nullopt);

// The (sign, index) multiplication table of the quaternions / octonions in
// the basis e_0 = 1; octonions come from Cayley-Dickson doubling.
struct SignedBasisTable {
    int n = 0;
    std::vector<int> index; // n*n
    std::vector<int> sign;  // n*n, +1/-1
};
SignedBasisTable quaternion_table();
SignedBasisTable octonion_table();

} // namespace glstab
