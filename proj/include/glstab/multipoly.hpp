// Sparse multivariate polynomials over an exact field, used to expand the
// generic determinant det(sum_i t_i B_i) of a matrix pencil and to verify
// sum-of-squares-power certificates coefficient by coefficient.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "glstab/matrix.hpp"

namespace glstab {

class MultiPoly {
public:
    MultiPoly(FieldSpec f, int nvars);
    static MultiPoly constant(const FieldSpec& f, int nvars, const Scalar& c);
    static MultiPoly variable(const FieldSpec& f, int nvars, int i);

    const FieldSpec& field() const { return field_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;

    void add_term(const std::vector<std::uint8_t>& exp, const Scalar& c);
    Scalar coefficient(const std::vector<std::uint8_t>& exp) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly pow(int k) const;
    bool operator==(const MultiPoly& o) const;

    Scalar eval(const std::vector<Scalar>& point) const;
    // Substitute a value for one variable (the variable stays at exponent 0).
    MultiPoly substitute(int var, const Scalar& value) const;
    // Degree in a single variable.
    int degree_in(int var) const;

    const std::map<std::vector<std::uint8_t>, Scalar>& terms() const { return terms_; }
    std::string str() const;

private:
    FieldSpec field_;
    int nvars_;
    std::map<std::vector<std::uint8_t>, Scalar> terms_; // exponent vector -> nonzero coeff
};

// Number of monomials of a homogeneous degree-n form in `dim` variables:
// C(dim + n - 1, n).
mpz_class pencil_monomial_bound(int n, int dim);

// det(sum_i t_i B_i) for square matrices B_i, expanded exactly via
// column-subset dynamic programming (Laplace expansion with memoization).
MultiPoly det_of_pencil(const std::vector<Matrix>& basis);

// (t_0^2 + ... + t_{nvars-1}^2)^k
MultiPoly sum_of_squares_power(const FieldSpec& f, int nvars, int k);

// A point in {0..grid_max}^nvars where p is nonzero, found by successive
// substitution; empty if p == 0. Works because deg_i(p) <= grid_max.
std::vector<Scalar> nonzero_point(const MultiPoly& p, int grid_max);

} // namespace glstab
