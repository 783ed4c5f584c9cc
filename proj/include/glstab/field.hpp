// Exact scalar arithmetic over prime fields GF(p) and over the rationals,
// plus univariate polynomials and irreducibility testing at desk scale.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "glstab/errors.hpp"

namespace glstab {

enum class FieldKind { PrimeField, Rationals };

struct FieldSpec {
    FieldKind kind = FieldKind::Rationals;
    std::uint32_t modulus = 0; // set iff kind == PrimeField

    static FieldSpec gf(std::uint64_t p); // checks primality by trial division
    static FieldSpec rationals();
    static FieldSpec parse(std::string_view text); // "gf:p" or "q"

    bool is_prime() const { return kind == FieldKind::PrimeField; }
    bool is_rational() const { return kind == FieldKind::Rationals; }
    std::string str() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime_u64(std::uint64_t n);

// One exact field element, tagged with its field. Prime-field values are
// residues in [0, p); rationals are fully reduced with positive denominator.
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), q_(0) {}
    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar from_int(const FieldSpec& f, long v);
    static Scalar from_mpq(mpq_class q); // rationals
    static Scalar residue(const FieldSpec& f, std::uint64_t r);
    static Scalar parse(const FieldSpec& f, std::string_view text);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    std::uint64_t residue_value() const { return res_; } // prime fields only
    const mpq_class& rat() const { return q_; }          // rationals only

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // DivisionByZero
    Scalar operator-() const;
    Scalar inverse() const; // DivisionByZero
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // Total order within one field (residue order / rational order); used
    // only to make containers and canonical forms deterministic.
    bool operator<(const Scalar& o) const;

    std::string str() const;

private:
    void check_same_field(const Scalar& o) const;

    FieldSpec field_;
    std::uint64_t res_ = 0;
    mpq_class q_;
};

// Dense univariate polynomial, coefficients lowest-degree first, trailing
// zeros trimmed. The zero polynomial has an empty coefficient list.
class Polynomial {
public:
    Polynomial(FieldSpec f, std::vector<Scalar> coeffs);
    static Polynomial from_ints(const FieldSpec& f, const std::vector<long>& ascending);
    static Polynomial zero(const FieldSpec& f) { return Polynomial(f, {}); }

    const FieldSpec& field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    Scalar coeff(int k) const; // zero beyond degree
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    Scalar leading() const;

    Scalar eval(const Scalar& x) const;
    Polynomial monic() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    // Euclidean division by a nonzero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    bool operator==(const Polynomial& o) const;
    std::string str() const; // e.g. "x^3 - 2"

private:
    void trim();
    FieldSpec field_;
    std::vector<Scalar> coeffs_;
};

enum class IrredTag { Irreducible, Reducible, Unknown };

struct IrredVerdict {
    IrredTag tag;
    std::optional<Polynomial> factor; // witness for Reducible
};

// Certified irreducibility check. Prime fields: exhaustive trial division,
// degree <= 8 and modulus <= 13. Rationals: degree <= 3 via the rational
// root theorem, Unknown beyond that.
IrredVerdict poly_is_irreducible(const Polynomial& p);

// Sufficient irreducibility certificate over Q: p mod q irreducible over
// GF(q) for a small prime q not dividing the leading coefficient. Returns
// the prime used, or nullopt if no small prime certifies.
std::optional<std::uint32_t> irreducible_by_prime_reduction(const Polynomial& p);

} // namespace glstab
