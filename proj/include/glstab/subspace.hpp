// Linear subspaces of M_n(K): canonical bases, singularity and full
// non-singularity testing, the canonical maximal singular subspaces L_D and
// L^H, the Dieudonne classifier and the lattice audit.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "glstab/multipoly.hpp"

namespace glstab {

inline constexpr std::uint64_t kDefaultBudget = 1ull << 24;
inline constexpr std::uint64_t kMonomialCap = 1000000;

struct NonSingularityCertificate {
    enum class Kind { FiniteFieldExhaustive, IrreduciblePolynomial, PositiveDefiniteForm, None };
    Kind kind = Kind::None;
    std::uint64_t count = 0;          // FiniteFieldExhaustive: nonzero elements scanned
    std::optional<Polynomial> poly;   // IrreduciblePolynomial
    int power = 0;                    // PositiveDefiniteForm: det pencil == (sum t_i^2)^power

    static NonSingularityCertificate exhaustive(std::uint64_t n);
    static NonSingularityCertificate irreducible(Polynomial p);
    static NonSingularityCertificate positive_definite(int power);
    static NonSingularityCertificate none() { return {}; }
    std::string str() const;
};

class MatrixSubspace {
public:
    // Canonicalizes at construction: the canonical basis is the RREF of the
    // stacked vec(basis) rows; the stored basis keeps the caller's matrices.
    MatrixSubspace(FieldSpec f, int n, std::vector<Matrix> basis);

    const FieldSpec& field() const { return field_; }
    int side() const { return n_; }
    int dim() const { return static_cast<int>(canonical_.size()); }
    const std::vector<Matrix>& basis() const { return stored_; }
    const std::vector<Matrix>& canonical_basis() const { return canonical_; }

    bool member(const Matrix& m) const;
    // Coordinates in the canonical basis, when member.
    std::optional<std::vector<Scalar>> coordinates(const Matrix& m) const;
    bool same_subspace(const MatrixSubspace& o) const;
    // Element from coefficients over the canonical basis.
    Matrix combine(const std::vector<Scalar>& coeffs) const;

    std::optional<NonSingularityCertificate> certificate; // attached, optional

private:
    FieldSpec field_;
    int n_;
    std::vector<Matrix> stored_;
    std::vector<Matrix> canonical_;
    Matrix canon_rows_; // dim x n^2, RREF
    std::vector<int> pivots_;
};

MatrixSubspace subspace_sum(const MatrixSubspace& v, const MatrixSubspace& w);
MatrixSubspace subspace_intersect(const MatrixSubspace& v, const MatrixSubspace& w);

// L_D: matrices killing X (kernel-type); L^H: matrices whose columns lie in
// the hyperplane with normal Y (image-type). Both have dim n^2 - n.
MatrixSubspace make_LD(const Matrix& x); // ZeroVector
MatrixSubspace make_LH(const Matrix& y); // ZeroVector

struct SingularVerdict {
    bool singular = false;
    std::optional<Matrix> witness; // invertible element when !singular
};
SingularVerdict is_singular_subspace(const MatrixSubspace& v,
                                     std::uint64_t budget = kDefaultBudget);

enum class NonsingTag { Verified, Refuted, Unknown };
struct NonsingVerdict {
    NonsingTag tag = NonsingTag::Unknown;
    NonSingularityCertificate cert;     // Verified
    std::optional<Matrix> witness;      // Refuted: singular nonzero element (absent when dim != n)
    std::uint64_t samples_tested = 0;   // Unknown
};
NonsingVerdict is_full_nonsingular(const MatrixSubspace& v,
                                   std::uint64_t budget = kDefaultBudget,
                                   std::uint64_t samples = 2000,
                                   std::uint64_t seed = 1);

// Re-derive / validate a certificate against the subspace it claims to
// cover. Used both for attached certificates and for certificate discovery.
bool verify_certificate(const MatrixSubspace& v, const NonSingularityCertificate& cert);

struct MaximalSingularType {
    enum class Tag { KernelType, ImageType };
    Tag tag;
    Matrix vector; // X (kernel) or the hyperplane normal Y (image), normalized
};
// Requires dim V = n^2 - n over a singular V; NotMaximalSingular if neither
// or both branches fire (precondition violated).
MaximalSingularType classify_maximal_singular(const MatrixSubspace& v);

// --- subspace lattice enumeration over GF(q) ---------------------------

mpz_class gaussian_binomial(int m, int k, std::uint32_t q);
// Visit every k-dimensional subspace of GF(q)^m via RREF enumeration; the
// callback receives the RREF basis rows (k x m).
void for_each_subspace(const FieldSpec& f, int m, int k,
                       const std::function<void(const Matrix&)>& fn);

struct DieudonneReport {
    std::string field;
    int n = 0;
    std::uint64_t seed = 0;
    bool full_enumeration = true;
    std::uint64_t subspaces_seen = 0;
    std::map<int, std::uint64_t> total_per_dim;
    std::map<int, std::uint64_t> singular_per_dim;
    int max_singular_dim = 0;
    std::uint64_t kernel_type = 0;
    std::uint64_t image_type = 0;
    std::vector<std::string> anomalies;
    double wall_time = 0;
};
// Full lattice scan when the subspace count is <= 1e5, sampled otherwise.
DieudonneReport dieudonne_audit(const FieldSpec& f, int n,
                                std::uint64_t budget = kDefaultBudget,
                                std::uint64_t samples = 2000,
                                std::uint64_t seed = 1);

} // namespace glstab
