// Linear endomorphisms of M_n(K): Frobenius maps u_{P,Q} and v_{P,Q}, pinch
// maps through full non-singular subspaces, GL-preservation testing, and the
// constructive classification of preservers.
#pragma once

#include <random>

#include "glstab/subspace.hpp"

namespace glstab {

// An endomorphism of M_n(K), stored as an n^2 x n^2 matrix acting on the
// column-major vec(M).
class MatEndo {
public:
    MatEndo(FieldSpec f, int n, Matrix op);
    static MatEndo identity(const FieldSpec& f, int n);
    static MatEndo from_images(const FieldSpec& f, int n, const std::vector<Matrix>& images);

    const FieldSpec& field() const { return field_; }
    int side() const { return n_; }
    const Matrix& op() const { return op_; }

    Matrix apply(const Matrix& m) const;
    MatEndo compose(const MatEndo& inner) const; // this after inner
    std::vector<Matrix> basis_images() const;    // f(E_k) in vec order
    int rank() const { return op_.rank(); }
    bool operator==(const MatEndo& o) const { return field_ == o.field_ && n_ == o.n_ && op_ == o.op_; }

private:
    FieldSpec field_;
    int n_;
    Matrix op_;
};

MatEndo build_u(const Matrix& p, const Matrix& q);  // M -> P M Q
MatEndo build_v(const Matrix& p, const Matrix& q);  // M -> P M^t Q
// f(M) = alpha(M X) (or alpha(M^t X) when twisted), alpha(x) = sum_k (A x)_k B_k
// over V's canonical basis.
MatEndo build_pinch(const MatrixSubspace& v, const Matrix& a, const Matrix& x, bool twisted);
MatEndo transpose_endo(const FieldSpec& f, int n);

struct PreservationVerdict {
    enum class Tag { ExhaustivePass, SampledPass, Refuted };
    Tag tag = Tag::SampledPass;
    std::uint64_t count = 0;       // invertibles tested
    std::optional<Matrix> witness; // Refuted: invertible M with f(M) singular
};
// |GL_n(F_q)| = prod_i (q^n - q^i)
mpz_class gl_order(std::uint32_t q, int n);
PreservationVerdict preserves_GL(const MatEndo& f, std::uint64_t budget = kDefaultBudget,
                                 std::uint64_t samples = 10000, std::uint64_t seed = 1);

struct PreserverClassification {
    enum class Tag { FrobeniusDirect, FrobeniusTwisted, PinchDirect, PinchTwisted, NotPreserver, Unverified };
    Tag tag;
    std::optional<Matrix> P, Q;            // Frobenius (P normalized)
    std::optional<Matrix> X;               // pinch: normalized line / hyperplane normal
    std::optional<Matrix> A;               // pinch: coordinate matrix of alpha
    std::optional<MatrixSubspace> V;       // pinch: image subspace
    std::optional<NonsingVerdict> vstatus; // pinch: full non-singularity verdict
    std::optional<bool> pinch_twisted;     // set for Unverified
    std::optional<Matrix> witness;         // NotPreserver
    std::optional<PreservationVerdict> preservation;
    std::string note;

    static const char* tag_name(Tag t);
};

PreserverClassification classify(const MatEndo& f, std::uint64_t budget = kDefaultBudget,
                                 std::uint64_t samples = 10000, std::uint64_t seed = 1);
// Rebuild the map a classification describes; BadInput for NotPreserver.
MatEndo reconstruct(const PreserverClassification& c);

// {M : f(M) in span(S)} via a joint linear system (works for singular f).
MatrixSubspace preimage_subspace(const MatEndo& f, const MatrixSubspace& s);

// The induced map M -> f(M) X must be onto K^n.
bool onto_column_audit(const MatEndo& f, const Matrix& x);
// dim span(GL_n) = n^2, with the explicit generator identities checked;
// exhaustive stacking is added over finite fields within budget.
bool span_GL_audit(const FieldSpec& f, int n, std::uint64_t budget = kDefaultBudget);

// Enumeration helpers shared with the harness.
std::vector<Matrix> all_matrices(const FieldSpec& f, int rows, int cols, std::uint64_t budget);
std::vector<Matrix> all_invertible(const FieldSpec& f, int n, std::uint64_t budget);
std::vector<Matrix> all_nonzero_vectors(const FieldSpec& f, int n);
std::vector<Matrix> all_normalized_lines(const FieldSpec& f, int n);
Matrix random_invertible(const FieldSpec& f, int n, std::mt19937_64& rng);

} // namespace glstab
