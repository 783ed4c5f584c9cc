#include "glstab/subspace.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

namespace glstab {

NonSingularityCertificate NonSingularityCertificate::exhaustive(std::uint64_t n) {
    NonSingularityCertificate c;
    c.kind = Kind::FiniteFieldExhaustive;
    c.count = n;
    return c;
}

NonSingularityCertificate NonSingularityCertificate::irreducible(Polynomial p) {
    NonSingularityCertificate c;
    c.kind = Kind::IrreduciblePolynomial;
    c.poly = std::move(p);
    return c;
}

NonSingularityCertificate NonSingularityCertificate::positive_definite(int power) {
    NonSingularityCertificate c;
    c.kind = Kind::PositiveDefiniteForm;
    c.power = power;
    return c;
}

std::string NonSingularityCertificate::str() const {
    switch (kind) {
        case Kind::FiniteFieldExhaustive:
            return "finite-field-exhaustive(" + std::to_string(count) + ")";
        case Kind::IrreduciblePolynomial:
            return "irreducible-polynomial(" + poly->str() + ")";
        case Kind::PositiveDefiniteForm:
            return "positive-definite-form(power " + std::to_string(power) + ")";
        case Kind::None:
            return "none";
    }
    return "none";
}

// --------------------------------------------------------- MatrixSubspace

MatrixSubspace::MatrixSubspace(FieldSpec f, int n, std::vector<Matrix> basis)
    : field_(f), n_(n), stored_(std::move(basis)), canon_rows_(f, 0, n * n) {
    for (const auto& b : stored_) {
        if (b.field() != f) throw FieldMismatch("subspace basis field mismatch");
        if (b.rows() != n || b.cols() != n) throw DimensionMismatch("subspace basis must be n x n");
    }
    if (!stored_.empty()) {
        std::vector<Matrix> rows;
        rows.reserve(stored_.size());
        for (const auto& b : stored_) rows.push_back(vec(b).transpose());
        Echelon e = Matrix::vstack(rows).echelon();
        pivots_ = e.pivots;
        canon_rows_ = e.reduced.submatrix(0, 0, static_cast<int>(pivots_.size()), n * n);
        for (int r = 0; r < canon_rows_.rows(); ++r)
            canonical_.push_back(unvec(canon_rows_.row(r).transpose(), n));
    }
}

bool MatrixSubspace::member(const Matrix& m) const {
    return coordinates(m).has_value();
}

std::optional<std::vector<Scalar>> MatrixSubspace::coordinates(const Matrix& m) const {
    if (m.rows() != n_ || m.cols() != n_ || m.field() != field_)
        throw DimensionMismatch("membership test shape mismatch");
    // reduce vec(m) against the canonical rows
    Matrix v = vec(m);
    std::vector<Scalar> coords;
    coords.reserve(static_cast<std::size_t>(dim()));
    for (int r = 0; r < canon_rows_.rows(); ++r) {
        Scalar c = v.at(pivots_[static_cast<std::size_t>(r)], 0);
        coords.push_back(c);
        if (c.is_zero()) continue;
        for (int j = 0; j < n_ * n_; ++j) v.at(j, 0) -= c * canon_rows_.at(r, j);
    }
    if (!v.is_zero()) return std::nullopt;
    return coords;
}

bool MatrixSubspace::same_subspace(const MatrixSubspace& o) const {
    if (field_ != o.field_ || n_ != o.n_ || dim() != o.dim()) return false;
    for (int i = 0; i < dim(); ++i)
        if (canonical_[static_cast<std::size_t>(i)] != o.canonical_[static_cast<std::size_t>(i)]) return false;
    return true;
}

Matrix MatrixSubspace::combine(const std::vector<Scalar>& coeffs) const {
    if (static_cast<int>(coeffs.size()) != dim()) throw DimensionMismatch("coefficient count mismatch");
    Matrix m(field_, n_, n_);
    for (int k = 0; k < dim(); ++k) {
        if (coeffs[static_cast<std::size_t>(k)].is_zero()) continue;
        m = m + canonical_[static_cast<std::size_t>(k)].scaled(coeffs[static_cast<std::size_t>(k)]);
    }
    return m;
}

MatrixSubspace subspace_sum(const MatrixSubspace& v, const MatrixSubspace& w) {
    if (v.field() != w.field() || v.side() != w.side())
        throw DimensionMismatch("subspace sum requires uniform field and side");
    std::vector<Matrix> basis = v.canonical_basis();
    for (const auto& b : w.canonical_basis()) basis.push_back(b);
    return MatrixSubspace(v.field(), v.side(), std::move(basis));
}

MatrixSubspace subspace_intersect(const MatrixSubspace& v, const MatrixSubspace& w) {
    if (v.field() != w.field() || v.side() != w.side())
        throw DimensionMismatch("subspace intersection requires uniform field and side");
    int n = v.side();
    if (v.dim() == 0 || w.dim() == 0) return MatrixSubspace(v.field(), n, {});
    // x in both spans: solve [V^t | -W^t] kernel, take the V-coordinates.
    std::vector<Matrix> vcols, wcols;
    for (const auto& b : v.canonical_basis()) vcols.push_back(vec(b));
    for (const auto& b : w.canonical_basis()) wcols.push_back(vec(b).scaled(-Scalar::one(v.field())));
    Matrix lhs = Matrix::hstack({Matrix::hstack(vcols), Matrix::hstack(wcols)});
    std::vector<Matrix> basis;
    for (const auto& k : lhs.kernel_basis()) {
        Matrix m(v.field(), n, n);
        for (int i = 0; i < v.dim(); ++i)
            m = m + v.canonical_basis()[static_cast<std::size_t>(i)].scaled(k.at(i, 0));
        basis.push_back(m);
    }
    return MatrixSubspace(v.field(), n, std::move(basis));
}

// --------------------------------------------------------------- L_D, L^H

MatrixSubspace make_LD(const Matrix& x) {
    if (x.cols() != 1) throw DimensionMismatch("make_LD expects a column vector");
    if (x.is_zero()) throw ZeroVector("make_LD needs a nonzero vector");
    int n = x.rows();
    const FieldSpec& f = x.field();
    // rows of M must lie in the hyperplane x^perp
    std::vector<Matrix> hyper = x.transpose().kernel_basis(); // n-1 columns
    std::vector<Matrix> basis;
    for (int i = 0; i < n; ++i)
        for (const auto& h : hyper) {
            Matrix m(f, n, n);
            for (int j = 0; j < n; ++j) m.at(i, j) = h.at(j, 0);
            basis.push_back(std::move(m));
        }
    return MatrixSubspace(f, n, std::move(basis));
}

MatrixSubspace make_LH(const Matrix& y) {
    if (y.cols() != 1) throw DimensionMismatch("make_LH expects a column vector");
    if (y.is_zero()) throw ZeroVector("make_LH needs a nonzero normal vector");
    int n = y.rows();
    const FieldSpec& f = y.field();
    std::vector<Matrix> hyper = y.transpose().kernel_basis(); // columns spanning H
    std::vector<Matrix> basis;
    for (const auto& h : hyper)
        for (int j = 0; j < n; ++j) {
            Matrix m(f, n, n);
            for (int i = 0; i < n; ++i) m.at(i, j) = h.at(i, 0);
            basis.push_back(std::move(m));
        }
    return MatrixSubspace(f, n, std::move(basis));
}

// -------------------------------------------------------- singularity

namespace {

std::uint64_t pow_u64_checked(std::uint64_t base, int exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > cap / base) return cap + 1;
        r *= base;
    }
    return r;
}

// Iterate coefficient tuples over GF(q)^dim, skipping the zero tuple.
template <typename Fn>
bool for_each_nonzero_combo(const FieldSpec& f, int dim, Fn&& fn) {
    std::uint64_t q = f.modulus;
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(dim), 0);
    for (;;) {
        int k = 0;
        while (k < dim && digits[static_cast<std::size_t>(k)] == q - 1) {
            digits[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == dim) return true;
        ++digits[static_cast<std::size_t>(k)];
        std::vector<Scalar> coeffs;
        coeffs.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) coeffs.push_back(Scalar::residue(f, digits[static_cast<std::size_t>(i)]));
        if (!fn(coeffs)) return false;
    }
}

} // namespace

SingularVerdict is_singular_subspace(const MatrixSubspace& v, std::uint64_t budget) {
    int dim = v.dim();
    int n = v.side();
    if (dim == 0) return {true, std::nullopt};
    if (v.field().is_prime()) {
        std::uint64_t total = pow_u64_checked(v.field().modulus, dim, budget);
        if (total > budget)
            throw BudgetExceeded("q^dim exceeds the enumeration budget");
        SingularVerdict verdict{true, std::nullopt};
        for_each_nonzero_combo(v.field(), dim, [&](const std::vector<Scalar>& coeffs) {
            Matrix m = v.combine(coeffs);
            if (!m.det().is_zero()) {
                verdict = {false, m};
                return false;
            }
            return true;
        });
        return verdict;
    }
    // Rationals: the generic determinant polynomial vanishes identically iff
    // the subspace is singular (K infinite). Expand it exactly.
    if (pencil_monomial_bound(n, dim) > mpz_class(kMonomialCap))
        throw BudgetExceeded("generic determinant exceeds the monomial cap");
    MultiPoly d = det_of_pencil(v.canonical_basis());
    if (d.is_zero()) return {true, std::nullopt};
    std::vector<Scalar> pt = nonzero_point(d, n);
    return {false, v.combine(pt)};
}

// -------------------------------------------------- full non-singularity

namespace {

// Attempt to recognize V as the power basis of a companion matrix of an
// irreducible polynomial: requires I in V and some canonical basis element
// whose powers span V with an irreducible minimal polynomial of degree n.
std::optional<NonSingularityCertificate> derive_companion_certificate(const MatrixSubspace& v) {
    int n = v.side();
    if (v.dim() != n) return std::nullopt;
    if (!v.member(Matrix::identity(v.field(), n))) return std::nullopt;
    for (const auto& b : v.canonical_basis()) {
        Polynomial m = minimal_polynomial(b);
        if (m.degree() != n) continue;
        // powers must span V
        std::vector<Matrix> pow{Matrix::identity(v.field(), n)};
        for (int k = 1; k < n; ++k) pow.push_back(pow.back() * b);
        MatrixSubspace pv(v.field(), n, pow);
        if (!pv.same_subspace(v)) continue;
        IrredVerdict iv = poly_is_irreducible(m);
        if (iv.tag == IrredTag::Irreducible)
            return NonSingularityCertificate::irreducible(m);
        if (iv.tag == IrredTag::Unknown && irreducible_by_prime_reduction(m))
            return NonSingularityCertificate::irreducible(m);
    }
    return std::nullopt;
}

std::optional<NonSingularityCertificate> derive_pdf_certificate(const MatrixSubspace& v) {
    int n = v.side();
    if (v.dim() != n || n % 2 != 0) return std::nullopt;
    if (pencil_monomial_bound(n, n) > mpz_class(kMonomialCap)) return std::nullopt;
    MultiPoly d = det_of_pencil(v.canonical_basis());
    if (d == sum_of_squares_power(v.field(), n, n / 2))
        return NonSingularityCertificate::positive_definite(n / 2);
    return std::nullopt;
}

} // namespace

bool verify_certificate(const MatrixSubspace& v, const NonSingularityCertificate& cert) {
    switch (cert.kind) {
        case NonSingularityCertificate::Kind::FiniteFieldExhaustive: {
            if (!v.field().is_prime()) return false;
            bool all_invertible = true;
            for_each_nonzero_combo(v.field(), v.dim(), [&](const std::vector<Scalar>& coeffs) {
                if (v.combine(coeffs).det().is_zero()) {
                    all_invertible = false;
                    return false;
                }
                return true;
            });
            return all_invertible;
        }
        case NonSingularityCertificate::Kind::IrreduciblePolynomial: {
            if (!cert.poly || cert.poly->degree() != v.side() || v.dim() != v.side()) return false;
            // the claimed polynomial itself must generate V through its powers
            Matrix a = companion_matrix(*cert.poly);
            std::vector<Matrix> pow{Matrix::identity(v.field(), v.side())};
            for (int k = 1; k < v.side(); ++k) pow.push_back(pow.back() * a);
            MatrixSubspace pv(v.field(), v.side(), pow);
            if (!pv.same_subspace(v)) return false;
            IrredVerdict iv = poly_is_irreducible(*cert.poly);
            if (iv.tag == IrredTag::Irreducible) return true;
            return iv.tag == IrredTag::Unknown && irreducible_by_prime_reduction(*cert.poly).has_value();
        }
        case NonSingularityCertificate::Kind::PositiveDefiniteForm: {
            if (!v.field().is_rational() || v.dim() != v.side()) return false;
            if (2 * cert.power != v.side()) return false;
            auto derived = derive_pdf_certificate(v);
            return derived.has_value();
        }
        case NonSingularityCertificate::Kind::None:
            return false;
    }
    return false;
}

NonsingVerdict is_full_nonsingular(const MatrixSubspace& v, std::uint64_t budget,
                                   std::uint64_t samples, std::uint64_t seed) {
    int n = v.side();
    NonsingVerdict out;
    if (v.dim() != n) {
        out.tag = NonsingTag::Refuted; // wrong dimension can never be full non-singular
        return out;
    }
    if (v.field().is_prime()) {
        std::uint64_t total = pow_u64_checked(v.field().modulus, n, budget);
        if (total > budget) throw BudgetExceeded("q^n exceeds the enumeration budget");
        std::uint64_t count = 0;
        bool all_invertible = true;
        Matrix witness(v.field(), n, n);
        for_each_nonzero_combo(v.field(), n, [&](const std::vector<Scalar>& coeffs) {
            Matrix m = v.combine(coeffs);
            ++count;
            if (m.det().is_zero()) {
                witness = m;
                all_invertible = false;
                return false;
            }
            return true;
        });
        if (all_invertible) {
            out.tag = NonsingTag::Verified;
            out.cert = NonSingularityCertificate::exhaustive(count);
        } else {
            out.tag = NonsingTag::Refuted;
            out.witness = witness;
        }
        return out;
    }
    // Rationals. 1) attached certificate, 2) derivable certificate,
    // 3) refutation search on the grid and random samples, else Unknown.
    if (v.certificate && v.certificate->kind != NonSingularityCertificate::Kind::None &&
        verify_certificate(v, *v.certificate)) {
        out.tag = NonsingTag::Verified;
        out.cert = *v.certificate;
        return out;
    }
    if (auto cert = derive_pdf_certificate(v)) {
        out.tag = NonsingTag::Verified;
        out.cert = *cert;
        return out;
    }
    if (auto cert = derive_companion_certificate(v)) {
        out.tag = NonsingTag::Verified;
        out.cert = *cert;
        return out;
    }
    // grid points {0..n}^dim first (includes the basis elements), then
    // random integer combinations
    std::uint64_t tested = 0;
    std::uint64_t grid_total = pow_u64_checked(static_cast<std::uint64_t>(n + 1), n, budget);
    if (grid_total <= budget) {
        std::vector<int> digits(static_cast<std::size_t>(n), 0);
        for (;;) {
            int k = 0;
            while (k < n && digits[static_cast<std::size_t>(k)] == n) {
                digits[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == n) break;
            ++digits[static_cast<std::size_t>(k)];
            std::vector<Scalar> coeffs;
            for (int i = 0; i < n; ++i) coeffs.push_back(Scalar::from_int(v.field(), digits[static_cast<std::size_t>(i)]));
            Matrix m = v.combine(coeffs);
            ++tested;
            if (m.det().is_zero()) {
                out.tag = NonsingTag::Refuted;
                out.witness = m;
                return out;
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::vector<Scalar> coeffs;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            long c = dist(rng);
            nonzero |= c != 0;
            coeffs.push_back(Scalar::from_int(v.field(), c));
        }
        if (!nonzero) continue;
        Matrix m = v.combine(coeffs);
        ++tested;
        if (m.det().is_zero()) {
            out.tag = NonsingTag::Refuted;
            out.witness = m;
            return out;
        }
    }
    out.tag = NonsingTag::Unknown;
    out.samples_tested = tested;
    return out;
}

// ------------------------------------------------------------ classifier

MaximalSingularType classify_maximal_singular(const MatrixSubspace& v) {
    int n = v.side();
    if (n < 2) throw NotMaximalSingular("classifier requires n >= 2");
    if (v.dim() != n * n - n)
        throw NotMaximalSingular("subspace dimension is not n^2 - n");
    // K = common kernel of the basis = kernel of the vertical stack;
    // S = sum of the images = image of the horizontal stack.
    Matrix vstacked = Matrix::vstack(v.canonical_basis());
    Matrix hstacked = Matrix::hstack(v.canonical_basis());
    std::vector<Matrix> k = vstacked.kernel_basis();
    std::vector<Matrix> s = hstacked.image_basis();
    bool kernel_branch = static_cast<int>(k.size()) == 1;
    bool image_branch = static_cast<int>(s.size()) == n - 1;
    if (kernel_branch == image_branch)
        throw NotMaximalSingular(kernel_branch ? "both classifier branches fired"
                                               : "neither classifier branch fired");
    if (kernel_branch) {
        Matrix x = normalize_first_nonzero(k[0]);
        for (const auto& b : v.canonical_basis())
            if (!(b * x).is_zero()) throw InternalAnomaly("kernel-type invariant violated");
        return {MaximalSingularType::Tag::KernelType, x};
    }
    // hyperplane normal: the kernel of S^t (rows = image basis vectors)
    std::vector<Matrix> rows;
    for (const auto& col : s) rows.push_back(col.transpose());
    std::vector<Matrix> normals = Matrix::vstack(rows).kernel_basis();
    if (normals.size() != 1) throw InternalAnomaly("hyperplane normal not unique");
    Matrix y = normalize_first_nonzero(normals[0]);
    for (const auto& b : v.canonical_basis())
        if (!(y.transpose() * b).is_zero()) throw InternalAnomaly("image-type invariant violated");
    return {MaximalSingularType::Tag::ImageType, y};
}

// ----------------------------------------------------- lattice enumeration

mpz_class gaussian_binomial(int m, int k, std::uint32_t q) {
    if (k < 0 || k > m) return 0;
    mpz_class num = 1, den = 1, qz(q);
    for (int i = 0; i < k; ++i) {
        mpz_class qm, qk;
        mpz_pow_ui(qm.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(m - i));
        mpz_pow_ui(qk.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(i + 1));
        num *= qm - 1;
        den *= qk - 1;
    }
    return num / den;
}

void for_each_subspace(const FieldSpec& f, int m, int k,
                       const std::function<void(const Matrix&)>& fn) {
    if (!f.is_prime()) throw UnsupportedField("subspace enumeration needs a finite field");
    if (k == 0) {
        fn(Matrix(f, 0, m));
        return;
    }
    if (k > m) return;
    std::uint64_t q = f.modulus;
    // choose pivot columns p_0 < ... < p_{k-1}; free entries are at (r, c)
    // with c > p_r, c not a pivot of a row <= r... i.e. standard RREF shape.
    std::vector<int> piv(static_cast<std::size_t>(k));
    std::function<void(int, int)> choose = [&](int idx, int start) {
        if (idx == k) {
            // collect free positions
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_piv(static_cast<std::size_t>(m), false);
            for (int r = 0; r < k; ++r) is_piv[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = true;
            for (int r = 0; r < k; ++r)
                for (int c = piv[static_cast<std::size_t>(r)] + 1; c < m; ++c)
                    if (!is_piv[static_cast<std::size_t>(c)]) free_pos.emplace_back(r, c);
            std::vector<std::uint64_t> digits(free_pos.size(), 0);
            for (;;) {
                Matrix basis(f, k, m);
                for (int r = 0; r < k; ++r)
                    basis.at(r, piv[static_cast<std::size_t>(r)]) = Scalar::one(f);
                for (std::size_t t = 0; t < free_pos.size(); ++t)
                    basis.at(free_pos[t].first, free_pos[t].second) = Scalar::residue(f, digits[t]);
                fn(basis);
                std::size_t c = 0;
                while (c < digits.size() && digits[c] == q - 1) {
                    digits[c] = 0;
                    ++c;
                }
                if (c == digits.size()) break;
                ++digits[c];
            }
            return;
        }
        for (int c = start; c <= m - (k - idx); ++c) {
            piv[static_cast<std::size_t>(idx)] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
    return;
}

DieudonneReport dieudonne_audit(const FieldSpec& f, int n, std::uint64_t budget,
                                std::uint64_t samples, std::uint64_t seed) {
    if (n < 2) throw BadInput("the singular-subspace audit requires n >= 2");
    if (!f.is_prime()) throw UnsupportedField("the audit enumerates a finite lattice");
    auto t0 = std::chrono::steady_clock::now();
    DieudonneReport rep;
    rep.field = f.str();
    rep.n = n;
    rep.seed = seed;
    int m = n * n;
    mpz_class lattice = 0;
    for (int k = 0; k <= m; ++k) lattice += gaussian_binomial(m, k, f.modulus);
    rep.full_enumeration = lattice <= 100000;

    auto inspect = [&](const MatrixSubspace& v) {
        ++rep.subspaces_seen;
        ++rep.total_per_dim[v.dim()];
        SingularVerdict sv = is_singular_subspace(v, budget);
        if (!sv.singular) return;
        ++rep.singular_per_dim[v.dim()];
        rep.max_singular_dim = std::max(rep.max_singular_dim, v.dim());
        if (v.dim() > m - n)
            rep.anomalies.push_back("singular subspace of dimension " + std::to_string(v.dim()) +
                                    " exceeds the n^2-n bound");
        if (v.dim() == m - n) {
            try {
                MaximalSingularType t = classify_maximal_singular(v);
                if (t.tag == MaximalSingularType::Tag::KernelType)
                    ++rep.kernel_type;
                else
                    ++rep.image_type;
            } catch (const Error& e) {
                rep.anomalies.push_back(std::string("maximal singular subspace failed to classify: ") + e.what());
            }
        }
    };

    if (rep.full_enumeration) {
        for (int k = 0; k <= m; ++k) {
            mpz_class expected = gaussian_binomial(m, k, f.modulus);
            std::uint64_t seen_before = rep.total_per_dim[k];
            for_each_subspace(f, m, k, [&](const Matrix& rows) {
                std::vector<Matrix> basis;
                for (int r = 0; r < rows.rows(); ++r)
                    basis.push_back(unvec(rows.row(r).transpose(), n));
                inspect(MatrixSubspace(f, n, std::move(basis)));
            });
            if (mpz_class(rep.total_per_dim[k] - seen_before) != expected)
                rep.anomalies.push_back("dimension " + std::to_string(k) +
                                        " count disagrees with the Gaussian binomial");
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> dim_dist(0, m);
        std::uniform_int_distribution<std::uint64_t> val(0, f.modulus - 1);
        for (std::uint64_t s = 0; s < samples; ++s) {
            int target = dim_dist(rng);
            std::vector<Matrix> basis;
            for (int i = 0; i < target; ++i) {
                Matrix b(f, n, n);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) b.at(r, c) = Scalar::residue(f, val(rng));
                basis.push_back(std::move(b));
            }
            inspect(MatrixSubspace(f, n, std::move(basis)));
        }
    }
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace glstab
