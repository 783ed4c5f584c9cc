#include "glstab/algebra.hpp"

#include <random>

namespace glstab {

DivisionAlgebraSpec::DivisionAlgebraSpec(FieldSpec f, int dim)
    : field(f), n(dim),
      c(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
        Scalar::zero(f)) {
    if (dim < 1) throw DimensionMismatch("algebra dimension must be positive");
}

const Scalar& DivisionAlgebraSpec::at(int i, int j, int k) const {
    return c[(static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) *
                 static_cast<std::size_t>(n) +
             static_cast<std::size_t>(k)];
}

Scalar& DivisionAlgebraSpec::at(int i, int j, int k) {
    return c[(static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) *
                 static_cast<std::size_t>(n) +
             static_cast<std::size_t>(k)];
}

Matrix DivisionAlgebraSpec::product(const Matrix& x, const Matrix& y) const {
    if (x.rows() != n || x.cols() != 1 || y.rows() != n || y.cols() != 1)
        throw DimensionMismatch("algebra product expects n x 1 coordinates");
    Matrix out(field, n, 1);
    for (int i = 0; i < n; ++i) {
        if (x.at(i, 0).is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y.at(j, 0).is_zero()) continue;
            Scalar f = x.at(i, 0) * y.at(j, 0);
            for (int k = 0; k < n; ++k) out.at(k, 0) += at(i, j, k) * f;
        }
    }
    return out;
}

Matrix left_mult(const DivisionAlgebraSpec& alg, const Matrix& a) {
    if (a.rows() != alg.n || a.cols() != 1) throw DimensionMismatch("left_mult expects an n x 1 vector");
    Matrix l(alg.field, alg.n, alg.n);
    for (int k = 0; k < alg.n; ++k)
        for (int j = 0; j < alg.n; ++j) {
            Scalar s = Scalar::zero(alg.field);
            for (int i = 0; i < alg.n; ++i) s += alg.at(i, j, k) * a.at(i, 0);
            l.at(k, j) = s;
        }
    return l;
}

Matrix right_mult(const DivisionAlgebraSpec& alg, const Matrix& b) {
    if (b.rows() != alg.n || b.cols() != 1) throw DimensionMismatch("right_mult expects an n x 1 vector");
    Matrix r(alg.field, alg.n, alg.n);
    for (int k = 0; k < alg.n; ++k)
        for (int i = 0; i < alg.n; ++i) {
            Scalar s = Scalar::zero(alg.field);
            for (int j = 0; j < alg.n; ++j) s += alg.at(i, j, k) * b.at(j, 0);
            r.at(k, i) = s;
        }
    return r;
}

namespace {

std::vector<Matrix> left_basis(const DivisionAlgebraSpec& alg) {
    std::vector<Matrix> ls;
    for (int i = 0; i < alg.n; ++i)
        ls.push_back(left_mult(alg, Matrix::basis_vector(alg.field, alg.n, i)));
    return ls;
}

// Structure constants of K[x]/(p) in the power basis, with no
// irreducibility requirement (shared with certificate verification).
DivisionAlgebraSpec companion_structure(const Polynomial& p) {
    Polynomial m = p.monic();
    int n = m.degree();
    DivisionAlgebraSpec alg(p.field(), n);
    // x^i * x^j mod m
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> cs(static_cast<std::size_t>(i + j + 1), Scalar::zero(p.field()));
            cs[static_cast<std::size_t>(i + j)] = Scalar::one(p.field());
            Polynomial prod(p.field(), std::move(cs));
            Polynomial rem = prod.divmod(m).second;
            for (int k = 0; k < n; ++k) alg.at(i, j, k) = rem.coeff(k);
        }
    return alg;
}

// Does the structure-constant array match the companion algebra K[x]/(p)?
bool matches_companion(const DivisionAlgebraSpec& alg, const Polynomial& p) {
    if (p.degree() != alg.n) return false;
    try {
        return companion_structure(p) == alg;
    } catch (const Error&) {
        return false;
    }
}

} // namespace

DivisionVerdict is_division(const DivisionAlgebraSpec& alg, std::uint64_t budget,
                            std::uint64_t samples, std::uint64_t seed) {
    DivisionVerdict out;
    const FieldSpec& f = alg.field;
    int n = alg.n;
    auto refute = [&](const Matrix& a) {
        out.tag = DivisionVerdict::Tag::NotDivision;
        out.witness_a = a;
        Matrix l = left_mult(alg, a);
        auto kb = l.kernel_basis();
        if (kb.empty()) throw InternalAnomaly("singular left multiplication without kernel");
        out.witness_y = kb[0];
        if (!alg.product(a, kb[0]).is_zero())
            throw InternalAnomaly("zero-divisor witness failed re-verification");
        return out;
    };
    if (f.is_prime()) {
        std::uint64_t total = 1;
        for (int i = 0; i < n; ++i) {
            if (total > budget / f.modulus) throw BudgetExceeded("q^n exceeds the enumeration budget");
            total *= f.modulus;
        }
        std::uint64_t count = 0;
        for (std::uint64_t code = 1; code < total; ++code) {
            Matrix a(f, n, 1);
            std::uint64_t v = code;
            for (int i = 0; i < n; ++i) {
                a.at(i, 0) = Scalar::residue(f, v % f.modulus);
                v /= f.modulus;
            }
            if (left_mult(alg, a).det().is_zero()) return refute(a);
            ++count;
        }
        out.tag = DivisionVerdict::Tag::Division;
        out.cert = NonSingularityCertificate::exhaustive(count);
        return out;
    }
    // Rationals.
    if (alg.certificate && alg.certificate->kind == NonSingularityCertificate::Kind::IrreduciblePolynomial &&
        alg.certificate->poly && matches_companion(alg, *alg.certificate->poly)) {
        IrredVerdict iv = poly_is_irreducible(*alg.certificate->poly);
        bool irred = iv.tag == IrredTag::Irreducible ||
                     (iv.tag == IrredTag::Unknown && irreducible_by_prime_reduction(*alg.certificate->poly));
        if (irred) {
            out.tag = DivisionVerdict::Tag::Division;
            out.cert = *alg.certificate;
            return out;
        }
    }
    if (pencil_monomial_bound(n, n) <= mpz_class(kMonomialCap)) {
        MultiPoly d = det_of_pencil(left_basis(alg));
        if (d.is_zero()) return refute(Matrix::basis_vector(f, n, 0));
        if (n % 2 == 0 && d == sum_of_squares_power(f, n, n / 2)) {
            out.tag = DivisionVerdict::Tag::Division;
            out.cert = NonSingularityCertificate::positive_definite(n / 2);
            return out;
        }
    }
    // no certificate: search for a refutation on the grid, then randomly
    std::uint64_t tested = 0;
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::uint64_t grid_total = 1;
    bool grid_ok = true;
    for (int i = 0; i < n; ++i) {
        if (grid_total > budget / static_cast<std::uint64_t>(n + 1)) { grid_ok = false; break; }
        grid_total *= static_cast<std::uint64_t>(n + 1);
    }
    if (grid_ok) {
        for (;;) {
            int k = 0;
            while (k < n && digits[static_cast<std::size_t>(k)] == n) {
                digits[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == n) break;
            ++digits[static_cast<std::size_t>(k)];
            Matrix a(f, n, 1);
            for (int i = 0; i < n; ++i) a.at(i, 0) = Scalar::from_int(f, digits[static_cast<std::size_t>(i)]);
            ++tested;
            if (left_mult(alg, a).det().is_zero()) return refute(a);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-5, 5);
    for (std::uint64_t s = 0; s < samples; ++s) {
        Matrix a(f, n, 1);
        bool nz = false;
        for (int i = 0; i < n; ++i) {
            long v = dist(rng);
            nz |= v != 0;
            a.at(i, 0) = Scalar::from_int(f, v);
        }
        if (!nz) continue;
        ++tested;
        if (left_mult(alg, a).det().is_zero()) return refute(a);
    }
    out.tag = DivisionVerdict::Tag::Unknown;
    out.samples_tested = tested;
    return out;
}

MatrixSubspace to_subspace(const DivisionAlgebraSpec& alg, bool override_unverified) {
    NonSingularityCertificate cert = alg.certificate.value_or(NonSingularityCertificate::none());
    if (cert.kind == NonSingularityCertificate::Kind::None && !override_unverified) {
        DivisionVerdict dv = is_division(alg);
        if (dv.tag == DivisionVerdict::Tag::Division) {
            cert = dv.cert;
        } else if (dv.tag == DivisionVerdict::Tag::NotDivision) {
            throw BadInput("algebra is not a division algebra; pass the override to force the bridge");
        } else {
            throw BadInput("division property unverified; pass the override to force the bridge");
        }
    }
    std::vector<Matrix> basis = left_basis(alg);
    MatrixSubspace v(alg.field, alg.n, basis);
    if (v.dim() != alg.n)
        throw DependentBasis("left multiplications are linearly dependent");
    if (cert.kind != NonSingularityCertificate::Kind::None) v.certificate = cert;
    return v;
}

DivisionAlgebraSpec from_subspace(const MatrixSubspace& v) {
    if (v.dim() != v.side()) throw DimensionMismatch("bridge requires dim V = n");
    int n = v.side();
    DivisionAlgebraSpec alg(v.field(), n);
    const std::vector<Matrix>& basis = v.basis().empty() ? v.canonical_basis() : v.basis();
    // guard against redundant stored bases: fall back to canonical when the
    // stored list is not an n-element basis
    const std::vector<Matrix>& b =
        static_cast<int>(basis.size()) == n ? basis : v.canonical_basis();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                alg.at(i, j, k) = b[static_cast<std::size_t>(i)].at(k, j); // (B_i e_j)_k
    if (v.certificate) alg.certificate = v.certificate;
    return alg;
}

// ------------------------------------------------------------- presets

DivisionAlgebraSpec preset_companion(const Polynomial& p) {
    if (p.degree() < 1) throw DegreeZero("companion preset needs degree >= 1");
    IrredVerdict iv = poly_is_irreducible(p.monic());
    bool certified = iv.tag == IrredTag::Irreducible;
    if (iv.tag == IrredTag::Unknown && p.field().is_rational())
        certified = irreducible_by_prime_reduction(p.monic()).has_value();
    if (!certified) {
        std::string why = iv.tag == IrredTag::Reducible
                              ? "polynomial is reducible (factor " + iv.factor->str() + ")"
                              : "irreducibility could not be certified";
        throw NotIrreducible(why);
    }
    DivisionAlgebraSpec alg = companion_structure(p);
    alg.certificate = NonSingularityCertificate::irreducible(p.monic());
    return alg;
}

DivisionAlgebraSpec preset_gaussian_pair(const FieldSpec& f) {
    if (f.is_prime()) {
        for (std::uint64_t x = 0; x < f.modulus; ++x)
            if ((x * x + 1) % f.modulus == 0)
                throw MinusOneIsSquare("-1 is a square in GF(" + std::to_string(f.modulus) + ")");
    }
    DivisionAlgebraSpec alg(f, 2);
    Scalar one = Scalar::one(f);
    alg.at(0, 0, 0) = one;                       // e0 e0 = e0
    alg.at(0, 1, 1) = one;                       // e0 e1 = e1
    alg.at(1, 0, 1) = one;                       // e1 e0 = e1
    alg.at(1, 1, 0) = -one;                      // e1 e1 = -e0
    if (f.is_rational()) {
        MultiPoly d = det_of_pencil(left_basis(alg));
        if (!(d == sum_of_squares_power(f, 2, 1)))
            throw InternalAnomaly("gaussian pair determinant form check failed");
        alg.certificate = NonSingularityCertificate::positive_definite(1);
    } else {
        DivisionVerdict dv = is_division(alg);
        if (dv.tag != DivisionVerdict::Tag::Division)
            throw InternalAnomaly("gaussian pair is not a division algebra despite the square check");
        alg.certificate = dv.cert;
    }
    return alg;
}

SignedBasisTable quaternion_table() {
    // e0 = 1, e1 = i, e2 = j, e3 = k
    SignedBasisTable t;
    t.n = 4;
    t.index.assign(16, 0);
    t.sign.assign(16, 1);
    auto set = [&](int i, int j, int idx, int sg) {
        t.index[static_cast<std::size_t>(i * 4 + j)] = idx;
        t.sign[static_cast<std::size_t>(i * 4 + j)] = sg;
    };
    for (int i = 0; i < 4; ++i) {
        set(0, i, i, 1);
        set(i, 0, i, 1);
    }
    set(1, 1, 0, -1); set(2, 2, 0, -1); set(3, 3, 0, -1);
    set(1, 2, 3, 1);  set(2, 1, 3, -1);
    set(2, 3, 1, 1);  set(3, 2, 1, -1);
    set(3, 1, 2, 1);  set(1, 3, 2, -1);
    return t;
}

SignedBasisTable octonion_table() {
    // Cayley-Dickson doubling of the quaternions: (a,b)(c,d) =
    // (ac - conj(d) b, d a + b conj(c)), with conj flipping e1..e3.
    SignedBasisTable q = quaternion_table();
    auto mul = [&](std::pair<int, int> a, std::pair<int, int> b) {
        // multiply signed quaternion units (sign, index)
        int idx = q.index[static_cast<std::size_t>(a.second * 4 + b.second)];
        int sg = a.first * b.first * q.sign[static_cast<std::size_t>(a.second * 4 + b.second)];
        return std::pair<int, int>{sg, idx};
    };
    auto conj = [](std::pair<int, int> a) {
        return std::pair<int, int>{a.second == 0 ? a.first : -a.first, a.second};
    };
    SignedBasisTable t;
    t.n = 8;
    t.index.assign(64, 0);
    t.sign.assign(64, 1);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            // unit i = (a, b), unit j = (c, d) with at most one nonzero half
            bool ihi = i >= 4, jhi = j >= 4;
            std::pair<int, int> a{1, i % 4}, b{1, i % 4}, c{1, j % 4}, d{1, j % 4};
            std::pair<int, int> out;
            bool hi_out;
            if (!ihi && !jhi) {
                out = mul(a, c); // ac
                hi_out = false;
            } else if (!ihi && jhi) {
                out = mul(d, a); // d a
                hi_out = true;
            } else if (ihi && !jhi) {
                out = mul(b, conj(c)); // b conj(c)
                hi_out = true;
            } else {
                out = mul(conj(d), b); // -conj(d) b
                out.first = -out.first;
                hi_out = false;
            }
            t.index[static_cast<std::size_t>(i * 8 + j)] = out.second + (hi_out ? 4 : 0);
            t.sign[static_cast<std::size_t>(i * 8 + j)] = out.first;
        }
    return t;
}

namespace {

DivisionAlgebraSpec algebra_from_table(const FieldSpec& f, const SignedBasisTable& t) {
    DivisionAlgebraSpec alg(f, t.n);
    for (int i = 0; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) {
            int k = t.index[static_cast<std::size_t>(i * t.n + j)];
            int s = t.sign[static_cast<std::size_t>(i * t.n + j)];
            alg.at(i, j, k) = Scalar::from_int(f, s);
        }
    return alg;
}

} // namespace

DivisionAlgebraSpec preset_hamilton_quaternions() {
    FieldSpec f = FieldSpec::rationals();
    DivisionAlgebraSpec alg = algebra_from_table(f, quaternion_table());
    MultiPoly d = det_of_pencil(left_basis(alg));
    if (!(d == sum_of_squares_power(f, 4, 2)))
        throw InternalAnomaly("quaternion determinant form check failed");
    alg.certificate = NonSingularityCertificate::positive_definite(2);
    return alg;
}

DivisionAlgebraSpec preset_octonions(std::uint64_t monomial_budget) {
    FieldSpec f = FieldSpec::rationals();
    DivisionAlgebraSpec alg = algebra_from_table(f, octonion_table());
    if (pencil_monomial_bound(8, 8) <= mpz_class(monomial_budget)) {
        MultiPoly d = det_of_pencil(left_basis(alg));
        if (!(d == sum_of_squares_power(f, 8, 4)))
            throw InternalAnomaly("octonion determinant form check failed");
        alg.certificate = NonSingularityCertificate::positive_definite(4);
    } else {
        // expansion out of budget: sampled verification only, no certificate
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<long> dist(-5, 5);
        for (int s = 0; s < 2000; ++s) {
            Matrix a(f, 8, 1);
            bool nz = false;
            for (int i = 0; i < 8; ++i) {
                long v = dist(rng);
                nz |= v != 0;
                a.at(i, 0) = Scalar::from_int(f, v);
            }
            if (nz && left_mult(alg, a).det().is_zero())
                throw InternalAnomaly("octonion sample with singular left multiplication");
        }
    }
    return alg;
}

DivisionAlgebraSpec preset(const std::string& name, const FieldSpec& f,
                           const std::optional<Polynomial>& poly) {
    if (name == "companion") {
        if (!poly) throw BadInput("companion preset needs a polynomial");
        return preset_companion(*poly);
    }
    if (name == "gaussian_pair") return preset_gaussian_pair(f);
    if (name == "hamilton_quaternions") {
        if (!f.is_rational()) throw UnsupportedField("quaternion preset is defined over the rationals");
        return preset_hamilton_quaternions();
    }
    if (name == "octonions") {
        if (!f.is_rational()) throw UnsupportedField("octonion preset is defined over the rationals");
        return preset_octonions();
    }
    throw BadInput("unknown preset: " + name);
}

} // namespace glstab
