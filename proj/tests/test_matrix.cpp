#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "glstab/matrix.hpp"
#include "glstab/packed.hpp"

using namespace glstab;

namespace {

Matrix random_matrix(const FieldSpec& f, int r, int c, std::mt19937_64& rng) {
    Matrix m(f, r, c);
    if (f.is_prime()) {
        std::uniform_int_distribution<std::uint64_t> d(0, f.modulus - 1);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Scalar::residue(f, d(rng));
    } else {
        std::uniform_int_distribution<long> d(-6, 6);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = Scalar::from_int(f, d(rng));
    }
    return m;
}

// Cofactor-expansion determinant: an independent oracle for the elimination
// determinants.
Scalar det_by_cofactors(const Matrix& m) {
    int n = m.rows();
    if (n == 0) return Scalar::one(m.field());
    if (n == 1) return m.at(0, 0);
    Scalar acc = Scalar::zero(m.field());
    for (int j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        Matrix minor(m.field(), n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Scalar term = m.at(0, j) * det_by_cofactors(minor);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

} // namespace

TEST_CASE("basic products and transposes") {
    FieldSpec f2 = FieldSpec::gf(2);
    Matrix a = Matrix::from_ints(f2, {{1, 1}, {0, 1}});
    CHECK(Matrix::identity(f2, 2) * a == a);
    CHECK(a.transpose().transpose() == a);
    CHECK(a * a == Matrix::identity(f2, 2)); // [[1,1],[0,1]]^2 = I over GF(2)
}

TEST_CASE("determinants: frozen values and the cofactor oracle") {
    FieldSpec q = FieldSpec::rationals();
    Matrix comp = companion_matrix(Polynomial::from_ints(q, {-2, 0, 0, 1}));
    CHECK(comp == Matrix::from_ints(q, {{0, 0, 2}, {1, 0, 0}, {0, 1, 0}}));
    CHECK(comp.det() == Scalar::from_int(q, 2));
    CHECK(Matrix::identity(q, 4).det().is_one());
    Matrix rank1 = Matrix::from_ints(q, {{1, 0}, {0, 0}}); // e1 e1^t
    CHECK(rank1.det().is_zero());

    for (auto f : {FieldSpec::gf(2), FieldSpec::gf(5), FieldSpec::rationals()}) {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 200; ++t) {
            Matrix m = random_matrix(f, 3, 3, rng);
            REQUIRE(m.det() == det_by_cofactors(m));
        }
    }
}

TEST_CASE("det is multiplicative on random pairs") {
    for (auto f : {FieldSpec::gf(2), FieldSpec::gf(5), FieldSpec::rationals()}) {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 10000; ++t) {
            Matrix a = random_matrix(f, 3, 3, rng);
            Matrix b = random_matrix(f, 3, 3, rng);
            REQUIRE((a * b).det() == a.det() * b.det());
        }
    }
}

TEST_CASE("rank, kernel, solve, inverse") {
    FieldSpec f2 = FieldSpec::gf(2);
    Matrix m = Matrix::from_ints(f2, {{0, 1}, {0, 0}});
    auto k = m.kernel_basis();
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Matrix::basis_vector(f2, 2, 0)); // kernel spanned by e1
    CHECK(Matrix::identity(f2, 4).rank() == 4);

    FieldSpec f3 = FieldSpec::gf(3);
    Matrix u = Matrix::from_ints(f3, {{1, 1}, {0, 1}});
    Matrix uinv = u.inverse();
    CHECK(uinv == Matrix::from_ints(f3, {{1, 2}, {0, 1}}));
    CHECK(u * uinv == Matrix::identity(f3, 2));
    CHECK_THROWS_AS(Matrix::from_ints(f3, {{1, 1}, {2, 2}}).inverse(), SingularMatrix);

    FieldSpec q = FieldSpec::rationals();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        Matrix a = random_matrix(q, 3, 4, rng);
        REQUIRE(a.rank() + static_cast<int>(a.kernel_basis().size()) == a.cols());
        // solve a x = a y has the residual property
        Matrix y = random_matrix(q, 4, 1, rng);
        Matrix b = a * y;
        Matrix x = a.solve(b);
        REQUIRE(a * x == b);
    }
    CHECK_FALSE(Matrix::from_ints(q, {{1, 0}, {0, 0}})
                    .try_solve(Matrix::from_ints(q, {{0}, {1}}))
                    .has_value());
}

TEST_CASE("vec convention and the commutation matrix") {
    FieldSpec q = FieldSpec::rationals();
    Matrix m = Matrix::from_ints(q, {{1, 3}, {2, 4}}); // [[a,c],[b,d]]
    Matrix v = vec(m);
    CHECK(v == Matrix::from_ints(q, {{1}, {2}, {3}, {4}})); // (a,b,c,d)
    CHECK(unvec(v, 2) == m);
    CHECK(unvec(vec(Matrix::identity(q, 2)), 2) == Matrix::identity(q, 2));

    Matrix k2 = commutation_matrix(q, 2);
    // permutation fixing 0 and 3, swapping 1 and 2
    Matrix expect(q, 4, 4);
    expect.at(0, 0) = Scalar::one(q);
    expect.at(3, 3) = Scalar::one(q);
    expect.at(1, 2) = Scalar::one(q);
    expect.at(2, 1) = Scalar::one(q);
    CHECK(k2 == expect);

    FieldSpec f5 = FieldSpec::gf(5);
    Matrix k5 = commutation_matrix(f5, 3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Matrix a = random_matrix(f5, 3, 3, rng);
        REQUIRE(k5 * vec(a) == vec(a.transpose()));
    }
}

TEST_CASE("kron realizes the vec identity") {
    FieldSpec f2 = FieldSpec::gf(2);
    CHECK(kron(Matrix::identity(f2, 2), Matrix::identity(f2, 2)) == Matrix::identity(f2, 4));

    // exhaustive over GF(2), n=2: all 16^3 triples
    for (std::uint64_t pc = 0; pc < 16; ++pc) {
        Matrix p = unpack_base_p(f2, 2, 2, pc);
        for (std::uint64_t qc = 0; qc < 16; ++qc) {
            Matrix q = unpack_base_p(f2, 2, 2, qc);
            Matrix op = kron(q.transpose(), p);
            for (std::uint64_t mc = 0; mc < 16; ++mc) {
                Matrix m = unpack_base_p(f2, 2, 2, mc);
                REQUIRE(unvec(op * vec(m), 2) == p * m * q);
            }
        }
    }

    // random triples over GF(5) and Q
    for (auto f : {FieldSpec::gf(5), FieldSpec::rationals()}) {
        std::mt19937_64 rng(9);
        for (int t = 0; t < 1000; ++t) {
            Matrix p = random_matrix(f, 2, 2, rng);
            Matrix q = random_matrix(f, 2, 2, rng);
            Matrix m = random_matrix(f, 2, 2, rng);
            REQUIRE(unvec(kron(q.transpose(), p) * vec(m), 2) == p * m * q);
        }
    }
}

TEST_CASE("companion matrices follow the coefficient-column layout") {
    FieldSpec q = FieldSpec::rationals();
    CHECK(companion_matrix(Polynomial::from_ints(q, {1, 0, 1})) ==
          Matrix::from_ints(q, {{0, -1}, {1, 0}}));
    CHECK(companion_matrix(Polynomial::from_ints(q, {-1, 1})) == Matrix::from_ints(q, {{1}}));
    CHECK_THROWS_AS(companion_matrix(Polynomial::from_ints(q, {5})), DegreeZero);

    // p(companion(p)) = 0 exactly, and the minimal polynomial comes back
    for (auto f : {FieldSpec::gf(3), FieldSpec::rationals()}) {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<long> d(-4, 4);
        for (int t = 0; t < 100; ++t) {
            std::vector<long> cs;
            for (int i = 0; i < 3; ++i) cs.push_back(d(rng));
            cs.push_back(1);
            Polynomial p = Polynomial::from_ints(f, cs);
            Matrix a = companion_matrix(p);
            REQUIRE(poly_eval_matrix(p, a).is_zero());
            REQUIRE(minimal_polynomial(a) == p);
        }
    }
}

TEST_CASE("image basis is canonical for the column space") {
    FieldSpec q = FieldSpec::rationals();
    Matrix a = Matrix::from_ints(q, {{1, 2, 3}, {0, 0, 0}, {1, 2, 3}});
    auto im = a.image_basis();
    REQUIRE(im.size() == 1);
    CHECK(im[0] == Matrix::from_ints(q, {{1}, {0}, {1}}));
}

TEST_CASE("packed GF(2) and GF(3) agree with the generic representation") {
    std::mt19937_64 rng(17);
    FieldSpec f2 = FieldSpec::gf(2);
    for (int t = 0; t < 2000; ++t) {
        Matrix a = random_matrix(f2, 4, 4, rng);
        Matrix b = random_matrix(f2, 4, 4, rng);
        Gf2Mat pa = Gf2Mat::from_matrix(a), pb = Gf2Mat::from_matrix(b);
        REQUIRE((pa * pb).to_matrix() == a * b);
        REQUIRE((pa + pb).to_matrix() == a + b);
        REQUIRE(pa.transpose().to_matrix() == a.transpose());
        REQUIRE(pa.rank() == a.rank());
        REQUIRE(pa.det() == !a.det().is_zero());
    }
    FieldSpec f3 = FieldSpec::gf(3);
    for (int t = 0; t < 2000; ++t) {
        Matrix a = random_matrix(f3, 3, 3, rng);
        Matrix b = random_matrix(f3, 3, 3, rng);
        Gf3Mat pa = Gf3Mat::from_matrix(a), pb = Gf3Mat::from_matrix(b);
        REQUIRE((pa * pb).to_matrix() == a * b);
        REQUIRE((pa + pb).to_matrix() == a + b);
        REQUIRE(pa.transpose().to_matrix() == a.transpose());
        REQUIRE(pa.rank() == a.rank());
        REQUIRE(Scalar::residue(f3, pa.det()) == a.det());
    }
}

TEST_CASE("base-p packing roundtrips") {
    FieldSpec f3 = FieldSpec::gf(3);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 500; ++t) {
        Matrix a = random_matrix(f3, 4, 4, rng);
        REQUIRE(unpack_base_p(f3, 4, 4, pack_base_p(a, 3)) == a);
    }
}

TEST_CASE("shape errors") {
    FieldSpec q = FieldSpec::rationals();
    Matrix wide(q, 2, 3);
    CHECK_THROWS_AS(wide.det(), NotSquare);
    CHECK_THROWS_AS(wide.inverse(), NotSquare);
    CHECK_THROWS_AS(minimal_polynomial(wide), NotSquare);
    Matrix a = Matrix::from_ints(q, {{1, 0}, {0, 0}});
    CHECK_THROWS_AS(a.solve(Matrix::from_ints(q, {{0}, {1}})), NoSolution);
    CHECK_THROWS_AS(a * Matrix::identity(q, 3), DimensionMismatch);
}
