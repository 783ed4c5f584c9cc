#include "glstab/packed.hpp"

#include <bit>

namespace glstab {

// ------------------------------------------------------------- GF(2)

Gf2Mat Gf2Mat::identity(int n) {
    Gf2Mat m;
    m.rows = m.cols = n;
    for (int i = 0; i < n; ++i) m.row[static_cast<std::size_t>(i)] = 1u << i;
    return m;
}

void Gf2Mat::set(int i, int j, bool v) {
    if (v)
        row[static_cast<std::size_t>(i)] |= 1u << j;
    else
        row[static_cast<std::size_t>(i)] &= ~(1u << j);
}

Gf2Mat Gf2Mat::from_matrix(const Matrix& m) {
    if (!m.field().is_prime() || m.field().modulus != 2)
        throw FieldMismatch("Gf2Mat expects a GF(2) matrix");
    if (m.rows() > 16 || m.cols() > 16) throw DimensionMismatch("Gf2Mat supports dims <= 16");
    Gf2Mat g;
    g.rows = m.rows();
    g.cols = m.cols();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) g.set(i, j, m.at(i, j).residue_value() != 0);
    return g;
}

Matrix Gf2Mat::to_matrix() const {
    FieldSpec f = FieldSpec::gf(2);
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (get(i, j)) m.at(i, j) = Scalar::one(f);
    return m;
}

Gf2Mat Gf2Mat::operator*(const Gf2Mat& o) const {
    if (cols != o.rows) throw DimensionMismatch("Gf2Mat product shape mismatch");
    Gf2Mat r;
    r.rows = rows;
    r.cols = o.cols;
    for (int i = 0; i < rows; ++i) {
        std::uint32_t acc = 0;
        std::uint32_t ri = row[static_cast<std::size_t>(i)];
        for (int k = 0; k < cols; ++k)
            if ((ri >> k) & 1u) acc ^= o.row[static_cast<std::size_t>(k)];
        r.row[static_cast<std::size_t>(i)] = acc;
    }
    return r;
}

Gf2Mat Gf2Mat::operator+(const Gf2Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionMismatch("Gf2Mat sum shape mismatch");
    Gf2Mat r = *this;
    for (int i = 0; i < rows; ++i) r.row[static_cast<std::size_t>(i)] ^= o.row[static_cast<std::size_t>(i)];
    return r;
}

Gf2Mat Gf2Mat::transpose() const {
    Gf2Mat r;
    r.rows = cols;
    r.cols = rows;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (get(i, j)) r.set(j, i, true);
    return r;
}

int Gf2Mat::rank() const {
    std::array<std::uint32_t, 16> w = row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if ((w[static_cast<std::size_t>(i)] >> c) & 1u) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(w[static_cast<std::size_t>(piv)], w[static_cast<std::size_t>(r)]);
        for (int i = 0; i < rows; ++i)
            if (i != r && ((w[static_cast<std::size_t>(i)] >> c) & 1u))
                w[static_cast<std::size_t>(i)] ^= w[static_cast<std::size_t>(r)];
        ++r;
    }
    return r;
}

bool Gf2Mat::det() const {
    if (rows != cols) throw NotSquare("Gf2Mat determinant of a non-square matrix");
    return rank() == rows;
}

bool Gf2Mat::operator==(const Gf2Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (int i = 0; i < rows; ++i)
        if (row[static_cast<std::size_t>(i)] != o.row[static_cast<std::size_t>(i)]) return false;
    return true;
}

// ------------------------------------------------------------- GF(3)

Gf3Mat Gf3Mat::identity(int n) {
    Gf3Mat m;
    m.rows = m.cols = n;
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Gf3Mat Gf3Mat::from_matrix(const Matrix& m) {
    if (!m.field().is_prime() || m.field().modulus != 3)
        throw FieldMismatch("Gf3Mat expects a GF(3) matrix");
    if (m.rows() > 8 || m.cols() > 8) throw DimensionMismatch("Gf3Mat supports dims <= 8");
    Gf3Mat g;
    g.rows = m.rows();
    g.cols = m.cols();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            g.set(i, j, static_cast<std::uint8_t>(m.at(i, j).residue_value()));
    return g;
}

Matrix Gf3Mat::to_matrix() const {
    FieldSpec f = FieldSpec::gf(3);
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Scalar::residue(f, get(i, j));
    return m;
}

Gf3Mat Gf3Mat::operator*(const Gf3Mat& o) const {
    if (cols != o.rows) throw DimensionMismatch("Gf3Mat product shape mismatch");
    Gf3Mat r;
    r.rows = rows;
    r.cols = o.cols;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < o.cols; ++j) {
            unsigned acc = 0;
            for (int k = 0; k < cols; ++k) acc += get(i, k) * o.get(k, j);
            r.set(i, j, static_cast<std::uint8_t>(acc % 3));
        }
    return r;
}

Gf3Mat Gf3Mat::operator+(const Gf3Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionMismatch("Gf3Mat sum shape mismatch");
    Gf3Mat r = *this;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            r.set(i, j, static_cast<std::uint8_t>((get(i, j) + o.get(i, j)) % 3));
    return r;
}

Gf3Mat Gf3Mat::transpose() const {
    Gf3Mat r;
    r.rows = cols;
    r.cols = rows;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) r.set(j, i, get(i, j));
    return r;
}

int Gf3Mat::rank() const {
    Gf3Mat w = *this;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (w.get(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) {
                std::uint8_t t = w.get(piv, j);
                w.set(piv, j, w.get(r, j));
                w.set(r, j, t);
            }
        std::uint8_t inv = w.get(r, c) == 1 ? 1 : 2; // inverses mod 3
        for (int j = 0; j < cols; ++j) w.set(r, j, static_cast<std::uint8_t>(w.get(r, j) * inv % 3));
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint8_t f = w.get(i, c);
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                w.set(i, j, static_cast<std::uint8_t>((w.get(i, j) + 3 - f * w.get(r, j) % 3) % 3));
        }
        ++r;
    }
    return r;
}

std::uint8_t Gf3Mat::det() const {
    if (rows != cols) throw NotSquare("Gf3Mat determinant of a non-square matrix");
    Gf3Mat w = *this;
    unsigned d = 1;
    for (int k = 0; k < rows; ++k) {
        int piv = -1;
        for (int i = k; i < rows; ++i)
            if (w.get(i, k) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < cols; ++j) {
                std::uint8_t t = w.get(piv, j);
                w.set(piv, j, w.get(k, j));
                w.set(k, j, t);
            }
            d = d * 2 % 3; // -1 mod 3
        }
        std::uint8_t pv = w.get(k, k);
        d = d * pv % 3;
        std::uint8_t inv = pv == 1 ? 1 : 2;
        for (int i = k + 1; i < rows; ++i) {
            std::uint8_t f = static_cast<std::uint8_t>(w.get(i, k) * inv % 3);
            if (f == 0) continue;
            for (int j = k; j < cols; ++j)
                w.set(i, j, static_cast<std::uint8_t>((w.get(i, j) + 3 - f * w.get(k, j) % 3) % 3));
        }
    }
    return static_cast<std::uint8_t>(d);
}

bool Gf3Mat::operator==(const Gf3Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (get(i, j) != o.get(i, j)) return false;
    return true;
}

// ----------------------------------------------------------- packing

std::uint64_t pack_base_p(const Matrix& m, std::uint32_t p) {
    if (!m.field().is_prime() || m.field().modulus != p)
        throw FieldMismatch("pack_base_p field mismatch");
    std::uint64_t code = 0;
    for (int k = m.rows() * m.cols() - 1; k >= 0; --k) {
        int r = k % m.rows();
        int c = k / m.rows();
        code = code * p + m.at(r, c).residue_value();
    }
    return code;
}

Matrix unpack_base_p(const FieldSpec& f, int rows, int cols, std::uint64_t code) {
    Matrix m(f, rows, cols);
    for (int k = 0; k < rows * cols; ++k) {
        m.at(k % rows, k / rows) = Scalar::residue(f, code % f.modulus);
        code /= f.modulus;
    }
    return m;
}

} // namespace glstab
