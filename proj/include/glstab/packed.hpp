// Packed matrix representations for GF(2) (one bit per entry) and GF(3)
// (one byte per entry). They mirror the generic Matrix contracts for the
// operations the enumeration harness needs; correctness tests run both
// representations against each other.
#pragma once

#include <array>
#include <cstdint>

#include "glstab/matrix.hpp"

namespace glstab {

struct Gf2Mat {
    int rows = 0, cols = 0;
    std::array<std::uint32_t, 16> row{}; // bit j of row[i] = entry (i,j); dims <= 16

    static Gf2Mat identity(int n);
    static Gf2Mat from_matrix(const Matrix& m);
    Matrix to_matrix() const;

    bool get(int i, int j) const { return (row[static_cast<std::size_t>(i)] >> j) & 1u; }
    void set(int i, int j, bool v);

    Gf2Mat operator*(const Gf2Mat& o) const;
    Gf2Mat operator+(const Gf2Mat& o) const;
    Gf2Mat transpose() const;
    int rank() const;
    bool det() const;
    bool operator==(const Gf2Mat& o) const;
};

struct Gf3Mat {
    int rows = 0, cols = 0;
    std::array<std::uint8_t, 64> e{}; // row-major, values 0..2; dims <= 8

    static Gf3Mat identity(int n);
    static Gf3Mat from_matrix(const Matrix& m);
    Matrix to_matrix() const;

    std::uint8_t get(int i, int j) const { return e[static_cast<std::size_t>(i * cols + j)]; }
    void set(int i, int j, std::uint8_t v) { e[static_cast<std::size_t>(i * cols + j)] = v; }

    Gf3Mat operator*(const Gf3Mat& o) const;
    Gf3Mat operator+(const Gf3Mat& o) const;
    Gf3Mat transpose() const;
    int rank() const;
    std::uint8_t det() const;
    bool operator==(const Gf3Mat& o) const;
};

// Base-p digit packing of a square matrix, digit index = col*rows + row
// (the vec order); used as the canonical integer key for enumeration.
std::uint64_t pack_base_p(const Matrix& m, std::uint32_t p);
Matrix unpack_base_p(const FieldSpec& f, int rows, int cols, std::uint64_t code);

} // namespace glstab
