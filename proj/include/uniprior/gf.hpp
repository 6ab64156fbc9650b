#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace uniprior {

// Arithmetic tables for the small fields used by index codes. Prime sizes use
// modular arithmetic; GF(4) and GF(8) are built over GF(2) with the usual
// irreducible polynomials x^2+x+1 and x^3+x+1. Elements are 0..q-1.
class GaloisField {
public:
    // Supported sizes: 2, 3, 4, 5, 7, 8.
    static const GaloisField& of(int q);

    int size() const { return q_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[idx(a, b)]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[idx(a, b)]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
    std::uint8_t inv(std::uint8_t a) const; // a != 0

private:
    GaloisField(int prime, int degree, std::vector<std::uint8_t> irreducible);

    std::size_t idx(std::uint8_t a, std::uint8_t b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b;
    }

    int q_ = 0;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

// Dense matrix over a GaloisField.
class GFMatrix {
public:
    GFMatrix(const GaloisField& field, int rows, int cols);

    const GaloisField& field() const { return *field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t at(int r, int c) const { return data_[pos(r, c)]; }
    void set(int r, int c, std::uint8_t v) { data_[pos(r, c)] = v; }

    std::span<const std::uint8_t> row(int r) const;
    void append_row(std::span<const std::uint8_t> values);

    int rank() const;

    // True iff v is a linear combination of the rows.
    bool in_row_span(std::span<const std::uint8_t> v) const;

private:
    std::size_t pos(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + c;
    }

    const GaloisField* field_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> data_;
};

} // namespace uniprior
