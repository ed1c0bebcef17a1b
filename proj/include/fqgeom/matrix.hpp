#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "fqgeom/field.hpp"
#include "fqgeom/geom.hpp"

namespace fqgeom {

// n x n matrix over F_p, n <= kMaxDim. Row-major, raw residues.
class SquareMatrix {
public:
    SquareMatrix(const PrimeField& field, int n);
    static SquareMatrix identity(const PrimeField& field, int n);

    int size() const { return n_; }
    std::uint32_t modulus() const { return p_; }
    PrimeField field() const { return PrimeField(p_); }

    std::uint32_t at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    void set(int i, int j, std::uint32_t v) { a_[static_cast<std::size_t>(i * n_ + j)] = v % p_; }

    SquareMatrix transposed() const;
    bool is_identity() const;
    Point apply(const Point& x) const;

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::uint32_t p_;
    int n_;
    std::array<std::uint32_t, static_cast<std::size_t>(kMaxDim * kMaxDim)> a_{};
};

// Gauss-Jordan over F_p; nullopt for singular input.
std::optional<SquareMatrix> inverse(const SquareMatrix& m);

} // namespace fqgeom
