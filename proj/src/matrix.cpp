#include "fqgeom/matrix.hpp"

namespace fqgeom {

SquareMatrix::SquareMatrix(const PrimeField& field, int n) : p_(field.modulus()), n_(n) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("matrix size must be in [1, 6]");
}

SquareMatrix SquareMatrix::identity(const PrimeField& field, int n) {
    SquareMatrix m(field, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

SquareMatrix SquareMatrix::transposed() const {
    SquareMatrix t(field(), n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t.set(j, i, at(i, j));
    return t;
}

bool SquareMatrix::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

Point SquareMatrix::apply(const Point& x) const {
    if (x.modulus() != p_ || x.dim() != n_)
        throw std::invalid_argument("point incompatible with matrix");
    std::array<std::uint32_t, kMaxDim> out{};
    for (int i = 0; i < n_; ++i) {
        std::uint32_t acc = 0;
        for (int j = 0; j < n_; ++j) acc = mod_add(acc, mod_mul(at(i, j), x.coord(j), p_), p_);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return Point(field(), std::span<const std::uint32_t>(out.data(), static_cast<std::size_t>(n_)));
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.p_ != b.p_ || a.n_ != b.n_) throw std::invalid_argument("matrix shape or field mismatch");
    SquareMatrix c(a.field(), a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = 0; j < a.n_; ++j) {
            std::uint32_t acc = 0;
            for (int k = 0; k < a.n_; ++k)
                acc = mod_add(acc, mod_mul(a.at(i, k), b.at(k, j), a.p_), a.p_);
            c.set(i, j, acc);
        }
    return c;
}

std::optional<SquareMatrix> inverse(const SquareMatrix& m) {
    const int n = m.size();
    const std::uint32_t p = m.modulus();
    // Augmented [m | I], reduced in place.
    std::array<std::uint32_t, static_cast<std::size_t>(kMaxDim * 2 * kMaxDim)> w{};
    const int cols = 2 * n;
    auto cell = [&](int i, int j) -> std::uint32_t& {
        return w[static_cast<std::size_t>(i * cols + j)];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) cell(i, j) = m.at(i, j);
        cell(i, n + i) = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (cell(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col)
            for (int j = 0; j < cols; ++j) std::swap(cell(pivot, j), cell(col, j));
        const std::uint32_t inv_p = mod_inv(cell(col, col), p);
        for (int j = 0; j < cols; ++j) cell(col, j) = mod_mul(cell(col, j), inv_p, p);
        for (int r = 0; r < n; ++r) {
            if (r == col || cell(r, col) == 0) continue;
            const std::uint32_t f = cell(r, col);
            for (int j = 0; j < cols; ++j)
                cell(r, j) = mod_sub(cell(r, j), mod_mul(f, cell(col, j), p), p);
        }
    }
    SquareMatrix out(m.field(), n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, cell(i, n + j));
    return out;
}

} // namespace fqgeom
