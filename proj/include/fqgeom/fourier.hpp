#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fqgeom/geom.hpp"

namespace fqgeom {

enum class Side { space, frequency };

// A complex-valued function on F_q^d, indexed by the point bijection.
// The side tag flips under transform and round-trips to the original.
class SpectralGrid {
public:
    SpectralGrid(const PrimeField& field, int d, Side side);
    static SpectralGrid indicator(const DenseSet& set); // space side

    std::uint64_t size() const { return static_cast<std::uint64_t>(values_.size()); }
    int dim() const { return d_; }
    Side side() const { return side_; }
    PrimeField field() const { return field_; }

    std::complex<double>& operator[](std::uint64_t i) { return values_[i]; }
    const std::complex<double>& operator[](std::uint64_t i) const { return values_[i]; }
    std::span<const std::complex<double>> values() const { return values_; }
    std::span<std::complex<double>> values() { return values_; }

private:
    PrimeField field_;
    int d_;
    Side side_;
    std::vector<std::complex<double>> values_;
};

// f^(m) = q^{-d} sum_x f(x) chi(-x.m), computed as d length-q axis passes
// with the q^{-d} normalization applied once at the end.
SpectralGrid forward(const SpectralGrid& f, int workers = 1);

// f(x) = sum_m F(m) chi(x.m); no normalization factor.
SpectralGrid inverse(const SpectralGrid& F, int workers = 1);

// Returns (q^{-d} sum_x f conj(g), sum_m f^ conj(g^)); callers assert the two
// sides agree.
std::pair<std::complex<double>, std::complex<double>> plancherel_check(const SpectralGrid& f,
                                                                       const SpectralGrid& g);

} // namespace fqgeom
