#include "fqgeom/fourier.hpp"

#include <numbers>

#include "fqgeom/parallel.hpp"

namespace fqgeom {

SpectralGrid::SpectralGrid(const PrimeField& field, int d, Side side)
    : field_(field), d_(d), side_(side), values_(grid_size(field, d)) {}

SpectralGrid SpectralGrid::indicator(const DenseSet& set) {
    SpectralGrid g(set.field(), set.dim(), Side::space);
    for (std::uint64_t idx : set.member_indices()) g[idx] = 1.0;
    return g;
}

namespace {

// One length-q DFT along every axis. Lines are independent, and within a
// line the summation order is fixed, so results do not depend on the worker
// count.
std::vector<std::complex<double>> axis_passes(const SpectralGrid& in, double sign, int workers) {
    const std::uint32_t q = in.field().modulus();
    const int d = in.dim();
    const std::uint64_t n = in.size();

    std::vector<std::complex<double>> roots(q);
    for (std::uint32_t k = 0; k < q; ++k) {
        const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(q);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }

    std::vector<std::complex<double>> cur(in.values().begin(), in.values().end());
    std::vector<std::complex<double>> nxt(n);
    const std::uint64_t lines = n / q;

    std::uint64_t stride = 1;
    for (int axis = 0; axis < d; ++axis) {
        parallel_for(lines, workers, [&](std::uint64_t lo, std::uint64_t hi) {
            for (std::uint64_t line = lo; line < hi; ++line) {
                const std::uint64_t block = line / stride;
                const std::uint64_t offset = line % stride;
                const std::uint64_t base = block * stride * q + offset;
                for (std::uint32_t m = 0; m < q; ++m) {
                    std::complex<double> acc{0.0, 0.0};
                    for (std::uint32_t x = 0; x < q; ++x)
                        acc += cur[base + x * stride] *
                               roots[static_cast<std::uint64_t>(x) * m % q];
                    nxt[base + m * stride] = acc;
                }
            }
        });
        cur.swap(nxt);
        stride *= q;
    }
    return cur;
}

} // namespace

SpectralGrid forward(const SpectralGrid& f, int workers) {
    if (f.side() != Side::space)
        throw std::invalid_argument("forward transform expects a space-side grid");
    SpectralGrid out(f.field(), f.dim(), Side::frequency);
    auto vals = axis_passes(f, -1.0, workers);
    const double scale = 1.0 / static_cast<double>(f.size());
    for (std::uint64_t i = 0; i < f.size(); ++i) out[i] = vals[i] * scale;
    return out;
}

SpectralGrid inverse(const SpectralGrid& F, int workers) {
    if (F.side() != Side::frequency)
        throw std::invalid_argument("inverse transform expects a frequency-side grid");
    SpectralGrid out(F.field(), F.dim(), Side::space);
    auto vals = axis_passes(F, +1.0, workers);
    for (std::uint64_t i = 0; i < F.size(); ++i) out[i] = vals[i];
    return out;
}

std::pair<std::complex<double>, std::complex<double>> plancherel_check(const SpectralGrid& f,
                                                                       const SpectralGrid& g) {
    if (f.field() != g.field() || f.dim() != g.dim())
        throw std::invalid_argument("grids live on different spaces");
    if (f.side() != Side::space || g.side() != Side::space)
        throw std::invalid_argument("plancherel_check expects space-side grids");

    std::complex<double> lhs{0.0, 0.0};
    for (std::uint64_t i = 0; i < f.size(); ++i) lhs += f[i] * std::conj(g[i]);
    lhs /= static_cast<double>(f.size());

    const SpectralGrid fh = forward(f);
    const SpectralGrid gh = forward(g);
    std::complex<double> rhs{0.0, 0.0};
    for (std::uint64_t i = 0; i < f.size(); ++i) rhs += fh[i] * std::conj(gh[i]);
    return {lhs, rhs};
}

} // namespace fqgeom
