#include "fqgeom/char_sums.hpp"

#include <cmath>

#include "fqgeom/fourier.hpp"

namespace fqgeom {

std::complex<double> gauss_sum(FieldElement j) {
    if (j.is_zero()) throw std::invalid_argument("gauss_sum requires j != 0");
    const std::uint32_t p = j.modulus();
    const PrimeField field = j.field();
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t c = 0; c < p; ++c)
        acc += additive_char(field.element(mod_mul(j.value(), mod_mul(c, c, p), p)));
    return acc;
}

std::complex<double> kloosterman_sum(FieldElement a, MultChar psi) {
    const std::uint32_t p = a.modulus();
    const PrimeField field = a.field();
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t s = 1; s < p; ++s) {
        const std::uint32_t arg = mod_add(mod_mul(a.value(), s, p), mod_inv(s, p), p);
        std::complex<double> term = additive_char(field.element(arg));
        if (psi == MultChar::quadratic && legendre_symbol(s, p) < 0) term = -term;
        acc += term;
    }
    return acc;
}

std::complex<double> sphere_hat_closed_form(const PrimeField& field, int d, FieldElement t,
                                            const Point& l) {
    const std::uint32_t p = field.modulus();
    if (t.modulus() != p || l.modulus() != p || l.dim() != d)
        throw std::invalid_argument("arguments from a different space");

    const double sqrt_q = std::sqrt(static_cast<double>(p));
    const std::complex<double> unit_q = gauss_sum(field.one()) / sqrt_q;
    std::complex<double> q_pow_d{1.0, 0.0};
    for (int i = 0; i < d; ++i) q_pow_d *= unit_q;

    const std::uint32_t norm_l = norm(l).value();
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t j = 1; j < p; ++j) {
        const std::uint32_t quarter = mod_inv(mod_mul(4 % p, j, p), p);
        const std::uint32_t arg = mod_add(mod_mul(norm_l, quarter, p), mod_mul(j, t.value(), p), p);
        std::complex<double> term = additive_char(field.element(arg));
        if (d % 2 == 1 && legendre_symbol(mod_neg(j, p), p) < 0) term = -term;
        acc += term;
    }

    const double coeff = std::pow(static_cast<double>(p), -(static_cast<double>(d) + 2.0) / 2.0);
    std::complex<double> result = q_pow_d * coeff * acc;

    bool l_is_zero = true;
    for (int j = 0; j < d; ++j)
        if (l.coord(j) != 0) l_is_zero = false;
    if (l_is_zero) result += 1.0 / static_cast<double>(p);
    return result;
}

SphereDecayAudit sphere_hat_decay_audit(const PrimeField& field, int d, int workers) {
    const std::uint32_t q = field.modulus();
    const std::uint64_t n = grid_size(field, d);
    const double scale = std::pow(static_cast<double>(q), (static_cast<double>(d) + 1.0) / 2.0);

    SphereDecayAudit audit{0.0, 0, 0, 0.0};
    for (std::uint32_t t = 1; t < q; ++t) {
        const FieldElement radius = field.element(t);
        const SpectralGrid hat =
            forward(SpectralGrid::indicator(sphere_indicator(field, d, radius)), workers);
        for (std::uint64_t m = 1; m < n; ++m) {
            const double ratio = scale * std::abs(hat[m]);
            if (ratio > audit.max_ratio) {
                audit.max_ratio = ratio;
                audit.worst_t = t;
                audit.worst_m = m;
            }
        }
        for (std::uint64_t m = 0; m < n; ++m) {
            const double dev =
                std::abs(sphere_hat_closed_form(field, d, radius, point_from_index(field, d, m)) -
                         hat[m]);
            if (dev > audit.max_closed_form_dev) audit.max_closed_form_dev = dev;
        }
    }
    return audit;
}

} // namespace fqgeom
