#pragma once

#include <complex>
#include <cstdint>

#include "fqgeom/field.hpp"
#include "fqgeom/geom.hpp"

namespace fqgeom {

// The two multiplicative characters the sphere formula consumes.
enum class MultChar { trivial, quadratic };

// sum_c chi(j c^2). Magnitude exactly sqrt(q) for j != 0; equals
// eta(j) * gauss_sum(1).
std::complex<double> gauss_sum(FieldElement j);

// K(a) = sum_{s != 0} chi(a s + s^{-1}) psi(s). Weil: |K(a)| <= 2 sqrt(q)
// for a != 0.
std::complex<double> kloosterman_sum(FieldElement a, MultChar psi);

// The explicit j-sum for the sphere Fourier coefficient S_t^(l):
//   q^{-1} delta(l) + Q^d q^{-(d+2)/2} sum_{j != 0} chi(|l|/(4j) + j t) eta^d(-j)
// with Q = gauss_sum(1) / sqrt(q). Agrees with forward(sphere indicator).
std::complex<double> sphere_hat_closed_form(const PrimeField& field, int d, FieldElement t,
                                            const Point& l);

struct SphereDecayAudit {
    double max_ratio;            // max over t != 0, m != 0 of q^{(d+1)/2} |S_t^(m)|
    std::uint32_t worst_t;
    std::uint64_t worst_m;
    double max_closed_form_dev;  // max |closed form - direct transform| over all (t != 0, l)
};

SphereDecayAudit sphere_hat_decay_audit(const PrimeField& field, int d, int workers = 1);

} // namespace fqgeom
