#include "fqgeom/field.hpp"

namespace fqgeom {

bool is_odd_prime(std::uint32_t n) {
    if (n < 3 || n % 2 == 0) return false;
    for (std::uint64_t f = 3; f * f <= n; f += 2) {
        if (n % f == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31)) throw std::invalid_argument("modulus must be < 2^31");
    if (!is_odd_prime(p)) throw std::invalid_argument("modulus must be an odd prime >= 3");
}

} // namespace fqgeom
