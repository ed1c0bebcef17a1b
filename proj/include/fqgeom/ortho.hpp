#pragma once

#include <cstdint>
#include <vector>

#include "fqgeom/configs.hpp"
#include "fqgeom/geom.hpp"
#include "fqgeom/matrix.hpp"

namespace fqgeom {

// Every d x d matrix A over F_p with A^T A = I, enumerated explicitly.
struct OrthogonalGroup {
    PrimeField field;
    int d;
    std::vector<SquareMatrix> elements;

    std::uint64_t order() const { return elements.size(); }
};

// Column-by-column scan with early rejection: column i must lie on S_1 and
// be orthogonal to the previous columns. Throws std::length_error when
// p^(d^2) exceeds the enumeration budget.
OrthogonalGroup enumerate_orthogonal_group(const PrimeField& field, int d);

// Orbit of v under the group, as distinct points in index order.
std::vector<Point> orbit(const OrthogonalGroup& group, const Point& v);
std::uint64_t stabilizer_size(const OrthogonalGroup& group, const Point& v);

struct HingeStabilizerReport {
    std::uint64_t size;  // |M_{x,alpha}|
    bool empty_slice;    // some slice was empty (vacuously preserved)
};

// Matrices mapping each centered sphere slice {y - x : y in E, |y - x| = a_i}
// to itself setwise.
HingeStabilizerReport hinge_stabilizer_size(const OrthogonalGroup& group, const DenseSet& set,
                                            const Point& x, const HingeSpec& spec);

} // namespace fqgeom
