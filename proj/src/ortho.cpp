#include "fqgeom/ortho.hpp"

#include <algorithm>
#include <unordered_set>

#include "fqgeom/budget.hpp"

namespace fqgeom {

namespace {

using u128 = unsigned __int128;

std::uint32_t column_dot(const std::vector<Point>& cols, const Point& cand, int i,
                         std::uint32_t p) {
    std::uint32_t acc = 0;
    for (int j = 0; j < cand.dim(); ++j)
        acc = mod_add(acc, mod_mul(cols[static_cast<std::size_t>(i)].coord(j), cand.coord(j), p),
                      p);
    return acc;
}

void extend_columns(const PrimeField& field, int d, const std::vector<Point>& unit_sphere,
                    std::vector<Point>& cols, std::vector<SquareMatrix>& out) {
    const std::uint32_t p = field.modulus();
    if (static_cast<int>(cols.size()) == d) {
        SquareMatrix m(field, d);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) m.set(r, c, cols[static_cast<std::size_t>(c)].coord(r));
        out.push_back(m);
        return;
    }
    for (const Point& cand : unit_sphere) {
        bool ok = true;
        for (int i = 0; i < static_cast<int>(cols.size()); ++i)
            if (column_dot(cols, cand, i, p) != 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cols.push_back(cand);
        extend_columns(field, d, unit_sphere, cols, out);
        cols.pop_back();
    }
}

} // namespace

OrthogonalGroup enumerate_orthogonal_group(const PrimeField& field, int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension must be in [1, 6]");
    u128 full_scan = 1;
    for (int i = 0; i < d * d; ++i) {
        full_scan *= field.modulus();
        if (full_scan > enumeration_budget())
            throw std::length_error("enumeration budget exceeded (p^(d^2) too large)");
    }

    OrthogonalGroup group{field, d, {}};
    const std::vector<Point> unit_sphere = enumerate_sphere(field, d, field.one());
    std::vector<Point> cols;
    cols.reserve(static_cast<std::size_t>(d));
    extend_columns(field, d, unit_sphere, cols, group.elements);
    return group;
}

std::vector<Point> orbit(const OrthogonalGroup& group, const Point& v) {
    std::unordered_set<std::uint64_t> seen;
    for (const SquareMatrix& a : group.elements) seen.insert(point_index(a.apply(v)));
    std::vector<std::uint64_t> indices(seen.begin(), seen.end());
    std::sort(indices.begin(), indices.end());
    std::vector<Point> out;
    out.reserve(indices.size());
    for (std::uint64_t idx : indices) out.push_back(point_from_index(group.field, group.d, idx));
    return out;
}

std::uint64_t stabilizer_size(const OrthogonalGroup& group, const Point& v) {
    std::uint64_t count = 0;
    for (const SquareMatrix& a : group.elements)
        if (a.apply(v) == v) ++count;
    return count;
}

HingeStabilizerReport hinge_stabilizer_size(const OrthogonalGroup& group, const DenseSet& set,
                                            const Point& x, const HingeSpec& spec) {
    if (x.modulus() != set.field().modulus() || x.dim() != set.dim())
        throw std::invalid_argument("hinge vertex does not belong to this grid");
    if (group.field != set.field() || group.d != set.dim())
        throw std::invalid_argument("group and set live on different spaces");

    // Centered slices, one index set per prescribed distance.
    std::vector<std::unordered_set<std::uint64_t>> slices;
    bool empty_slice = false;
    for (const FieldElement& alpha : spec.alphas) {
        std::unordered_set<std::uint64_t> centered;
        for (const Point& y : sphere_slice(set, x, alpha).members)
            centered.insert(point_index(y - x));
        if (centered.empty()) empty_slice = true;
        slices.push_back(std::move(centered));
    }

    std::uint64_t count = 0;
    for (const SquareMatrix& a : group.elements) {
        bool preserves = true;
        for (const auto& slice : slices) {
            for (std::uint64_t idx : slice) {
                const Point u = point_from_index(group.field, group.d, idx);
                if (!slice.count(point_index(a.apply(u)))) {
                    preserves = false;
                    break;
                }
            }
            if (!preserves) break;
        }
        if (preserves) ++count;
    }
    return {count, empty_slice};
}

} // namespace fqgeom
