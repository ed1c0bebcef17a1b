#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fqgeom/field.hpp"

namespace fqgeom {

inline constexpr int kMaxDim = 6;
inline constexpr std::uint64_t kMaxGridPoints = std::uint64_t{1} << 26;

// q^d with the kMaxGridPoints cap enforced; throws std::length_error beyond it.
std::uint64_t grid_size(const PrimeField& field, int d);

// A d-tuple over F_p, 1 <= d <= kMaxDim.
class Point {
public:
    Point(const PrimeField& field, std::span<const std::uint32_t> coords);
    Point(const PrimeField& field, std::initializer_list<std::uint32_t> coords);
    static Point zero(const PrimeField& field, int d);

    int dim() const { return d_; }
    std::uint32_t modulus() const { return p_; }
    PrimeField field() const { return PrimeField(p_); }
    std::uint32_t coord(int j) const { return c_[static_cast<std::size_t>(j)]; }

    friend Point operator+(const Point& a, const Point& b);
    friend Point operator-(const Point& a, const Point& b);
    friend Point operator-(const Point& a);
    friend bool operator==(const Point&, const Point&) = default;

private:
    Point(std::uint32_t p, int d) : p_(p), d_(d), c_{} {}
    static void require_compatible(const Point& a, const Point& b);

    std::uint32_t p_;
    int d_;
    std::array<std::uint32_t, kMaxDim> c_;
};

// The quadratic form sum x_j^2 over F_p. Not a metric: nonzero points may
// have norm zero.
FieldElement norm(const Point& x);
FieldElement dist(const Point& x, const Point& y);

// Fixed little-endian base-q bijection x <-> sum x_j q^j.
std::uint64_t point_index(const Point& x);
Point point_from_index(const PrimeField& field, int d, std::uint64_t index);

// Dense indicator of a subset E of F_p^d, bit per point in index order.
class DenseSet {
public:
    DenseSet(const PrimeField& field, int d);
    static DenseSet full(const PrimeField& field, int d);
    // Bernoulli(rho) per point from a seeded generator; same seed, same set.
    static DenseSet random(const PrimeField& field, int d, double rho, std::uint64_t seed);
    static DenseSet from_points(const PrimeField& field, int d, std::span<const Point> pts);

    void insert(const Point& x);
    void insert_index(std::uint64_t index);
    bool contains(const Point& x) const;
    bool contains_index(std::uint64_t index) const {
        return (words_[index >> 6] >> (index & 63)) & 1u;
    }

    std::uint64_t size() const { return cardinality_; }
    std::uint64_t space_size() const { return n_; }
    int dim() const { return d_; }
    PrimeField field() const { return field_; }

    std::vector<std::uint64_t> member_indices() const;
    std::vector<Point> members() const;

    friend bool operator==(const DenseSet&, const DenseSet&) = default;

private:
    PrimeField field_;
    int d_;
    std::uint64_t n_;
    std::uint64_t cardinality_ = 0;
    std::vector<std::uint64_t> words_;
};

// All points of norm t, in index order. t = 0 is representable here; the
// counting entry points reject it.
std::vector<Point> enumerate_sphere(const PrimeField& field, int d, FieldElement t);
DenseSet sphere_indicator(const PrimeField& field, int d, FieldElement t);
// |S_t| for every t in one scan, indexed by t.
std::vector<std::uint64_t> sphere_size_histogram(const PrimeField& field, int d);

// Points of E at prescribed distance from a center.
struct SphereSlice {
    Point center;
    FieldElement radius;
    std::vector<Point> members;
};
SphereSlice sphere_slice(const DenseSet& set, const Point& center, FieldElement radius);

// fqset text format: header line "p d", then one point per line as d base-10
// coordinates in [0, p). '#' starts a comment line; duplicates collapse.
DenseSet load_set(std::istream& in);
DenseSet load_set(const std::string& path);
void save_set(const DenseSet& set, std::ostream& out);
void save_set(const DenseSet& set, const std::string& path);

} // namespace fqgeom
