#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fqgeom/geom.hpp"
#include "fqgeom/matrix.hpp"

namespace fqgeom {

// r-hinge specification: r - 1 prescribed nonzero distances about a common
// vertex.
struct HingeSpec {
    int r;
    std::vector<FieldElement> alphas;

    HingeSpec(int r, std::vector<FieldElement> alphas);
};

enum class ConvBackend { direct, transform };

// c_t(x) = |E intersect (x - S_t)| for every x, as exact integers. The
// transform backend rounds and validates each entry, falling back to the
// direct convolution if any entry is off by more than 1e-6.
std::vector<std::int64_t> sphere_intersection_counts(const DenseSet& set, FieldElement t,
                                                     ConvBackend backend = ConvBackend::transform,
                                                     int workers = 1);

// |H_{r,alpha}| = sum_{x in E} prod_i c_{alpha_i}(x); exact since the x^i
// range independently given x.
std::uint64_t count_hinges(const DenseSet& set, const HingeSpec& spec, int workers = 1);

// |E|^r / q^{r-1}.
double hinge_main_term(std::uint64_t set_size, int r, std::uint32_t q);

struct HingeReport {
    std::uint64_t exact;
    double main_term;
    double relative_error;
};
HingeReport hinge_report(const DenseSet& set, const HingeSpec& spec);

// The x in E maximizing the hinge count about it (max >= mean).
std::pair<Point, std::uint64_t> max_hinge_point(const DenseSet& set, const HingeSpec& spec);

// Ordered pairwise-norm tuple (a_01, a_02, ..., a_0k, a_12, ..., a_{k-1,k});
// a complete congruence invariant for non-degenerate tuples.
class DistanceVector {
public:
    DistanceVector(int k, std::vector<std::uint32_t> entries, std::uint32_t p);

    int k() const { return k_; }
    std::uint32_t modulus() const { return p_; }
    std::span<const std::uint32_t> entries() const { return entries_; }

    friend bool operator==(const DistanceVector&, const DistanceVector&) = default;

    struct Hash {
        std::size_t operator()(const DistanceVector& v) const;
    };

private:
    int k_;
    std::uint32_t p_;
    std::vector<std::uint32_t> entries_;
};

DistanceVector distance_vector(std::span<const Point> tuple);

// Rank over F_q of {V_i - V_0}; the tuple is a non-degenerate k-simplex iff
// rank = k.
int rank_of_simplex(std::span<const Point> tuple);

struct Isometry {
    SquareMatrix rotation;
    Point translation;

    Point apply(const Point& x) const { return rotation.apply(x) + translation; }
};

// Recover the unique isometry T x + tau with T V_i + tau = W_i. Requires a
// spanning simplex (k = d, full rank) and equal distance vectors; the
// recovered T satisfies T^T T = I exactly.
Isometry recover_isometry(std::span<const Point> v, std::span<const Point> w);

// |R_a(E)|: labeled (k+1)-tuples from E realizing the prescribed distance
// vector. Exhaustive; throws std::length_error past the tuple budget.
std::uint64_t count_congruent_copies(const DenseSet& set, const DistanceVector& a);

enum class CensusMode { exact, sampled };

struct CensusResult {
    std::uint64_t distinct_classes;           // |T_k(E)| (lower bound in sampled mode)
    std::uint64_t distinct_classes_unordered; // secondary statistic: quotient by relabeling
    std::uint64_t degenerate_tuples;          // tuples of rank < k, excluded from classes
    CensusMode mode;
    std::uint64_t samples;
};

// Distinct distance vectors among non-degenerate (k+1)-tuples from E.
// Sampled mode draws seeded uniform tuples; its count is a certified lower
// bound for |T_k(E)|.
CensusResult simplex_census(const DenseSet& set, int k, CensusMode mode = CensusMode::exact,
                            std::uint64_t samples = 0, std::uint64_t seed = 0);

} // namespace fqgeom
