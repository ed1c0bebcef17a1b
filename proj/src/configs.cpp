#include "fqgeom/configs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "fqgeom/budget.hpp"
#include "fqgeom/fourier.hpp"
#include "fqgeom/rng.hpp"

namespace fqgeom {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    const u128 prod = static_cast<u128>(a) * b;
    if (prod > ~std::uint64_t{0}) throw std::overflow_error("count exceeds 64 bits");
    return static_cast<std::uint64_t>(prod);
}

std::vector<std::int64_t> direct_counts(const DenseSet& set, FieldElement t) {
    const PrimeField field = set.field();
    const std::uint32_t q = field.modulus();
    const int d = set.dim();
    const std::uint64_t n = set.space_size();

    const std::vector<Point> sphere = enumerate_sphere(field, d, t);
    std::vector<std::int64_t> counts(n, 0);
    // Pre-flattened sphere coordinates; one subtraction per axis per term.
    std::vector<std::uint32_t> sp(sphere.size() * static_cast<std::size_t>(d));
    for (std::size_t s = 0; s < sphere.size(); ++s)
        for (int j = 0; j < d; ++j)
            sp[s * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = sphere[s].coord(j);

    std::array<std::uint64_t, kMaxDim> place{};
    std::uint64_t pw = 1;
    for (int j = 0; j < d; ++j) {
        place[static_cast<std::size_t>(j)] = pw;
        pw *= q;
    }

    std::array<std::uint32_t, kMaxDim> x{};
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        std::int64_t c = 0;
        for (std::size_t s = 0; s < sphere.size(); ++s) {
            std::uint64_t yidx = 0;
            for (int j = 0; j < d; ++j) {
                const std::uint32_t diff =
                    mod_sub(x[static_cast<std::size_t>(j)],
                            sp[s * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)], q);
                yidx += diff * place[static_cast<std::size_t>(j)];
            }
            c += set.contains_index(yidx) ? 1 : 0;
        }
        counts[idx] = c;
        for (int j = 0; j < d; ++j) {
            if (++x[static_cast<std::size_t>(j)] < q) break;
            x[static_cast<std::size_t>(j)] = 0;
        }
    }
    return counts;
}

bool transform_counts(const DenseSet& set, FieldElement t, int workers,
                      std::vector<std::int64_t>& out) {
    const std::uint64_t n = set.space_size();
    const SpectralGrid e_hat = forward(SpectralGrid::indicator(set), workers);
    const SpectralGrid s_hat =
        forward(SpectralGrid::indicator(sphere_indicator(set.field(), set.dim(), t)), workers);

    SpectralGrid product(set.field(), set.dim(), Side::frequency);
    for (std::uint64_t i = 0; i < n; ++i) product[i] = e_hat[i] * s_hat[i];
    const SpectralGrid conv = inverse(product, workers);

    out.assign(n, 0);
    const double scale = static_cast<double>(n); // q^d
    for (std::uint64_t i = 0; i < n; ++i) {
        const double raw = conv[i].real() * scale;
        const double rounded = std::nearbyint(raw);
        if (std::abs(raw - rounded) >= 1e-6 || std::abs(conv[i].imag() * scale) >= 1e-6)
            return false;
        out[i] = static_cast<std::int64_t>(rounded);
    }
    return true;
}

} // namespace

HingeSpec::HingeSpec(int r_, std::vector<FieldElement> alphas_)
    : r(r_), alphas(std::move(alphas_)) {
    if (r < 2 || r > 8) throw std::invalid_argument("hinge arity r must be in [2, 8]");
    if (alphas.size() != static_cast<std::size_t>(r - 1))
        throw std::invalid_argument("hinge spec needs r - 1 distances");
    for (const FieldElement& a : alphas) {
        if (a.modulus() != alphas.front().modulus())
            throw std::invalid_argument("hinge distances from mixed fields");
        if (a.is_zero()) throw std::invalid_argument("hinge distances must be nonzero");
    }
}

std::vector<std::int64_t> sphere_intersection_counts(const DenseSet& set, FieldElement t,
                                                     ConvBackend backend, int workers) {
    if (t.modulus() != set.field().modulus())
        throw std::invalid_argument("radius from a different field");
    if (t.is_zero()) throw std::invalid_argument("t = 0 sphere excluded from counting");

    if (backend == ConvBackend::transform) {
        std::vector<std::int64_t> counts;
        if (transform_counts(set, t, workers, counts)) return counts;
        // Rounding validation failed; recompute exactly.
    }
    return direct_counts(set, t);
}

namespace {

// Per-alpha count grids, deduplicated.
std::vector<const std::vector<std::int64_t>*> alpha_grids(
    const DenseSet& set, const HingeSpec& spec, int workers,
    std::map<std::uint32_t, std::vector<std::int64_t>>& storage) {
    for (const FieldElement& a : spec.alphas) {
        if (a.modulus() != set.field().modulus())
            throw std::invalid_argument("hinge distances from a different field");
        if (!storage.count(a.value()))
            storage.emplace(a.value(),
                            sphere_intersection_counts(set, a, ConvBackend::transform, workers));
    }
    std::vector<const std::vector<std::int64_t>*> grids;
    grids.reserve(spec.alphas.size());
    for (const FieldElement& a : spec.alphas) grids.push_back(&storage.at(a.value()));
    return grids;
}

std::uint64_t hinge_product_at(const std::vector<const std::vector<std::int64_t>*>& grids,
                               std::uint64_t idx) {
    std::uint64_t prod = 1;
    for (const auto* g : grids) {
        prod = checked_mul(prod, static_cast<std::uint64_t>((*g)[idx]));
        if (prod == 0) return 0;
    }
    return prod;
}

} // namespace

std::uint64_t count_hinges(const DenseSet& set, const HingeSpec& spec, int workers) {
    std::map<std::uint32_t, std::vector<std::int64_t>> storage;
    const auto grids = alpha_grids(set, spec, workers, storage);
    const std::vector<std::uint64_t> members = set.member_indices();

    std::uint64_t total = 0;
    for (std::uint64_t idx : members) {
        const u128 next = static_cast<u128>(total) + hinge_product_at(grids, idx);
        if (next > ~std::uint64_t{0}) throw std::overflow_error("hinge count exceeds 64 bits");
        total = static_cast<std::uint64_t>(next);
    }
    return total;
}

double hinge_main_term(std::uint64_t set_size, int r, std::uint32_t q) {
    return std::pow(static_cast<double>(set_size), r) /
           std::pow(static_cast<double>(q), r - 1);
}

HingeReport hinge_report(const DenseSet& set, const HingeSpec& spec) {
    HingeReport rep{};
    rep.exact = count_hinges(set, spec);
    rep.main_term = hinge_main_term(set.size(), spec.r, set.field().modulus());
    rep.relative_error = rep.main_term > 0.0
                             ? std::abs(static_cast<double>(rep.exact) / rep.main_term - 1.0)
                             : (rep.exact == 0 ? 0.0 : HUGE_VAL);
    return rep;
}

std::pair<Point, std::uint64_t> max_hinge_point(const DenseSet& set, const HingeSpec& spec) {
    if (set.size() == 0) throw std::invalid_argument("max_hinge_point requires a nonempty set");
    std::map<std::uint32_t, std::vector<std::int64_t>> storage;
    const auto grids = alpha_grids(set, spec, 1, storage);

    std::uint64_t best_idx = 0;
    std::uint64_t best = 0;
    bool first = true;
    for (std::uint64_t idx : set.member_indices()) {
        const std::uint64_t prod = hinge_product_at(grids, idx);
        if (first || prod > best) {
            best = prod;
            best_idx = idx;
            first = false;
        }
    }
    return {point_from_index(set.field(), set.dim(), best_idx), best};
}

DistanceVector::DistanceVector(int k, std::vector<std::uint32_t> entries, std::uint32_t p)
    : k_(k), p_(p), entries_(std::move(entries)) {
    const std::size_t expected = static_cast<std::size_t>(k) * (k + 1) / 2;
    if (k < 1) throw std::invalid_argument("simplex dimension k must be >= 1");
    if (entries_.size() != expected)
        throw std::invalid_argument("distance vector needs (k+1 choose 2) entries");
    for (std::uint32_t e : entries_)
        if (e >= p) throw std::invalid_argument("distance entry out of range");
}

std::size_t DistanceVector::Hash::operator()(const DistanceVector& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ v.modulus();
    for (std::uint32_t e : v.entries()) {
        h ^= e;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

DistanceVector distance_vector(std::span<const Point> tuple) {
    if (tuple.size() < 2) throw std::invalid_argument("distance vector needs at least 2 points");
    const int k = static_cast<int>(tuple.size()) - 1;
    std::vector<std::uint32_t> entries;
    entries.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
    for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            entries.push_back(dist(tuple[static_cast<std::size_t>(i)],
                                   tuple[static_cast<std::size_t>(j)])
                                  .value());
    return DistanceVector(k, std::move(entries), tuple[0].modulus());
}

namespace {

// Row-reduce k difference vectors of dimension d over F_p.
int rank_of_rows(std::uint32_t p, int k, int d,
                 std::array<std::uint32_t, kMaxDim * kMaxDim>& rows) {
    int rank = 0;
    for (int col = 0; col < d && rank < k; ++col) {
        int pivot = -1;
        for (int r = rank; r < k; ++r)
            if (rows[static_cast<std::size_t>(r * d + col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < d; ++j)
            std::swap(rows[static_cast<std::size_t>(pivot * d + j)],
                      rows[static_cast<std::size_t>(rank * d + j)]);
        const std::uint32_t inv_p = mod_inv(rows[static_cast<std::size_t>(rank * d + col)], p);
        for (int j = 0; j < d; ++j)
            rows[static_cast<std::size_t>(rank * d + j)] =
                mod_mul(rows[static_cast<std::size_t>(rank * d + j)], inv_p, p);
        for (int r = rank + 1; r < k; ++r) {
            const std::uint32_t f = rows[static_cast<std::size_t>(r * d + col)];
            if (f == 0) continue;
            for (int j = 0; j < d; ++j)
                rows[static_cast<std::size_t>(r * d + j)] =
                    mod_sub(rows[static_cast<std::size_t>(r * d + j)],
                            mod_mul(f, rows[static_cast<std::size_t>(rank * d + j)], p), p);
        }
        ++rank;
    }
    return rank;
}

} // namespace

int rank_of_simplex(std::span<const Point> tuple) {
    if (tuple.size() < 2) return 0;
    const int k = static_cast<int>(tuple.size()) - 1;
    const int d = tuple[0].dim();
    const std::uint32_t p = tuple[0].modulus();
    if (k > kMaxDim) throw std::invalid_argument("simplex too large");
    std::array<std::uint32_t, kMaxDim * kMaxDim> rows{};
    for (int i = 0; i < k; ++i) {
        const Point diff = tuple[static_cast<std::size_t>(i + 1)] - tuple[0];
        for (int j = 0; j < d; ++j) rows[static_cast<std::size_t>(i * d + j)] = diff.coord(j);
    }
    return rank_of_rows(p, k, d, rows);
}

Isometry recover_isometry(std::span<const Point> v, std::span<const Point> w) {
    if (v.size() != w.size() || v.size() < 2)
        throw std::invalid_argument("simplex tuples of equal size >= 2 required");
    const int k = static_cast<int>(v.size()) - 1;
    const int d = v[0].dim();
    const PrimeField field = v[0].field();
    const std::uint32_t p = field.modulus();
    if (w[0].dim() != d || w[0].modulus() != p)
        throw std::invalid_argument("tuples live on different spaces");
    if (k != d) throw std::invalid_argument("recover_isometry requires a spanning simplex (k = d)");
    if (rank_of_simplex(v) != d) throw std::invalid_argument("degenerate simplex");
    if (!(distance_vector(v) == distance_vector(w)))
        throw std::invalid_argument("distance vectors differ");

    // Equal distances force equal Gram matrices of the difference vectors
    // (char != 2); checked here because T^T T = I rests on it.
    auto dot = [p](const Point& a, const Point& b) {
        std::uint32_t acc = 0;
        for (int j = 0; j < a.dim(); ++j)
            acc = mod_add(acc, mod_mul(a.coord(j), b.coord(j), p), p);
        return acc;
    };
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j) {
            const std::uint32_t gv = dot(v[static_cast<std::size_t>(i)] - v[0],
                                         v[static_cast<std::size_t>(j)] - v[0]);
            const std::uint32_t gw = dot(w[static_cast<std::size_t>(i)] - w[0],
                                         w[static_cast<std::size_t>(j)] - w[0]);
            if (gv != gw) throw std::invalid_argument("distance vectors differ");
        }

    SquareMatrix basis_v(field, d), basis_w(field, d);
    for (int i = 1; i <= d; ++i) {
        const Point dv = v[static_cast<std::size_t>(i)] - v[0];
        const Point dw = w[static_cast<std::size_t>(i)] - w[0];
        for (int row = 0; row < d; ++row) {
            basis_v.set(row, i - 1, dv.coord(row));
            basis_w.set(row, i - 1, dw.coord(row));
        }
    }
    const auto basis_v_inv = inverse(basis_v);
    if (!basis_v_inv) throw std::invalid_argument("degenerate simplex");
    const SquareMatrix rotation = basis_w * (*basis_v_inv);

    if (!(rotation.transposed() * rotation).is_identity())
        throw std::logic_error("recovered map is not orthogonal");

    const Point translation = w[0] - rotation.apply(v[0]);
    Isometry iso{rotation, translation};
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(iso.apply(v[i]) == w[i])) throw std::logic_error("recovered map misses a vertex");
    return iso;
}

namespace {

struct TupleScan {
    const DenseSet& set;
    int k;
    std::vector<Point> pts;          // decoded members
    std::vector<std::uint32_t> dist_table; // m x m pairwise norms, when built
    std::uint64_t m;

    explicit TupleScan(const DenseSet& s, int k_) : set(s), k(k_), m(s.size()) {
        pts.reserve(m);
        for (const Point& x : s.members()) pts.push_back(x);
        if (m > 0 && m <= 2048) {
            dist_table.resize(m * m);
            for (std::uint64_t i = 0; i < m; ++i)
                for (std::uint64_t j = 0; j < m; ++j)
                    dist_table[i * m + j] = dist(pts[i], pts[j]).value();
        }
    }

    std::uint32_t dist_at(std::uint64_t i, std::uint64_t j) const {
        if (!dist_table.empty()) return dist_table[i * m + j];
        return dist(pts[i], pts[j]).value();
    }

    bool degenerate(std::span<const std::uint64_t> tuple) const {
        const int d = set.dim();
        const std::uint32_t p = set.field().modulus();
        std::array<std::uint32_t, kMaxDim * kMaxDim> rows{};
        for (int i = 0; i < k; ++i) {
            const Point diff = pts[tuple[static_cast<std::size_t>(i + 1)]] - pts[tuple[0]];
            for (int j = 0; j < d; ++j) rows[static_cast<std::size_t>(i * d + j)] = diff.coord(j);
        }
        return rank_of_rows(p, k, d, rows) != k;
    }

    DistanceVector vector_of(std::span<const std::uint64_t> tuple) const {
        std::vector<std::uint32_t> entries;
        entries.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                entries.push_back(dist_at(tuple[static_cast<std::size_t>(i)],
                                          tuple[static_cast<std::size_t>(j)]));
        return DistanceVector(k, std::move(entries), set.field().modulus());
    }
};

std::uint64_t tuple_count_or_throw(std::uint64_t m, int k_plus_1) {
    u128 total = 1;
    for (int i = 0; i < k_plus_1; ++i) {
        total *= m;
        if (total > tuple_budget())
            throw std::length_error("tuple budget exceeded; use the sampled census");
    }
    return static_cast<std::uint64_t>(total);
}

// Lexicographically minimal relabeling of a distance vector; quotient key
// for the secondary unordered statistic.
std::vector<std::uint32_t> canonical_relabeling(const DistanceVector& v) {
    const int k = v.k();
    std::vector<int> perm(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) perm[static_cast<std::size_t>(i)] = i;
    auto entry = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        // index of (i, j), i < j, in the row-major i<j ordering
        int idx = 0;
        for (int a = 0; a < i; ++a) idx += k - a;
        idx += j - i - 1;
        return v.entries()[static_cast<std::size_t>(idx)];
    };
    std::vector<std::uint32_t> best;
    do {
        std::vector<std::uint32_t> cur;
        cur.reserve(v.entries().size());
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                cur.push_back(entry(perm[static_cast<std::size_t>(i)],
                                    perm[static_cast<std::size_t>(j)]));
        if (best.empty() || cur < best) best = std::move(cur);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint32_t e : v) {
            h ^= e;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace

std::uint64_t count_congruent_copies(const DenseSet& set, const DistanceVector& a) {
    if (a.modulus() != set.field().modulus())
        throw std::invalid_argument("distance vector from a different field");
    const int k = a.k();
    const std::uint64_t m = set.size();
    if (m == 0) return 0;
    tuple_count_or_throw(m, k + 1);

    TupleScan scan(set, k);
    std::vector<std::uint64_t> tuple(static_cast<std::size_t>(k) + 1, 0);
    std::uint64_t count = 0;
    while (true) {
        // Compare entries on the fly with early exit.
        bool match = true;
        std::size_t e = 0;
        for (int i = 0; i <= k && match; ++i)
            for (int j = i + 1; j <= k; ++j, ++e)
                if (scan.dist_at(tuple[static_cast<std::size_t>(i)],
                                 tuple[static_cast<std::size_t>(j)]) != a.entries()[e]) {
                    match = false;
                    break;
                }
        if (match) ++count;

        int pos = k;
        while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == m)
            tuple[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return count;
}

CensusResult simplex_census(const DenseSet& set, int k, CensusMode mode, std::uint64_t samples,
                            std::uint64_t seed) {
    if (k < 1 || k > set.dim())
        throw std::invalid_argument("simplex dimension k must be in [1, d]");
    const std::uint64_t m = set.size();

    if (mode == CensusMode::exact && m > 0) tuple_count_or_throw(m, k + 1);

    CensusResult result{0, 0, 0, mode, 0};
    std::unordered_set<DistanceVector, DistanceVector::Hash> classes;
    TupleScan scan(set, k);
    std::vector<std::uint64_t> tuple(static_cast<std::size_t>(k) + 1, 0);

    if (mode == CensusMode::exact) {
        if (m > 0) {
            while (true) {
                if (scan.degenerate(tuple))
                    ++result.degenerate_tuples;
                else
                    classes.insert(scan.vector_of(tuple));
                int pos = k;
                while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == m)
                    tuple[static_cast<std::size_t>(pos--)] = 0;
                if (pos < 0) break;
            }
        }
    } else {
        result.samples = samples;
        for (std::uint64_t i = 0; i < samples && m > 0; ++i) {
            Rng rng = substream(seed, i);
            for (int j = 0; j <= k; ++j) tuple[static_cast<std::size_t>(j)] = rng.next_below(m);
            if (scan.degenerate(tuple))
                ++result.degenerate_tuples;
            else
                classes.insert(scan.vector_of(tuple));
        }
    }

    result.distinct_classes = classes.size();
    std::unordered_set<std::vector<std::uint32_t>, VecHash> unordered;
    for (const DistanceVector& v : classes) unordered.insert(canonical_relabeling(v));
    result.distinct_classes_unordered = unordered.size();
    return result;
}

} // namespace fqgeom
