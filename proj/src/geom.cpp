#include "fqgeom/geom.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fqgeom/rng.hpp"

namespace fqgeom {

std::uint64_t grid_size(const PrimeField& field, int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension must be in [1, 6]");
    std::uint64_t n = 1;
    for (int j = 0; j < d; ++j) {
        n *= field.modulus();
        if (n > kMaxGridPoints) throw std::length_error("grid exceeds 2^26 points");
    }
    return n;
}

Point::Point(const PrimeField& field, std::span<const std::uint32_t> coords)
    : p_(field.modulus()), d_(static_cast<int>(coords.size())), c_{} {
    if (d_ < 1 || d_ > kMaxDim) throw std::invalid_argument("dimension must be in [1, 6]");
    for (int j = 0; j < d_; ++j) {
        if (coords[static_cast<std::size_t>(j)] >= p_)
            throw std::invalid_argument("coordinate out of range");
        c_[static_cast<std::size_t>(j)] = coords[static_cast<std::size_t>(j)];
    }
}

Point::Point(const PrimeField& field, std::initializer_list<std::uint32_t> coords)
    : Point(field, std::span<const std::uint32_t>(coords.begin(), coords.size())) {}

Point Point::zero(const PrimeField& field, int d) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("dimension must be in [1, 6]");
    return Point(field.modulus(), d);
}

void Point::require_compatible(const Point& a, const Point& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("points have mismatched moduli");
    if (a.d_ != b.d_) throw std::invalid_argument("dimension mismatch");
}

Point operator+(const Point& a, const Point& b) {
    Point::require_compatible(a, b);
    Point r(a.p_, a.d_);
    for (int j = 0; j < a.d_; ++j)
        r.c_[static_cast<std::size_t>(j)] =
            mod_add(a.c_[static_cast<std::size_t>(j)], b.c_[static_cast<std::size_t>(j)], a.p_);
    return r;
}

Point operator-(const Point& a, const Point& b) {
    Point::require_compatible(a, b);
    Point r(a.p_, a.d_);
    for (int j = 0; j < a.d_; ++j)
        r.c_[static_cast<std::size_t>(j)] =
            mod_sub(a.c_[static_cast<std::size_t>(j)], b.c_[static_cast<std::size_t>(j)], a.p_);
    return r;
}

Point operator-(const Point& a) {
    Point r(a.p_, a.d_);
    for (int j = 0; j < a.d_; ++j)
        r.c_[static_cast<std::size_t>(j)] = mod_neg(a.c_[static_cast<std::size_t>(j)], a.p_);
    return r;
}

FieldElement norm(const Point& x) {
    const std::uint32_t p = x.modulus();
    std::uint32_t acc = 0;
    for (int j = 0; j < x.dim(); ++j) acc = mod_add(acc, mod_mul(x.coord(j), x.coord(j), p), p);
    return PrimeField(p).element(acc);
}

FieldElement dist(const Point& x, const Point& y) { return norm(x - y); }

std::uint64_t point_index(const Point& x) {
    std::uint64_t idx = 0;
    for (int j = x.dim() - 1; j >= 0; --j) idx = idx * x.modulus() + x.coord(j);
    return idx;
}

Point point_from_index(const PrimeField& field, int d, std::uint64_t index) {
    const std::uint32_t q = field.modulus();
    std::array<std::uint32_t, kMaxDim> c{};
    for (int j = 0; j < d; ++j) {
        c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(index % q);
        index /= q;
    }
    return Point(field, std::span<const std::uint32_t>(c.data(), static_cast<std::size_t>(d)));
}

DenseSet::DenseSet(const PrimeField& field, int d)
    : field_(field), d_(d), n_(grid_size(field, d)), words_((n_ + 63) / 64, 0) {}

DenseSet DenseSet::full(const PrimeField& field, int d) {
    DenseSet s(field, d);
    for (std::uint64_t i = 0; i < s.n_; ++i) s.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    s.cardinality_ = s.n_;
    return s;
}

DenseSet DenseSet::random(const PrimeField& field, int d, double rho, std::uint64_t seed) {
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must be in (0, 1]");
    DenseSet s(field, d);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < s.n_; ++i) {
        if (rng.next_unit() < rho) s.insert_index(i);
    }
    return s;
}

DenseSet DenseSet::from_points(const PrimeField& field, int d, std::span<const Point> pts) {
    DenseSet s(field, d);
    for (const Point& x : pts) s.insert(x);
    return s;
}

void DenseSet::insert(const Point& x) {
    if (x.modulus() != field_.modulus() || x.dim() != d_)
        throw std::invalid_argument("point does not belong to this grid");
    insert_index(point_index(x));
}

void DenseSet::insert_index(std::uint64_t index) {
    std::uint64_t& w = words_[index >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    if (!(w & bit)) {
        w |= bit;
        ++cardinality_;
    }
}

bool DenseSet::contains(const Point& x) const {
    if (x.modulus() != field_.modulus() || x.dim() != d_) return false;
    return contains_index(point_index(x));
}

std::vector<std::uint64_t> DenseSet::member_indices() const {
    std::vector<std::uint64_t> out;
    out.reserve(cardinality_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back((static_cast<std::uint64_t>(w) << 6) + static_cast<std::uint64_t>(b));
            bits &= bits - 1;
        }
    }
    return out;
}

std::vector<Point> DenseSet::members() const {
    std::vector<Point> out;
    out.reserve(cardinality_);
    for (std::uint64_t idx : member_indices()) out.push_back(point_from_index(field_, d_, idx));
    return out;
}

namespace {

// Odometer over coordinates in index order; avoids a full decode per point.
struct CoordScanner {
    std::uint32_t q;
    int d;
    std::array<std::uint32_t, kMaxDim> c{};

    void advance() {
        for (int j = 0; j < d; ++j) {
            if (++c[static_cast<std::size_t>(j)] < q) return;
            c[static_cast<std::size_t>(j)] = 0;
        }
    }

    std::uint32_t norm_value() const {
        std::uint64_t acc = 0;
        for (int j = 0; j < d; ++j) {
            const std::uint64_t v = c[static_cast<std::size_t>(j)];
            acc += v * v % q;
        }
        return static_cast<std::uint32_t>(acc % q);
    }
};

} // namespace

std::vector<Point> enumerate_sphere(const PrimeField& field, int d, FieldElement t) {
    if (t.modulus() != field.modulus()) throw std::invalid_argument("radius from a different field");
    const std::uint64_t n = grid_size(field, d);
    std::vector<Point> out;
    CoordScanner scan{field.modulus(), d, {}};
    for (std::uint64_t i = 0; i < n; ++i, scan.advance()) {
        if (scan.norm_value() == t.value())
            out.push_back(Point(field, std::span<const std::uint32_t>(scan.c.data(),
                                                                      static_cast<std::size_t>(d))));
    }
    return out;
}

DenseSet sphere_indicator(const PrimeField& field, int d, FieldElement t) {
    if (t.modulus() != field.modulus()) throw std::invalid_argument("radius from a different field");
    DenseSet s(field, d);
    CoordScanner scan{field.modulus(), d, {}};
    for (std::uint64_t i = 0; i < s.space_size(); ++i, scan.advance()) {
        if (scan.norm_value() == t.value()) s.insert_index(i);
    }
    return s;
}

std::vector<std::uint64_t> sphere_size_histogram(const PrimeField& field, int d) {
    const std::uint64_t n = grid_size(field, d);
    std::vector<std::uint64_t> hist(field.modulus(), 0);
    CoordScanner scan{field.modulus(), d, {}};
    for (std::uint64_t i = 0; i < n; ++i, scan.advance()) ++hist[scan.norm_value()];
    return hist;
}

SphereSlice sphere_slice(const DenseSet& set, const Point& center, FieldElement radius) {
    if (center.modulus() != set.field().modulus() || center.dim() != set.dim())
        throw std::invalid_argument("center does not belong to this grid");
    SphereSlice slice{center, radius, {}};
    for (const Point& y : set.members()) {
        if (dist(center, y) == radius) slice.members.push_back(y);
    }
    return slice;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "fqset: " << what << " at line " << line_no;
    throw std::runtime_error(msg.str());
}

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    }
    return true;
}

} // namespace

DenseSet load_set(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) parse_fail(1, "malformed header");

    std::istringstream header(line);
    long long p_raw = 0, d_raw = 0;
    if (!(header >> p_raw >> d_raw)) parse_fail(1, "malformed header");
    std::string trailing;
    if (header >> trailing) parse_fail(1, "malformed header");
    if (p_raw < 3 || p_raw >= (1LL << 31) || !is_odd_prime(static_cast<std::uint32_t>(p_raw)))
        parse_fail(1, "p is not an odd prime");
    if (d_raw < 1 || d_raw > kMaxDim) parse_fail(1, "dimension out of range");

    const PrimeField field(static_cast<std::uint32_t>(p_raw));
    const int d = static_cast<int>(d_raw);
    DenseSet set(field, d);

    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        std::istringstream row(line);
        std::array<std::uint32_t, kMaxDim> c{};
        for (int j = 0; j < d; ++j) {
            long long v = 0;
            if (!(row >> v)) parse_fail(line_no, "expected " + std::to_string(d) + " coordinates");
            if (v < 0) parse_fail(line_no, "coordinate < 0");
            if (v >= p_raw) parse_fail(line_no, "coordinate >= p");
            c[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(v);
        }
        std::string extra;
        if (row >> extra) parse_fail(line_no, "expected " + std::to_string(d) + " coordinates");
        set.insert(Point(field, std::span<const std::uint32_t>(c.data(), static_cast<std::size_t>(d))));
    }
    return set;
}

DenseSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("fqset: cannot open " + path);
    return load_set(in);
}

void save_set(const DenseSet& set, std::ostream& out) {
    out << set.field().modulus() << ' ' << set.dim() << '\n';
    for (std::uint64_t idx : set.member_indices()) {
        const Point x = point_from_index(set.field(), set.dim(), idx);
        for (int j = 0; j < set.dim(); ++j) {
            if (j) out << ' ';
            out << x.coord(j);
        }
        out << '\n';
    }
}

void save_set(const DenseSet& set, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("fqset: cannot open " + path);
    save_set(set, out);
}

} // namespace fqgeom
