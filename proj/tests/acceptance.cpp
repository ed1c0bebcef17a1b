// Acceptance suite: one check per criterion, printed as a pass/fail line.
// Usage: acceptance [path-to-cli-binary]
// The CLI path is needed by the determinism criterion; ctest passes it.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fqgeom/char_sums.hpp"
#include "fqgeom/configs.hpp"
#include "fqgeom/fourier.hpp"
#include "fqgeom/geom.hpp"
#include "fqgeom/ortho.hpp"
#include "fqgeom/rng.hpp"

using namespace fqgeom;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

SpectralGrid random_grid(const PrimeField& f, int d, std::uint64_t seed) {
    SpectralGrid g(f, d, Side::space);
    Rng rng(seed);
    for (std::uint64_t i = 0; i < g.size(); ++i)
        g[i] = {rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0};
    return g;
}

// --------------------------------------------------------------------------
// 1. Fourier identities on seeded random grids.

void criterion_1() {
    double worst = 0.0;
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const PrimeField field(p);
        for (int d = 1; d <= 3; ++d) {
            for (std::uint64_t i = 0; i < 100; ++i) {
                const SpectralGrid f = random_grid(field, d, 2 * i);
                const SpectralGrid g = random_grid(field, d, 2 * i + 1);

                const SpectralGrid f_hat = forward(f);
                const SpectralGrid back = inverse(f_hat);
                for (std::uint64_t x = 0; x < f.size(); ++x)
                    worst = std::max(worst, std::abs(back[x] - f[x]));

                std::complex<double> mean{0.0, 0.0};
                for (std::uint64_t x = 0; x < f.size(); ++x) mean += f[x];
                mean /= static_cast<double>(f.size());
                worst = std::max(worst, std::abs(f_hat[0] - mean));

                const auto [lhs, rhs] = plancherel_check(f, g);
                worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
            }
        }
    }
    report(1, "fourier round-trip, zero-frequency, plancherel <= 1e-9", worst <= 1e-9,
           "max deviation " + fmt(worst));
}

// --------------------------------------------------------------------------
// 2. Sphere counts: partition and size bound.

void criterion_2() {
    bool ok = true;
    double worst_excess = 0.0;
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        const PrimeField field(p);
        for (int d = 1; d <= 4; ++d) {
            const auto hist = sphere_size_histogram(field, d);
            std::uint64_t total = 0;
            for (std::uint64_t s : hist) total += s;
            if (total != grid_size(field, d)) ok = false;

            const double main = std::pow(static_cast<double>(p), d - 1);
            const double bound = 2.0 * std::pow(static_cast<double>(p), (d - 1) / 2.0);
            for (std::uint32_t t = 1; t < p; ++t) {
                const double dev = std::abs(static_cast<double>(hist[t]) - main);
                worst_excess = std::max(worst_excess, dev / bound);
                if (dev > bound) ok = false;
            }
        }
    }
    report(2, "sphere sizes within 2 q^((d-1)/2) of q^(d-1); spheres partition",
           ok, "worst deviation/bound " + fmt(worst_excess));
}

// --------------------------------------------------------------------------
// 3. Sphere Fourier decay and closed-form agreement.

void criterion_3() {
    double worst_ratio = 0.0;
    double worst_dev = 0.0;
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
        for (int d = 2; d <= 3; ++d) {
            const auto audit = sphere_hat_decay_audit(PrimeField(p), d);
            worst_ratio = std::max(worst_ratio, audit.max_ratio);
            worst_dev = std::max(worst_dev, audit.max_closed_form_dev);
        }
    }
    report(3, "sphere fourier decay <= 2 and closed form within 1e-8",
           worst_ratio <= 2.0 + 1e-6 && worst_dev <= 1e-8,
           "max ratio " + fmt(worst_ratio) + ", max closed-form dev " + fmt(worst_dev));
}

// --------------------------------------------------------------------------
// 4. Gauss sum magnitude and eta identity over p <= 97.

void criterion_4() {
    double worst_mag = 0.0, worst_eta = 0.0;
    for (std::uint32_t p = 3; p <= 97; p += 2) {
        if (!is_odd_prime(p)) continue;
        const PrimeField field(p);
        const std::complex<double> g1 = gauss_sum(field.one());
        worst_mag = std::max(worst_mag, std::abs(std::norm(g1) - static_cast<double>(p)));
        for (std::uint32_t j = 1; j < p; ++j) {
            const double eta = legendre(field.element(j));
            worst_eta = std::max(worst_eta, std::abs(gauss_sum(field.element(j)) - eta * g1));
        }
    }
    report(4, "gauss sums: |g(1)|^2 = p (1e-8), g(j) = eta(j) g(1) (1e-10)",
           worst_mag <= 1e-8 && worst_eta <= 1e-10,
           "mag dev " + fmt(worst_mag) + ", identity dev " + fmt(worst_eta));
}

// --------------------------------------------------------------------------
// 5. Weil bound over p <= 97, both characters.

void criterion_5() {
    double worst = 0.0;
    std::uint64_t sums = 0;
    bool ok = true;
    for (std::uint32_t p = 3; p <= 97; p += 2) {
        if (!is_odd_prime(p)) continue;
        const PrimeField field(p);
        const double bound = 2.0 * std::sqrt(static_cast<double>(p));
        for (std::uint32_t a = 1; a < p; ++a) {
            for (MultChar psi : {MultChar::trivial, MultChar::quadratic}) {
                const double mag = std::abs(kloosterman_sum(field.element(a), psi));
                ++sums;
                worst = std::max(worst, mag / std::sqrt(static_cast<double>(p)));
                if (mag > bound + 1e-9) ok = false;
            }
        }
    }
    report(5, "weil bound |K(a)| <= 2 sqrt(p) over both characters", ok,
           std::to_string(sums) + " sums, max |K|/sqrt(p) " + fmt(worst));
}

// --------------------------------------------------------------------------
// 6. Hinge counts equal the literal nested loop.

std::uint64_t nested_loop_hinges(const std::vector<Point>& members,
                                 const std::vector<FieldElement>& alphas) {
    const std::size_t m = members.size();
    const int legs = static_cast<int>(alphas.size());
    std::uint64_t total = 0;
    std::vector<std::size_t> pick(static_cast<std::size_t>(legs), 0);
    for (std::size_t x = 0; x < m; ++x) {
        std::fill(pick.begin(), pick.end(), 0);
        while (true) {
            bool match = true;
            for (int i = 0; i < legs && match; ++i)
                match = dist(members[x], members[pick[static_cast<std::size_t>(i)]]) ==
                        alphas[static_cast<std::size_t>(i)];
            if (match) ++total;
            int pos = legs - 1;
            while (pos >= 0 && ++pick[static_cast<std::size_t>(pos)] == m)
                pick[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0) break;
        }
    }
    return total;
}

void criterion_6() {
    struct Config {
        std::uint32_t p;
        int d;
        double rho;
    };
    const Config configs[] = {{3, 2, 0.9}, {5, 2, 0.6}, {7, 2, 0.4}, {3, 3, 0.5}, {5, 3, 0.15}};

    bool ok = true;
    std::uint64_t instances = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Config cfg = configs[seed % 5];
        const PrimeField field(cfg.p);
        const DenseSet e = DenseSet::random(field, cfg.d, cfg.rho, seed);
        const auto members = e.members();
        Rng alpha_rng = substream(777, seed);
        for (int r = 2; r <= 4; ++r) {
            double size_pow = 1.0;
            for (int i = 0; i < r; ++i) size_pow *= static_cast<double>(e.size());
            if (size_pow > 1e6 || e.size() == 0) continue;
            std::vector<FieldElement> alphas;
            for (int i = 0; i + 1 < r; ++i)
                alphas.push_back(field.element(
                    1 + static_cast<std::int64_t>(alpha_rng.next_below(cfg.p - 1))));
            const std::uint64_t fast = count_hinges(e, HingeSpec(r, alphas));
            const std::uint64_t slow = nested_loop_hinges(members, alphas);
            ++instances;
            if (fast != slow) ok = false;
        }
    }
    report(6, "hinge counts match the nested-loop oracle exactly", ok,
           std::to_string(instances) + " instances over 50 seeded sets");
}

// --------------------------------------------------------------------------
// 7. Two-hinge error bound with constant 2.

void criterion_7() {
    bool ok = true;
    std::uint64_t sets = 0;
    double worst = 0.0;
    for (std::uint32_t p : {5u, 7u, 11u}) {
        const PrimeField field(p);
        for (int d = 2; d <= 3; ++d) {
            const auto hist = sphere_size_histogram(field, d);
            const std::uint64_t qd = grid_size(field, d);
            for (std::uint64_t seed = 0; seed < 34; ++seed) {
                const double rho = 0.3 + 0.2 * static_cast<double>(seed % 3);
                const DenseSet e = DenseSet::random(field, d, rho, 5000 + seed);
                ++sets;

                // One ordered-pair scan gives H_2 for every alpha at once.
                std::vector<std::uint64_t> pair_hist(p, 0);
                const auto members = e.members();
                for (const Point& x : members)
                    for (const Point& y : members) ++pair_hist[dist(x, y).value()];

                const double slack = 2.0 * std::pow(static_cast<double>(p), (d - 1) / 2.0) *
                                     static_cast<double>(e.size());
                for (std::uint32_t alpha = 1; alpha < p; ++alpha) {
                    // Exact integer main-term comparison: scale by q^d.
                    const std::int64_t lhs =
                        static_cast<std::int64_t>(pair_hist[alpha] * qd) -
                        static_cast<std::int64_t>(e.size() * e.size() * hist[alpha]);
                    const double bound = slack * static_cast<double>(qd);
                    worst = std::max(worst, std::abs(static_cast<double>(lhs)) / bound);
                    if (std::abs(static_cast<double>(lhs)) > bound + 1e-6) ok = false;
                }
            }
        }
    }
    report(7, "two-hinge bound |H_2 - q^-d |E|^2 |S|| <= 2 q^((d-1)/2) |E|", ok,
           std::to_string(sets) + " sets, worst |error|/bound " + fmt(worst));
}

// --------------------------------------------------------------------------
// 8. Hinge concentration trend at rho = 1, r = 3, d = 2.

void criterion_8() {
    std::vector<double> errors;
    for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
        const PrimeField field(p);
        const DenseSet full = DenseSet::full(field, 2);
        const HingeReport rep = hinge_report(full, HingeSpec(3, {field.one(), field.one()}));
        errors.push_back(rep.relative_error);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (errors[i] >= errors[i - 1]) decreasing = false;
    std::string detail = "relative errors";
    for (double e : errors) detail += " " + fmt(e);
    report(8, "r = 3 relative error decreases over p in {5,7,11,13}", decreasing, detail);
}

// --------------------------------------------------------------------------
// 9. Isometry recovery round trips and degenerate rejection.

void criterion_9() {
    bool ok = true;
    std::string detail;
    for (const auto& [p, d] : std::vector<std::pair<std::uint32_t, int>>{{5, 2}, {7, 2}, {5, 3}}) {
        const PrimeField field(p);
        const OrthogonalGroup group = enumerate_orthogonal_group(field, d);
        const std::uint64_t n = grid_size(field, d);

        std::uint64_t failures = 0;
        for (std::uint64_t trial = 0; trial < 1000; ++trial) {
            Rng rng = substream(static_cast<std::uint64_t>(p) * 100 + static_cast<std::uint64_t>(d),
                                trial);
            std::vector<Point> v;
            do {
                v.clear();
                for (int i = 0; i <= d; ++i)
                    v.push_back(point_from_index(field, d, rng.next_below(n)));
            } while (rank_of_simplex(v) != d);

            const SquareMatrix& rot = group.elements[rng.next_below(group.order())];
            const Point shift = point_from_index(field, d, rng.next_below(n));
            std::vector<Point> w;
            for (const Point& x : v) w.push_back(rot.apply(x) + shift);

            try {
                const Isometry rec = recover_isometry(v, w);
                if (!(rec.rotation == rot) || !(rec.translation == shift) ||
                    !(rec.rotation.transposed() * rec.rotation).is_identity())
                    ++failures;
            } catch (const std::exception&) {
                ++failures;
            }
        }

        // Equal-distance degenerate fixtures must be rejected. A repeated
        // vertex gives an equal-distance degenerate pair everywhere; where
        // isotropic directions exist they give a non-congruent pair as well
        // (multiples of an isotropic vector all sit at distance 0, like a
        // fully collapsed tuple, yet the configurations differ).
        bool rejected = true;
        {
            const auto unit = enumerate_sphere(field, d, field.one());
            std::vector<Point> repeated{Point::zero(field, d)};
            std::vector<Point> other{Point::zero(field, d)};
            for (int j = 1; j <= d; ++j) {
                repeated.push_back(unit.front());
                other.push_back(unit.back());
            }
            if (!(distance_vector(repeated) == distance_vector(other))) rejected = false;
            try {
                recover_isometry(repeated, other);
                rejected = false;
            } catch (const std::invalid_argument&) {
            }
        }
        for (std::uint64_t i = 1; i < n; ++i) {
            const Point direction = point_from_index(field, d, i);
            if (norm(direction).value() != 0) continue;
            std::vector<Point> line, collapsed;
            const Point origin = Point::zero(field, d);
            for (int j = 0; j <= d; ++j) {
                Point scaled = origin;
                for (int rep = 0; rep < j; ++rep) scaled = scaled + direction;
                line.push_back(scaled);
                collapsed.push_back(origin);
            }
            if (!(distance_vector(line) == distance_vector(collapsed))) continue;
            try {
                recover_isometry(line, collapsed);
                rejected = false;
            } catch (const std::invalid_argument&) {
            }
            break;
        }

        if (failures != 0 || !rejected) ok = false;
        detail += "(" + std::to_string(p) + "," + std::to_string(d) + "): " +
                  std::to_string(failures) + " failures" + (rejected ? "" : ", no rejection") +
                  "; ";
    }
    report(9, "isometry recovery: 1000 exact round trips per (p,d), degenerates rejected", ok,
           detail);
}

// --------------------------------------------------------------------------
// 10. Orbit-stabilizer identity and |O_2| order formula.

void criterion_10() {
    bool ok = true;
    std::string detail;
    for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
        const PrimeField field(p);
        const OrthogonalGroup group = enumerate_orthogonal_group(field, 2);
        const std::int64_t eta = legendre(field.element(-1));
        const std::uint64_t expected =
            static_cast<std::uint64_t>(2 * (static_cast<std::int64_t>(p) - eta));
        if (group.order() != expected) ok = false;
        for (std::uint64_t i = 0; i < grid_size(field, 2); ++i) {
            const Point v = point_from_index(field, 2, i);
            if (orbit(group, v).size() * stabilizer_size(group, v) != group.order()) ok = false;
        }
        detail += "|O_2(F_" + std::to_string(p) + ")|=" + std::to_string(group.order()) + " ";
    }
    {
        const PrimeField f3(3);
        const OrthogonalGroup group = enumerate_orthogonal_group(f3, 3);
        for (std::uint64_t i = 0; i < 27; ++i) {
            const Point v = point_from_index(f3, 3, i);
            if (orbit(group, v).size() * stabilizer_size(group, v) != group.order()) ok = false;
        }
        detail += "|O_3(F_3)|=" + std::to_string(group.order());
    }
    report(10, "orbit-stabilizer identity; |O_2(F_p)| = 2(p - eta(-1))", ok, detail);
}

// --------------------------------------------------------------------------
// 11. Census fixtures against an independent brute-force oracle.

// Triple loop over all point triples with inline arithmetic; shares no code
// with the census path.
std::uint64_t census_oracle_full_plane(std::uint32_t p) {
    std::unordered_set<std::uint64_t> classes;
    const std::uint64_t n = static_cast<std::uint64_t>(p) * p;
    for (std::uint64_t i0 = 0; i0 < n; ++i0) {
        const std::uint32_t x0 = static_cast<std::uint32_t>(i0 % p);
        const std::uint32_t y0 = static_cast<std::uint32_t>(i0 / p);
        for (std::uint64_t i1 = 0; i1 < n; ++i1) {
            const std::uint32_t x1 = static_cast<std::uint32_t>(i1 % p);
            const std::uint32_t y1 = static_cast<std::uint32_t>(i1 / p);
            const std::uint32_t ux = (x1 + p - x0) % p;
            const std::uint32_t uy = (y1 + p - y0) % p;
            for (std::uint64_t i2 = 0; i2 < n; ++i2) {
                const std::uint32_t x2 = static_cast<std::uint32_t>(i2 % p);
                const std::uint32_t y2 = static_cast<std::uint32_t>(i2 / p);
                const std::uint32_t vx = (x2 + p - x0) % p;
                const std::uint32_t vy = (y2 + p - y0) % p;
                // Degenerate iff the difference vectors are dependent.
                if ((static_cast<std::uint64_t>(ux) * vy + static_cast<std::uint64_t>(p - 1) *
                                                               uy % p * vx) %
                        p ==
                    0)
                    continue;
                const std::uint64_t a01 = (static_cast<std::uint64_t>(ux) * ux + uy * uy) % p;
                const std::uint64_t a02 = (static_cast<std::uint64_t>(vx) * vx + vy * vy) % p;
                const std::uint32_t wx = (x2 + p - x1) % p;
                const std::uint32_t wy = (y2 + p - y1) % p;
                const std::uint64_t a12 = (static_cast<std::uint64_t>(wx) * wx + wy * wy) % p;
                classes.insert((a01 * p + a02) * p + a12);
            }
        }
    }
    return classes.size();
}

void criterion_11() {
    bool ok = true;
    std::string detail;

    const std::uint64_t pinned[] = {60, 126, 550}; // |T_2(full F_p^2)| for p = 5, 7, 11
    const std::uint32_t primes[] = {5, 7, 11};
    for (int i = 0; i < 3; ++i) {
        const PrimeField field(primes[i]);
        const std::uint64_t census =
            simplex_census(DenseSet::full(field, 2), 2).distinct_classes;
        const std::uint64_t oracle = census_oracle_full_plane(primes[i]);
        if (census != pinned[i] || oracle != pinned[i]) ok = false;
        detail += "p=" + std::to_string(primes[i]) + ": " + std::to_string(census) + "/" +
                  std::to_string(oracle) + " ";
    }

    // Scaling-shape band pinned from the calibration runs: the ratio
    // |T_2| / (rho p^3) at p = 7, seed 1 sits inside [0.33, 1.32] for
    // rho in {0.25, 0.5, 1.0} (band width exactly a factor of 4).
    const PrimeField f7(7);
    for (double rho : {0.25, 0.5, 1.0}) {
        const DenseSet e = DenseSet::random(f7, 2, rho, 1);
        const std::uint64_t t2 = simplex_census(e, 2).distinct_classes;
        const double ratio = static_cast<double>(t2) / (rho * 343.0);
        if (ratio < 0.33 || ratio > 1.32) ok = false;
        detail += "ratio(" + fmt(rho) + ")=" + fmt(ratio) + " ";
    }

    report(11, "census matches brute-force oracle; rho sweep stays in the factor-4 band", ok,
           detail);
}

// --------------------------------------------------------------------------
// 12. CLI determinism under repeated runs and varying worker counts.

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_shell(const std::string& cmd) { return std::system(cmd.c_str()); }

void criterion_12(const std::string& cli) {
    if (cli.empty()) {
        report(12, "cli determinism", false, "no CLI path given; pass it as argv[1]");
        return;
    }

    const std::string dir = "acceptance_tmp";
    if (run_shell("rm -rf " + dir + " && mkdir -p " + dir) != 0) {
        report(12, "cli determinism", false, "cannot create temp dir");
        return;
    }

    const std::vector<std::string> commands = {
        "sphere-audit --p 7 --d 2",
        "sphere-audit --p 7 --d 2 --format json",
        "hinge-audit --p 7 --d 2 --r 3 --alphas 1,2 --rho 0.5 --seed 1",
        "census --p 7 --d 2 --k 2 --rho 0.5 --seed 1 --mode exact",
        "census --p 7 --d 2 --k 2 --rho 0.5 --seed 1 --mode sampled --samples 5000 --format json",
        "gauss-audit --pmax 37",
        "kloosterman-audit --pmax 37",
        "ortho-audit --pmax 7",
        "isometry-selftest --trials 200 --seed 9",
    };

    bool ok = true;
    int checked = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const std::string a = dir + "/out_" + std::to_string(i) + "_a";
        const std::string b = dir + "/out_" + std::to_string(i) + "_b";
        const int rc_a = run_shell(cli + " --workers 1 --out " + a + " " + commands[i]);
        const int rc_b = run_shell(cli + " --workers 3 --out " + b + " " + commands[i]);
        ++checked;
        if (rc_a != rc_b || rc_a == -1 || WEXITSTATUS(rc_a) >= 2) {
            ok = false;
            continue;
        }
        const std::string bytes_a = slurp(a);
        if (bytes_a.empty() || bytes_a != slurp(b)) ok = false;
    }
    if (run_shell("rm -rf " + dir) != 0) ok = false;
    report(12, "cli outputs are byte-identical across runs and worker counts", ok,
           std::to_string(checked) + " commands checked");
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12(cli);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
