#include "mahler/roots.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mahler/errors.hpp"

namespace mahler {
namespace {

constexpr double kEps = DBL_EPSILON;
// Single-linkage radius for candidate multiple-root groups; accepted only
// after Taylor-coefficient validation.
constexpr double kCandidateDistance = 1e-2;

struct Probe {
    Complex newton;         // p(z) / p'(z)
    double backward_error;  // |p(z)| / Σ|b_k||z|^k
    double slope;           // |p'(z)| / Σ|b_k||z|^k
};

// Evaluates at z, switching to the reversed polynomial in 1/z outside the
// unit disc so that no power of z overflows.
Probe probe(const std::vector<Complex>& b, const std::vector<double>& mag, Complex z) {
    const std::size_t d = b.size() - 1;
    if (std::abs(z) <= 1.0) {
        Complex p = b[d], dp = 0.0;
        double s = mag[d];
        const double az = std::abs(z);
        for (std::size_t k = d; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + b[k];
            s = s * az + mag[k];
        }
        const double ap = std::abs(p);
        return {dp == Complex(0.0) ? Complex(0.0) : p / dp, ap / s, std::abs(dp) / s};
    }
    const Complex w = 1.0 / z;
    const double aw = std::abs(w);
    Complex q = b[0], dq = 0.0;
    double s = mag[0];
    for (std::size_t k = 1; k <= d; ++k) {
        dq = dq * w + q;
        q = q * w + b[k];
        s = s * aw + mag[k];
    }
    const Complex denom = static_cast<double>(d) * q - w * dq;
    return {denom == Complex(0.0) ? Complex(0.0) : z * q / denom, std::abs(q) / s,
            std::abs(denom) / (std::abs(z) * s)};
}

// Initial guesses on circles whose radii come from the upper convex hull of
// (k, log|b_k|).
std::vector<Complex> newton_polygon_start(const std::vector<Complex>& b) {
    const std::size_t d = b.size() - 1;
    std::vector<std::size_t> hull;
    for (std::size_t k = 0; k <= d; ++k) {
        if (b[k] == Complex(0.0)) continue;
        const double lk = std::log(std::abs(b[k]));
        while (hull.size() >= 2) {
            const std::size_t i = hull[hull.size() - 2], j = hull.back();
            const double li = std::log(std::abs(b[i])), lj = std::log(std::abs(b[j]));
            // Drop j when it lies on or below the chord i -> k.
            if ((lj - li) * static_cast<double>(k - i) <= (lk - li) * static_cast<double>(j - i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(k);
    }
    std::vector<Complex> z;
    z.reserve(d);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    constexpr double sigma = 0.7;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const std::size_t i = hull[h], j = hull[h + 1];
        const auto count = static_cast<double>(j - i);
        const double radius = std::exp((std::log(std::abs(b[i])) - std::log(std::abs(b[j]))) / count);
        for (std::size_t k = 0; k < j - i; ++k) {
            const double angle = two_pi * static_cast<double>(k) / count +
                                 two_pi * static_cast<double>(i) / static_cast<double>(d) + sigma;
            z.push_back(std::polar(radius, angle));
        }
    }
    return z;
}

struct Taylor {
    std::vector<Complex> coeff;  // P^{(j)}(c)/j!
    std::vector<double> bound;   // Σ_k |b_k| C(k,j) |c|^{k-j}
};

Taylor taylor_at(const std::vector<Complex>& b, const std::vector<double>& mag, Complex c,
                 std::size_t order) {
    Taylor t;
    std::vector<Complex> work(b);
    std::vector<double> wmag(mag);
    const double ac = std::abs(c);
    const std::size_t d = b.size() - 1;
    for (std::size_t j = 0; j <= std::min(order, d); ++j) {
        // Synthetic division by (x - c); the remainder is the j-th Taylor coefficient.
        for (std::size_t k = d; k-- > j;) {
            work[k] += work[k + 1] * c;
            wmag[k] += wmag[k + 1] * ac;
        }
        t.coeff.push_back(work[j]);
        t.bound.push_back(wmag[j]);
    }
    return t;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<std::vector<std::size_t>> groups_within(const std::vector<Complex>& z, double distance) {
    DisjointSets sets(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const double scale = std::max({1.0, std::abs(z[i]), std::abs(z[j])});
            if (std::abs(z[i] - z[j]) <= distance * scale) sets.unite(i, j);
        }
    std::vector<std::vector<std::size_t>> groups(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) groups[sets.find(i)].push_back(i);
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return groups;
}

Complex centroid(const std::vector<Complex>& z, const std::vector<std::size_t>& group) {
    Complex sum = 0.0;
    for (std::size_t i : group) sum += z[i];
    return sum / static_cast<double>(group.size());
}

// Rouché-style radius of the disc around c holding m roots, from the Taylor
// coefficients with rounding noise added to the lower ones.
double cluster_radius(const Taylor& t, std::size_t m, std::size_t degree) {
    const double top = std::abs(t.coeff[m]);
    if (top == 0.0) return INFINITY;
    double r = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double noise = std::abs(t.coeff[j]) + 4.0 * static_cast<double>(degree) * kEps * t.bound[j];
        r = std::max(r, std::pow(noise / top, 1.0 / static_cast<double>(m - j)));
    }
    return 2.0 * r;
}

bool is_multiple_root(const Taylor& t, std::size_t m, std::size_t degree) {
    const double eta = std::max(1e-11, 64.0 * static_cast<double>(degree) * kEps);
    for (std::size_t j = 0; j < m; ++j)
        if (std::abs(t.coeff[j]) > eta * t.bound[j]) return false;
    return true;
}

// Newton on P^{(m-1)}, which has a simple root at an m-fold root of P.
Complex refine_multiple(const std::vector<Complex>& b, const std::vector<double>& mag, Complex c, std::size_t m) {
    for (int k = 0; k < 8; ++k) {
        const Taylor t = taylor_at(b, mag, c, m);
        if (t.coeff.size() <= m || t.coeff[m] == Complex(0.0)) break;
        const Complex step = t.coeff[m - 1] / (static_cast<double>(m) * t.coeff[m]);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        c -= step;
        if (std::abs(step) <= 2.0 * kEps * std::abs(c)) break;
    }
    return c;
}

}  // namespace

int RootSet::total_multiplicity() const {
    int total = 0;
    for (const Root& r : roots) total += r.multiplicity;
    return total;
}

RootSet roots(const Polynomial& p, double tol) {
    if (p.nvars() != 1) throw DimensionMismatch("roots() needs a univariate polynomial");
    if (p.is_zero()) throw ZeroPolynomial();
    if (!(tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
    const std::vector<Complex> dense = p.dense_coefficients();
    if (dense.size() < 2) throw std::invalid_argument("roots() needs degree >= 1");

    RootSet out;
    std::size_t zeros = 0;
    while (dense[zeros] == Complex(0.0)) ++zeros;
    if (zeros > 0) out.roots.push_back({Complex(0.0), static_cast<int>(zeros), 0.0});

    const std::vector<Complex> b(dense.begin() + static_cast<std::ptrdiff_t>(zeros), dense.end());
    const std::size_t d = b.size() - 1;
    if (d == 0) return out;
    std::vector<double> mag(b.size());
    std::transform(b.begin(), b.end(), mag.begin(), [](Complex c) { return std::abs(c); });

    std::vector<Complex> z = newton_polygon_start(b);
    std::vector<bool> frozen(d, false);
    const double rounding_level = 4.0 * static_cast<double>(d) * kEps;
    int iter = 0;
    for (; iter < kRootIterationCap; ++iter) {
        bool all_frozen = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (frozen[i]) continue;
            const Probe pr = probe(b, mag, z[i]);
            if (pr.backward_error <= rounding_level) {
                frozen[i] = true;
                continue;
            }
            all_frozen = false;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            const Complex step = pr.newton / (1.0 - pr.newton * repulsion);
            if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
            if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) frozen[i] = true;
        }
        if (all_frozen) break;
    }
    out.iterations = iter;

    std::vector<Probe> probes(d);
    for (std::size_t i = 0; i < d; ++i) {
        probes[i] = probe(b, mag, z[i]);
        out.residual_bound = std::max(out.residual_bound, probes[i].backward_error);
    }
    if (!(out.residual_bound <= tol))
        throw NonConvergence("root finder: backward error " + std::to_string(out.residual_bound) +
                             " above tolerance after " + std::to_string(iter) + " iterations");

    // Tight groups are merged unconditionally; wider ones only when validated.
    const auto tight = groups_within(z, kClusterDistance);
    const auto wide = groups_within(z, kCandidateDistance);
    std::vector<bool> placed(d, false);
    auto emit_group = [&](const std::vector<std::size_t>& group, Complex c, bool validated) {
        const std::size_t m = group.size();
        const Taylor t = taylor_at(b, mag, c, m);
        double spread = 0.0;
        if (!validated)
            for (std::size_t i : group) spread = std::max(spread, std::abs(z[i] - c));
        out.roots.push_back({c, static_cast<int>(m), std::max(spread, cluster_radius(t, m, d))});
        for (std::size_t i : group) placed[i] = true;
    };
    for (const auto& group : wide) {
        if (group.size() < 2) continue;
        const Complex c = refine_multiple(b, mag, centroid(z, group), group.size());
        if (is_multiple_root(taylor_at(b, mag, c, group.size()), group.size(), d)) emit_group(group, c, true);
    }
    for (const auto& group : tight) {
        if (placed[group.front()]) continue;
        if (group.size() == 1) {
            const std::size_t i = group.front();
            const Probe& pr = probes[i];
            const double radius = pr.slope > 0.0 ? 2.0 * std::max(pr.backward_error, rounding_level) / pr.slope
                                                 : INFINITY;
            out.roots.push_back({z[i], 1, radius});
            placed[i] = true;
        } else {
            emit_group(group, centroid(z, group), false);
        }
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<double> roots_near_circle(const RootSet& rs, double band) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> angles;
    for (const Root& r : rs.roots) {
        if (!(std::abs(std::abs(r.value) - 1.0) < band)) continue;
        double a = std::arg(r.value);
        if (a < 0.0) a += two_pi;
        if (a >= two_pi) a -= two_pi;
        angles.push_back(a);
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

}  // namespace mahler
