#include "mahler/quadrature.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cfloat>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

#include "mahler/sobol.hpp"

namespace mahler {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxPanels = std::size_t{1} << 20;

// 15-point Kronrod nodes/weights and the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    int depth;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

Panel gauss_kronrod(const CircleIntegrand& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double value = resk * h;
    if (!std::isfinite(value)) throw std::domain_error("integrand is not finite on the panel");
    const double error = std::max(std::abs((resk - resg) * h), 50.0 * DBL_EPSILON * resabs * std::abs(h));
    return {a, b, value, error, depth};
}

// Neumaier-compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double shifted_angle(std::uint32_t x, std::uint32_t shift) {
    return kTwoPi * ((static_cast<double>(x ^ shift) + 0.5) * 0x1.0p-32);
}

std::vector<std::uint32_t> digital_shift(std::uint64_t seed, int randomization, std::size_t n) {
    std::mt19937_64 engine = substream(seed, static_cast<std::uint64_t>(randomization));
    std::vector<std::uint32_t> shift(n);
    for (auto& s : shift) s = static_cast<std::uint32_t>(engine() >> 32);
    return shift;
}

MeasureResult finish_qmc(const std::vector<double>& means, const QuadConfig& cfg) {
    double total = 0.0;
    for (double m : means) total += m;
    const double mean = total / static_cast<double>(means.size());
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    MeasureResult r;
    r.value = mean;
    r.error_estimate = std::sqrt(ss / static_cast<double>(means.size() - 1));
    r.method = Method::torus_qmc;
    r.effort = cfg.qmc_samples * static_cast<std::uint64_t>(cfg.randomizations);
    r.seed = cfg.seed;
    return r;
}

void check_torus_args(std::size_t n, const QuadConfig& cfg) {
    cfg.validate();
    if (n == 0 || n > SobolSequence::kMaxDims)
        throw std::invalid_argument("torus dimension must be in [1, " +
                                    std::to_string(SobolSequence::kMaxDims) + "]");
}

}  // namespace

void QuadConfig::validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be positive");
    if (qmc_samples == 0 || !std::has_single_bit(qmc_samples) || qmc_samples > (std::uint64_t{1} << 32))
        throw std::invalid_argument("qmc_samples must be a power of two no larger than 2^32");
    if (randomizations < 2) throw std::invalid_argument("randomizations must be at least 2");
}

MeasureResult integrate_interval(const CircleIntegrand& f, double a, double b,
                                 std::span<const double> breakpoints, double abs_tol, int max_depth) {
    if (!(b > a)) throw std::invalid_argument("integration interval must have b > a");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

    std::vector<double> cuts{a};
    {
        std::vector<double> inner(breakpoints.begin(), breakpoints.end());
        std::sort(inner.begin(), inner.end());
        const double min_gap = 1e-14 * (b - a);
        for (double x : inner)
            if (x - cuts.back() > min_gap && b - x > min_gap) cuts.push_back(x);
        cuts.push_back(b);
    }

    std::priority_queue<Panel, std::vector<Panel>, ByError> open;
    std::vector<Panel> settled;
    double total_error = 0.0;
    std::uint64_t evaluations = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1], 0);
        evaluations += 15;
        total_error += p.error;
        open.push(p);
    }

    while (!open.empty() && total_error > abs_tol && open.size() + settled.size() < kMaxPanels) {
        Panel worst = open.top();
        open.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.depth >= max_depth || !(mid > worst.a && mid < worst.b)) {
            settled.push_back(worst);
            continue;
        }
        const Panel left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
        const Panel right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
        if (total_error <= abs_tol) {
            // Re-add from scratch so that incremental drift cannot end the loop early.
            double exact = 0.0;
            for (const Panel& s : settled) exact += s.error;
            auto copy = open;
            while (!copy.empty()) {
                exact += copy.top().error;
                copy.pop();
            }
            total_error = exact;
        }
    }
    while (!open.empty()) {
        settled.push_back(open.top());
        open.pop();
    }
    std::sort(settled.begin(), settled.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });

    CompensatedSum value;
    double error = 0.0;
    for (const Panel& p : settled) {
        value.add(p.value);
        error += p.error;
    }
    MeasureResult r;
    r.value = value.value();
    r.error_estimate = error;
    r.method = Method::circle_quadrature;
    r.effort = evaluations;
    r.converged = error <= abs_tol;
    return r;
}

MeasureResult integrate_circle(const CircleIntegrand& f, std::span<const double> singular_angles,
                               const QuadConfig& cfg) {
    cfg.validate();
    std::vector<double> cuts;
    cuts.reserve(singular_angles.size());
    for (double t : singular_angles) {
        double a = std::fmod(t, kTwoPi);
        if (a < 0.0) a += kTwoPi;
        cuts.push_back(a);
    }
    MeasureResult r = integrate_interval(f, 0.0, kTwoPi, cuts, cfg.tol * kTwoPi, cfg.max_depth);
    r.value /= kTwoPi;
    r.error_estimate /= kTwoPi;
    return r;
}

MeasureResult integrate_torus_qmc(const TorusIntegrand& f, std::size_t n, const QuadConfig& cfg,
                                  Execution exec) {
    check_torus_args(n, cfg);
    const SobolSequence sobol(n);
    const std::uint64_t samples = cfg.qmc_samples;
    const auto blocks = static_cast<std::int64_t>((samples + kBlockSize - 1) / kBlockSize);

    std::vector<double> means(static_cast<std::size_t>(cfg.randomizations));
    std::vector<double> partial(static_cast<std::size_t>(blocks));
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int rz = 0; rz < cfg.randomizations; ++rz) {
        const std::vector<std::uint32_t> shift = digital_shift(cfg.seed, rz, n);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
        for (std::int64_t blk = 0; blk < blocks; ++blk) {
            try {
                const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlockSize;
                const std::uint64_t end = std::min<std::uint64_t>(begin + kBlockSize, samples);
                std::vector<std::uint32_t> coords(n);
                std::vector<double> angles(n);
                sobol.point(begin, coords);
                double sum = 0.0;
                for (std::uint64_t i = begin; i < end; ++i) {
                    for (std::size_t d = 0; d < n; ++d) angles[d] = shifted_angle(coords[d], shift[d]);
                    sum += f(angles);
                    if (i + 1 < end) sobol.advance(i, coords);
                }
                partial[static_cast<std::size_t>(blk)] = sum;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        double sum = 0.0;
        for (double p : partial) sum += p;
        means[static_cast<std::size_t>(rz)] = sum / static_cast<double>(samples);
    }
    return finish_qmc(means, cfg);
}

MeasureResult integrate_torus_qmc_reference(const TorusIntegrand& f, std::size_t n, const QuadConfig& cfg) {
    check_torus_args(n, cfg);
    const SobolSequence sobol(n);
    const std::uint64_t samples = cfg.qmc_samples;
    std::vector<double> means;
    std::vector<std::uint32_t> coords(n);
    std::vector<double> angles(n);
    for (int rz = 0; rz < cfg.randomizations; ++rz) {
        const std::vector<std::uint32_t> shift = digital_shift(cfg.seed, rz, n);
        double total = 0.0;
        double block = 0.0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            sobol.point(i, coords);
            for (std::size_t d = 0; d < n; ++d) angles[d] = shifted_angle(coords[d], shift[d]);
            block += f(angles);
            if ((i + 1) % kBlockSize == 0 || i + 1 == samples) {
                total += block;
                block = 0.0;
            }
        }
        means.push_back(total / static_cast<double>(samples));
    }
    return finish_qmc(means, cfg);
}

double j_closed_form(const JParams& p) {
    if (p.ell < 1) throw std::invalid_argument("ell must be a positive integer");
    if (!(p.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(p.y > 0.0 && p.y <= 1.0)) throw std::invalid_argument("y must lie in (0, 1]");
    const double neg_log = -std::log(p.y);
    // Coefficient of (−log y)^j is ℓ!/(j! δ^{ℓ−j}); start from j = ℓ (coefficient 1).
    double coeff = 1.0;
    double acc = 1.0;
    for (int j = p.ell - 1; j >= 0; --j) {
        coeff *= static_cast<double>(j + 1) / p.delta;
        acc = acc * neg_log + coeff;
    }
    return std::pow(p.y, p.delta) * acc;
}

double i_closed_form(int ell, int k, double y) {
    if (k < 2) throw std::invalid_argument("I_{l,k} needs k >= 2");
    return j_closed_form({ell, 1.0 / static_cast<double>(k - 1), y});
}

}  // namespace mahler
