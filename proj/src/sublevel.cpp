#include "mahler/sublevel.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "mahler/errors.hpp"

namespace mahler {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZ95 = 1.959963984540054;

std::int64_t block_count(std::uint64_t samples) {
    return static_cast<std::int64_t>((samples + kBlockSize - 1) / kBlockSize);
}

void draw_angles(std::mt19937_64& engine, std::span<double> angles) {
    for (double& a : angles) a = kTwoPi * unit_uniform(engine);
}

SublevelEstimate make_estimate(double y, std::uint64_t hits, std::uint64_t samples, std::uint64_t seed,
                               std::size_t n) {
    const double volume = std::pow(kTwoPi, static_cast<double>(n));
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    SublevelEstimate e;
    e.y = y;
    e.measure_est = volume * p;
    e.ci_halfwidth = volume * kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    e.samples = samples;
    e.seed = seed;
    e.hits = hits;
    e.nvars = n;
    return e;
}

void check_sampling(const Polynomial& p, double y, std::uint64_t samples) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (!(y > 0.0)) throw std::invalid_argument("y must be positive");
    if (samples == 0) throw std::invalid_argument("samples must be positive");
}

// Runs body(block, engine, begin, end) over all sample blocks, forwarding the
// first exception raised by any worker.
template <typename Body>
void for_each_block(std::uint64_t samples, std::uint64_t seed, Execution exec, Body&& body) {
    const std::int64_t blocks = block_count(samples);
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::int64_t b = 0; b < blocks; ++b) {
        try {
            const auto begin = static_cast<std::uint64_t>(b) * kBlockSize;
            const auto end = std::min<std::uint64_t>(begin + kBlockSize, samples);
            std::mt19937_64 engine = substream(seed, static_cast<std::uint64_t>(b));
            body(static_cast<std::size_t>(b), engine, begin, end);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SublevelEstimate sublevel_measure(const Polynomial& p, double y, std::uint64_t samples, std::uint64_t seed,
                                  Execution exec) {
    check_sampling(p, y, samples);
    const std::size_t n = p.nvars();
    const TorusEvaluator eval(p);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(block_count(samples)), 0);
    for_each_block(samples, seed, exec, [&](std::size_t b, std::mt19937_64& engine, auto begin, auto end) {
        std::vector<double> angles(n);
        std::uint64_t count = 0;
        for (auto i = begin; i < end; ++i) {
            draw_angles(engine, angles);
            if (std::abs(eval(angles)) < y) ++count;
        }
        hits[b] = count;
    });
    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    return make_estimate(y, total, samples, seed, n);
}

SublevelEstimate sublevel_measure_reference(const Polynomial& p, double y, std::uint64_t samples,
                                            std::uint64_t seed) {
    check_sampling(p, y, samples);
    const std::size_t n = p.nvars();
    std::vector<double> angles(n);
    std::mt19937_64 engine;
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (i % kBlockSize == 0) engine = substream(seed, i / kBlockSize);
        for (double& a : angles) a = kTwoPi * unit_uniform(engine);
        if (std::abs(evaluate(p, angles)) < y) ++hits;
    }
    return make_estimate(y, hits, samples, seed, n);
}

SublevelFit fit_sublevel_exponent(const Polynomial& p, std::span<const double> y_grid, std::uint64_t samples,
                                  std::uint64_t seed) {
    SublevelFit fit;
    double sw = 0.0, sx = 0.0, sy = 0.0;
    std::vector<double> xs, ys, ws;
    for (double y : y_grid) {
        SublevelEstimate e = sublevel_measure(p, y, samples, seed);
        fit.points.push_back(e);
        if (e.hits == 0 || e.hits == e.samples) continue;
        const double prob = static_cast<double>(e.hits) / static_cast<double>(e.samples);
        // Var(log p̂) ≈ (1 − p) / hits.
        const double w = static_cast<double>(e.hits) / (1.0 - prob);
        xs.push_back(std::log(y));
        ys.push_back(std::log(e.measure_est));
        ws.push_back(w);
        fit.y_grid.push_back(y);
        sw += w;
        sx += w * xs.back();
        sy += w * ys.back();
    }
    if (xs.size() < 3) throw std::invalid_argument("fewer than 3 grid points with a nonzero sublevel estimate");
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
        sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("sublevel fit needs at least two distinct y values");
    fit.delta_hat = sxy / sxx;
    const double intercept = my - fit.delta_hat * mx;
    fit.c_hat = std::exp(intercept);
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (intercept + fit.delta_hat * xs[i]);
        rss += ws[i] * r * r;
    }
    fit.residual = std::sqrt(rss / sw);
    return fit;
}

MeasureResult singular_log_integral(std::span<const Polynomial> polys, double y, SetMode mode, Combine kind,
                                    std::uint64_t samples, std::uint64_t seed, Execution exec) {
    if (polys.empty()) throw std::invalid_argument("at least one polynomial is required");
    if (!(y > 0.0 && y <= 1.0)) throw std::invalid_argument("y must lie in (0, 1]");
    if (samples < 2) throw std::invalid_argument("at least two samples are required");
    std::size_t n = 1;
    for (const Polynomial& p : polys) {
        if (p.is_zero()) throw ZeroPolynomial();
        if (min_coeff_modulus(p) < 1.0)
            throw std::invalid_argument("every coefficient must have modulus >= 1");
        n = std::max(n, p.nvars());
    }
    std::vector<TorusEvaluator> evals;
    for (const Polynomial& p : polys) evals.emplace_back(p.lifted(n));

    const auto blocks = static_cast<std::size_t>(block_count(samples));
    std::vector<double> sums(blocks, 0.0), squares(blocks, 0.0);
    const double log_y = std::log(y);
    for_each_block(samples, seed, exec, [&](std::size_t b, std::mt19937_64& engine, auto begin, auto end) {
        std::vector<double> angles(n);
        std::vector<double> logs(evals.size());
        double s = 0.0, s2 = 0.0;
        for (auto i = begin; i < end; ++i) {
            draw_angles(engine, angles);
            std::size_t below = 0;
            for (std::size_t k = 0; k < evals.size(); ++k) {
                logs[k] = evals[k].log_abs(angles);
                if (logs[k] < log_y) ++below;
            }
            const bool inside = mode == SetMode::union_of ? below > 0 : below == evals.size();
            if (!inside) continue;
            double v = kind == Combine::product ? 1.0 : -INFINITY;
            for (double l : logs) v = kind == Combine::product ? v * l : std::max(v, l);
            s += v;
            s2 += v * v;
        }
        sums[b] = s;
        squares[b] = s2;
    });
    double total = 0.0, total2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        total += sums[b];
        total2 += squares[b];
    }
    const auto count = static_cast<double>(samples);
    const double mean = total / count;
    const double var = std::max(0.0, (total2 / count - mean * mean) * count / (count - 1.0));
    const double volume = std::pow(kTwoPi, static_cast<double>(n));

    MeasureResult r;
    r.value = volume * mean;
    r.error_estimate = volume * std::sqrt(var / count);
    r.method = Method::monte_carlo;
    r.effort = samples;
    r.seed = seed;
    return r;
}

VanishingReport vanishing_report(std::span<const Polynomial> polys, std::span<const double> y_grid, SetMode mode,
                                 Combine kind, std::uint64_t samples, std::uint64_t seed) {
    VanishingReport report;
    for (double y : y_grid) {
        if (!report.rows.empty() && !(y < report.rows.back().y))
            throw std::invalid_argument("y grid must be strictly decreasing");
        report.rows.push_back({y, singular_log_integral(polys, y, mode, kind, samples, seed)});
    }
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const MeasureResult& prev = report.rows[i - 1].estimate;
        const MeasureResult& cur = report.rows[i].estimate;
        if (std::abs(cur.value) > std::abs(prev.value) + 3.0 * (prev.error_estimate + cur.error_estimate))
            report.decreasing = false;
    }
    return report;
}

std::vector<double> default_y_grid() {
    std::vector<double> grid;
    for (int i = 2; i <= 8; ++i) grid.push_back(std::pow(10.0, -0.5 * i));
    return grid;
}

}  // namespace mahler
