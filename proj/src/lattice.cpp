#include "mahler/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mahler {
namespace {

__extension__ typedef __int128 Wide;

void check_entries(std::span<const std::int64_t> r) {
    if (r.empty()) throw std::invalid_argument("r must have at least one entry");
    for (std::int64_t v : r)
        if (v < 1) throw std::invalid_argument("r entries must be positive");
}

// Given (t_2, …, t_n) at sup-norm level H, solves for t_1 and reports whether
// the completed vector is a nonzero relation lying on the sphere of radius H.
bool complete(std::span<const std::int64_t> r, std::span<const std::int64_t> tail, std::int64_t h,
              std::int64_t& t1) {
    Wide s = 0;
    std::int64_t tail_max = 0;
    for (std::size_t j = 0; j < tail.size(); ++j) {
        s += static_cast<Wide>(tail[j]) * r[j + 1];
        tail_max = std::max(tail_max, tail[j] < 0 ? -tail[j] : tail[j]);
    }
    if (s % r[0] != 0) return false;
    const Wide solved = -s / r[0];
    if (solved > h || solved < -h) return false;
    t1 = static_cast<std::int64_t>(solved);
    const std::int64_t a1 = t1 < 0 ? -t1 : t1;
    if (tail_max != h && a1 != h) return false;  // interior point, tested at a lower level
    return true;                                 // h >= 1 rules out t = 0
}

// Advances an odometer over [-h, h]^size; returns false after the last state.
bool increment(std::vector<std::int64_t>& digits, std::int64_t h, std::size_t first = 0) {
    for (std::size_t j = digits.size(); j-- > first;) {
        if (digits[j] < h) {
            ++digits[j];
            return true;
        }
        digits[j] = -h;
    }
    return false;
}

std::int64_t search_limit(std::span<const std::int64_t> r) {
    return *std::max_element(r.begin(), r.end());
}

}  // namespace

RVector::RVector(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    check_entries(entries_);
}

const Relation& RVector::ensure_relation() {
    if (!relation_) relation_ = q_of_r(entries_);
    return *relation_;
}

Relation q_of_r(std::span<const std::int64_t> r, Execution exec) {
    check_entries(r);
    if (r.size() == 1) return {};
    const std::size_t tail_len = r.size() - 1;
    const std::int64_t limit = search_limit(r);
    for (std::int64_t h = 1; h <= limit; ++h) {
        // Slice on t_2; each slice reports its first hit, the lowest slice wins.
        const std::int64_t slices = 2 * h + 1;
        std::vector<std::vector<std::int64_t>> hits(static_cast<std::size_t>(slices));
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel && slices > 8)
        for (std::int64_t s = 0; s < slices; ++s) {
            std::vector<std::int64_t> tail(tail_len, -h);
            tail[0] = s - h;
            std::int64_t t1 = 0;
            do {
                if (complete(r, tail, h, t1)) {
                    std::vector<std::int64_t> t{t1};
                    t.insert(t.end(), tail.begin(), tail.end());
                    hits[static_cast<std::size_t>(s)] = std::move(t);
                    break;
                }
            } while (increment(tail, h, 1));
        }
        for (auto& hit : hits)
            if (!hit.empty()) return {h, std::move(hit)};
    }
    throw std::logic_error("q_of_r: no relation up to max(r), which is impossible for n >= 2");
}

Relation q_of_r_reference(std::span<const std::int64_t> r) {
    check_entries(r);
    if (r.size() == 1) return {};
    const std::int64_t limit = search_limit(r);
    for (std::int64_t h = 1; h <= limit; ++h) {
        std::vector<std::int64_t> tail(r.size() - 1, -h);
        do {
            std::int64_t t1 = 0;
            if (complete(r, tail, h, t1)) {
                std::vector<std::int64_t> t{t1};
                t.insert(t.end(), tail.begin(), tail.end());
                return {h, std::move(t)};
            }
        } while (increment(tail, h));
    }
    throw std::logic_error("q_of_r_reference: no relation found");
}

std::vector<RVector> admissible_sequence(std::size_t n, std::span<const std::int64_t> m_values) {
    if (n < 2) throw std::invalid_argument("admissible sequences need n >= 2");
    std::vector<RVector> out;
    out.reserve(m_values.size());
    for (std::int64_t m : m_values) {
        if (m < 1) throw std::invalid_argument("m values must be positive");
        std::vector<std::int64_t> entries{1};
        for (std::size_t j = 1; j < n; ++j) {
            if (entries.back() > std::numeric_limits<std::int64_t>::max() / m)
                throw std::overflow_error("m^(n-1) overflows 64 bits");
            entries.push_back(entries.back() * m);
        }
        RVector r(std::move(entries));
        const Relation& rel = r.ensure_relation();
        if (rel.q != m)
            throw std::logic_error("admissible_sequence: q(r) = " + std::to_string(rel.q.value_or(-1)) +
                                   " for m = " + std::to_string(m));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace mahler
