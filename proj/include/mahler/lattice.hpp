#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mahler/execution.hpp"

namespace mahler {

/// Minimal-height integer relation of r.
struct Relation {
    /// q(r) = min H(t) over nonzero integer t with Σ t_j r_j = 0;
    /// nullopt means +∞ (n = 1, no relation exists).
    std::optional<std::int64_t> q;
    /// A relation attaining q (empty when q is infinite).
    std::vector<std::int64_t> witness;

    bool infinite() const noexcept { return !q.has_value(); }
};

/// Vector of strictly positive integer exponents used to specialize P.
class RVector {
public:
    explicit RVector(std::vector<std::int64_t> entries);

    std::span<const std::int64_t> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Cached relation, when it has been computed.
    const std::optional<Relation>& relation() const noexcept { return relation_; }
    /// Computes q(r) if it is not cached yet.
    const Relation& ensure_relation();

    friend bool operator==(const RVector& a, const RVector& b) { return a.entries_ == b.entries_; }

private:
    std::vector<std::int64_t> entries_;
    std::optional<Relation> relation_;
};

/// Exact q(r) by enumerating sup-norm spheres H = 1, 2, … with t_1 solved from
/// the other coordinates. Terminates by H = max_j r_j. Among relations of
/// minimal height the witness is the first in lexicographic order of
/// (t_2, …, t_n). Both execution modes return the same witness.
Relation q_of_r(std::span<const std::int64_t> r, Execution exec = Execution::parallel);

/// Serial reference: plain nested loops over the sphere, no slicing.
Relation q_of_r_reference(std::span<const std::int64_t> r);

/// r(m) = (1, m, m², …, m^{n−1}) for each m, each checked to have q = m.
/// Throws std::invalid_argument for n < 2 or m < 1, std::logic_error if a
/// computed q disagrees.
std::vector<RVector> admissible_sequence(std::size_t n, std::span<const std::int64_t> m_values);

}  // namespace mahler
