#pragma once

#include <span>
#include <string>
#include <vector>

#include "mahler/polynomial.hpp"
#include "mahler/quadrature.hpp"
#include "mahler/result.hpp"

namespace mahler {

/// The four Mahler-measure variants.
struct MeasureKind {
    enum class Tag { classic, higher, multiple, max };

    Tag tag = Tag::classic;
    int s = 1;  // power for `higher`

    static MeasureKind classic() { return {Tag::classic, 1}; }
    static MeasureKind higher(int s) { return {Tag::higher, s}; }
    static MeasureKind multiple() { return {Tag::multiple, 1}; }
    static MeasureKind max() { return {Tag::max, 1}; }

    std::string name() const;
    friend bool operator==(const MeasureKind&, const MeasureKind&) = default;
};

struct MeasureRequest {
    std::vector<Polynomial> polys;
    MeasureKind kind;
    QuadConfig cfg;
};

/// Roots within this modulus band of the circle split the circle quadrature.
inline constexpr double kSplitBand = 1e-2;

/// m(P) = ∫ log|P| over the torus. Univariate input goes through Jensen,
/// multivariate through torus QMC; variables P does not use are dropped first.
MeasureResult mahler(const Polynomial& p, const QuadConfig& cfg = {});

/// m_s(P) = ∫ log^s|P|.
MeasureResult higher_mahler(const Polynomial& p, int s, const QuadConfig& cfg = {});

/// m(P_1, …, P_s) = ∫ log|P_1| ⋯ log|P_s|. Constants and monomials are
/// factored out exactly; polys may have different nvars (lifted to the largest).
MeasureResult multiple_mahler(std::span<const Polynomial> polys, const QuadConfig& cfg = {});

/// m_max(P_1, …, P_s) = ∫ max_i log|P_i|. Duplicate inputs are removed; a
/// single distinct input reduces to mahler().
MeasureResult generalized_mahler(std::span<const Polynomial> polys, const QuadConfig& cfg = {});

/// Validates the request invariants and dispatches on kind.
MeasureResult measure(const MeasureRequest& request);

}  // namespace mahler
