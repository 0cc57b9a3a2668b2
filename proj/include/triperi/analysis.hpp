#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "triperi/mapping.hpp"
#include "triperi/metric_space.hpp"

namespace triperi {

/// Classification of a (space, map) pair over an enumeration window. The
/// coefficients are exact attained maxima over that window only; the window
/// is carried so a windowed maximum on an infinite space is never mistaken
/// for a global supremum.
struct AnalysisReport {
    Scalar alpha_star;
    Triple alpha_star_witness;
    Scalar lipschitz;
    std::pair<PointRef, PointRef> lipschitz_witness;
    bool is_perimeter_contracting = false; // alpha_star < 1
    bool is_contraction = false;           // lipschitz < 1
    std::optional<PointRef> condition_i_witness;
    std::vector<PointRef> fixed_points;
    std::uint64_t fixed_point_count = 0;
    std::optional<std::uint64_t> window; // nullopt: whole finite space
};

/// Image perimeter of t over its own perimeter. Image points may coincide;
/// the denominator is positive because t is pairwise distinct.
Scalar perimeter_ratio(const MetricSpace& space, const SelfMap& map, const Triple& t);

/// Exact maximum of perimeter_ratio over all pairwise-distinct triples in
/// the window, with the lexicographically smallest maximizing triple. The map
/// satisfies the perimeter-contraction inequality on the window with any
/// coefficient at or above this value.
std::pair<Scalar, Triple> perimeter_contraction_coefficient(
    const MetricSpace& space, const SelfMap& map,
    std::optional<std::uint64_t> window = {});

/// Exact maximum of d(Tp,Tq)/d(p,q) over distinct pairs, with the
/// lexicographically smallest maximizing pair.
std::pair<Scalar, std::pair<PointRef, PointRef>> lipschitz_coefficient(
    const MetricSpace& space, const SelfMap& map,
    std::optional<std::uint64_t> window = {});

AnalysisReport classify(const MetricSpace& space, const SelfMap& map,
                        std::optional<std::uint64_t> window = {});

struct ContinuityCheckResult {
    bool pass = false;
    std::optional<PointRef> witness; // first x with d(Tx0,Tx) >= eps
    Scalar delta;                    // eps / (4*alpha)
    std::uint64_t points_tested = 0; // windowed points inside the delta-ball
};

/// Verifies the continuity modulus delta = eps/(4*alpha): every windowed
/// x != x0 with d(x0,x) < delta must satisfy d(Tx0,Tx) < eps. alpha must lie
/// in (0,1); alpha = 0 is a distinct error unless the map collapses every
/// windowed point to one image, which passes trivially.
ContinuityCheckResult continuity_modulus_check(const MetricSpace& space,
                                               const SelfMap& map, PointRef x0,
                                               const Scalar& eps, const Scalar& alpha,
                                               std::optional<std::uint64_t> window = {});

/// Thread cap for internal enumeration: hardware concurrency, clamped by the
/// TRIPERI_THREADS environment variable (positive integer) when set.
std::size_t max_enumeration_threads();

} // namespace triperi
