#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "triperi/mapping.hpp"
#include "triperi/metric_space.hpp"

namespace triperi {

enum class SolveStatus {
    Converged,                   // iterate gap fell to tolerance
    ReachedExactFixedPoint,      // T(x_k) = x_k hit exactly
    StalledBudget,               // max_iter exhausted
    ConditionIViolationDetected, // some x with Tx != x and T(T(x)) = x observed
};

struct SolveResult {
    SolveStatus status = SolveStatus::StalledBudget;
    PointRef point = PointRef::index(0); // best iterate
    std::uint64_t iterations = 0;
    Scalar final_gap;    // d(x_n, x_{n+1}) at the stop, 0 at an exact fixed point
    /// Entry k is apriori_error_bound(alpha, p0, k+1); empty when p0 is
    /// unavailable because (x_0, x_1, x_2) were not pairwise distinct.
    std::vector<Scalar> bound_trace;
    Scalar alpha_used;
    std::optional<Scalar> p0;
    std::optional<PointRef> condition_i_witness;
};

/// The Cauchy bound of the fixed-point iteration:
/// alpha^(n-1) * (1 - alpha^gap) / (1 - alpha) * p0 when gap is given, else
/// the supremal form alpha^(n-1) * p0 / (1 - alpha). Requires
/// 0 <= alpha < 1, p0 >= 0, n >= 1.
Scalar apriori_error_bound(const Scalar& alpha, const Scalar& p0, std::uint64_t n,
                           std::optional<std::uint64_t> gap = {});

/// Iterates x_{k+1} = T x_k from x0 until an exact fixed point, an iterate
/// gap at or below tol, or the budget. A period-two return (Tx != x,
/// T(T(x)) = x) aborts with ConditionIViolationDetected and the witness.
/// alpha is caller-certified (the analysis module certifies windows); it is
/// only used for the bound trace. Exact mode compares the gap to tol exactly;
/// float mode applies the space tolerances.
SolveResult picard_solve(const MetricSpace& space, const SelfMap& map, PointRef x0,
                         const Scalar& alpha, const Scalar& tol, std::uint64_t max_iter);

/// p_0, ..., p_n along the orbit of x0, shorter if a consecutive triple
/// degenerates first.
std::vector<Scalar> perimeter_sequence(const MetricSpace& space, const SelfMap& map,
                                       PointRef x0, std::uint64_t n);

} // namespace triperi
