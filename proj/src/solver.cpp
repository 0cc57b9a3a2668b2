#include "triperi/solver.hpp"

namespace triperi {

Scalar apriori_error_bound(const Scalar& alpha, const Scalar& p0, std::uint64_t n,
                           std::optional<std::uint64_t> gap) {
    if (alpha.is_negative() || alpha >= Scalar::one(alpha.mode())) {
        throw DomainError("a-priori bound needs alpha in [0,1)");
    }
    if (p0.is_negative()) {
        throw DomainError("a-priori bound needs p0 >= 0");
    }
    if (n == 0) {
        throw DomainError("a-priori bound needs n >= 1");
    }
    const Scalar one = Scalar::one(alpha.mode());
    const Scalar head = alpha.pow(n - 1);
    const Scalar tail = gap ? one - alpha.pow(*gap) : one;
    return head * tail / (one - alpha) * p0;
}

SolveResult picard_solve(const MetricSpace& space, const SelfMap& map, PointRef x0,
                         const Scalar& alpha, const Scalar& tol, std::uint64_t max_iter) {
    if (!space.contains(x0)) {
        throw DomainError("solver start point outside the space");
    }
    if (!tol.is_positive()) {
        throw DomainError("solver needs tol > 0");
    }
    if (alpha.is_negative() || alpha >= Scalar::one(alpha.mode())) {
        throw DomainError("solver needs alpha in [0,1)");
    }
    if (max_iter == 0) {
        throw DomainError("solver needs max_iter >= 1");
    }

    SolveResult result;
    result.alpha_used = alpha;
    result.final_gap = Scalar::zero(space.mode());

    auto gap_within_tol = [&](const Scalar& gap) {
        return space.mode() == NumericMode::Exact ? gap <= tol
                                                  : approx_leq(gap, tol, space.tolerance());
    };

    PointRef current = x0;
    std::uint64_t k = 0;
    while (true) {
        PointRef next = map.apply(current);
        if (next == current) {
            result.status = SolveStatus::ReachedExactFixedPoint;
            result.point = current;
            result.iterations = k;
            return result;
        }
        PointRef after = map.apply(next);
        if (after == current) {
            result.status = SolveStatus::ConditionIViolationDetected;
            result.point = current;
            result.iterations = k;
            result.condition_i_witness = current;
            return result;
        }
        // p_0 comes from the first triple; when it is degenerate the solver
        // still iterates but leaves the bound trace unavailable.
        if (k == 0 && after != next) {
            result.p0 = perimeter(space, Triple(current, next, after));
        }
        Scalar gap = space.distance(current, next);
        ++k;
        if (result.p0) {
            result.bound_trace.push_back(apriori_error_bound(alpha, *result.p0, k));
        }
        if (gap_within_tol(gap)) {
            result.status = SolveStatus::Converged;
            result.point = next;
            result.iterations = k;
            result.final_gap = std::move(gap);
            return result;
        }
        if (k >= max_iter) {
            result.status = SolveStatus::StalledBudget;
            result.point = next;
            result.iterations = k;
            result.final_gap = std::move(gap);
            return result;
        }
        current = next;
    }
}

std::vector<Scalar> perimeter_sequence(const MetricSpace& space, const SelfMap& map,
                                       PointRef x0, std::uint64_t n) {
    (void)space;
    OrbitTrace trace = orbit(map, x0, n + 2);
    std::vector<Scalar> out = std::move(trace.perimeters);
    if (out.size() > n + 1) {
        out.resize(n + 1);
    }
    return out;
}

} // namespace triperi
