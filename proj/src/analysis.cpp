#include "triperi/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <thread>

namespace triperi {

namespace {

bool triple_less(const Triple& a, const Triple& b) {
    if (a.a() != b.a()) return a.a() < b.a();
    if (a.b() != b.b()) return a.b() < b.b();
    return a.c() < b.c();
}

struct MaxTriple {
    Scalar value;
    Triple witness;
};

/// Lattice merge: larger value wins, exact ties keep the lexicographically
/// smaller witness. Associative and commutative, so the reduction is
/// deterministic under any partition of the enumeration.
MaxTriple merge(MaxTriple a, const MaxTriple& b) {
    if (b.value > a.value || (b.value == a.value && triple_less(b.witness, a.witness))) {
        return b;
    }
    return a;
}

std::optional<MaxTriple> scan_triples(const MetricSpace& space, const SelfMap& map,
                                      const std::vector<PointRef>& pts,
                                      std::size_t first_index_start,
                                      std::size_t first_index_stride) {
    std::optional<MaxTriple> best;
    for (std::size_t i = first_index_start; i + 2 < pts.size(); i += first_index_stride) {
        for (std::size_t j = i + 1; j + 1 < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                Triple t(pts[i], pts[j], pts[k]);
                Scalar r = perimeter_ratio(space, map, t);
                if (!best || r > best->value) {
                    best = MaxTriple{std::move(r), t};
                }
            }
        }
    }
    return best;
}

} // namespace

std::size_t max_enumeration_threads() {
    std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("TRIPERI_THREADS");
    if (env == nullptr) {
        return hw;
    }
    std::uint64_t cap = 0;
    const char* end = env + std::string_view(env).size();
    auto [ptr, ec] = std::from_chars(env, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0) {
        throw DomainError("TRIPERI_THREADS must be a positive integer");
    }
    return std::min<std::size_t>(hw, cap);
}

Scalar perimeter_ratio(const MetricSpace& space, const SelfMap& map, const Triple& t) {
    PointRef ia = map.apply(t.a());
    PointRef ib = map.apply(t.b());
    PointRef ic = map.apply(t.c());
    Scalar image = space.distance(ia, ib) + space.distance(ib, ic) + space.distance(ia, ic);
    return image / perimeter(space, t);
}

std::pair<Scalar, Triple> perimeter_contraction_coefficient(
    const MetricSpace& space, const SelfMap& map, std::optional<std::uint64_t> window) {
    const std::vector<PointRef> pts = space.enumerate(window);
    if (pts.size() < 3) {
        throw DomainError("perimeter-contraction coefficient needs at least 3 points");
    }

    if (space.mode() == NumericMode::Exact) {
        const std::size_t threads =
            std::min(max_enumeration_threads(), pts.size() / 16 + 1);
        if (threads > 1) {
            std::vector<std::optional<MaxTriple>> partial(threads);
            std::vector<std::exception_ptr> errors(threads);
            std::vector<std::thread> workers;
            workers.reserve(threads);
            for (std::size_t t = 0; t < threads; ++t) {
                workers.emplace_back([&, t] {
                    try {
                        partial[t] = scan_triples(space, map, pts, t, threads);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) {
                w.join();
            }
            for (const auto& err : errors) {
                if (err) {
                    std::rethrow_exception(err);
                }
            }
            std::optional<MaxTriple> best;
            for (auto& p : partial) {
                if (p) {
                    best = best ? merge(*best, *p) : *p;
                }
            }
            return {best->value, best->witness};
        }
        auto best = scan_triples(space, map, pts, 0, 1);
        return {best->value, best->witness};
    }

    // Float mode runs serially: near-ties within the absolute tolerance keep
    // the earlier (lexicographically smaller) witness.
    const double tie = space.tolerance().absolute;
    std::optional<MaxTriple> best;
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j + 1 < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                Triple t(pts[i], pts[j], pts[k]);
                Scalar r = perimeter_ratio(space, map, t);
                if (!best || r.as_double() > best->value.as_double() + tie) {
                    best = MaxTriple{std::move(r), t};
                }
            }
        }
    }
    return {best->value, best->witness};
}

std::pair<Scalar, std::pair<PointRef, PointRef>> lipschitz_coefficient(
    const MetricSpace& space, const SelfMap& map, std::optional<std::uint64_t> window) {
    const std::vector<PointRef> pts = space.enumerate(window);
    if (pts.size() < 2) {
        throw DomainError("Lipschitz coefficient needs at least 2 points");
    }
    const bool exact = space.mode() == NumericMode::Exact;
    const double tie = space.tolerance().absolute;
    std::optional<Scalar> best;
    std::pair<PointRef, PointRef> witness{pts[0], pts[1]};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Scalar r = space.distance(map.apply(pts[i]), map.apply(pts[j])) /
                       space.distance(pts[i], pts[j]);
            const bool better = !best || (exact ? r > *best
                                                : r.as_double() > best->as_double() + tie);
            if (better) {
                best = std::move(r);
                witness = {pts[i], pts[j]};
            }
        }
    }
    return {*best, witness};
}

AnalysisReport classify(const MetricSpace& space, const SelfMap& map,
                        std::optional<std::uint64_t> window) {
    auto [alpha_star, alpha_witness] = perimeter_contraction_coefficient(space, map, window);
    auto [lip, lip_witness] = lipschitz_coefficient(space, map, window);
    const Scalar one = Scalar::one(space.mode());

    AnalysisReport report{
        std::move(alpha_star),
        alpha_witness,
        std::move(lip),
        lip_witness,
        false,
        false,
        find_period_two_violation(map, window),
        fixed_points(map, window),
        0,
        window ? window : space.default_window(),
    };
    report.is_perimeter_contracting = report.alpha_star < one;
    report.is_contraction = report.lipschitz < one;
    report.fixed_point_count = report.fixed_points.size();
    return report;
}

ContinuityCheckResult continuity_modulus_check(const MetricSpace& space,
                                               const SelfMap& map, PointRef x0,
                                               const Scalar& eps, const Scalar& alpha,
                                               std::optional<std::uint64_t> window) {
    if (!space.contains(x0)) {
        throw DomainError("continuity check start point outside the space");
    }
    if (!eps.is_positive()) {
        throw DomainError("continuity check needs eps > 0");
    }
    if (alpha.is_negative() || alpha >= Scalar::one(alpha.mode())) {
        throw DomainError("continuity check needs alpha in [0,1)");
    }
    const std::vector<PointRef> pts = space.enumerate(window);
    if (pts.size() < 3) {
        throw DomainError("continuity check needs at least 3 points in the window");
    }
    if (alpha.is_zero()) {
        // delta = eps/(4*alpha) is undefined. The only map certified by
        // alpha = 0 collapses every triple, so accept exactly that case.
        PointRef first_image = map.apply(pts.front());
        for (PointRef p : pts) {
            if (map.apply(p) != first_image) {
                throw ZeroAlphaError("alpha = 0 leaves delta = eps/(4*alpha) undefined");
            }
        }
        return ContinuityCheckResult{true, std::nullopt, eps, 0};
    }

    ContinuityCheckResult result;
    result.delta = eps / (Scalar::from_int(4) * alpha);
    PointRef image0 = map.apply(x0);
    for (PointRef p : pts) {
        if (p == x0 || !(space.distance(x0, p) < result.delta)) {
            continue;
        }
        ++result.points_tested;
        if (!(space.distance(image0, map.apply(p)) < eps)) {
            result.pass = false;
            result.witness = p;
            return result;
        }
    }
    result.pass = true;
    return result;
}

} // namespace triperi
