#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triperi/metric_space.hpp"

namespace triperi {

/// Total self-map of a space: a finite association table, or a rule over
/// symbolic indices. Rule maps stay total on the infinite index set; windows
/// bound enumeration only, never the map itself. Immutable and cheap to copy.
class SelfMap {
public:
    enum class Kind { Table, Rule };

    /// images[i] is the image of point i; totality and membership enforced.
    static SelfMap table(MetricSpace space, std::vector<PointRef> images);

    /// declared_fixed_points lets a rule announce fixed structure that
    /// enumeration should always include (the shift map declares x*).
    static SelfMap rule(MetricSpace space,
                        std::function<PointRef(PointRef)> fn,
                        std::vector<PointRef> declared_fixed_points = {});

    Kind kind() const;
    const MetricSpace& space() const;
    const std::vector<PointRef>& declared_fixed_points() const;

    PointRef apply(PointRef p) const;

private:
    struct Impl;
    explicit SelfMap(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

/// Why an orbit record ended the way it did. FixedPointReached: the point
/// sequence stopped early at a fixed point. PerimeterDegenerate: the points
/// ran to budget but a consecutive triple coincided, so the perimeter
/// sequence ends early. BudgetExhausted: full points, full perimeters.
enum class OrbitStopReason { BudgetExhausted, FixedPointReached, PerimeterDegenerate };

/// Iteration record x_0, x_1 = T x_0, ... with the perimeters
/// p_k = perimeter(x_k, x_{k+1}, x_{k+2}) for as long as those triples are
/// pairwise distinct.
struct OrbitTrace {
    std::vector<PointRef> points;
    std::vector<Scalar> perimeters;
    OrbitStopReason stop = OrbitStopReason::BudgetExhausted;
};

/// Trace of up to n+1 points from x0; stops early at a fixed point.
OrbitTrace orbit(const SelfMap& map, PointRef x0, std::uint64_t n);

/// All fixed points in the (windowed) domain, lexicographic order. Rule maps
/// always include their declared fixed points.
std::vector<PointRef> fixed_points(const SelfMap& map,
                                   std::optional<std::uint64_t> window = {});

/// Lexicographically first x with Tx != x and T(T(x)) = x, if any.
std::optional<PointRef> find_period_two_violation(const SelfMap& map,
                                                  std::optional<std::uint64_t> window = {});

/// FMAP v1: `fmap 1`, then one `source target` pair per line; every point of
/// the space appears exactly once as source.
SelfMap parse_fmap(std::string_view text, const MetricSpace& space);

/// Canonical FMAP v1 rendering, sources in point order (table maps only).
std::string write_fmap(const SelfMap& map);

} // namespace triperi
