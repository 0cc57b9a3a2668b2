#pragma once

#include <cstdint>
#include <utility>

#include "triperi/mapping.hpp"
#include "triperi/metric_space.hpp"

namespace triperi {

/// The two built-in three-point examples over the equilateral unit space
/// {x, y, z}. Variant A (Tx = x, Ty = y, Tz = x) has exactly two fixed
/// points; variant B (Tx = y, Ty = x, Tz = x) has none and a period-two
/// violation at x.
enum class ThreePointVariant { A, B };

std::pair<MetricSpace, SelfMap> make_three_point_example(ThreePointVariant variant);

/// Parameters of the countable example space: a positive exact scale factor
/// a for all distances and the default enumeration window.
struct PaperSpaceParams {
    Scalar scale = Scalar::from_int(1);
    std::uint64_t window = 64;

    void validate() const;
};

/// d(x_i, x_{i+1}) = scale / 2^floor(i/2), exactly.
Scalar step_distance(std::uint64_t i, const PaperSpaceParams& params = {});

/// d(x_0, x_i) by the closed form; equals the telescoped sum of step
/// distances (the summation is kept as a test oracle).
Scalar prefix_distance(std::uint64_t i, const PaperSpaceParams& params = {});

/// The countable space over {x_0, x_1, ...} plus x*, with
/// d(x_i, x_j) = prefix(j) - prefix(i) for i < j and
/// d(x_i, x*) = 4*scale - prefix(i), together with the shift map
/// T x_i = x_{i+1}, T x* = x*. The window bounds enumeration only; distances
/// and the map stay evaluable at indices beyond it.
std::pair<MetricSpace, SelfMap> make_paper_space(const PaperSpaceParams& params = {});

/// Perimeter ratio of any triple (x_i, x_j, x*) with j > i, via the closed
/// form (8a - 2*prefix(i+1)) / (8a - 2*prefix(i)): 3/4 for even i, 2/3 for
/// odd i.
Scalar star_triple_ratio(std::uint64_t i, const PaperSpaceParams& params = {});

/// Perimeter ratio of (x_i, x_j, x_k) for i < j < k via the displayed
/// formula 1 - 2*(step(i) - step(k)) / (2*d(x_i, x_k)). Independent of j and
/// always <= 7/8.
Scalar finite_triple_ratio(std::uint64_t i, std::uint64_t j, std::uint64_t k,
                           const PaperSpaceParams& params = {});

} // namespace triperi
