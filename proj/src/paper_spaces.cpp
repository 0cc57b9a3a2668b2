#include "triperi/paper_spaces.hpp"

namespace triperi {

namespace {

Scalar pow2_reciprocal(std::uint64_t k, const Scalar& scale) {
    if (k >= Scalar::kCapacityBits) {
        throw CapacityError("power of two exceeds exact-arithmetic capacity");
    }
    return scale * Scalar::from_ratio(BigInt(1), BigInt(1) << k);
}

} // namespace

void PaperSpaceParams::validate() const {
    if (!scale.is_exact()) {
        throw DomainError("paper space scale must be an exact rational");
    }
    if (!scale.is_positive()) {
        throw DomainError("paper space scale must be positive");
    }
    if (window < 3) {
        throw DomainError("paper space window must be at least 3");
    }
    if (window > kMaxExactWindow) {
        throw CapacityError("paper space window " + std::to_string(window) +
                            " exceeds exact-arithmetic capacity (max " +
                            std::to_string(kMaxExactWindow) + ")");
    }
}

std::pair<MetricSpace, SelfMap> make_three_point_example(ThreePointVariant variant) {
    const Scalar zero = Scalar::from_int(0);
    const Scalar one = Scalar::from_int(1);
    MetricSpace space = MetricSpace::finite(
        {"x", "y", "z"},
        {zero, one, one, one, zero, one, one, one, zero});
    const PointRef x = PointRef::index(0);
    const PointRef y = PointRef::index(1);
    std::vector<PointRef> images =
        variant == ThreePointVariant::A ? std::vector<PointRef>{x, y, x}
                                        : std::vector<PointRef>{y, x, x};
    SelfMap map = SelfMap::table(space, std::move(images));
    return {std::move(space), std::move(map)};
}

Scalar step_distance(std::uint64_t i, const PaperSpaceParams& params) {
    params.validate();
    return pow2_reciprocal(i / 2, params.scale);
}

Scalar prefix_distance(std::uint64_t i, const PaperSpaceParams& params) {
    params.validate();
    if (i == 0) {
        return Scalar::from_int(0);
    }
    const Scalar four_a = Scalar::from_int(4) * params.scale;
    const std::uint64_t n = (i + 1) / 2;
    const Scalar even_form = four_a - Scalar::from_int(4) * pow2_reciprocal(n, params.scale);
    if (i % 2 == 0) {
        return even_form;
    }
    return even_form - pow2_reciprocal(n - 1, params.scale);
}

std::pair<MetricSpace, SelfMap> make_paper_space(const PaperSpaceParams& params) {
    params.validate();
    const Scalar four_a = Scalar::from_int(4) * params.scale;
    auto rule = [params, four_a](PointRef p, PointRef q) -> Scalar {
        if (p == q) {
            return Scalar::from_int(0);
        }
        if (p.is_star() || q.is_star()) {
            const PointRef finite_pt = p.is_star() ? q : p;
            return four_a - prefix_distance(finite_pt.index_value(), params);
        }
        const std::uint64_t i = std::min(p.index_value(), q.index_value());
        const std::uint64_t j = std::max(p.index_value(), q.index_value());
        return prefix_distance(j, params) - prefix_distance(i, params);
    };
    MetricSpace space = MetricSpace::computable(std::move(rule), /*has_star=*/true,
                                                params.window, NumericMode::Exact);
    SelfMap map = SelfMap::rule(
        space,
        [](PointRef p) {
            return p.is_star() ? p : PointRef::index(p.index_value() + 1);
        },
        {PointRef::star()});
    return {std::move(space), std::move(map)};
}

Scalar star_triple_ratio(std::uint64_t i, const PaperSpaceParams& params) {
    params.validate();
    const Scalar eight_a = Scalar::from_int(8) * params.scale;
    const Scalar two = Scalar::from_int(2);
    return (eight_a - two * prefix_distance(i + 1, params)) /
           (eight_a - two * prefix_distance(i, params));
}

Scalar finite_triple_ratio(std::uint64_t i, std::uint64_t j, std::uint64_t k,
                           const PaperSpaceParams& params) {
    params.validate();
    if (!(i < j && j < k)) {
        throw DomainError("finite_triple_ratio needs strictly increasing indices");
    }
    // By betweenness the perimeter of (x_i, x_j, x_k) is 2*d(x_i, x_k).
    const Scalar perimeter =
        Scalar::from_int(2) * (prefix_distance(k, params) - prefix_distance(i, params));
    const Scalar shrink =
        Scalar::from_int(2) * (step_distance(i, params) - step_distance(k, params));
    return Scalar::from_int(1) - shrink / perimeter;
}

} // namespace triperi
