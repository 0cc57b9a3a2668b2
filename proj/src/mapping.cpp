#include "triperi/mapping.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "token_stream.hpp"

namespace triperi {

struct SelfMap::Impl {
    Kind kind;
    MetricSpace space;
    std::vector<PointRef> images; // table kind
    std::function<PointRef(PointRef)> fn; // rule kind
    std::vector<PointRef> declared_fixed;

    explicit Impl(MetricSpace s) : kind(Kind::Table), space(std::move(s)) {}
};

SelfMap::SelfMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

SelfMap SelfMap::table(MetricSpace space, std::vector<PointRef> images) {
    if (space.kind() != MetricSpace::Kind::Finite) {
        throw DomainError("table maps require a finite space");
    }
    if (images.size() != space.finite_size()) {
        throw DomainError("table map must give exactly one image per point");
    }
    for (PointRef img : images) {
        if (!space.contains(img)) {
            throw DomainError("table map image outside the space");
        }
    }
    auto impl = std::make_shared<Impl>(std::move(space));
    impl->kind = Kind::Table;
    impl->images = std::move(images);
    return SelfMap(std::move(impl));
}

SelfMap SelfMap::rule(MetricSpace space,
                      std::function<PointRef(PointRef)> fn,
                      std::vector<PointRef> declared_fixed_points) {
    if (!fn) {
        throw DomainError("rule map needs a function");
    }
    for (PointRef p : declared_fixed_points) {
        if (!space.contains(p)) {
            throw DomainError("declared fixed point outside the space");
        }
    }
    auto impl = std::make_shared<Impl>(std::move(space));
    impl->kind = Kind::Rule;
    impl->fn = std::move(fn);
    impl->declared_fixed = std::move(declared_fixed_points);
    return SelfMap(std::move(impl));
}

SelfMap::Kind SelfMap::kind() const { return impl_->kind; }
const MetricSpace& SelfMap::space() const { return impl_->space; }

const std::vector<PointRef>& SelfMap::declared_fixed_points() const {
    return impl_->declared_fixed;
}

PointRef SelfMap::apply(PointRef p) const {
    if (!impl_->space.contains(p)) {
        throw DomainError("apply() on a point outside the space");
    }
    if (impl_->kind == Kind::Table) {
        return impl_->images[p.index_value()];
    }
    PointRef image = impl_->fn(p);
    if (!impl_->space.contains(image)) {
        throw DomainError("rule map produced a point outside the space");
    }
    return image;
}

OrbitTrace orbit(const SelfMap& map, PointRef x0, std::uint64_t n) {
    OrbitTrace trace;
    trace.points.push_back(x0);
    bool fixed = false;
    while (trace.points.size() < n + 1) {
        PointRef next = map.apply(trace.points.back());
        if (next == trace.points.back()) {
            fixed = true;
            break;
        }
        trace.points.push_back(next);
    }

    bool degenerate = false;
    for (std::size_t k = 0; k + 2 < trace.points.size(); ++k) {
        // Adjacent points differ by construction; only x_k = x_{k+2} can occur.
        if (trace.points[k] == trace.points[k + 2]) {
            degenerate = true;
            break;
        }
        trace.perimeters.push_back(perimeter(
            map.space(), Triple(trace.points[k], trace.points[k + 1], trace.points[k + 2])));
    }

    if (fixed) {
        trace.stop = OrbitStopReason::FixedPointReached;
    } else if (degenerate) {
        trace.stop = OrbitStopReason::PerimeterDegenerate;
    } else {
        trace.stop = OrbitStopReason::BudgetExhausted;
    }
    return trace;
}

std::vector<PointRef> fixed_points(const SelfMap& map,
                                   std::optional<std::uint64_t> window) {
    std::vector<PointRef> out;
    for (PointRef p : map.space().enumerate(window)) {
        if (map.apply(p) == p) {
            out.push_back(p);
        }
    }
    for (PointRef p : map.declared_fixed_points()) {
        if (map.apply(p) == p && std::find(out.begin(), out.end(), p) == out.end()) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PointRef> find_period_two_violation(const SelfMap& map,
                                                  std::optional<std::uint64_t> window) {
    for (PointRef p : map.space().enumerate(window)) {
        PointRef image = map.apply(p);
        if (image != p && map.apply(image) == p) {
            return p;
        }
    }
    return std::nullopt;
}

SelfMap parse_fmap(std::string_view text, const MetricSpace& space) {
    if (space.kind() != MetricSpace::Kind::Finite) {
        throw DomainError("FMAP files describe maps on finite spaces");
    }
    detail::TokenStream tokens(text);

    auto magic = tokens.next("'fmap' header");
    if (magic.text != "fmap") {
        throw ParseError("expected 'fmap' header, got '" + std::string(magic.text) + "'",
                         magic.line, magic.column);
    }
    auto version = tokens.next("format version");
    if (version.text != "1") {
        throw ParseError("unsupported fmap version '" + std::string(version.text) + "'",
                         version.line, version.column);
    }

    const std::size_t n = space.finite_size();
    std::vector<std::optional<PointRef>> images(n);
    for (std::size_t pair = 0; pair < n; ++pair) {
        auto src = tokens.next("source point name");
        auto dst = tokens.next("target point name");
        auto src_ref = space.find_point(src.text);
        if (!src_ref) {
            throw ParseError("unknown source point '" + std::string(src.text) + "'",
                             src.line, src.column);
        }
        auto dst_ref = space.find_point(dst.text);
        if (!dst_ref) {
            throw ParseError("unknown target point '" + std::string(dst.text) + "'",
                             dst.line, dst.column);
        }
        auto& slot = images[src_ref->index_value()];
        if (slot) {
            throw ParseError("source point '" + std::string(src.text) + "' mapped twice",
                             src.line, src.column);
        }
        slot = *dst_ref;
    }
    tokens.expect_end();
    std::vector<PointRef> table;
    table.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!images[i]) {
            throw ParseError("map is not total: point '" +
                                 space.point_name(PointRef::index(i)) + "' has no image",
                             tokens.line(), tokens.column());
        }
        table.push_back(*images[i]);
    }
    return SelfMap::table(space, std::move(table));
}

std::string write_fmap(const SelfMap& map) {
    if (map.kind() != SelfMap::Kind::Table) {
        throw DomainError("write_fmap supports table maps only");
    }
    const MetricSpace& space = map.space();
    std::ostringstream out;
    out << "fmap 1\n";
    for (std::size_t i = 0; i < space.finite_size(); ++i) {
        PointRef p = PointRef::index(i);
        out << space.point_name(p) << " " << space.point_name(map.apply(p)) << "\n";
    }
    return out.str();
}

} // namespace triperi
