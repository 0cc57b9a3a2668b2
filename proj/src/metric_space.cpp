#include "triperi/metric_space.hpp"

#include <charconv>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "token_stream.hpp"

namespace triperi {

std::uint64_t PointRef::index_value() const {
    if (tag_ != Tag::Index) {
        throw DomainError("index_value() on star point");
    }
    return index_;
}

Triple::Triple(PointRef a, PointRef b, PointRef c) : a_(a), b_(b), c_(c) {
    if (a == b || b == c || a == c) {
        throw DomainError("triple points must be pairwise distinct");
    }
}

struct MetricSpace::Impl {
    Kind kind;
    NumericMode mode;
    FloatTolerance tolerance;

    // Finite kind
    std::vector<std::string> names;
    std::vector<Scalar> matrix; // row-major, names.size() squared
    std::unordered_map<std::string, std::uint64_t> name_index;

    // Computable kind
    std::function<Scalar(PointRef, PointRef)> rule;
    bool star = false;
    std::optional<std::uint64_t> default_window;
};

MetricSpace::MetricSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

MetricSpace MetricSpace::finite(std::vector<std::string> names,
                                std::vector<Scalar> matrix,
                                FloatTolerance tolerance) {
    if (names.empty()) {
        throw DomainError("finite space needs at least one point");
    }
    if (matrix.size() != names.size() * names.size()) {
        throw DomainError("distance matrix size does not match point count");
    }
    const NumericMode mode = matrix.front().mode();
    for (const Scalar& s : matrix) {
        if (s.mode() != mode) {
            throw DomainError("distance matrix mixes exact and float entries");
        }
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Finite;
    impl->mode = mode;
    impl->tolerance = tolerance;
    impl->names = std::move(names);
    impl->matrix = std::move(matrix);
    for (std::uint64_t i = 0; i < impl->names.size(); ++i) {
        auto [it, inserted] = impl->name_index.emplace(impl->names[i], i);
        if (!inserted) {
            throw DomainError("duplicate point name '" + impl->names[i] + "'");
        }
    }
    return MetricSpace(std::move(impl));
}

MetricSpace MetricSpace::computable(std::function<Scalar(PointRef, PointRef)> rule,
                                    bool has_star,
                                    std::optional<std::uint64_t> default_window,
                                    NumericMode mode,
                                    FloatTolerance tolerance) {
    if (!rule) {
        throw DomainError("computable space needs a distance rule");
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Computable;
    impl->mode = mode;
    impl->tolerance = tolerance;
    impl->rule = std::move(rule);
    impl->star = has_star;
    impl->default_window = default_window;
    return MetricSpace(std::move(impl));
}

MetricSpace::Kind MetricSpace::kind() const { return impl_->kind; }
NumericMode MetricSpace::mode() const { return impl_->mode; }
const FloatTolerance& MetricSpace::tolerance() const { return impl_->tolerance; }
bool MetricSpace::has_star() const { return impl_->kind == Kind::Computable && impl_->star; }

std::optional<std::uint64_t> MetricSpace::default_window() const {
    return impl_->kind == Kind::Computable ? impl_->default_window : std::nullopt;
}

std::size_t MetricSpace::finite_size() const {
    if (impl_->kind != Kind::Finite) {
        throw DomainError("finite_size() on computable space");
    }
    return impl_->names.size();
}

bool MetricSpace::contains(PointRef p) const {
    if (impl_->kind == Kind::Finite) {
        return p.tag() == PointRef::Tag::Index && p.index_value() < impl_->names.size();
    }
    return p.is_star() ? impl_->star : true;
}

std::string MetricSpace::point_name(PointRef p) const {
    if (!contains(p)) {
        throw DomainError("unknown point");
    }
    if (impl_->kind == Kind::Finite) {
        return impl_->names[p.index_value()];
    }
    return p.is_star() ? "x*" : "x" + std::to_string(p.index_value());
}

std::optional<PointRef> MetricSpace::find_point(std::string_view name) const {
    if (impl_->kind == Kind::Finite) {
        auto it = impl_->name_index.find(std::string(name));
        if (it == impl_->name_index.end()) {
            return std::nullopt;
        }
        return PointRef::index(it->second);
    }
    if (name == "x*" || name == "star") {
        return impl_->star ? std::optional<PointRef>(PointRef::star()) : std::nullopt;
    }
    std::string_view digits = name;
    if (digits.size() > 1 && digits[0] == 'x') {
        digits.remove_prefix(1);
    }
    std::uint64_t idx = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return PointRef::index(idx);
}

Scalar MetricSpace::distance(PointRef p, PointRef q) const {
    if (!contains(p) || !contains(q)) {
        throw DomainError("distance of point outside the space");
    }
    if (impl_->kind == Kind::Finite) {
        const std::size_t n = impl_->names.size();
        return impl_->matrix[p.index_value() * n + q.index_value()];
    }
    return impl_->rule(p, q);
}

std::vector<PointRef> MetricSpace::enumerate(std::optional<std::uint64_t> window) const {
    std::vector<PointRef> out;
    if (impl_->kind == Kind::Finite) {
        out.reserve(impl_->names.size());
        for (std::uint64_t i = 0; i < impl_->names.size(); ++i) {
            out.push_back(PointRef::index(i));
        }
        return out;
    }
    std::optional<std::uint64_t> w = window ? window : impl_->default_window;
    if (!w) {
        throw DomainError("computable space enumeration requires a window");
    }
    if (impl_->mode == NumericMode::Exact && *w > kMaxExactWindow) {
        throw CapacityError("window " + std::to_string(*w) + " exceeds exact-arithmetic capacity (max " +
                            std::to_string(kMaxExactWindow) + ")");
    }
    out.reserve(*w + 2);
    for (std::uint64_t i = 0; i <= *w; ++i) {
        out.push_back(PointRef::index(i));
    }
    if (impl_->star) {
        out.push_back(PointRef::star());
    }
    return out;
}

namespace {

bool leq_with_tolerance(const Scalar& lhs, const Scalar& rhs, const MetricSpace& space) {
    return space.mode() == NumericMode::Exact ? lhs <= rhs
                                              : approx_leq(lhs, rhs, space.tolerance());
}

bool eq_with_tolerance(const Scalar& lhs, const Scalar& rhs, const MetricSpace& space) {
    return space.mode() == NumericMode::Exact ? lhs == rhs
                                              : approx_equal(lhs, rhs, space.tolerance());
}

} // namespace

AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::optional<std::uint64_t> window) {
    const std::vector<PointRef> pts = space.enumerate(window);
    AxiomReport report;
    report.points_checked = pts.size();
    const Scalar zero = Scalar::zero(space.mode());

    auto fail = [&](AxiomViolation::Kind kind, std::vector<PointRef> points,
                    Scalar lhs, Scalar rhs) {
        report.pass = false;
        report.violation = AxiomViolation{kind, std::move(points), std::move(lhs), std::move(rhs)};
        return report;
    };

    for (PointRef p : pts) {
        Scalar d = space.distance(p, p);
        if (!eq_with_tolerance(d, zero, space)) {
            return fail(AxiomViolation::Kind::SelfDistanceNonzero, {p}, d, zero);
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Scalar pq = space.distance(pts[i], pts[j]);
            Scalar qp = space.distance(pts[j], pts[i]);
            if (!eq_with_tolerance(pq, qp, space)) {
                return fail(AxiomViolation::Kind::Asymmetric, {pts[i], pts[j]}, pq, qp);
            }
            if (pq.is_negative() && !eq_with_tolerance(pq, zero, space)) {
                return fail(AxiomViolation::Kind::Negative, {pts[i], pts[j]}, pq, zero);
            }
            if (eq_with_tolerance(pq, zero, space)) {
                return fail(AxiomViolation::Kind::ZeroForDistinct, {pts[i], pts[j]}, pq, zero);
            }
        }
    }
    // Ordered triples (p, via, r): check d(p,r) <= d(p,via) + d(via,r).
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (k == i || k == j) continue;
                Scalar lhs = space.distance(pts[i], pts[k]);
                Scalar rhs = space.distance(pts[i], pts[j]) + space.distance(pts[j], pts[k]);
                if (!leq_with_tolerance(lhs, rhs, space)) {
                    return fail(AxiomViolation::Kind::TriangleInequality,
                                {pts[i], pts[j], pts[k]}, lhs, rhs);
                }
            }
        }
    }
    report.pass = true;
    return report;
}

Scalar perimeter(const MetricSpace& space, const Triple& t) {
    return space.distance(t.a(), t.b()) + space.distance(t.b(), t.c()) +
           space.distance(t.a(), t.c());
}

bool is_between(const MetricSpace& space, PointRef x, PointRef y, PointRef z) {
    Triple guard(x, y, z); // enforces pairwise distinctness
    (void)guard;
    Scalar lhs = space.distance(x, z);
    Scalar rhs = space.distance(x, y) + space.distance(y, z);
    return space.mode() == NumericMode::Exact ? lhs == rhs
                                              : approx_equal(lhs, rhs, space.tolerance());
}

MetricSpace scale_space(const MetricSpace& space, const Scalar& factor) {
    if (space.kind() != MetricSpace::Kind::Finite) {
        throw DomainError("scale_space supports finite spaces only");
    }
    if (!factor.is_positive()) {
        throw DomainError("scale factor must be positive");
    }
    const std::size_t n = space.finite_size();
    std::vector<std::string> names;
    names.reserve(n);
    std::vector<Scalar> matrix;
    matrix.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(space.point_name(PointRef::index(i)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            matrix.push_back(space.distance(PointRef::index(i), PointRef::index(j)) * factor);
        }
    }
    return MetricSpace::finite(std::move(names), std::move(matrix), space.tolerance());
}

MetricSpace convert_to_float(const MetricSpace& space) {
    if (space.kind() != MetricSpace::Kind::Finite) {
        throw DomainError("convert_to_float supports finite spaces only");
    }
    const std::size_t n = space.finite_size();
    std::vector<std::string> names;
    names.reserve(n);
    std::vector<Scalar> matrix;
    matrix.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(space.point_name(PointRef::index(i)));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            matrix.push_back(Scalar::from_double(
                space.distance(PointRef::index(i), PointRef::index(j)).as_double()));
        }
    }
    return MetricSpace::finite(std::move(names), std::move(matrix), space.tolerance());
}

MetricSpace parse_fms(std::string_view text) {
    detail::TokenStream tokens(text);

    auto magic = tokens.next("'fms' header");
    if (magic.text != "fms") {
        throw ParseError("expected 'fms' header, got '" + std::string(magic.text) + "'",
                         magic.line, magic.column);
    }
    auto version = tokens.next("format version");
    if (version.text != "1") {
        throw ParseError("unsupported fms version '" + std::string(version.text) + "'",
                         version.line, version.column);
    }
    auto points_kw = tokens.next("'points'");
    if (points_kw.text != "points") {
        throw ParseError("expected 'points', got '" + std::string(points_kw.text) + "'",
                         points_kw.line, points_kw.column);
    }
    auto count_tok = tokens.next("point count");
    std::uint64_t n = 0;
    {
        auto [ptr, ec] = std::from_chars(count_tok.text.data(),
                                         count_tok.text.data() + count_tok.text.size(), n);
        if (ec != std::errc() || ptr != count_tok.text.data() + count_tok.text.size() || n == 0) {
            throw ParseError("invalid point count '" + std::string(count_tok.text) + "'",
                             count_tok.line, count_tok.column);
        }
    }
    std::vector<std::string> names;
    names.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto name = tokens.next("point name");
        names.emplace_back(name.text);
    }
    auto mode_tok = tokens.next("'exact' or 'float'");
    NumericMode mode;
    if (mode_tok.text == "exact") {
        mode = NumericMode::Exact;
    } else if (mode_tok.text == "float") {
        mode = NumericMode::Float;
    } else {
        throw ParseError("expected 'exact' or 'float', got '" + std::string(mode_tok.text) + "'",
                         mode_tok.line, mode_tok.column);
    }
    std::vector<Scalar> matrix;
    matrix.reserve(n * n);
    for (std::uint64_t i = 0; i < n * n; ++i) {
        auto entry = tokens.next("matrix entry");
        try {
            matrix.push_back(Scalar::parse(entry.text, mode));
        } catch (const Error& e) {
            throw ParseError(e.what(), entry.line, entry.column);
        }
    }
    tokens.expect_end();
    try {
        return MetricSpace::finite(std::move(names), std::move(matrix));
    } catch (const Error& e) {
        throw ParseError(e.what(), 1, 1);
    }
}

std::string write_fms(const MetricSpace& space) {
    if (space.kind() != MetricSpace::Kind::Finite) {
        throw DomainError("write_fms supports finite spaces only");
    }
    const std::size_t n = space.finite_size();
    std::ostringstream out;
    out << "fms 1\n";
    out << "points " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << (i ? " " : "") << space.point_name(PointRef::index(i));
    }
    out << "\n" << (space.mode() == NumericMode::Exact ? "exact" : "float") << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out << (j ? " " : "") << space.distance(PointRef::index(i), PointRef::index(j)).str();
        }
        out << "\n";
    }
    return out.str();
}

} // namespace triperi
