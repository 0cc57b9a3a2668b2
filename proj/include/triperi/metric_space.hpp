#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triperi/scalar.hpp"

namespace triperi {

/// Stable identity of a point. Finite spaces use Index into their point list;
/// computable spaces use Index as the symbolic natural index plus an optional
/// Star point. Ordering is index order with Star sorting after every index,
/// which is the lexicographic order every witness in this library uses.
class PointRef {
public:
    enum class Tag : std::uint8_t { Index, Star };

    static PointRef index(std::uint64_t i) { return PointRef(Tag::Index, i); }
    static PointRef star() { return PointRef(Tag::Star, 0); }

    Tag tag() const { return tag_; }
    bool is_star() const { return tag_ == Tag::Star; }
    std::uint64_t index_value() const;

    friend bool operator==(const PointRef& a, const PointRef& b) {
        return a.tag_ == b.tag_ && (a.tag_ == Tag::Star || a.index_ == b.index_);
    }
    friend bool operator!=(const PointRef& a, const PointRef& b) { return !(a == b); }
    friend bool operator<(const PointRef& a, const PointRef& b) {
        if (a.tag_ != b.tag_) {
            return a.tag_ == Tag::Index; // every index precedes star
        }
        return a.tag_ == Tag::Index && a.index_ < b.index_;
    }
    friend bool operator>(const PointRef& a, const PointRef& b) { return b < a; }
    friend bool operator<=(const PointRef& a, const PointRef& b) { return !(b < a); }
    friend bool operator>=(const PointRef& a, const PointRef& b) { return !(a < b); }

private:
    PointRef(Tag tag, std::uint64_t index) : tag_(tag), index_(index) {}

    Tag tag_;
    std::uint64_t index_;
};

/// Three pairwise-distinct points. The constructor rejects coincidences.
class Triple {
public:
    Triple(PointRef a, PointRef b, PointRef c);

    PointRef a() const { return a_; }
    PointRef b() const { return b_; }
    PointRef c() const { return c_; }

    friend bool operator==(const Triple& x, const Triple& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_;
    }

private:
    PointRef a_;
    PointRef b_;
    PointRef c_;
};

/// Enumeration windows on the exact backend stop here: distances at index N
/// carry denominators near 2^(N/2), and 200 keeps them comfortably inside the
/// checked width. Larger windows are a reported capacity error.
inline constexpr std::uint64_t kMaxExactWindow = 200;

/// Immutable point universe with a total distance oracle. Finite spaces are
/// matrix-backed; computable spaces evaluate a closed-form rule over the
/// index scheme {0,1,...} plus an optional star point, with enumeration
/// restricted by an explicit (or space-default) window that never alters the
/// oracle itself.
///
/// Cheap to copy: the handle shares one immutable implementation, so every
/// operation on it is pure and thread-compatible.
class MetricSpace {
public:
    enum class Kind { Finite, Computable };

    /// Matrix stored as given, row-major; axioms are checked separately so a
    /// defective matrix can be loaded, verified, and reported.
    static MetricSpace finite(std::vector<std::string> names,
                              std::vector<Scalar> matrix,
                              FloatTolerance tolerance = {});

    static MetricSpace computable(std::function<Scalar(PointRef, PointRef)> rule,
                                  bool has_star,
                                  std::optional<std::uint64_t> default_window,
                                  NumericMode mode,
                                  FloatTolerance tolerance = {});

    Kind kind() const;
    NumericMode mode() const;
    const FloatTolerance& tolerance() const;

    std::size_t finite_size() const; // Finite kind only
    bool has_star() const;
    std::optional<std::uint64_t> default_window() const;

    bool contains(PointRef p) const;
    std::string point_name(PointRef p) const;
    std::optional<PointRef> find_point(std::string_view name) const;

    Scalar distance(PointRef p, PointRef q) const;

    /// Finite kind: every point, in index order (window ignored). Computable
    /// kind: x_0..x_W plus star, where W is the explicit window or the space
    /// default; missing both is an error, and W > kMaxExactWindow is a
    /// capacity error in exact mode.
    std::vector<PointRef> enumerate(std::optional<std::uint64_t> window = {}) const;

private:
    struct Impl;
    explicit MetricSpace(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

struct AxiomViolation {
    enum class Kind {
        SelfDistanceNonzero, // d(p,p) != 0
        Asymmetric,          // d(p,q) != d(q,p)
        Negative,            // d(p,q) < 0
        ZeroForDistinct,     // d(p,q) = 0 with p != q
        TriangleInequality,  // d(p,r) > d(p,q) + d(q,r)
    };

    Kind kind;
    std::vector<PointRef> points; // 1 point, pair, or ordered triple (p, via, r)
    Scalar lhs;
    Scalar rhs;
};

struct AxiomReport {
    bool pass = false;
    std::optional<AxiomViolation> violation;
    std::uint64_t points_checked = 0;
};

/// Checks identity, symmetry, positivity, and every triangle inequality over
/// the (windowed) point set, in lexicographic point order; the first
/// violation wins. Float-mode checks apply the space tolerances.
AxiomReport verify_metric_axioms(const MetricSpace& space,
                                 std::optional<std::uint64_t> window = {});

/// d(a,b) + d(b,c) + d(a,c).
Scalar perimeter(const MetricSpace& space, const Triple& t);

/// True when y lies between x and z: d(x,z) = d(x,y) + d(y,z), exactly in
/// exact mode, within tolerance in float mode. Points must be distinct.
bool is_between(const MetricSpace& space, PointRef x, PointRef y, PointRef z);

/// Finite space with every distance multiplied by factor > 0.
MetricSpace scale_space(const MetricSpace& space, const Scalar& factor);

/// Finite exact space converted entry-wise to float mode.
MetricSpace convert_to_float(const MetricSpace& space);

/// FMS v1: `fms 1`, `points <n>`, n names, `exact`|`float`, then n*n entries
/// (integer, num/den, or decimal). Whitespace-separated tokens; parse errors
/// carry line and column. Axioms are NOT verified here.
MetricSpace parse_fms(std::string_view text);

/// Canonical FMS v1 rendering; exact entries as num/den, float entries as
/// shortest round-trip decimals. Round-trips bit-for-bit through parse_fms.
std::string write_fms(const MetricSpace& space);

} // namespace triperi
