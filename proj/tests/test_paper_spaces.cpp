#include "doctest.h"

#include "triperi/analysis.hpp"
#include "triperi/paper_spaces.hpp"

using namespace triperi;

namespace {

Scalar q(long long num, long long den = 1) {
    return Scalar::from_ratio(BigInt(num), BigInt(den));
}

/// Independent oracle: d(x_0, x_i) as the telescoped sum of step distances.
Scalar prefix_by_summation(std::uint64_t i, const PaperSpaceParams& params = {}) {
    Scalar sum = Scalar::from_int(0);
    for (std::uint64_t k = 0; k < i; ++k) {
        sum = sum + step_distance(k, params);
    }
    return sum;
}

const PointRef Star = PointRef::star();

PointRef xi(std::uint64_t i) { return PointRef::index(i); }

} // namespace

TEST_CASE("three-point examples sit on the equilateral unit space") {
    for (auto variant : {ThreePointVariant::A, ThreePointVariant::B}) {
        auto [space, map] = make_three_point_example(variant);
        CHECK(space.finite_size() == 3);
        CHECK(space.distance(xi(0), xi(1)) == q(1));
        CHECK(verify_metric_axioms(space).pass);
    }
    auto [space_a, map_a] = make_three_point_example(ThreePointVariant::A);
    CHECK(fixed_points(map_a).size() == 2);
    auto [space_b, map_b] = make_three_point_example(ThreePointVariant::B);
    CHECK(fixed_points(map_b).empty());
    CHECK(find_period_two_violation(map_b) == xi(0));
}

TEST_CASE("step distances follow a/2^floor(i/2)") {
    CHECK(step_distance(0) == q(1));
    CHECK(step_distance(1) == q(1));
    CHECK(step_distance(2) == q(1, 2));
    CHECK(step_distance(5) == q(1, 4));

    PaperSpaceParams scaled;
    scaled.scale = q(3, 2);
    CHECK(step_distance(0, scaled) == q(3, 2));
    CHECK(step_distance(5, scaled) == q(3, 8));
}

TEST_CASE("prefix distances: closed form equals the summation oracle") {
    CHECK(prefix_distance(0) == q(0));
    CHECK(prefix_distance(2) == q(2));
    CHECK(prefix_distance(7) == prefix_by_summation(7));
    for (std::uint64_t i = 0; i <= 80; ++i) {
        CHECK(prefix_distance(i) == prefix_by_summation(i));
    }
    PaperSpaceParams scaled;
    scaled.scale = q(5, 3);
    for (std::uint64_t i = 0; i <= 40; ++i) {
        CHECK(prefix_distance(i, scaled) == prefix_by_summation(i, scaled));
    }
}

TEST_CASE("prefix recurrence d(x_0,x_{i+1}) = d(x_0,x_i) + a/2^floor(i/2)") {
    for (std::uint64_t i = 0; i < 80; ++i) {
        CHECK(prefix_distance(i + 1) == prefix_distance(i) + step_distance(i));
    }
}

TEST_CASE("paper space distances match the definition") {
    auto [space, map] = make_paper_space();
    CHECK(space.distance(xi(2), Star) == q(2)); // 4a - prefix(2)
    CHECK(space.distance(xi(0), xi(2)) == q(2));
    CHECK(space.distance(xi(1), xi(3)) == q(3, 2));
    CHECK(space.distance(xi(4), xi(5)) == q(1, 4));
    CHECK(space.distance(Star, xi(2)) == q(2));
    CHECK(space.distance(xi(3), xi(3)) == q(0));
}

TEST_CASE("paper space passes the metric axioms on windows") {
    auto [space, map] = make_paper_space();
    CHECK(verify_metric_axioms(space, 32).pass);

    PaperSpaceParams scaled;
    scaled.scale = q(7, 5);
    auto [scaled_space, scaled_map] = make_paper_space(scaled);
    CHECK(verify_metric_axioms(scaled_space, 16).pass);
}

TEST_CASE("the shift map fixes x* only") {
    auto [space, map] = make_paper_space();
    CHECK(fixed_points(map, 32) == std::vector<PointRef>{Star});
    CHECK_FALSE(find_period_two_violation(map, 32).has_value());
}

TEST_CASE("star triple ratios alternate 3/4 and 2/3 by parity") {
    CHECK(star_triple_ratio(0) == q(3, 4));
    CHECK(star_triple_ratio(1) == q(2, 3));
    CHECK(star_triple_ratio(6) == q(3, 4));
    for (std::uint64_t i = 0; i < 40; ++i) {
        CHECK(star_triple_ratio(i) == (i % 2 == 0 ? q(3, 4) : q(2, 3)));
    }
}

TEST_CASE("star triple ratios match direct perimeter ratios on the space") {
    auto [space, map] = make_paper_space();
    CHECK(perimeter_ratio(space, map, Triple(xi(0), xi(4), Star)) == q(3, 4));
    CHECK(perimeter_ratio(space, map, Triple(xi(1), xi(9), Star)) == q(2, 3));
    CHECK(perimeter_ratio(space, map, Triple(xi(6), xi(9), Star)) ==
          star_triple_ratio(6));
    for (std::uint64_t i = 0; i < 12; ++i) {
        for (std::uint64_t j = i + 1; j < 14; ++j) {
            CHECK(perimeter_ratio(space, map, Triple(xi(i), xi(j), Star)) ==
                  star_triple_ratio(i));
        }
    }
}

TEST_CASE("finite triple ratios: formula vs direct computation, j-independence") {
    auto [space, map] = make_paper_space();
    CHECK(finite_triple_ratio(0, 1, 2) ==
          perimeter_ratio(space, map, Triple(xi(0), xi(1), xi(2))));
    for (std::uint64_t i = 0; i < 10; ++i) {
        for (std::uint64_t k = i + 2; k < 14; ++k) {
            Scalar reference = finite_triple_ratio(i, i + 1, k);
            for (std::uint64_t j = i + 1; j < k; ++j) {
                CHECK(finite_triple_ratio(i, j, k) == reference);
                CHECK(perimeter_ratio(space, map, Triple(xi(i), xi(j), xi(k))) ==
                      reference);
            }
        }
    }
    CHECK_THROWS_AS(finite_triple_ratio(2, 2, 5), DomainError);
    CHECK_THROWS_AS(finite_triple_ratio(3, 2, 5), DomainError);
}

TEST_CASE("every finite triple ratio stays at or below 7/8") {
    const Scalar bound = q(7, 8);
    for (std::uint64_t i = 0; i < 20; ++i) {
        for (std::uint64_t k = i + 2; k < 24; ++k) {
            CHECK(finite_triple_ratio(i, i + 1, k) <= bound);
        }
    }
}

TEST_CASE("perimeter-difference identity 2(a/2^fl(i/2) - a/2^fl(k/2))") {
    auto [space, map] = make_paper_space();
    for (std::uint64_t i = 0; i < 10; ++i) {
        for (std::uint64_t j = i + 1; j < 12; ++j) {
            for (std::uint64_t k = j + 1; k < 14; ++k) {
                Triple t(xi(i), xi(j), xi(k));
                Triple image(xi(i + 1), xi(j + 1), xi(k + 1));
                CHECK(perimeter(space, t) - perimeter(space, image) ==
                      Scalar::from_int(2) * (step_distance(i) - step_distance(k)));
            }
        }
    }
}

TEST_CASE("the eventual-halving inequality for non-adjacent indices") {
    // For i+1 < k: a/2^floor(k/2) <= a/(2*2^floor(i/2)).
    for (std::uint64_t i = 0; i < 40; ++i) {
        for (std::uint64_t k = i + 2; k < 44; ++k) {
            CHECK(step_distance(k) <= step_distance(i) / Scalar::from_int(2));
        }
    }
}

TEST_CASE("star proximity bound d(x_i, x*) <= 4 d(x_i, x_{i+1})") {
    auto [space, map] = make_paper_space();
    for (std::uint64_t i = 0; i <= 64; ++i) {
        CHECK(space.distance(xi(i), Star) <= Scalar::from_int(4) * step_distance(i));
    }
}

TEST_CASE("the shift map preserves the even-index gaps (non-contraction witness)") {
    auto [space, map] = make_paper_space();
    for (std::uint64_t n = 0; n < 16; ++n) {
        PointRef even = xi(2 * n);
        PointRef odd = xi(2 * n + 1);
        CHECK(space.distance(even, odd) ==
              space.distance(map.apply(even), map.apply(odd)));
    }
}

TEST_CASE("among any three distinct points exactly one lies between the others") {
    auto [space, map] = make_paper_space();
    std::vector<PointRef> pts = space.enumerate(10);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            for (std::size_t k = j + 1; k < pts.size(); ++k) {
                int middles = int(is_between(space, pts[i], pts[j], pts[k])) +
                              int(is_between(space, pts[j], pts[i], pts[k])) +
                              int(is_between(space, pts[i], pts[k], pts[j]));
                CHECK(middles == 1);
            }
        }
    }
}

TEST_CASE("scale changes distances but not ratios") {
    PaperSpaceParams scaled;
    scaled.scale = q(9, 7);
    auto [space, map] = make_paper_space(scaled);
    CHECK(space.distance(xi(0), xi(1)) == q(9, 7));
    CHECK(star_triple_ratio(0, scaled) == q(3, 4));
    CHECK(star_triple_ratio(3, scaled) == q(2, 3));
    CHECK(finite_triple_ratio(0, 1, 3, scaled) == finite_triple_ratio(0, 1, 3));
}

TEST_CASE("params are validated") {
    PaperSpaceParams bad_scale;
    bad_scale.scale = q(0);
    CHECK_THROWS_AS(make_paper_space(bad_scale), DomainError);
    bad_scale.scale = q(-1);
    CHECK_THROWS_AS(make_paper_space(bad_scale), DomainError);
    bad_scale.scale = Scalar::from_double(1.0);
    CHECK_THROWS_AS(make_paper_space(bad_scale), DomainError);

    PaperSpaceParams bad_window;
    bad_window.window = 2;
    CHECK_THROWS_AS(make_paper_space(bad_window), DomainError);
    bad_window.window = kMaxExactWindow + 1;
    CHECK_THROWS_AS(make_paper_space(bad_window), CapacityError);
}

TEST_CASE("distances beyond capacity are reported, not wrapped") {
    CHECK_THROWS_AS(step_distance(600), CapacityError);
    CHECK_THROWS_AS(prefix_distance(600), CapacityError);
    auto [space, map] = make_paper_space();
    CHECK_THROWS_AS(space.distance(xi(0), xi(600)), CapacityError);
    // Just beyond the window stays evaluable (T x_200 = x_201 and its gaps).
    CHECK_NOTHROW(space.distance(xi(200), xi(201)));
}
