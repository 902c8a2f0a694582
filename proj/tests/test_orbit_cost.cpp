#include <doctest.h>

#include <cmath>

#include "symdet/datagen.hpp"
#include "symdet/error.hpp"
#include "symdet/orbit_cost.hpp"
#include "test_helpers.hpp"

using namespace symdet;

namespace {

PointCloud invariant_cloud(int n, std::uint64_t seed, std::size_t motif = 6) {
    Rng rng(seed);
    return replicate_motif(sample_fundamental_domain(n, motif, {0.3, 1.5}, rng), n);
}

}  // namespace

TEST_CASE("group_cost report structure") {
    Rng rng(1);
    const auto x = testing::random_cloud(20, rng);
    const auto r = group_cost(DihedralGroup(5), x);
    CHECK(r.group_n == 5);
    REQUIRE(r.per_element.size() == 10);
    CHECK(r.per_element[0].element.is_identity());
    CHECK(r.per_element[0].squared_distance < 1e-12);
    double sum = 0.0;
    for (const auto& e : r.per_element) sum += e.squared_distance;
    CHECK(r.mean_cost == doctest::Approx(sum / 10.0).epsilon(1e-14));
}

TEST_CASE("group_cost vanishes on invariant clouds") {
    CHECK(group_cost(DihedralGroup(3), invariant_cloud(3, 4)).mean_cost < 1e-9);
    // bilateral-only group on an x-axis-symmetric cloud
    const PointCloud mirror({{0.2, 0.5}, {0.2, -0.5}, {1.3, 0.1}, {1.3, -0.1}, {-0.7, 0.0}});
    CHECK(group_cost(DihedralGroup(1), mirror).mean_cost < 1e-12);
}

TEST_CASE("noisy D3 attractor sample: D3 cost well below D4") {
    TrajectoryOptions opts;
    opts.stride = 333;
    const auto x = cg_trajectory(CGParams{}, 150, NoiseSpec{0.1, 11}, opts);
    const double c3 = group_cost(DihedralGroup(3), x).mean_cost;
    const double c4 = group_cost(DihedralGroup(4), x).mean_cost;
    CHECK(c3 < 0.5 * c4);
}

TEST_CASE("occam_criterion examples") {
    // D3-invariant cloud tested against D6: C_S = 0, complement costly
    const auto x3 = invariant_cloud(3, 8);
    const auto a = occam_criterion(DihedralGroup(3), DihedralGroup(6), x3);
    CHECK(a.lhs < 1e-9);
    CHECK(a.rhs > 1e-3);
    CHECK(a.simpler_preferred);

    // fully D6-invariant: tie, no strict preference
    const auto x6 = invariant_cloud(6, 8);
    const auto b = occam_criterion(DihedralGroup(3), DihedralGroup(6), x6);
    CHECK(b.lhs < 1e-9);
    CHECK(b.rhs < 1e-9);
    CHECK_FALSE(b.simpler_preferred);

    CHECK_THROWS_AS(occam_criterion(DihedralGroup(4), DihedralGroup(6), x6), ValidationError);
    CHECK_THROWS_AS(occam_criterion(DihedralGroup(6), DihedralGroup(6), x6), ValidationError);
}

TEST_CASE("occam iff: criterion matches direct cost comparison") {
    Rng rng(99);
    const std::vector<std::pair<int, int>> pairs{{1, 2}, {1, 3}, {2, 4}, {2, 6}, {3, 6}, {4, 8}, {3, 9}};
    for (int trial = 0; trial < 100; ++trial) {
        const auto [ns, nl] = pairs[static_cast<std::size_t>(trial) % pairs.size()];
        const auto base = invariant_cloud(trial % 2 ? ns : nl, rng(), 3);
        const auto x = testing::jitter(base, 0.05 + 0.1 * (trial % 3), rng);
        const auto r = occam_criterion(DihedralGroup(ns), DihedralGroup(nl), x);
        const double cs = group_cost(DihedralGroup(ns), x).mean_cost;
        const double cl = group_cost(DihedralGroup(nl), x).mean_cost;
        CHECK(r.simpler_preferred == (cs < cl - 1e-9));
        CHECK(r.small_mean == doctest::Approx(cs).epsilon(1e-9));
        CHECK(r.large_mean == doctest::Approx(cl).epsilon(1e-9));
    }
}

TEST_CASE("stability_bound") {
    CHECK(stability_bound(2.0, 0.0) == 0.0);
    CHECK(stability_bound(1.0, 0.5) == 3.0);
    CHECK_THROWS_AS(stability_bound(-1.0, 0.5), ValidationError);

    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 6;
        const auto x = testing::random_cloud(15, rng);
        const auto y = testing::jitter(x, 0.02 * (1 + trial % 5), rng);
        const auto cx = group_cost(DihedralGroup(n), x);
        double m = 0.0;
        for (const auto& e : cx.per_element) m = std::max(m, std::sqrt(e.squared_distance));
        const double d = wasserstein(x, y).distance;
        const double diff = std::abs(cx.mean_cost - group_cost(DihedralGroup(n), y).mean_cost);
        CHECK(diff <= stability_bound(m, d) + 1e-9);
    }
}

TEST_CASE("conjugation equivariance") {
    Rng rng(17);
    for (int n = 2; n <= 8; ++n) {
        const auto x = testing::random_cloud(14, rng);
        const DihedralGroup group(n);
        const double base = group_cost(group, x).mean_cost;
        for (const auto& g : group.elements()) {
            // C(D_n, gX) equals the cost of the conjugated element set on X ...
            std::vector<GroupElement> conj;
            for (const auto& h : group.elements()) conj.push_back(conjugate_element(g, h));
            const double on_gx = group_cost(group, apply_element(g, x)).mean_cost;
            CHECK(std::abs(on_gx - mean_element_cost(conj, x)) < 1e-9);
            // ... and since g is in D_n that set is D_n again
            CHECK(std::abs(on_gx - base) < 1e-9);
        }
    }
}

TEST_CASE("conjugation by an element outside the group moves reflection axes") {
    Rng rng(23);
    const auto x = testing::random_cloud(14, rng);
    const GroupElement g = GroupElement::rotation(1, 5);  // not in D_3
    std::vector<GroupElement> conj;
    for (const auto& h : DihedralGroup(3).elements()) {
        // g^-1 h g realized as planar maps: compose in D_15, which contains both
        const GroupElement g15 = GroupElement::rotation(3, 15);
        const GroupElement h15(h.kind(), h.index() * 5, 15);
        conj.push_back(conjugate_element(g15, h15));
    }
    const double on_gx = group_cost(DihedralGroup(3), apply_element(g, x)).mean_cost;
    CHECK(std::abs(on_gx - mean_element_cost(conj, x)) < 1e-9);
}

TEST_CASE("contaminating an invariant cloud raises the cost") {
    const auto x = invariant_cloud(4, 21);
    const double before = group_cost(DihedralGroup(4), x).mean_cost;
    std::vector<Point> pts(x.begin(), x.end());
    pts.push_back({0.83, 0.31});  // off every D4 axis
    const double after = group_cost(DihedralGroup(4), PointCloud(pts)).mean_cost;
    CHECK(before < 1e-9);
    CHECK(after > before + 1e-6);
}
