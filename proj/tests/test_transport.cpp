#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symdet/error.hpp"
#include "symdet/group_actions.hpp"
#include "symdet/transport.hpp"
#include "test_helpers.hpp"

using namespace symdet;

namespace {

bool is_permutation(const std::vector<std::size_t>& a) {
    std::vector<std::size_t> s = a;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != i) return false;
    return true;
}

PointCloud shuffled(const PointCloud& x, Rng& rng) {
    std::vector<Point> pts(x.begin(), x.end());
    std::shuffle(pts.begin(), pts.end(), rng);
    return PointCloud(std::move(pts));
}

}  // namespace

TEST_CASE("cost_matrix") {
    const PointCloud o({{0.0, 0.0}});
    CHECK(cost_matrix(o, o, 2.0)(0, 0) == 0.0);
    CHECK(cost_matrix(o, PointCloud({{3.0, 4.0}}), 2.0)(0, 0) == 25.0);
    CHECK(cost_matrix(o, PointCloud({{3.0, 4.0}}), 1.0)(0, 0) == 5.0);

    Rng rng(2);
    const auto x = testing::random_cloud(7, rng);
    const auto c = cost_matrix(x, x, 2.0);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j) {
            CHECK(c(i, j) == c(j, i));
            CHECK(c(i, j) >= 0.0);
        }
    CHECK_THROWS_AS(cost_matrix(x, testing::random_cloud(6, rng), 2.0), SizeMismatchError);
}

TEST_CASE("wasserstein basics") {
    Rng rng(4);
    const auto x = testing::random_cloud(30, rng);
    const auto self = wasserstein(x, x);
    CHECK(self.distance == 0.0);
    CHECK(is_permutation(self.assignment));

    const PointCloud a({{1.0, 2.0}}), b({{4.0, 6.0}});
    for (double p : {1.0, 1.5, 2.0, 3.0}) CHECK(wasserstein(a, b, {p}).distance == doctest::Approx(5.0));

    CHECK_THROWS_AS(wasserstein(x, testing::random_cloud(29, rng)), SizeMismatchError);
    CHECK_THROWS_AS(wasserstein(a, b, {0.5}), ValidationError);
    CHECK_THROWS_AS(wasserstein(PointCloud({{1e200, 0.0}}), PointCloud({{-1e200, 0.0}})), NumericError);
}

TEST_CASE("brute force: two antipodal pairs") {
    // X = {(1,0), (-1,0)}, Y = {(1.1,0), (-1.1,0)}: identity pairing costs 0.01 each,
    // swap costs 2.1^2 each; optimum is identity with total 0.01
    const PointCloud x({{1.0, 0.0}, {-1.0, 0.0}});
    const PointCloud y({{1.1, 0.0}, {-1.1, 0.0}});
    const auto r = brute_force_wasserstein(x, y);
    CHECK(r.assignment == std::vector<std::size_t>{0, 1});
    CHECK(r.total_cost == doctest::Approx(0.01));
    CHECK(wasserstein(x, y).total_cost == doctest::Approx(0.01));

    const PointCloud one({{2.0, 2.0}});
    CHECK(brute_force_wasserstein(one, PointCloud({{2.0, 3.0}})).assignment == std::vector<std::size_t>{0});
}

TEST_CASE("brute force size guard") {
    Rng rng(8);
    const auto x = testing::random_cloud(9, rng);
    CHECK_THROWS_AS(brute_force_wasserstein(x, x), ValidationError);
}

TEST_CASE("solver agrees with exhaustive enumeration on 200 seeded instances") {
    Rng rng(2024);
    std::uniform_int_distribution<int> size(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(size(rng));
        const auto x = testing::random_cloud(n, rng);
        const auto y = testing::random_cloud(n, rng, 2.0);
        for (double p : {1.0, 2.0}) {
            const auto fast = wasserstein(x, y, {p});
            const auto slow = brute_force_wasserstein(x, y, {p});
            CHECK(is_permutation(fast.assignment));
            CHECK(std::abs(fast.total_cost - slow.total_cost) < 1e-9);
        }
    }
}

TEST_CASE("metric properties and invariances") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        const auto x = testing::random_cloud(12, rng);
        const auto y = testing::random_cloud(12, rng);
        const auto z = testing::random_cloud(12, rng);
        const double dxy = wasserstein(x, y).distance;
        const double dyx = wasserstein(y, x).distance;
        const double dxz = wasserstein(x, z).distance;
        const double dyz = wasserstein(y, z).distance;
        CHECK(std::abs(dxy - dyx) < 1e-9);
        CHECK(dxy >= 0.0);
        CHECK(dxz <= dxy + dyz + 1e-9);

        // permutation invariance
        CHECK(std::abs(wasserstein(shuffled(x, rng), shuffled(y, rng)).distance - dxy) < 1e-9);

        // isometry invariance under every element of a random D_n
        const int n = 1 + trial % 8;
        for (const auto& g : DihedralGroup(n).elements())
            CHECK(std::abs(wasserstein(apply_element(g, x), apply_element(g, y)).distance - dxy) < 1e-9);

        // optimum never exceeds the identity pairing
        std::vector<std::size_t> id(12);
        std::iota(id.begin(), id.end(), std::size_t{0});
        CHECK(wasserstein(x, y).total_cost <= assignment_cost(cost_matrix(x, y, 2.0), id) + 1e-12);
    }
}

TEST_CASE("distance vanishes iff multisets coincide") {
    Rng rng(13);
    const auto x = testing::random_cloud(25, rng);
    CHECK(wasserstein(x, shuffled(x, rng)).distance < 1e-12);
    std::vector<Point> moved(x.begin(), x.end());
    moved[3].x += 1e-3;
    CHECK(wasserstein(x, PointCloud(moved)).distance > 1e-5);
}
