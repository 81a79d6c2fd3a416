/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include "doctest.h"

#include "frechet/error.hpp"
#include "frechet/grid.hpp"
#include "oracles.hpp"

#include <cmath>
#include <set>

using namespace frechet;

TEST_CASE("grid spec and snapping")
{
    auto g = GridSpec::make(0.5, 2.0, 4);
    CHECK(g.cell == 0.5);
    CHECK(g.dim == 4);
    CHECK_THROWS_AS(GridSpec::make(0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::make(1, -1, 1), InvalidArgument);

    GridSpec h{0.5, 1};
    CHECK(h.snap(0.2) == 0);
    CHECK(h.snap(0.25) == 1); // ties go up
    CHECK(h.snap(-0.25) == 0);
    CHECK(h.snap(-0.26) == -1);
    CHECK(h.snap(1.5) == 3);
    CHECK_THROWS_AS(h.snap(1e300), InvalidArgument);
    std::int32_t v;
    CHECK_FALSE(h.try_snap(std::nan(""), v));
}

TEST_CASE("snap error is at most half a cell diagonal")
{
    std::mt19937_64 rng(5);
    for (std::size_t d = 1; d <= 3; ++d) {
        auto g = GridSpec::make(0.3, 1.7, d);
        for (int s = 0; s < 200; ++s) {
            auto q = oracle::random_curve(rng, 3, d, -50, 50);
            GridKey key;
            REQUIRE(snap_curve(q, g, key));
            auto w = key_curve(key, g);
            for (std::size_t i = 0; i < q.size(); ++i)
                CHECK(point_distance(q[i], w[i]) <= g.cell * std::sqrt(double(d)) / 2 * (1 + 1e-12));
        }
    }
    // on-grid points are fixed
    GridSpec g{0.25, 2};
    Curve q{{0.5, -1.25}, {0, 3}};
    GridKey key;
    REQUIRE(snap_curve(q, g, key));
    CHECK(key_curve(key, g) == q);
}

TEST_CASE("grid points in a closed ball")
{
    GridSpec g{0.5, 1};
    auto pts = grid_points_in_ball(std::vector<double>{0.0}, 1.5, g);
    CHECK(pts == std::vector<std::int32_t>{-3, -2, -1, 0, 1, 2, 3});
    CHECK(grid_points_in_ball(std::vector<double>{0.2}, 0.1, g).empty());
    CHECK(grid_points_in_ball(std::vector<double>{0.2}, 0.2, g) == std::vector<std::int32_t>{0});

    // against a wide box scan
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 3), rr(0, 2.5);
    for (std::size_t d = 1; d <= 3; ++d) {
        GridSpec gd{0.45, d};
        for (int s = 0; s < 30; ++s) {
            std::vector<double> x(d);
            for (auto& c : x) c = u(rng);
            const double radius = rr(rng);
            auto got = grid_points_in_ball(x, radius, gd);
            std::vector<std::int32_t> want;
            std::vector<std::int32_t> idx(d, -20);
            while (true) {
                auto p = gd.point(idx.data());
                if (oracle::dist(p, x) <= radius) want.insert(want.end(), idx.begin(), idx.end());
                std::size_t t = d;
                while (t > 0 && idx[t - 1] == 20) idx[--t] = -20;
                if (t == 0) break;
                ++idx[t - 1];
            }
            CHECK(got == want);
        }
    }
}

TEST_CASE("grid-point count stays within a constant of (c/eps)^d")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t d = 1; d <= 3; ++d) {
        double lo = 1e300, hi = 0;
        for (double eps : {1.0, 0.5, 0.25})
            for (double c : {1.0, 2.0})
                for (int s = 0; s < 5; ++s) {
                    const double r = 1.3;
                    auto g = GridSpec::make(eps, r, d);
                    std::vector<double> x(d);
                    for (auto& v : x) v = u(rng);
                    double n = double(grid_points_in_ball(x, c * r, g).size() / d);
                    double ratio = n / std::pow(c / eps, double(d));
                    lo = std::min(lo, ratio);
                    hi = std::max(hi, ratio);
                }
        CHECK(lo > 0);
        CHECK(hi <= 64);
        CHECK(hi / lo <= 8);
    }
}

TEST_CASE("grid keys order and hash")
{
    GridKey a, b;
    a.push(1);
    a.push(2);
    b.push(1);
    b.push(3);
    CHECK(a < b);
    CHECK(a != b);
    b.pop();
    b.push(2);
    CHECK(a == b);
    CHECK(a.hash() == b.hash());
    GridKey c;
    c.push(1);
    CHECK(c < a);
    Curve big(1);
    for (int i = 0; i < 13; ++i) big.push_back(std::vector<double>{0.0});
    GridKey k;
    CHECK_FALSE(snap_curve(big, GridSpec{1, 1}, k));
}
