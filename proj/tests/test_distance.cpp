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

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "oracles.hpp"

using namespace frechet;

TEST_CASE("discrete_frechet examples")
{
    CHECK(discrete_frechet(Curve{{0, 0}}, Curve{{0, 0}}) == 0.0);
    CHECK(discrete_frechet(Curve{{0}, {2}}, Curve{{0}}) == 2.0);
    CHECK(discrete_frechet(Curve{{0}, {1}, {2}}, Curve{{0}, {2}}) == 1.0);
    CHECK_THROWS_AS(discrete_frechet(Curve{{0}}, Curve{{0, 0}}), DimensionMismatch);
}

TEST_CASE("brute force examples")
{
    CHECK(brute_force_frechet(Curve{{5}}, Curve{{5}}) == 0.0);
    CHECK(brute_force_frechet(Curve{{0}, {2}}, Curve{{1}}) == 1.0);
    std::mt19937_64 rng(1);
    auto big = oracle::random_curve(rng, 9, 1);
    CHECK_THROWS_AS(brute_force_frechet(big, big), InvalidArgument);
}

TEST_CASE("DP, wavefront and brute force agree")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> len(1, 6), dim(1, 3);
    for (int s = 0; s < 200; ++s) {
        const std::size_t d = dim(rng);
        auto p = oracle::random_curve(rng, len(rng), d);
        auto q = oracle::random_curve(rng, len(rng), d);
        const double v = discrete_frechet(p, q);
        CHECK(oracle::rel_eq(v, brute_force_frechet(p, q)));
        CHECK(v == discrete_frechet_parallel(p, q));
        CHECK(oracle::rel_eq(v, oracle::dp_frechet(p, q)));
    }
    // long enough to split the anti-diagonals across threads
    auto p = oracle::random_curve(rng, 900, 2);
    auto q = oracle::random_curve(rng, 700, 2);
    CHECK(discrete_frechet(p, q) == discrete_frechet_parallel(p, q));
}

TEST_CASE("metric properties")
{
    std::mt19937_64 rng(11);
    for (int s = 0; s < 100; ++s) {
        auto p = oracle::random_curve(rng, 1 + s % 7, 2);
        auto q = oracle::random_curve(rng, 1 + (s * 3) % 8, 2);
        auto r = oracle::random_curve(rng, 1 + (s * 5) % 6, 2);
        const double pq = discrete_frechet(p, q);
        CHECK(pq == discrete_frechet(q, p));
        CHECK(oracle::rel_le(discrete_frechet(p, r), pq + discrete_frechet(q, r)));
        CHECK(pq >= point_distance(p.front(), q.front()));
        CHECK(pq >= point_distance(p.back(), q.back()));
    }
}

TEST_CASE("half_min_edge")
{
    CHECK(half_min_edge(Curve{{0}, {3}, {4}}) == 0.5);
    CHECK(half_min_edge(Curve{{0}, {0}, {4}}) == 0.0);
    CHECK(half_min_edge(Curve{{1, 1}, {4, 5}}) == 2.5);
    CHECK_THROWS_AS(half_min_edge(Curve{{1}}), InvalidArgument);
}

TEST_CASE("small_distance examples")
{
    CHECK(small_distance(Curve{{0}, {10}}, Curve{{1}, {9}}) == std::optional<double>(1.0));
    CHECK_FALSE(small_distance(Curve{{0}, {10}}, Curve{{5}, {10}}).has_value());
    CHECK(small_distance(Curve{{0}, {4}}, Curve{{0}, {4}}) == std::optional<double>(0.0));
    // Y has an unmatched tail; the sweep must not report 0
    CHECK_FALSE(small_distance(Curve{{0}, {10}}, Curve{{0}, {10}, {20}}).has_value());
}

TEST_CASE("small_distance against DP")
{
    std::mt19937_64 rng(3);
    int returned = 0;
    for (int s = 0; s < 2000; ++s) {
        const std::size_t d = 1 + s % 2;
        auto x = oracle::random_curve(rng, 2 + s % 5, d);
        // perturb x so that distances under lambda are common
        std::vector<double> c = x.coords();
        std::uniform_real_distribution<double> noise(-0.6, 0.6);
        for (auto& v : c)
            v += noise(rng);
        Curve y(d, c);
        if (s % 3 == 0)
            y = y.concat(y.subcurve(y.size() - 1, y.size() - 1));
        const double dp = discrete_frechet(x, y);
        auto sd = small_distance(x, y);
        if (dp < half_min_edge(x)) {
            REQUIRE(sd.has_value());
            CHECK(*sd == doctest::Approx(dp).epsilon(1e-12));
            ++returned;
        }
        if (sd)
            CHECK(oracle::rel_eq(*sd, dp));
        else
            CHECK(dp >= half_min_edge(x));
    }
    CHECK(returned > 100);
}
