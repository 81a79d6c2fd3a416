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

#include "frechet/approx.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "oracles.hpp"

using namespace frechet;

TEST_CASE("decision_approx examples")
{
    Curve p{{0, 0}, {1, 1}, {2, 0}};
    for (double f : {1.01, 2.0, 10.0})
        CHECK(decision_approx(p, p, f));
    CHECK_FALSE(decision_approx(Curve{{0}}, Curve{{10}}, 2));
    CHECK_THROWS_AS(decision_approx(p, p, 1.0), InvalidArgument);
}

TEST_CASE("decision_approx gap contract against DP")
{
    std::mt19937_64 rng(23);
    for (int s = 0; s < 1500; ++s) {
        const std::size_t d = 1 + s % 3;
        auto p = oracle::random_curve(rng, 1 + s % 9, d, -3, 3);
        auto q = oracle::random_curve(rng, 1 + (s / 3) % 9, d, -3, 3);
        const double f = 1.0 + 0.25 * (1 + s % 16);
        const double dp = discrete_frechet(p, q);
        for (double scale : {dp, dp / f, dp * 1.5, dp / (1.5 * f), 1.0}) {
            if (!(scale > 0))
                continue;
            const bool yes = decision_approx(p, q, f, scale);
            if (dp <= scale)
                CHECK(yes);
            if (dp >= f * scale)
                CHECK_FALSE(yes);
        }
    }
}

TEST_CASE("crude_approx examples")
{
    Curve p{{0}, {2}}, q{{0}, {0}};
    CHECK(crude_approx(p, p, 5) == 0.0);
    CHECK(crude_approx(p, q, 2) == 2.0);
    const double v = crude_approx(p, q, 4);
    CHECK(v >= 2.0);
    CHECK(v <= 8.0);
    // equal after collapsing repeats
    CHECK(crude_approx(Curve{{1}, {1}, {3}}, Curve{{1}, {3}, {3}}, 6) == 0.0);
}

TEST_CASE("crude_approx sandwich")
{
    std::mt19937_64 rng(29);
    for (int s = 0; s < 400; ++s) {
        const std::size_t m = 1 + s % 12, d = 1 + s % 3;
        auto p = (s % 4 == 0) ? oracle::lattice_curve(rng, m, d) : oracle::random_curve(rng, m, d);
        auto q = (s % 4 == 0) ? oracle::lattice_curve(rng, m, d) : oracle::random_curve(rng, m, d);
        const double dp = discrete_frechet(p, q);
        for (double f : {1.0, 2.0, 3.0, double(m), double(m * d) + 2.5}) {
            if (f < 1)
                continue;
            const double v = crude_approx(p, q, f);
            CHECK(oracle::rel_le(dp, v));
            CHECK(oracle::rel_le(v, f * dp));
        }
    }
}
