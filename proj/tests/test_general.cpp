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
#include "frechet/general.hpp"
#include "frechet/serialize.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace frechet;

TEST_CASE("short curves route through the symmetric oracle")
{
    Curve p{{0}, {4}, {4}};
    GeneralOracle o(p, 2, 0.25);
    CHECK(o.L() == 0);
    CHECK(o.bank_size() == 0);
    Curve q{{1}, {3}};
    auto t = o.trace(q);
    CHECK(t.branch == 0);
    CHECK(t.probes == 1);
    double exact = discrete_frechet(p, q);
    CHECK(exact <= t.value);
    CHECK(t.value <= 1.25 * exact);
}

TEST_CASE("bank size audit")
{
    std::mt19937_64 rng(83);
    auto p = oracle::random_curve(rng, 6, 1, -5, 5);
    GeneralOracle o(p, 2, 0.25);
    CHECK(o.L() > 0);
    CHECK(o.bank_size() == std::size_t(std::ceil(std::log2(8 / 0.25))) + 1);
    CHECK(discrete_frechet(p, o.simplification()) <= o.L());
    CHECK(oracle::rel_le(o.L(), (1 + o.eps_internal()) * oracle::optimal_k(p, 2)));
}

TEST_CASE("general sandwich sweep")
{
    const double eps = 0.25;
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0, 1);
    int branches[4] = {0, 0, 0, 0};
    int checked = 0;
    for (int s = 0; s < 100; ++s) {
        const std::size_t m = 1 + s % 10, k = 1 + s % 3, d = 1 + (s / 3) % 2;
        auto p = oracle::random_curve(rng, m, d, -10, 10);
        GeneralOracle o(p, k, eps);
        for (int t = 0; t < 5; ++t) {
            Curve q;
            if (t == 0 && o.simplification().size() == k) {
                q = o.simplification();
            } else if (t == 1) {
                q = oracle::random_curve(rng, k, d, 500, 600);
            } else {
                const double spread = t == 2 ? 3 : 20;
                q = oracle::random_curve(rng, k, d, -spread, spread);
            }
            double exact = discrete_frechet(p, q);
            auto tr = o.trace(q);
            CHECK(oracle::rel_le(exact, tr.value, 1e-12));
            CHECK(oracle::rel_le(tr.value, (1 + eps) * exact, 1e-12));
            CHECK(tr.probes <= 2);
            ++branches[tr.branch];
            ++checked;
        }
    }
    CHECK(checked == 500);
    CHECK(branches[1] > 0);
    CHECK(branches[2] > 0);
    CHECK(branches[3] > 0);
}

TEST_CASE("general oracle serialization")
{
    std::mt19937_64 rng(97);
    auto p = oracle::random_curve(rng, 7, 2, -5, 5);
    GeneralOracle o(p, 2, 0.25);
    ByteWriter w;
    o.save(w);
    ByteReader r(w.data());
    auto back = GeneralOracle::load(r);
    r.expect_done();
    for (int t = 0; t < 40; ++t) {
        auto q = oracle::random_curve(rng, 2, 2, -8, 8);
        CHECK(back.query(q) == o.query(q));
    }
    CHECK_THROWS_AS(o.query(Curve{{0, 0}}), InvalidArgument);
    std::string cut = w.data().substr(0, w.data().size() / 2);
    ByteReader rc(cut);
    CHECK_THROWS(GeneralOracle::load(rc));
}
