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
#include "frechet/serialize.hpp"
#include "frechet/symmetric.hpp"
#include "oracles.hpp"

using namespace frechet;

namespace {

Curve jitter(std::mt19937_64& rng, const Curve& p, double amount)
{
    std::uniform_real_distribution<double> u(-amount, amount);
    Curve q(p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Point x(p[i].begin(), p[i].end());
        for (auto& c : x) c += u(rng);
        q.push_back(x);
    }
    return q;
}

// edges spread over several orders of magnitude
Curve multiscale(std::mt19937_64& rng, std::size_t m, std::size_t d)
{
    std::uniform_real_distribution<double> u(-1, 1);
    Curve p(d);
    Point x(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        p.push_back(x);
        const double len = i % 2 ? 1e-3 : 100;
        for (auto& c : x) c += len * u(rng);
    }
    return p;
}

} // namespace

TEST_CASE("edge list and bank shape")
{
    SymmetricOracle o(Curve{{0}, {3}, {4}}, 0.25);
    CHECK(o.edges() == std::vector<double>{1, 3});
    SymmetricOracle two(Curve{{0}, {1}}, 0.25);
    CHECK(two.bank_size() == std::size_t(two.band_hi() - two.band_lo() + 1));
    // bands run from floor(log_2(1/10)) to floor(log_2(2 / (0.25/3)))
    CHECK(two.band_lo() == -4);
    CHECK(two.band_hi() == 4);
}

TEST_CASE("symmetric examples")
{
    const double eps = 0.25;
    SymmetricOracle a(Curve{{0}, {100}}, eps);
    auto t = a.trace(Curve{{1}, {99}});
    CHECK(t.which == 1);
    CHECK(t.value == 1);

    SymmetricOracle b(Curve{{0}, {0.001}}, eps);
    Curve q{{1000}, {2000}};
    t = b.trace(q);
    CHECK(t.which == 2);
    CHECK(t.raw == 2000);
    double exact = discrete_frechet(Curve{{0}, {0.001}}, q);
    CHECK(std::abs(t.raw / exact - 1) <= eps);
    CHECK(exact <= t.value);
    CHECK(t.value <= (1 + eps) * exact);

    CHECK_THROWS_AS(a.query(Curve{{1}}), InvalidArgument);
    CHECK_THROWS_AS(SymmetricOracle(Curve{{0}}, 0), InvalidArgument);
}

TEST_CASE("degenerate curves collapse to a point")
{
    SymmetricOracle o(Curve{{2, 2}, {2, 2}, {2, 2}}, 0.25);
    CHECK(o.curve().size() == 1);
    CHECK(o.query_len() == 3);
    Curve q{{0, 2}, {2, 5}, {2, 2}};
    CHECK(o.query(q) == 3);
    CHECK(o.case_counts()[0] == 1);

    // repeated points elsewhere do not change answers
    SymmetricOracle r(Curve{{0}, {0}, {5}, {9}}, 0.25, 4);
    Curve q4{{0.5}, {4}, {5.5}, {8}};
    double exact = discrete_frechet(Curve{{0}, {0}, {5}, {9}}, q4);
    double v = r.query(q4);
    CHECK(oracle::rel_le(exact, v));
    CHECK(oracle::rel_le(v, 1.25 * exact));
}

TEST_CASE("symmetric sandwich sweep covers all four cases")
{
    const double eps = 0.25;
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    std::array<std::uint64_t, 5> total{};
    for (int s = 0; s < 250; ++s) {
        const std::size_t m = 2 + s % 7, d = 1 + s % 2;
        Curve p = s % 3 == 2 ? multiscale(rng, m, d) : oracle::random_curve(rng, m, d, -10, 10);
        SymmetricOracle o(p, eps);
        for (int t = 0; t < 2; ++t) {
            Curve q;
            switch ((s + t) % 4) {
            case 0: q = jitter(rng, p, 1e-3 * u(rng)); break;
            case 1: q = jitter(rng, oracle::random_curve(rng, m, d, 1e5, 1e5 + 1), 1); break;
            case 2: q = jitter(rng, p, 0.5); break;
            default: q = oracle::random_curve(rng, m, d, -10, 10);
            }
            double exact = discrete_frechet(p, q);
            double v = o.query(q);
            CHECK(oracle::rel_le(exact, v, 1e-12));
            CHECK(oracle::rel_le(v, (1 + eps) * exact, 1e-12));
            ++checked;
        }
        auto c = o.case_counts();
        for (std::size_t i = 0; i < 5; ++i) total[i] += c[i];
    }
    CHECK(checked == 500);
    for (std::size_t i = 1; i <= 4; ++i) CHECK(total[i] > 0);
}

TEST_CASE("case 3 fires on a multi-scale curve")
{
    Curve p{{0}, {0.001}, {100}};
    SymmetricOracle o(p, 0.25);
    Curve q{{0.5}, {-0.5}, {100.5}};
    auto t = o.trace(q);
    CHECK(t.which == 3);
    double exact = discrete_frechet(p, q);
    CHECK(exact <= t.value);
    CHECK(t.value <= 1.25 * exact);
}

TEST_CASE("query length other than |P|")
{
    std::mt19937_64 rng(73);
    for (int s = 0; s < 40; ++s) {
        auto p = oracle::random_curve(rng, 3, 1, -5, 5);
        const std::size_t k = 1 + s % 3;
        SymmetricOracle o(p, 0.25, k);
        auto q = oracle::random_curve(rng, k, 1, -5, 5);
        double exact = discrete_frechet(p, q), v = o.query(q);
        CHECK(oracle::rel_le(exact, v, 1e-12));
        CHECK(oracle::rel_le(v, 1.25 * exact, 1e-12));
    }
}

TEST_CASE("symmetric oracle serialization")
{
    std::mt19937_64 rng(79);
    auto p = oracle::random_curve(rng, 4, 2, -5, 5);
    SymmetricOracle o(p, 0.25);
    ByteWriter w;
    o.save(w);
    ByteReader r(w.data());
    auto back = SymmetricOracle::load(r);
    r.expect_done();
    for (int t = 0; t < 30; ++t) {
        auto q = oracle::random_curve(rng, 4, 2, -6, 6);
        CHECK(back.query(q) == o.query(q));
    }
    ByteWriter w2;
    back.save(w2);
    CHECK(w2.data() == w.data());
}
