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
#include "frechet/simplify.hpp"
#include "oracles.hpp"

using namespace frechet;

namespace {
const Curve kFour{{0}, {1}, {10}, {11}};
}

TEST_CASE("greedy_delta_simplification examples")
{
    auto s = greedy_delta_simplification(kFour, 1, 0.01);
    CHECK(s.pi == Curve{{0.5}, {10.5}});
    CHECK(discrete_frechet(kFour, s.pi) == 0.5);
    CHECK(greedy_delta_simplification(kFour, 100, 0.1).pi.size() == 1);
    CHECK(greedy_delta_simplification(kFour, 0, 0.1).pi == kFour);
}

TEST_CASE("greedy minimality against partition oracle")
{
    std::mt19937_64 rng(61);
    for (int s = 0; s < 150; ++s) {
        const std::size_t m = 1 + s % 10, d = 1 + s % 2;
        auto p = oracle::random_curve(rng, m, d);
        std::uniform_real_distribution<double> dd(0.1, 8);
        const double delta = dd(rng);
        auto g = greedy_delta_simplification(p, delta, 1e-9);
        CHECK(oracle::rel_le(discrete_frechet(p, g.pi), g.certified));
        CHECK(oracle::rel_le(g.certified, (1 + 1e-9) * delta));
        // shortest length achieving delta, from the partition oracle
        std::size_t kmin = 1;
        while (oracle::optimal_k(p, kmin) > delta * (1 + 1e-12))
            ++kmin;
        CHECK(g.pi.size() == kmin);
    }
}

TEST_CASE("optimal_k_oracle examples and agreement")
{
    CHECK(optimal_k_oracle(kFour, 4) == 0);
    CHECK(optimal_k_oracle(kFour, 2) == doctest::Approx(0.5));
    CHECK(optimal_k_oracle(Curve{{0}, {10}}, 1) == doctest::Approx(5));
    std::mt19937_64 rng(67);
    for (int s = 0; s < 40; ++s) {
        auto p = oracle::random_curve(rng, 2 + s % 8, 1 + s % 3);
        for (std::size_t k = 1; k <= 3; ++k)
            CHECK(oracle::rel_eq(optimal_k_oracle(p, k), oracle::optimal_k(p, k)));
    }
}

TEST_CASE("static_k_simplification")
{
    auto s = static_k_simplification(Curve{{0}, {1}, {1}}, 3, 0.25);
    CHECK(s.pi == Curve{{0}, {1}});
    CHECK(s.certified == 0);
    s = static_k_simplification(kFour, 2, 0.25);
    CHECK(s.pi.size() <= 2);
    CHECK(s.certified <= 1.25 * 0.5);

    std::mt19937_64 rng(71);
    for (int t = 0; t < 300; ++t) {
        const std::size_t m = 1 + t % 10, k = 1 + t % 3, d = 1 + t % 3;
        auto p = (t % 4 == 0) ? oracle::lattice_curve(rng, m, d, 3) : oracle::random_curve(rng, m, d);
        for (double eps : {0.25, 0.1}) {
            auto r = static_k_simplification(p, k, eps);
            const double opt = oracle::optimal_k(p, k);
            const double dp = discrete_frechet(p, r.pi);
            CHECK(r.pi.size() <= k);
            CHECK(oracle::rel_le(dp, r.certified));
            CHECK(oracle::rel_le(r.certified, (1 + eps) * opt));
        }
    }
    // high-dimensional path (core-set MEB)
    for (int t = 0; t < 20; ++t) {
        auto p = oracle::random_curve(rng, 7, 6);
        auto r = static_k_simplification(p, 3, 0.25);
        CHECK(r.pi.size() <= 3);
        CHECK(oracle::rel_le(discrete_frechet(p, r.pi), r.certified));
        CHECK(oracle::rel_le(r.certified, 1.25 * optimal_k_oracle(p, 3)));
    }
}

TEST_CASE("streaming greedy examples and static equivalence")
{
    GreedyStreamSimp g(1, make_exact_streaming_meb(1));
    g.add_all(kFour);
    CHECK(g.pi() == Curve{{0.5}, {10.5}});
    GreedyStreamSimp big(1e9, make_exact_streaming_meb(1));
    big.add_all(kFour);
    CHECK(big.pi().size() == 1);

    std::mt19937_64 rng(73);
    for (int s = 0; s < 100; ++s) {
        const std::size_t d = 1 + s % 3;
        auto p = oracle::random_curve(rng, 1 + s % 30, d);
        const double delta = 0.5 + (s % 7), eps = 0.125;
        auto st = greedy_delta_simplification(p, delta, eps);
        GreedyStreamSimp gs((1 + eps) * delta, make_exact_streaming_meb(d));
        gs.add_all(p);
        CHECK(gs.pi() == st.pi); // bitwise
    }
}

TEST_CASE("streaming greedy claim: within delta, no shorter curve within delta/gamma")
{
    std::mt19937_64 rng(79);
    for (int s = 0; s < 100; ++s) {
        const std::size_t d = 1 + s % 2;
        auto p = oracle::random_curve(rng, 2 + s % 9, d);
        for (auto kind : {MebKind::exact, MebKind::two, MebKind::kernel}) {
            auto proto = make_streaming_meb(kind, d, 0.25);
            const double delta = 1.0 + (s % 5);
            GreedyStreamSimp g(delta, proto->fresh());
            g.add_all(p);
            CHECK(oracle::rel_le(discrete_frechet(p, g.pi()), delta));
            // any curve within delta/gamma has at least |pi| points
            const std::size_t n = g.pi().size();
            if (n > 1)
                CHECK(oracle::optimal_k(p, n - 1) > delta / proto->gamma() * (1 - 1e-12));
        }
    }
}

TEST_CASE("leaping simplifier: warmup and leap example")
{
    LeapingStreamSimp short_stream(3, make_exact_streaming_meb(1), 1, 2);
    for (double x : {0.0, 0.0, 4.0, 7.0})
        short_stream.add(Point{x});
    CHECK_FALSE(short_stream.warm());
    CHECK(short_stream.pi() == Curve{{0}, {4}, {7}});
    CHECK(short_stream.delta() == 0);

    LeapingStreamSimp s(2, make_exact_streaming_meb(1), 1, 2);
    for (double x : {0.0, 1.0, 10.0, 11.0, 20.0})
        s.add(Point{x});
    CHECK(s.warm());
    CHECK(s.lambda() == 0.5);
    CHECK(s.leaps() >= 1);
    CHECK(s.pi().size() <= 2);
    CHECK(s.delta() == 0.5 * std::pow(2.0, double(s.leaps())));
}

TEST_CASE("leaping simplifier replay: size, distance and leap structure")
{
    std::mt19937_64 rng(83);
    for (int s = 0; s < 100; ++s) {
        const std::size_t d = 1 + s % 2, k = 1 + s % 3;
        auto p = oracle::random_curve(rng, 5 + s % 30, d);
        for (auto kind : {MebKind::exact, MebKind::two}) {
            const double inc = 2 + s % 3;
            LeapingStreamSimp ls(k, make_streaming_meb(kind, d, 0.25), 1 + (s % 4) * 0.3, inc);
            double prev = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                ls.add(p[i]);
                if (!ls.warm())
                    continue;
                CHECK(ls.pi().size() <= k);
                const double base = ls.init() * ls.lambda();
                CHECK(ls.delta() == doctest::Approx(base * std::pow(inc, double(ls.leaps()))).epsilon(1e-12));
                CHECK(ls.delta() >= prev);
                prev = ls.delta();
                CHECK(oracle::rel_le(discrete_frechet(ls.pi(), p.subcurve(0, i)), (1 + 2 / inc) * ls.delta()));
            }
        }
    }
}

TEST_CASE("multi-leap simplifier bounds")
{
    std::mt19937_64 rng(89);
    for (int s = 0; s < 40; ++s) {
        const std::size_t d = 1 + s % 2, k = 1 + s % 3;
        auto p = oracle::random_curve(rng, 2 + s % 39, d);
        const double eps = 0.25; // raw
        MultiLeapSimp ml(k, eps, *make_exact_streaming_meb(d));
        for (std::size_t i = 0; i < p.size(); ++i) {
            ml.add(p[i]);
            auto cur = ml.current();
            auto prefix = p.subcurve(0, i);
            CHECK(cur.pi.size() <= k);
            CHECK(oracle::rel_le(discrete_frechet(prefix, cur.pi), cur.certified));
        }
        // gamma=1, inc=1/eps: (1+4eps) * eta * opt with eta = inc/(inc-2)
        const double inc = 1 / eps, eta = inc / (inc - 2);
        auto cur = ml.current();
        CHECK(oracle::rel_le(discrete_frechet(p, cur.pi), (1 + 4 * eps) * eta * oracle::optimal_k(p, k)));
    }
    auto few = MultiLeapSimp(3, 0.25, *make_two_streaming_meb(1));
    few.add(Point{1});
    few.add(Point{2});
    CHECK(few.current().pi == Curve{{1}, {2}});
    CHECK(few.current().certified == 0);
}

TEST_CASE("public streaming simplifier and checkpoint round-trip")
{
    std::mt19937_64 rng(97);
    auto p = oracle::random_curve(rng, 30, 2);
    auto ml = make_streaming_simplifier(3, 0.25, *make_kernel_streaming_meb(2, 0.25));
    CHECK(ml.eps() == 0.25 / 8);
    for (std::size_t i = 0; i < 20; ++i)
        ml.add(p[i]);
    ByteWriter w;
    ml.save(w);
    ByteReader r(w.data());
    auto back = MultiLeapSimp::load(r);
    CHECK(r.done());
    for (std::size_t i = 20; i < p.size(); ++i) {
        ml.add(p[i]);
        back.add(p[i]);
    }
    CHECK(ml.current().pi == back.current().pi);
    CHECK(ml.current().certified == back.current().certified);
    ByteWriter w1, w2;
    ml.save(w1);
    back.save(w2);
    CHECK(w1.data() == w2.data());
}
