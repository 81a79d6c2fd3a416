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

#include "service.hpp"

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/serialize.hpp"
#include "oracles.hpp"

#include <httplib.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <thread>

using namespace frechet;
using namespace frechet::tools;
using nlohmann::json;

namespace {

struct Fixture {
    Curve p;
    Service svc;
    Fixture() : p(make_curve()), svc(p, ZoomHierarchy(p, 2, 0.25), SubcurveOracle(p, 2, 0.25)) {}
    static Curve make_curve()
    {
        std::mt19937_64 rng(801);
        return oracle::random_curve(rng, 12, 1);
    }
};

Curve from_json(const json& pts)
{
    Curve c(pts.at(0).size());
    for (const auto& p : pts) c.push_back(p.get<std::vector<double>>());
    return c;
}

std::uint64_t bits(double v)
{
    std::uint64_t b;
    std::memcpy(&b, &v, sizeof b);
    return b;
}

} // namespace

TEST_CASE("meta echoes the loaded curve")
{
    Fixture f;
    const auto r = f.svc.handle("GET", "/curve/meta", {}, "");
    CHECK(r.status == 200);
    CHECK(r.body["m"] == 12);
    CHECK(r.body["d"] == 1);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < 12; ++i) {
        lo = std::min(lo, f.p[i][0]);
        hi = std::max(hi, f.p[i][0]);
    }
    CHECK(r.body["bbox"]["min"][0].get<double>() == lo);
    CHECK(r.body["bbox"]["max"][0].get<double>() == hi);
}

TEST_CASE("points are decimated and keep the range end")
{
    Fixture f;
    auto r = f.svc.handle("GET", "/curve/points", {{"i", "2"}, {"j", "11"}, {"stride", "4"}}, "");
    CHECK(r.status == 200);
    CHECK(r.body["indices"] == json::array({2, 6, 10, 11}));
    CHECK(r.body["points"][1][0].get<double>() == f.p[5][0]);
    r = f.svc.handle("GET", "/curve/points", {}, "");
    CHECK(r.body["indices"].size() == 12);
    CHECK(f.svc.handle("GET", "/curve/points", {{"i", "0"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/curve/points", {{"i", "5"}, {"j", "3"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/curve/points", {{"j", "13"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/curve/points", {{"stride", "0"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/curve/points", {{"stride", "x"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/curve/points", {{"i", "-1"}}, "").status == 400);
}

TEST_CASE("zoom endpoint over all ranges")
{
    Fixture f;
    const auto r = f.svc.handle("GET", "/zoom", {{"i", "1"}, {"j", "12"}}, "");
    REQUIRE(r.status == 200);
    CHECK(r.body["points"].size() <= 4);
    for (std::size_t i = 1; i < 12; ++i)
        for (std::size_t j = i + 1; j <= 12; ++j) {
            const auto z = f.svc.handle("GET", "/zoom", {{"i", std::to_string(i)}, {"j", std::to_string(j)}}, "");
            REQUIRE(z.status == 200);
            const auto c = from_json(z.body["points"]);
            CHECK(c.size() <= 4);
            const auto s = f.p.subcurve(i - 1, j - 1);
            CHECK(oracle::rel_le(discrete_frechet(s, c), 1.25 * oracle::optimal_k(s, 2)));
            CHECK(oracle::rel_le(discrete_frechet(s, c), z.body["certified"].get<double>()));
        }
    CHECK(f.svc.handle("GET", "/zoom", {{"i", "3"}, {"j", "3"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/zoom", {{"i", "3"}}, "").status == 400);
    CHECK(f.svc.handle("GET", "/zoom", {{"i", "1"}, {"j", "99"}}, "").status == 400);
}

TEST_CASE("subquery endpoint")
{
    Fixture f;
    const json body = {{"i", 2}, {"j", 11}, {"curve", {{0.5}, {-1.0}}}};
    const auto r = f.svc.handle("POST", "/subquery", {}, body.dump());
    REQUIRE(r.status == 200);
    const auto q = Curve({{0.5}, {-1.0}});
    const double d = discrete_frechet(f.p.subcurve(1, 10), q);
    const double v = r.body["value"].get<double>();
    CHECK(oracle::rel_le(d, v));
    CHECK(oracle::rel_le(v, 1.25 * d));
    CHECK(r.body["branch"] == "split");
    SubcurveOracle direct(f.p, 2, 0.25);
    CHECK(bits(direct.query(2, 11, q)) == bits(v));
    // serialized text parses back to the identical double
    CHECK(bits(json::parse(r.body.dump())["value"].get<double>()) == bits(v));

    const auto ex = f.svc.handle("POST", "/subquery", {}, json{{"i", 4}, {"j", 5}, {"curve", {{0}, {1}}}}.dump());
    CHECK(ex.body["branch"] == "exact");

    CHECK(f.svc.handle("POST", "/subquery", {}, "{not json").status == 400);
    CHECK(f.svc.handle("POST", "/subquery", {}, "[]").status == 400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 1}, {"curve", {{0}, {1}}}}.dump()).status == 400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 0}, {"j", 3}, {"curve", {{0}, {1}}}}.dump()).status ==
          400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 1.5}, {"j", 3}, {"curve", {{0}, {1}}}}.dump()).status ==
          400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 1}, {"j", 3}, {"curve", {{0}, {"a"}}}}.dump()).status ==
          400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 1}, {"j", 3}, {"curve", {{0}}}}.dump()).status == 400);
    CHECK(f.svc.handle("POST", "/subquery", {}, json{{"i", 1}, {"j", 3}, {"curve", {{0, 1}, {1, 2}}}}.dump())
              .status == 422);
    CHECK(f.svc.handle("GET", "/nowhere", {}, "").status == 404);
}

TEST_CASE("missing indexes and mismatched curves")
{
    const auto p = Fixture::make_curve();
    Service only_zoom(p, ZoomHierarchy(p, 2, 0.25), std::nullopt);
    CHECK(only_zoom.handle("POST", "/subquery", {}, "{}").status == 404);
    auto other = p;
    other.set(0, std::vector<double>{123.0});
    CHECK_THROWS_AS(Service(other, ZoomHierarchy(p, 2, 0.25), std::nullopt), InvalidArgument);
}

TEST_CASE("service loads index files")
{
    const auto dir = std::filesystem::temp_directory_path() / "frechet_service_test";
    std::filesystem::create_directories(dir);
    const auto p = Fixture::make_curve();
    {
        std::ofstream out(dir / "p.crv");
        write_curve(out, p);
    }
    IndexFile f;
    ByteWriter w;
    ZoomHierarchy(p, 2, 0.25).save(w);
    f.add(SectionType::zoom, w.take());
    f.save((dir / "z.idx").string());
    const auto svc = Service::from_files((dir / "p.crv").string(), {(dir / "z.idx").string()});
    CHECK(svc.has_zoom());
    CHECK(!svc.has_subcurve());
    std::filesystem::remove_all(dir);
}

TEST_CASE("http round trip")
{
    Fixture f;
    httplib::Server server;
    install_routes(server, f.svc);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread th([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client cli("127.0.0.1", port);

    auto meta = cli.Get("/curve/meta");
    REQUIRE(meta);
    CHECK(meta->status == 200);
    CHECK(json::parse(meta->body)["m"] == 12);

    auto z = cli.Get("/zoom?i=1&j=12");
    REQUIRE(z);
    CHECK(z->status == 200);
    CHECK(json::parse(z->body)["points"].size() <= 4);

    auto bad = cli.Get("/zoom?i=abc&j=3");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    const json body = {{"i", 1}, {"j", 12}, {"curve", {{0.25}, {2.0}}}};
    auto sq = cli.Post("/subquery", body.dump(), "application/json");
    REQUIRE(sq);
    CHECK(sq->status == 200);
    const double v = json::parse(sq->body)["value"].get<double>();
    CHECK(bits(v) == bits(SubcurveOracle(f.p, 2, 0.25).query(1, 12, Curve({{0.25}, {2.0}}))));

    auto dim = cli.Post("/subquery", json{{"i", 1}, {"j", 12}, {"curve", {{0, 0}, {1, 1}}}}.dump(),
                        "application/json");
    REQUIRE(dim);
    CHECK(dim->status == 422);

    server.stop();
    th.join();
}
