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
#include "service.hpp"

#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <limits>

namespace frechet::tools {

namespace {

using nlohmann::json;

Reply error_reply(int status, const std::string& msg)
{
    Reply r;
    r.status = status;
    r.body = {{"error", msg}};
    return r;
}

// Strict positive integer; nullopt if the text is anything else.
std::optional<std::size_t> parse_index(const std::string& s)
{
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::string> param(const Params& p, const std::string& key)
{
    auto it = p.find(key);
    if (it == p.end()) return std::nullopt;
    return it->second;
}

// Reads an index parameter, falling back to def when absent.
bool index_param(const Params& p, const std::string& key, std::size_t def, std::size_t& out, Reply& err)
{
    auto v = param(p, key);
    if (!v) {
        out = def;
        return true;
    }
    auto n = parse_index(*v);
    if (!n) {
        err = error_reply(400, "parameter " + key + " must be a non-negative integer");
        return false;
    }
    out = *n;
    return true;
}

std::optional<std::size_t> json_index(const json& j)
{
    if (j.is_number_unsigned()) return j.get<std::size_t>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
    return std::nullopt;
}

} // namespace

nlohmann::json curve_json(const Curve& c)
{
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) pts.push_back(std::vector<double>(c[i].begin(), c[i].end()));
    return pts;
}

Service::Service(Curve curve, std::optional<ZoomHierarchy> zoom, std::optional<SubcurveOracle> sub)
    : curve_(std::move(curve)), zoom_(std::move(zoom)), sub_(std::move(sub))
{
    if (curve_.empty()) throw InvalidArgument("service needs a non-empty curve");
    if (zoom_ && !(zoom_->curve() == curve_)) throw InvalidArgument("zoom index was built from a different curve");
    if (sub_ && !(sub_->curve() == curve_))
        throw InvalidArgument("subcurve index was built from a different curve");
}

Service Service::from_files(const std::string& curve_path, const std::vector<std::string>& index_paths)
{
    Curve c = read_curve_file(curve_path);
    std::optional<ZoomHierarchy> z;
    std::optional<SubcurveOracle> s;
    for (const auto& path : index_paths) {
        const auto f = IndexFile::load(path);
        if (f.has(SectionType::zoom)) {
            ByteReader r(f.get(SectionType::zoom));
            z = ZoomHierarchy::load(r);
        }
        if (f.has(SectionType::subcurve)) {
            ByteReader r(f.get(SectionType::subcurve));
            s = SubcurveOracle::load(r);
        }
    }
    if (!z && !s) throw InvalidArgument("no zoom or subcurve section in the given index files");
    return Service(std::move(c), std::move(z), std::move(s));
}

Reply Service::meta() const
{
    const std::size_t d = curve_.dim();
    std::vector<double> lo(curve_[0].begin(), curve_[0].end()), hi = lo;
    for (std::size_t i = 1; i < curve_.size(); ++i)
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], curve_[i][a]);
            hi[a] = std::max(hi[a], curve_[i][a]);
        }
    Reply r;
    r.body = {{"m", curve_.size()}, {"d", d}, {"bbox", {{"min", lo}, {"max", hi}}}};
    if (zoom_) r.body["zoom"] = {{"k", zoom_->k()}, {"eps", zoom_->eps()}};
    if (sub_) r.body["subquery"] = {{"k", sub_->k()}, {"eps", sub_->eps()}};
    return r;
}

Reply Service::points(const Params& params) const
{
    const std::size_t m = curve_.size();
    std::size_t i, j, stride;
    Reply err;
    if (!index_param(params, "i", 1, i, err) || !index_param(params, "j", m, j, err) ||
        !index_param(params, "stride", 1, stride, err))
        return err;
    if (i < 1 || j > m || i > j) return error_reply(400, "need 1 <= i <= j <= " + std::to_string(m));
    if (stride < 1) return error_reply(400, "stride must be positive");
    json idx = json::array(), pts = json::array();
    auto add = [&](std::size_t x) {
        idx.push_back(x);
        pts.push_back(std::vector<double>(curve_[x - 1].begin(), curve_[x - 1].end()));
    };
    std::size_t x = i;
    for (;;) {
        add(x);
        if (j - x < stride) break;
        x += stride;
    }
    if (x != j) add(j); // the range end is always included
    Reply r;
    r.body = {{"i", i}, {"j", j}, {"stride", stride}, {"indices", idx}, {"points", pts}};
    return r;
}

Reply Service::zoom(const Params& params) const
{
    if (!zoom_) return error_reply(404, "no zoom index loaded");
    const std::size_t m = curve_.size();
    std::size_t i, j;
    Reply err;
    if (!param(params, "i") || !param(params, "j")) return error_reply(400, "parameters i and j are required");
    if (!index_param(params, "i", 0, i, err) || !index_param(params, "j", 0, j, err)) return err;
    if (i < 1 || j > m || i >= j) return error_reply(400, "need 1 <= i < j <= " + std::to_string(m));
    const auto z = zoom_->query(i, j);
    Reply r;
    r.body = {{"i", i},
              {"j", j},
              {"points", curve_json(z.curve)},
              {"certified", z.certified},
              {"exact", z.level == 0},
              {"level", z.level},
              {"split", z.split}};
    r.audit = z.level == 0 ? "branch=exact" : "branch=split level=" + std::to_string(z.level) +
                                                  " split=" + std::to_string(z.split);
    return r;
}

Reply Service::subquery(const std::string& body) const
{
    if (!sub_) return error_reply(404, "no subcurve index loaded");
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.is_object()) return error_reply(400, "body must be a JSON object");
    if (!req.contains("i") || !req.contains("j") || !req.contains("curve"))
        return error_reply(400, "fields i, j and curve are required");
    const auto i = json_index(req["i"]), j = json_index(req["j"]);
    if (!i || !j) return error_reply(400, "i and j must be non-negative integers");
    const std::size_t m = curve_.size();
    if (*i < 1 || *j > m || *i > *j) return error_reply(400, "need 1 <= i <= j <= " + std::to_string(m));
    const auto& pts = req["curve"];
    if (!pts.is_array() || pts.empty()) return error_reply(400, "curve must be a non-empty array of points");
    std::size_t d = 0;
    std::vector<double> flat;
    for (const auto& p : pts) {
        if (!p.is_array() || p.empty()) return error_reply(400, "each point must be a non-empty array of numbers");
        if (d == 0) d = p.size();
        if (p.size() != d) return error_reply(400, "points of the query curve differ in dimension");
        for (const auto& x : p) {
            if (!x.is_number()) return error_reply(400, "coordinates must be numbers");
            flat.push_back(x.get<double>());
        }
    }
    if (d != curve_.dim())
        return error_reply(422, "query dimension " + std::to_string(d) + " does not match curve dimension " +
                                    std::to_string(curve_.dim()));
    if (pts.size() != sub_->k()) return error_reply(400, "query curve must have exactly k = " +
                                                             std::to_string(sub_->k()) + " points");
    const Curve q(d, std::move(flat));
    const auto t = sub_->trace(*i, *j, q);
    Reply r;
    r.body = {{"value", t.value}, {"branch", t.exact ? "exact" : "split"}, {"probes", t.probes}};
    if (!t.exact) {
        r.body["level"] = t.level;
        r.body["split"] = t.split;
        r.body["q"] = t.q;
        r.body["shared"] = t.shared;
    }
    r.audit = t.exact ? "branch=exact"
                      : "branch=split level=" + std::to_string(t.level) + " split=" + std::to_string(t.split) +
                            " q=" + std::to_string(t.q) + (t.shared ? " shared" : "");
    return r;
}

Reply Service::handle(const std::string& method, const std::string& path, const Params& params,
                      const std::string& body) const
{
    try {
        if (method == "GET" && path == "/curve/meta") return meta();
        if (method == "GET" && path == "/curve/points") return points(params);
        if (method == "GET" && path == "/zoom") return zoom(params);
        if (method == "POST" && path == "/subquery") return subquery(body);
        return error_reply(404, "no route " + method + " " + path);
    } catch (const DimensionMismatch& e) {
        return error_reply(422, e.what());
    } catch (const InvalidArgument& e) {
        return error_reply(400, e.what());
    } catch (const std::exception& e) {
        spdlog::error("{} {}: {}", method, path, e.what());
        return error_reply(500, e.what());
    }
}

void install_routes(httplib::Server& server, const Service& service)
{
    auto run = [&service](const httplib::Request& req, httplib::Response& res) {
        Params params(req.params.begin(), req.params.end());
        const auto r = service.handle(req.method, req.path, params, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
        spdlog::info("{} {} status={} {}", req.method, req.path, r.status, r.audit);
    };
    server.Get("/curve/meta", run);
    server.Get("/curve/points", run);
    server.Get("/zoom", run);
    server.Post("/subquery", run);
}

int serve(const Service& service, const std::string& host, int port)
{
    httplib::Server server;
    install_routes(server, service);
    if (port == 0) {
        port = server.bind_to_any_port(host);
        if (port < 0) return 1;
        spdlog::warn("listening on {}:{}", host, port);
        return server.listen_after_bind() ? 0 : 1;
    }
    if (!server.bind_to_port(host, port)) {
        spdlog::error("cannot bind {}:{}", host, port);
        return 1;
    }
    spdlog::warn("listening on {}:{}", host, port);
    return server.listen_after_bind() ? 0 : 1;
}

} // namespace frechet::tools
