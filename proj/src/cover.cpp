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
#include "frechet/cover.hpp"

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>

namespace frechet {

namespace {

constexpr char kCoverMagic[] = "FCOV";
constexpr std::uint32_t kCoverVersion = 1;

struct Candidates {
    std::size_t n = 0;
    std::vector<std::int32_t> idx; // n * dim
    std::vector<double> dist;      // n * m, distance of candidate g to P[i]
};

Candidates union_of_balls(const Curve& p, const GridSpec& g, double radius)
{
    const std::size_t d = g.dim, m = p.size();
    std::vector<std::int32_t> all;
    for (std::size_t i = 0; i < m; ++i) {
        auto b = grid_points_in_ball(p[i], radius, g);
        all.insert(all.end(), b.begin(), b.end());
    }
    std::size_t cnt = all.size() / d;
    std::vector<std::size_t> order(cnt);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(all.begin() + a * d, all.begin() + a * d + d, all.begin() + b * d,
                                            all.begin() + b * d + d);
    };
    auto same = [&](std::size_t a, std::size_t b) {
        return std::equal(all.begin() + a * d, all.begin() + a * d + d, all.begin() + b * d);
    };
    std::sort(order.begin(), order.end(), less);
    order.erase(std::unique(order.begin(), order.end(), same), order.end());

    Candidates c;
    c.n = order.size();
    c.idx.reserve(c.n * d);
    for (auto o : order) c.idx.insert(c.idx.end(), all.begin() + o * d, all.begin() + o * d + d);
    c.dist.resize(c.n * m);
    for (std::size_t j = 0; j < c.n; ++j) {
        Point w = g.point(c.idx.data() + j * d);
        for (std::size_t i = 0; i < m; ++i) c.dist[j * m + i] = point_distance(w, p[i]);
    }
    return c;
}

using Found = std::vector<std::vector<std::pair<GridKey, double>>>;

struct Search {
    const Candidates& cand;
    std::size_t m, k, d;
    double radius;
    bool all_layers;
    std::vector<std::vector<double>> cols; // one column per depth

    void visit(std::size_t depth, GridKey& key, Found& out)
    {
        const auto& col = cols[depth - 1];
        if (*std::min_element(col.begin(), col.end()) > radius) return;
        if ((all_layers || depth == k) && col[m - 1] <= radius) out[depth - 1].emplace_back(key, col[m - 1]);
        if (depth == k) return;
        for (std::size_t g = 0; g < cand.n; ++g) {
            extend(depth, g);
            key.append(cand.idx.data() + g * d, d);
            visit(depth + 1, key, out);
            key.pop(d);
        }
    }

    // column for depth+1 from column at depth, appending candidate g
    void extend(std::size_t depth, std::size_t g)
    {
        const double* c = cand.dist.data() + g * m;
        const auto& prev = cols[depth - 1];
        auto& next = cols[depth];
        next[0] = std::max(c[0], prev[0]);
        for (std::size_t i = 1; i < m; ++i)
            next[i] = std::max(c[i], std::min({prev[i], prev[i - 1], next[i - 1]}));
    }

    void first(std::size_t g)
    {
        const double* c = cand.dist.data() + g * m;
        auto& col = cols[0];
        col[0] = c[0];
        for (std::size_t i = 1; i < m; ++i) col[i] = std::max(col[i - 1], c[i]);
    }
};

} // namespace

std::vector<CoverMap> enumerate_grid_curves(const Curve& p, std::size_t k, const GridSpec& g, double radius,
                                            bool all_layers, bool parallel)
{
    if (p.empty()) throw InvalidArgument("cover of an empty curve");
    if (p.dim() != g.dim) throw DimensionMismatch("curve dimension does not match grid");
    if (k == 0) throw InvalidArgument("k must be positive");
    if (k * g.dim > GridKey::kMaxKey) throw InvalidArgument("k * d too large for an enumerated cover");

    const Candidates cand = union_of_balls(p, g, radius);
    const std::size_t m = p.size();
    const auto n = static_cast<std::ptrdiff_t>(cand.n);

    Found merged(k);
    std::exception_ptr err;
#pragma omp parallel if (parallel)
    {
        Found local(k);
        Search s{cand, m, k, g.dim, radius, all_layers, std::vector<std::vector<double>>(k, std::vector<double>(m))};
        GridKey key;
#pragma omp for schedule(dynamic, 1) nowait
        for (std::ptrdiff_t j = 0; j < n; ++j) {
            try {
                s.first(static_cast<std::size_t>(j));
                key = GridKey{};
                key.append(cand.idx.data() + j * g.dim, g.dim);
                s.visit(1, key, local);
            } catch (...) {
#pragma omp critical(frechet_cover_err)
                err = std::current_exception();
            }
        }
#pragma omp critical(frechet_cover_merge)
        for (std::size_t l = 0; l < k; ++l)
            merged[l].insert(merged[l].end(), std::make_move_iterator(local[l].begin()),
                             std::make_move_iterator(local[l].end()));
    }
    if (err) std::rethrow_exception(err);

    std::vector<CoverMap> layers(k);
    for (std::size_t l = 0; l < k; ++l) {
        layers[l].reserve(merged[l].size());
        for (auto& [key, v] : merged[l]) layers[l].emplace(key, v);
    }
    return layers;
}

Cover Cover::build(const Curve& p, std::size_t k, double r, double eps, const CoverOptions& opt)
{
    if (p.empty()) throw InvalidArgument("cover of an empty curve");
    if (k == 0) throw InvalidArgument("k must be positive");
    if (!(eps > 0) || !(r > 0)) throw InvalidArgument("cover needs r > 0 and eps > 0");

    Cover c;
    c.k_ = k;
    c.r_ = r;
    c.eps_ = eps;
    c.radius_ = (1 + eps) * r;
    c.grid_ = GridSpec::make(eps, r, p.dim());

    const bool fits = k * p.dim() <= GridKey::kMaxKey;
    CoverStorage mode;
    if (opt.storage) {
        mode = *opt.storage;
        if (mode == CoverStorage::materialized && !fits)
            throw InvalidArgument("k * d too large for a materialized cover");
    } else {
        double per_ball = std::pow(2 * c.radius_ / c.grid_.cell + 3, static_cast<double>(p.dim()));
        double est = std::pow(per_ball * static_cast<double>(p.size()), static_cast<double>(k));
        mode = fits && est <= opt.materialize_limit ? CoverStorage::materialized : CoverStorage::implicit;
    }
    c.storage_ = mode;
    if (mode == CoverStorage::materialized) {
        // every grid point near P must have a 32-bit index
        for (double x : p.coords()) {
            c.grid_.snap(x - c.radius_);
            c.grid_.snap(x + c.radius_);
        }
        c.map_ = std::move(enumerate_grid_curves(p, k, c.grid_, c.radius_, false, opt.parallel)[k - 1]);
    } else {
        c.p_ = p;
    }
    return c;
}

std::optional<double> Cover::find(const GridKey& key) const
{
    if (storage_ == CoverStorage::materialized) {
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    if (key.size() != k_ * grid_.dim) return std::nullopt;
    double v = discrete_frechet(p_, key_curve(key, grid_));
    if (v <= radius_) return v;
    return std::nullopt;
}

std::optional<double> Cover::probe(const Curve& q) const
{
    if (q.size() != k_) throw InvalidArgument("query length must equal k");
    if (q.dim() != grid_.dim) throw DimensionMismatch("query dimension does not match cover");
    probes_.bump();

    const std::size_t d = grid_.dim;
    Curve w(d);
    w.reserve(k_);
    Point pt(d);
    double gap = 0;
    std::optional<double> dist;
    if (storage_ == CoverStorage::materialized) {
        GridKey key;
        if (!snap_curve(q, grid_, key)) return std::nullopt;
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        dist = it->second;
        w = key_curve(key, grid_);
    } else {
        for (std::size_t i = 0; i < k_; ++i) {
            for (std::size_t t = 0; t < d; ++t) {
                pt[t] = grid_.snap_coord(q[i][t]);
                if (!std::isfinite(pt[t])) return std::nullopt;
            }
            w.push_back(pt);
        }
        double v = discrete_frechet(p_, w);
        if (!(v <= radius_)) return std::nullopt;
        dist = v;
    }
    for (std::size_t i = 0; i < k_; ++i) gap = std::max(gap, point_distance(q[i], w[i]));
    return *dist + gap;
}

std::vector<std::pair<GridKey, double>> Cover::sorted_entries() const
{
    std::vector<std::pair<GridKey, double>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

void Cover::save(ByteWriter& w) const
{
    w.bytes(std::string_view(kCoverMagic, 4));
    w.u32(kCoverVersion);
    w.size(k_);
    w.size(grid_.dim);
    w.f64(r_);
    w.f64(eps_);
    w.f64(grid_.cell);
    w.u8(static_cast<std::uint8_t>(storage_));
    if (storage_ == CoverStorage::materialized) {
        w.size(map_.size());
        for (const auto& [key, v] : sorted_entries()) {
            for (std::size_t i = 0; i < key.size(); ++i) w.i32(key[i]);
            w.f64(v);
        }
    } else {
        w.curve(p_);
    }
}

Cover Cover::load(ByteReader& r)
{
    if (r.bytes(4) != std::string_view(kCoverMagic, 4)) throw FormatError("bad cover magic");
    if (r.u32() != kCoverVersion) throw FormatError("unsupported cover version");
    Cover c;
    c.k_ = r.size();
    std::size_t d = r.size();
    c.r_ = r.f64();
    c.eps_ = r.f64();
    double cell = r.f64();
    auto mode = r.u8();
    if (c.k_ == 0 || d == 0 || !(c.r_ > 0) || !(c.eps_ > 0)) throw FormatError("bad cover header");
    c.grid_ = GridSpec::make(c.eps_, c.r_, d);
    if (c.grid_.cell != cell) throw FormatError("cover cell does not match its parameters");
    c.radius_ = (1 + c.eps_) * c.r_;
    if (mode == 0) {
        c.storage_ = CoverStorage::materialized;
        if (c.k_ * d > GridKey::kMaxKey) throw FormatError("cover key too long");
        const std::size_t len = c.k_ * d;
        std::size_t n = r.size(len * 4 + 8);
        c.map_.reserve(n);
        for (std::size_t e = 0; e < n; ++e) {
            GridKey key;
            for (std::size_t i = 0; i < len; ++i) key.push(r.i32());
            double v = r.f64();
            if (!c.map_.emplace(key, v).second) throw FormatError("duplicate cover key");
        }
    } else if (mode == 1) {
        c.storage_ = CoverStorage::implicit;
        c.p_ = r.curve();
        if (c.p_.empty() || c.p_.dim() != d) throw FormatError("bad implicit cover curve");
    } else {
        throw FormatError("unknown cover storage");
    }
    return c;
}

DecisionOracle::DecisionOracle(const Curve& p, std::size_t k, double r, double eps, const CoverOptions& opt)
    : eps_(eps)
{
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    cover_ = Cover::build(p, k, r, eps / 4, opt);
}

std::optional<double> DecisionOracle::query(const Curve& q) const { return cover_.probe(q); }

void DecisionOracle::save(ByteWriter& w) const
{
    w.f64(eps_);
    cover_.save(w);
}

DecisionOracle DecisionOracle::load(ByteReader& r)
{
    DecisionOracle o;
    o.eps_ = r.f64();
    o.cover_ = Cover::load(r);
    if (o.cover_.eps() != o.eps_ / 4) throw FormatError("decision oracle eps mismatch");
    return o;
}

BoundedRangeOracle::BoundedRangeOracle(const Curve& p, std::size_t k, double alpha, double beta, double eps,
                                       const CoverOptions& opt)
    : k_(k), alpha_(alpha), beta_(beta), eps_(eps)
{
    if (!(alpha > 0) || !(beta >= alpha) || !std::isfinite(beta))
        throw InvalidArgument("bounded range needs 0 < alpha <= beta");
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    int top = 0;
    while (std::ldexp(alpha, top) < beta) ++top;
    top = std::max(top, 2);
    levels_.resize(static_cast<std::size_t>(top) + 1);
    const double level_eps = eps / 4;
    CoverOptions inner = opt;
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
    for (int i = 0; i <= top; ++i) {
        try {
            levels_[static_cast<std::size_t>(i)] = DecisionOracle(p, k, std::ldexp(alpha, i), level_eps, inner);
        } catch (...) {
#pragma omp critical(frechet_bro_err)
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

std::optional<double> BoundedRangeOracle::query(const Curve& q) const
{
    // invariant: alpha 2^s <= dfd <= alpha 2^t
    std::size_t s = 0, t = levels_.size() - 1;
    while (t > s + 2) {
        std::size_t x = s + (t - s) / 2;
        if (levels_[x].query(q))
            t = x + 1; // an answer certifies dfd < 2 r_x
        else
            s = x;
    }
    return levels_[t].query(q);
}

std::uint64_t BoundedRangeOracle::probes() const noexcept
{
    std::uint64_t n = 0;
    for (const auto& l : levels_) n += l.cover().probes();
    return n;
}

void BoundedRangeOracle::save(ByteWriter& w) const
{
    w.size(k_);
    w.f64(alpha_);
    w.f64(beta_);
    w.f64(eps_);
    w.size(levels_.size());
    for (const auto& l : levels_) l.save(w);
}

BoundedRangeOracle BoundedRangeOracle::load(ByteReader& r)
{
    BoundedRangeOracle o;
    o.k_ = r.size();
    o.alpha_ = r.f64();
    o.beta_ = r.f64();
    o.eps_ = r.f64();
    std::size_t n = r.size(16);
    if (n < 3) throw FormatError("bounded range oracle has too few levels");
    o.levels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        o.levels_.push_back(DecisionOracle::load(r));
        if (o.levels_.back().k() != o.k_ || o.levels_.back().r() != std::ldexp(o.alpha_, static_cast<int>(i)))
            throw FormatError("bounded range level mismatch");
    }
    return o;
}

} // namespace frechet
