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
#include "frechet/streaming.hpp"

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/meb.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frechet {

namespace {

constexpr char kLayeredMagic[] = "FLCV";
constexpr char kStreamMagic[] = "FSDO";
constexpr std::uint32_t kStreamVersion = 1;

void insert_min(CoverMap& m, const GridKey& key, double v)
{
    auto [it, fresh] = m.try_emplace(key, v);
    if (!fresh && v < it->second) it->second = v;
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Grid points of the ball around the new point with their distances to it.
struct BallPoints {
    std::size_t d = 0, n = 0;
    std::vector<std::int32_t> idx;
    std::vector<double> dist;

    // every curve W∘X with X of exactly len points from the ball
    template <class Emit>
    void grow(GridKey& key, double dw, std::size_t len, Emit& emit) const
    {
        for (std::size_t b = 0; b < n; ++b) {
            key.append(idx.data() + b * d, d);
            const double v = std::max(dw, dist[b]);
            if (len == 1)
                emit(key, v);
            else
                grow(key, v, len - 1, emit);
            key.pop(d);
        }
    }
};

} // namespace

LayeredCover::LayeredCover(std::size_t k, double r, double eps, std::size_t dim)
    : k_(k), r_(r), eps_(eps), radius_((1 + eps) * r), grid_(GridSpec::make(eps, r, dim)), layers_(k)
{
    if (k == 0) throw InvalidArgument("k must be positive");
    if (k * dim > GridKey::kMaxKey) throw InvalidArgument("k * d too large for a streaming cover");
}

LayeredCover LayeredCover::build(const Curve& p, std::size_t k, double r, double eps, bool parallel)
{
    LayeredCover c(k, r, eps, p.dim());
    c.layers_ = enumerate_grid_curves(p, k, c.grid_, c.radius_, true, parallel);
    c.started_ = true;
    return c;
}

void LayeredCover::extend(PointView p, bool parallel)
{
    const std::size_t d = grid_.dim;
    if (p.size() != d) throw DimensionMismatch("point dimension does not match cover");

    BallPoints ball;
    ball.d = d;
    ball.idx = grid_points_in_ball(p, radius_, grid_);
    ball.n = ball.idx.size() / d;
    ball.dist.resize(ball.n);
    for (std::size_t b = 0; b < ball.n; ++b) ball.dist[b] = point_distance(grid_.point(ball.idx.data() + b * d), p);

    if (!started_) {
        started_ = true;
        GridKey key;
        for (std::size_t len = 1; len <= k_; ++len) {
            auto emit = [&](const GridKey& kk, double v) { insert_min(layers_[len - 1], kk, v); };
            ball.grow(key, 0.0, len, emit);
        }
        return;
    }

    // Longest layer first: layer l only reads the old contents of shorter
    // layers, which are rewritten later in this loop.
    for (std::size_t l = k_; l >= 1; --l) {
        auto& cur = layers_[l - 1];
        double buf[GridKey::kMaxKey];
        for (auto it = cur.begin(); it != cur.end();) {
            const std::int32_t* tail = it->first.tail(d);
            for (std::size_t t = 0; t < d; ++t) buf[t] = grid_.coord(tail[t]);
            const double dd = point_distance(PointView(buf, d), p);
            if (dd <= radius_) {
                it->second = std::max(it->second, dd);
                ++it;
            } else {
                cur.erase(it++);
            }
        }
        for (std::size_t j = 1; j < l; ++j) {
            const auto& src = layers_[j - 1];
            if (src.empty()) continue;
            if (parallel && max_threads() > 1 && src.size() > 64) {
                std::vector<std::pair<GridKey, double>> items(src.begin(), src.end());
                std::vector<std::vector<std::pair<GridKey, double>>> parts;
                const auto n = static_cast<std::ptrdiff_t>(items.size());
#pragma omp parallel
                {
#pragma omp single
                    parts.resize(static_cast<std::size_t>(max_threads()));
                    std::vector<std::pair<GridKey, double>> local;
                    auto emit = [&](const GridKey& kk, double v) { local.emplace_back(kk, v); };
#pragma omp for schedule(static)
                    for (std::ptrdiff_t e = 0; e < n; ++e) {
                        GridKey key = items[static_cast<std::size_t>(e)].first;
                        ball.grow(key, items[static_cast<std::size_t>(e)].second, l - j, emit);
                    }
#ifdef _OPENMP
                    parts[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
#else
                    parts[0] = std::move(local);
#endif
                }
                for (const auto& part : parts)
                    for (const auto& [kk, v] : part) insert_min(cur, kk, v);
            } else {
                auto emit = [&](const GridKey& kk, double v) { insert_min(cur, kk, v); };
                for (const auto& [w, dw] : src) {
                    GridKey key = w;
                    ball.grow(key, dw, l - j, emit);
                }
            }
        }
    }
}

std::size_t LayeredCover::entries() const noexcept
{
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.size();
    return n;
}

std::optional<GridKey> LayeredCover::smallest(std::size_t len) const
{
    const auto& l = layer(len);
    if (l.empty()) return std::nullopt;
    auto it = std::min_element(l.begin(), l.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return it->first;
}

std::optional<double> LayeredCover::probe(const Curve& q) const
{
    if (q.size() != k_) throw InvalidArgument("query length must equal k");
    if (q.dim() != grid_.dim) throw DimensionMismatch("query dimension does not match cover");
    GridKey key;
    if (!snap_curve(q, grid_, key)) return std::nullopt;
    const auto& top = layers_.back();
    auto it = top.find(key);
    if (it == top.end()) return std::nullopt;
    Curve w = key_curve(key, grid_);
    double gap = 0;
    for (std::size_t i = 0; i < k_; ++i) gap = std::max(gap, point_distance(q[i], w[i]));
    return it->second + gap;
}

bool operator==(const LayeredCover& a, const LayeredCover& b)
{
    return a.k_ == b.k_ && a.r_ == b.r_ && a.eps_ == b.eps_ && a.grid_.cell == b.grid_.cell &&
           a.grid_.dim == b.grid_.dim && a.started_ == b.started_ && a.layers_ == b.layers_;
}

void LayeredCover::save(ByteWriter& w) const
{
    w.bytes(std::string_view(kLayeredMagic, 4));
    w.u32(kStreamVersion);
    w.size(k_);
    w.size(grid_.dim);
    w.f64(r_);
    w.f64(eps_);
    w.f64(grid_.cell);
    w.u8(started_ ? 1 : 0);
    for (const auto& l : layers_) {
        std::vector<std::pair<GridKey, double>> items(l.begin(), l.end());
        std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        w.size(items.size());
        for (const auto& [key, v] : items) {
            for (std::size_t i = 0; i < key.size(); ++i) w.i32(key[i]);
            w.f64(v);
        }
    }
}

LayeredCover LayeredCover::load(ByteReader& r)
{
    if (r.bytes(4) != std::string_view(kLayeredMagic, 4)) throw FormatError("bad layered cover magic");
    if (r.u32() != kStreamVersion) throw FormatError("unsupported layered cover version");
    const std::size_t k = r.size(), d = r.size();
    const double rr = r.f64(), eps = r.f64(), cell = r.f64();
    const auto started = r.u8();
    if (k == 0 || d == 0 || k * d > GridKey::kMaxKey || !(rr > 0) || !(eps > 0) || started > 1)
        throw FormatError("bad layered cover header");
    LayeredCover c(k, rr, eps, d);
    if (c.grid_.cell != cell) throw FormatError("layered cover cell does not match its parameters");
    c.started_ = started == 1;
    for (std::size_t len = 1; len <= k; ++len) {
        const std::size_t n = r.size(len * d * 4 + 8);
        auto& l = c.layers_[len - 1];
        l.reserve(n);
        for (std::size_t e = 0; e < n; ++e) {
            GridKey key;
            for (std::size_t i = 0; i < len * d; ++i) key.push(r.i32());
            if (!l.emplace(key, r.f64()).second) throw FormatError("duplicate layered cover key");
        }
    }
    return c;
}

LayeredCover stream_cover(const Curve& p, std::size_t k, double r, double eps)
{
    LayeredCover c(k, r, eps, p.dim());
    for (std::size_t i = 0; i < p.size(); ++i) c.extend(p[i], false);
    return c;
}

LeapingCover::LeapingCover(std::size_t k, double eps, double init, double inc, std::size_t dim, bool keep_base)
    : k_(k), eps_(eps), init_(init), inc_(inc), keep_base_(keep_base), dim_(dim), warmup_(dim), base_(dim)
{
    if (k == 0) throw InvalidArgument("k must be positive");
    if (!(eps > 0 && eps < 0.5)) throw InvalidArgument("cover eps must lie in (0, 1/2)");
    if (!(init > 0) || !(inc >= 2)) throw InvalidArgument("need init > 0 and inc >= 2");
    if (dim == 0 || k * dim > GridKey::kMaxKey) throw InvalidArgument("k * d too large for a streaming cover");
}

void LeapingCover::add(PointView p, bool parallel)
{
    if (p.size() != dim_) throw DimensionMismatch("point dimension does not match");
    if (!warm_) {
        if (!warmup_.empty() && std::equal(p.begin(), p.end(), warmup_.back().begin())) return;
        warmup_.push_back(p);
        if (warmup_.size() < k_ + 1) return;
        lambda_ = half_min_edge(warmup_);
        double r = init_ * lambda_;
        cover_ = LayeredCover(k_, r, eps_, dim_);
        for (std::size_t i = 0; i < warmup_.size(); ++i) cover_.extend(warmup_[i], parallel);
        while (cover_.empty()) {
            r *= inc_;
            ++h_;
            cover_ = stream_cover(warmup_, k_, r, eps_);
        }
        warm_ = true;
        if (keep_base_) base_ = warmup_;
        return;
    }

    // the leap restarts from an arbitrary (here: smallest) curve of the
    // previous round, so pick it before extending in place
    const auto w = cover_.smallest(k_);
    if (!w) throw ContractViolation("leaping cover: empty cover after warmup");
    const GridSpec old_grid = cover_.grid();
    cover_.extend(p, parallel);
    if (!cover_.empty()) {
        if (keep_base_) base_.push_back(p);
        return;
    }
    Curve wp = key_curve(*w, old_grid);
    wp.push_back(p);
    double r = cover_.r();
    do {
        r *= inc_;
        ++h_;
        cover_ = stream_cover(wp, k_, r, eps_);
    } while (cover_.empty());
    if (keep_base_) base_ = std::move(wp);
}

void LeapingCover::save(ByteWriter& w) const
{
    w.size(k_);
    w.f64(eps_);
    w.f64(init_);
    w.f64(inc_);
    w.size(dim_);
    w.u8(warm_ ? 1 : 0);
    w.u8(keep_base_ ? 1 : 0);
    w.curve(warmup_);
    if (!warm_) return;
    w.f64(lambda_);
    w.size(h_);
    w.f64(cover_.r());
    if (keep_base_) w.curve(base_);
    cover_.save(w);
}

LeapingCover LeapingCover::load(ByteReader& r)
{
    const std::size_t k = r.size();
    const double eps = r.f64(), init = r.f64(), inc = r.f64();
    const std::size_t dim = r.size();
    const auto warm = r.u8(), keep = r.u8();
    if (warm > 1 || keep > 1) throw FormatError("bad leaping cover flags");
    LeapingCover c;
    try {
        c = LeapingCover(k, eps, init, inc, dim, keep == 1);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad leaping cover header: ") + e.what());
    }
    c.warmup_ = r.curve();
    if (c.warmup_.dim() != dim || c.warmup_.size() > k + 1) throw FormatError("bad leaping cover warmup");
    c.warm_ = warm == 1;
    if (!c.warm_) return c;
    c.lambda_ = r.f64();
    c.h_ = r.size();
    const double rr = r.f64();
    if (keep) c.base_ = r.curve();
    c.cover_ = LayeredCover::load(r);
    if (c.cover_.r() != rr || c.cover_.k() != k || c.cover_.dim() != dim)
        throw FormatError("leaping cover header does not match its cover");
    return c;
}

double stream_cover_estimate(std::size_t k, double e, std::size_t dim)
{
    // grid points of one ball, to the k-th power
    const double side = 2 * (1 + e) * std::sqrt(double(dim)) / e + 1;
    return std::pow(std::pow(side, double(dim)), double(k));
}

StreamingOracle::StreamingOracle(std::size_t k, double eps, std::size_t dim) : k_(k), eps_(eps), dim_(dim)
{
    if (k == 0) throw InvalidArgument("k must be positive");
    if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
    if (dim == 0) throw InvalidArgument("dimension must be positive");
    if (k * dim > GridKey::kMaxKey) throw InvalidArgument("k * d too large for streaming covers");
    const double e = cover_eps();
    const double est = stream_cover_estimate(k, e, dim);
    if (est > kStreamEntryLimit)
        throw InvalidArgument("streaming covers would hold about " + std::to_string(static_cast<long long>(est)) +
                              " curves each; reduce k or d, or raise eps");
    while (std::ldexp(1.0, t_) < 25 / e) ++t_;
    auto proto = make_kernel_streaming_meb(dim, eps / 8);
    simp_.emplace(make_streaming_simplifier(k, eps, *proto));
    for (int i = 0; i < t_; ++i) leapers_.emplace_back(k, e, std::ldexp(1.0, i), inc(), dim);
}

void StreamingOracle::add(PointView p)
{
    if (p.size() != dim_) throw DimensionMismatch("point dimension does not match the stream");
    for (double x : p)
        if (!std::isfinite(x)) throw InvalidArgument("non-finite coordinate");
    simp_->add(p);
    const auto n = static_cast<std::ptrdiff_t>(leapers_.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (max_threads() > 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            leapers_[static_cast<std::size_t>(i)].add(p, false);
        } catch (...) {
#pragma omp critical(frechet_stream_err)
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    ++n_;
}

void StreamingOracle::add_all(const Curve& c)
{
    for (std::size_t i = 0; i < c.size(); ++i) add(c[i]);
}

double StreamingOracle::base_scale() const noexcept { return leapers_.empty() ? 0 : leapers_[0].lambda(); }

StreamTrace StreamingOracle::trace(const Curve& q)
{
    if (q.size() != k_) throw InvalidArgument("query length must equal k");
    if (q.dim() != dim_) throw DimensionMismatch("query dimension does not match the stream");
    if (n_ == 0) throw InvalidArgument("no points read yet");
    StreamTrace t;
    if (!warm()) {
        t.value = discrete_frechet(leapers_[0].warmup(), q);
        return t;
    }
    const auto cur = simp_->current();
    const double L = cur.certified;
    if (!(L > 0)) throw ContractViolation("streaming oracle: zero simplification value after warmup");
    if (!sym_ || !(cur.pi == sym_of_)) {
        sym_.emplace(cur.pi, eps_ / 8, k_);
        sym_of_ = cur.pi;
    }
    const double e1 = eps_ / 8;
    const double delta = sym_->query(q);
    t.sym = delta;
    t.L = L;
    t.probes = 1;
    if (delta >= L / e1) {
        t.branch = 1;
        t.value = (1 + e1) * delta;
        return t;
    }
    double phi = L;
    t.branch = 2;
    if (delta > 3 * L) {
        t.branch = 3;
        phi = std::ceil(delta / L) * L;
    }
    // largest n with 2^n * lambda <= 10 phi, then n = j*t + i
    const double lam = base_scale();
    const double target = 10 * phi;
    int n = std::ilogb(target / lam);
    while (std::ldexp(lam, n) > target) --n;
    while (std::ldexp(lam, n + 1) <= target) ++n;
    if (n < 0) throw ContractViolation("streaming oracle: scale below the warmup lambda");
    const auto i = static_cast<std::size_t>(n % t_);
    const auto j = static_cast<std::size_t>(n / t_);
    const auto& lp = leapers_[i];
    if (lp.h() != j) throw ContractViolation("streaming oracle: selected leaper is outside its bracket");
    auto v = lp.probe(q);
    ++t.probes;
    if (!v) throw ContractViolation("streaming oracle: selected leaper answered NO");
    t.leaper = i;
    t.band = j;
    t.value = *v + 2 / inc() * lp.r();
    return t;
}

std::size_t StreamingOracle::state_size() const noexcept
{
    std::size_t n = simp_ ? simp_->state_points() : 0;
    for (const auto& l : leapers_) n += l.cover().entries() + l.warmup().size();
    return n;
}

void StreamingOracle::save(ByteWriter& w) const
{
    w.bytes(std::string_view(kStreamMagic, 4));
    w.u32(kStreamVersion);
    w.size(k_);
    w.f64(eps_);
    w.size(dim_);
    w.u64(n_);
    simp_->save(w);
    w.size(leapers_.size());
    for (std::size_t i = 0; i < leapers_.size(); ++i) {
        // leaper header {i, r, h}, then its state
        w.size(i);
        w.f64(leapers_[i].warm() ? leapers_[i].r() : 0.0);
        w.size(leapers_[i].h());
        leapers_[i].save(w);
    }
}

StreamingOracle StreamingOracle::load(ByteReader& r)
{
    if (r.bytes(4) != std::string_view(kStreamMagic, 4)) throw FormatError("bad stream checkpoint magic");
    if (r.u32() != kStreamVersion) throw FormatError("unsupported stream checkpoint version");
    const std::size_t k = r.size();
    const double eps = r.f64();
    const std::size_t dim = r.size();
    StreamingOracle o;
    try {
        o = StreamingOracle(k, eps, dim);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad stream checkpoint header: ") + e.what());
    }
    o.n_ = r.u64();
    o.simp_.emplace(MultiLeapSimp::load(r));
    if (o.simp_->k() != k) throw FormatError("stream checkpoint simplifier mismatch");
    const std::size_t n = r.size(8);
    if (n != o.leapers_.size()) throw FormatError("stream checkpoint leaper count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = r.size();
        const double rr = r.f64();
        const std::size_t h = r.size();
        auto lp = LeapingCover::load(r);
        if (idx != i || lp.h() != h || (lp.warm() ? lp.r() : 0.0) != rr || lp.init() != o.leapers_[i].init() ||
            lp.inc() != o.inc() || lp.k() != k || lp.eps() != o.cover_eps())
            throw FormatError("stream checkpoint leaper header mismatch");
        o.leapers_[i] = std::move(lp);
    }
    return o;
}

} // namespace frechet
