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
#include "frechet/meb.hpp"

#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace frechet {

namespace {

// Smallest ball with all of `support` on its boundary (circumcenter within
// the affine hull). Affinely dependent support points are dropped.
Ball ball_through(const Curve& pts, const std::vector<std::size_t>& support)
{
    const std::size_t d = pts.dim();
    Ball b;
    if (support.empty()) {
        b.radius = -1.0;
        return b;
    }
    auto p0 = pts[support[0]];
    b.center.assign(p0.begin(), p0.end());
    const std::size_t r = support.size() - 1;
    if (r == 0)
        return b;

    std::vector<std::vector<double>> v(r, std::vector<double>(d));
    for (std::size_t i = 0; i < r; ++i) {
        auto pi = pts[support[i + 1]];
        for (std::size_t t = 0; t < d; ++t)
            v[i][t] = pi[t] - p0[t];
    }
    // 2 V V^T lambda = |v_i|^2
    std::vector<std::vector<double>> a(r, std::vector<double>(r + 1));
    double scale = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j)
            a[i][j] = 2.0 * std::inner_product(v[i].begin(), v[i].end(), v[j].begin(), 0.0);
        a[i][r] = std::inner_product(v[i].begin(), v[i].end(), v[i].begin(), 0.0);
        scale = std::max(scale, a[i][i]);
    }
    std::vector<bool> dropped(r, false);
    std::vector<std::size_t> pivot_row(r, r);
    std::vector<bool> used(r, false);
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t best = r;
        double bestv = 0.0;
        for (std::size_t i = 0; i < r; ++i)
            if (!used[i] && std::abs(a[i][col]) > bestv) {
                bestv = std::abs(a[i][col]);
                best = i;
            }
        if (best == r || bestv <= 1e-12 * scale) {
            dropped[col] = true;
            continue;
        }
        used[best] = true;
        pivot_row[col] = best;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == best)
                continue;
            const double f = a[i][col] / a[best][col];
            if (f == 0.0)
                continue;
            for (std::size_t j = col; j <= r; ++j)
                a[i][j] -= f * a[best][j];
        }
    }
    for (std::size_t col = 0; col < r; ++col) {
        if (dropped[col])
            continue;
        const auto& row = a[pivot_row[col]];
        const double lambda = row[r] / row[col];
        for (std::size_t t = 0; t < d; ++t)
            b.center[t] += lambda * v[col][t];
    }
    for (std::size_t idx : support)
        b.radius = std::max(b.radius, point_distance(b.center, pts[idx]));
    return b;
}

bool outside(const Ball& b, PointView p)
{
    if (b.radius < 0.0)
        return true;
    return point_distance(b.center, p) > b.radius * (1.0 + 1e-12);
}

struct Welzl {
    const Curve& pts;
    std::vector<std::size_t> order;
    std::vector<std::size_t> support;

    Ball run(std::size_t end)
    {
        Ball b = ball_through(pts, support);
        if (support.size() == pts.dim() + 1)
            return b;
        for (std::size_t i = 0; i < end; ++i) {
            const std::size_t idx = order[i];
            if (outside(b, pts[idx])) {
                support.push_back(idx);
                b = run(i);
                support.pop_back();
                std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i),
                            order.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            }
        }
        return b;
    }
};

double max_distance(const Curve& pts, PointView c)
{
    double r = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        r = std::max(r, point_distance(c, pts[i]));
    return r;
}

} // namespace

Ball exact_meb(const Curve& points)
{
    if (points.empty())
        throw InvalidArgument("exact_meb of an empty set");
    Welzl w{points, {}, {}};
    w.order.resize(points.size());
    std::iota(w.order.begin(), w.order.end(), std::size_t{0});
    std::mt19937_64 rng(0x5eed);
    std::shuffle(w.order.begin(), w.order.end(), rng);
    Ball b = w.run(points.size());
    b.radius = max_distance(points, b.center);
    return b;
}

Ball static_approx_meb(const Curve& points, double eps)
{
    if (points.empty())
        throw InvalidArgument("static_approx_meb of an empty set");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidArgument("static_approx_meb: eps must lie in (0,1)");
    const std::size_t d = points.dim();
    Point c(points[0].begin(), points[0].end());
    const auto rounds = static_cast<std::size_t>(std::ceil(1.0 / (eps * eps)));
    for (std::size_t i = 1; i <= rounds; ++i) {
        std::size_t far = 0;
        double fd = -1.0;
        for (std::size_t j = 0; j < points.size(); ++j) {
            const double dj = point_distance(c, points[j]);
            if (dj > fd) {
                fd = dj;
                far = j;
            }
        }
        if (fd == 0.0)
            break;
        auto q = points[far];
        for (std::size_t t = 0; t < d; ++t)
            c[t] += (q[t] - c[t]) / static_cast<double>(i + 1);
    }
    return {c, max_distance(points, c)};
}

MebKind parse_meb_kind(const std::string& s)
{
    if (s == "exact")
        return MebKind::exact;
    if (s == "two")
        return MebKind::two;
    if (s == "kernel")
        return MebKind::kernel;
    throw InvalidArgument("unknown MEB variant '" + s + "' (expected exact, two or kernel)");
}

std::string to_string(MebKind k)
{
    switch (k) {
    case MebKind::exact: return "exact";
    case MebKind::two: return "two";
    case MebKind::kernel: return "kernel";
    }
    return "?";
}

std::vector<Point> direction_net(std::size_t dim, double theta)
{
    if (dim == 0)
        throw InvalidArgument("direction_net: dimension 0");
    if (dim == 1)
        return {Point{1.0}, Point{-1.0}};
    if (!(theta > 0.0 && theta < 1.5))
        throw InvalidArgument("direction_net: theta out of range");
    // grid on each cube face; a face point within sqrt(d-1)/s of the radial
    // projection is within angle asin(sqrt(d-1)/s) <= theta
    const auto s = static_cast<std::size_t>(std::ceil(std::sqrt(double(dim - 1)) / std::sin(theta)));
    std::vector<Point> out;
    std::vector<std::size_t> idx(dim - 1, 0);
    for (std::size_t axis = 0; axis < dim; ++axis) {
        for (double sign : {1.0, -1.0}) {
            std::fill(idx.begin(), idx.end(), 0);
            while (true) {
                Point u(dim);
                std::size_t k = 0;
                for (std::size_t t = 0; t < dim; ++t) {
                    if (t == axis)
                        u[t] = sign;
                    else
                        u[t] = -1.0 + 2.0 * double(idx[k++]) / double(s);
                }
                const double n = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
                for (auto& x : u)
                    x /= n;
                out.push_back(std::move(u));
                std::size_t t = 0;
                while (t < idx.size() && ++idx[t] > s)
                    idx[t++] = 0;
                if (t == idx.size())
                    break;
            }
        }
    }
    return out;
}

namespace {

class ExactMeb final : public StreamingMeb {
public:
    explicit ExactMeb(std::size_t dim) : pts_(dim) {}

    void add(PointView p) override
    {
        pts_.push_back(p);
        cache_.reset();
    }
    Ball current() const override
    {
        if (pts_.empty())
            throw InvalidArgument("streaming MEB read before first insertion");
        if (!cache_)
            cache_ = exact_meb(pts_);
        return *cache_;
    }
    double gamma() const noexcept override { return 1.0; }
    MebKind kind() const noexcept override { return MebKind::exact; }
    std::unique_ptr<StreamingMeb> clone() const override { return std::make_unique<ExactMeb>(*this); }
    std::unique_ptr<StreamingMeb> fresh() const override { return std::make_unique<ExactMeb>(pts_.dim()); }
    std::size_t stored_points() const noexcept override { return pts_.size(); }
    bool empty() const noexcept override { return pts_.empty(); }
    void save(ByteWriter& w) const override
    {
        w.u8(static_cast<std::uint8_t>(kind()));
        w.curve(pts_);
    }
    static std::unique_ptr<StreamingMeb> read(ByteReader& r)
    {
        const std::size_t dim = r.size();
        auto coords = r.doubles();
        if (dim == 0 || coords.size() % dim)
            throw FormatError("bad exact MEB block");
        auto m = std::make_unique<ExactMeb>(dim);
        m->pts_ = Curve(dim, std::move(coords));
        return m;
    }

private:
    Curve pts_;
    mutable std::optional<Ball> cache_;
};

class TwoMeb final : public StreamingMeb {
public:
    explicit TwoMeb(std::size_t dim) : dim_(dim) {}

    void add(PointView p) override
    {
        if (p.size() != dim_)
            throw DimensionMismatch("streaming MEB: point dimension mismatch");
        if (center_.empty()) {
            center_.assign(p.begin(), p.end());
            radius_ = 0.0;
        } else {
            radius_ = std::max(radius_, point_distance(center_, p));
        }
    }
    Ball current() const override
    {
        if (center_.empty())
            throw InvalidArgument("streaming MEB read before first insertion");
        return {center_, radius_};
    }
    double gamma() const noexcept override { return 2.0; }
    MebKind kind() const noexcept override { return MebKind::two; }
    std::unique_ptr<StreamingMeb> clone() const override { return std::make_unique<TwoMeb>(*this); }
    std::unique_ptr<StreamingMeb> fresh() const override { return std::make_unique<TwoMeb>(dim_); }
    std::size_t stored_points() const noexcept override { return center_.empty() ? 0 : 1; }
    bool empty() const noexcept override { return center_.empty(); }
    void save(ByteWriter& w) const override
    {
        w.u8(static_cast<std::uint8_t>(kind()));
        w.size(dim_);
        w.doubles(center_);
        w.f64(radius_);
    }
    static std::unique_ptr<StreamingMeb> read(ByteReader& r)
    {
        auto m = std::make_unique<TwoMeb>(r.size());
        m->center_ = r.doubles();
        m->radius_ = r.f64();
        if (!m->center_.empty() && m->center_.size() != m->dim_)
            throw FormatError("bad 2-MEB block");
        return m;
    }

private:
    std::size_t dim_;
    Point center_;
    double radius_ = 0.0;
};

class KernelMeb final : public StreamingMeb {
public:
    KernelMeb(std::size_t dim, double eps) : dim_(dim), eps_(eps), kappa_(eps / 5.0)
    {
        if (!(eps > 0.0 && eps < 0.5))
            throw InvalidArgument("kernel MEB: eps must lie in (0, 1/2)");
        const double theta = std::min(std::acos(1.0 / (1.0 + 3.0 * kappa_)), std::sqrt(kappa_));
        net_ = direction_net(dim, theta);
        best_.assign(net_.size(), -1);
        score_.assign(net_.size(), 0.0);
    }

    void add(PointView p) override
    {
        if (p.size() != dim_)
            throw DimensionMismatch("streaming MEB: point dimension mismatch");
        bool changed = false;
        std::ptrdiff_t slot = -1;
        for (std::size_t u = 0; u < net_.size(); ++u) {
            const double s = std::inner_product(p.begin(), p.end(), net_[u].begin(), 0.0);
            if (best_[u] < 0 || s > score_[u]) {
                if (slot < 0) {
                    slot = static_cast<std::ptrdiff_t>(pts_.size() / dim_);
                    pts_.insert(pts_.end(), p.begin(), p.end());
                }
                best_[u] = slot;
                score_[u] = s;
                changed = true;
            }
        }
        if (changed) {
            compact();
            cache_.reset();
        }
    }

    Ball current() const override
    {
        if (pts_.empty())
            throw InvalidArgument("streaming MEB read before first insertion");
        if (!cache_) {
            Curve k(dim_, pts_);
            Ball b = dim_ <= 4 ? exact_meb(k) : static_approx_meb(k, kappa_);
            b.radius *= 1.0 + 3.0 * kappa_;
            cache_ = std::move(b);
        }
        return *cache_;
    }
    double gamma() const noexcept override { return 1.0 + eps_; }
    MebKind kind() const noexcept override { return MebKind::kernel; }
    std::unique_ptr<StreamingMeb> clone() const override { return std::make_unique<KernelMeb>(*this); }
    std::unique_ptr<StreamingMeb> fresh() const override { return std::make_unique<KernelMeb>(dim_, eps_); }
    std::size_t stored_points() const noexcept override { return pts_.size() / dim_; }
    bool empty() const noexcept override { return pts_.empty(); }
    void save(ByteWriter& w) const override
    {
        w.u8(static_cast<std::uint8_t>(kind()));
        w.size(dim_);
        w.f64(eps_);
        w.doubles(pts_);
        w.size(best_.size());
        for (auto b : best_)
            w.i64(b);
        for (double s : score_)
            w.f64(s);
    }
    static std::unique_ptr<StreamingMeb> read(ByteReader& r)
    {
        const std::size_t dim = r.size();
        const double eps = r.f64();
        auto m = std::make_unique<KernelMeb>(dim, eps);
        m->pts_ = r.doubles();
        const std::size_t n = r.size(16);
        if (n != m->net_.size() || m->pts_.size() % dim)
            throw FormatError("bad kernel MEB block");
        const auto stored = static_cast<std::int64_t>(m->pts_.size() / dim);
        for (auto& b : m->best_) {
            b = r.i64();
            if (b < -1 || b >= stored)
                throw FormatError("bad kernel MEB slot");
        }
        for (auto& s : m->score_)
            s = r.f64();
        return m;
    }

    std::vector<Point> kernel() const
    {
        std::vector<Point> out;
        for (std::size_t i = 0; i < pts_.size(); i += dim_)
            out.emplace_back(pts_.begin() + static_cast<std::ptrdiff_t>(i),
                             pts_.begin() + static_cast<std::ptrdiff_t>(i + dim_));
        return out;
    }

private:
    // drop points that are no longer extreme in any direction
    void compact()
    {
        const std::size_t n = pts_.size() / dim_;
        std::vector<std::ptrdiff_t> remap(n, -1);
        std::vector<double> kept;
        for (auto& b : best_) {
            if (b < 0)
                continue;
            auto& m = remap[static_cast<std::size_t>(b)];
            if (m < 0) {
                m = static_cast<std::ptrdiff_t>(kept.size() / dim_);
                kept.insert(kept.end(), pts_.begin() + b * static_cast<std::ptrdiff_t>(dim_),
                            pts_.begin() + (b + 1) * static_cast<std::ptrdiff_t>(dim_));
            }
            b = m;
        }
        pts_ = std::move(kept);
    }

    std::size_t dim_;
    double eps_;
    double kappa_;
    std::vector<Point> net_;
    std::vector<std::ptrdiff_t> best_;
    std::vector<double> score_;
    std::vector<double> pts_;
    mutable std::optional<Ball> cache_;
};

} // namespace

std::unique_ptr<StreamingMeb> StreamingMeb::load(ByteReader& r)
{
    switch (r.u8()) {
    case 0: return ExactMeb::read(r);
    case 1: return TwoMeb::read(r);
    case 2: return KernelMeb::read(r);
    default: throw FormatError("unknown streaming MEB kind");
    }
}

std::unique_ptr<StreamingMeb> make_exact_streaming_meb(std::size_t dim) { return std::make_unique<ExactMeb>(dim); }
std::unique_ptr<StreamingMeb> make_two_streaming_meb(std::size_t dim) { return std::make_unique<TwoMeb>(dim); }
std::unique_ptr<StreamingMeb> make_kernel_streaming_meb(std::size_t dim, double eps)
{
    return std::make_unique<KernelMeb>(dim, eps);
}

std::unique_ptr<StreamingMeb> make_streaming_meb(MebKind kind, std::size_t dim, double eps)
{
    switch (kind) {
    case MebKind::exact: return make_exact_streaming_meb(dim);
    case MebKind::two: return make_two_streaming_meb(dim);
    case MebKind::kernel: return make_kernel_streaming_meb(dim, eps);
    }
    throw InvalidArgument("unknown MEB kind");
}

std::vector<Point> kernel_points(const StreamingMeb& meb)
{
    if (auto k = dynamic_cast<const KernelMeb*>(&meb))
        return k->kernel();
    return {};
}

} // namespace frechet
