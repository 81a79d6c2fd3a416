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
#include "frechet/grid.hpp"

#include "frechet/error.hpp"

#include <cmath>
#include <limits>

namespace frechet {

GridSpec GridSpec::make(double eps, double r, std::size_t dim)
{
    if (!(eps > 0) || !(r > 0) || !std::isfinite(eps * r))
        throw InvalidArgument("grid needs eps > 0 and r > 0");
    if (dim == 0) throw InvalidArgument("grid dimension must be positive");
    GridSpec g;
    g.cell = eps * r / std::sqrt(static_cast<double>(dim));
    g.dim = dim;
    if (!(g.cell > 0)) throw InvalidArgument("grid cell underflows");
    return g;
}

bool GridSpec::try_snap(double x, std::int32_t& out) const noexcept
{
    double t = std::floor(x / cell + 0.5);
    // leave headroom so that neighbours of a snapped index stay representable
    constexpr double lim = static_cast<double>(std::numeric_limits<std::int32_t>::max()) - 4;
    if (!(t >= -lim && t <= lim)) return false;
    out = static_cast<std::int32_t>(t);
    return true;
}

std::int32_t GridSpec::snap(double x) const
{
    std::int32_t v;
    if (!try_snap(x, v)) throw InvalidArgument("coordinate outside the grid index range");
    return v;
}

Point GridSpec::point(const std::int32_t* idx) const
{
    Point p(dim);
    for (std::size_t t = 0; t < dim; ++t) p[t] = coord(idx[t]);
    return p;
}

namespace {

struct BallWalk {
    PointView x;
    double r2;
    const GridSpec& g;
    std::vector<std::int32_t> lo, hi, cur;
    std::vector<std::int32_t>& out;

    void run(std::size_t t, double acc)
    {
        if (t == g.dim) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        for (std::int32_t i = lo[t]; i <= hi[t]; ++i) {
            double diff = g.coord(i) - x[t];
            double a = acc + diff * diff;
            // partial sums only grow, but the final membership test below is
            // the same expression point_distance uses
            if (a > r2 * (1 + 1e-12)) continue;
            cur[t] = i;
            run(t + 1, a);
        }
    }
};

} // namespace

std::vector<std::int32_t> grid_points_in_ball(PointView x, double radius, const GridSpec& g)
{
    if (x.size() != g.dim) throw DimensionMismatch("point dimension does not match grid");
    if (!(radius >= 0)) throw InvalidArgument("ball radius must be non-negative");
    std::vector<std::int32_t> cand;
    BallWalk w{x, radius * radius, g, {}, {}, std::vector<std::int32_t>(g.dim), cand};
    w.lo.resize(g.dim);
    w.hi.resize(g.dim);
    for (std::size_t t = 0; t < g.dim; ++t) {
        w.lo[t] = g.snap(x[t] - radius) - 1;
        w.hi[t] = g.snap(x[t] + radius) + 1;
    }
    w.run(0, 0.0);
    // exact closed-ball test with the library distance
    std::vector<std::int32_t> out;
    out.reserve(cand.size());
    for (std::size_t i = 0; i < cand.size(); i += g.dim) {
        Point p = g.point(cand.data() + i);
        if (point_distance(p, x) <= radius) out.insert(out.end(), cand.begin() + i, cand.begin() + i + g.dim);
    }
    return out;
}

std::size_t GridKey::hash() const noexcept
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ len_;
    for (std::size_t i = 0; i < len_; ++i) {
        h ^= static_cast<std::uint32_t>(v_[i]);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 32;
    }
    return static_cast<std::size_t>(h);
}

bool snap_curve(const Curve& q, const GridSpec& g, GridKey& out)
{
    out = GridKey{};
    if (q.dim() != g.dim) throw DimensionMismatch("query dimension does not match grid");
    if (q.size() * g.dim > GridKey::kMaxKey) return false;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t t = 0; t < g.dim; ++t) {
            std::int32_t v;
            if (!g.try_snap(q[i][t], v)) return false;
            out.push(v);
        }
    return true;
}

Curve key_curve(const GridKey& key, const GridSpec& g)
{
    Curve c(g.dim);
    c.reserve(key.size() / g.dim);
    for (std::size_t i = 0; i < key.size(); i += g.dim) c.push_back(g.point(key.data() + i));
    return c;
}

} // namespace frechet
