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
#include "frechet/critical.hpp"

#include "frechet/error.hpp"

#include <algorithm>
#include <cmath>

namespace frechet {

namespace {

struct Node {
    std::size_t lo, hi; // [lo, hi) into the sorted values
    int left = -1, right = -1;
};

class SplitTree {
public:
    explicit SplitTree(const std::vector<double>& v) : v_(v)
    {
        nodes_.reserve(2 * v.size());
        build(0, v.size());
    }

    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    double diam(int i) const { return v_[node(i).hi - 1] - v_[node(i).lo]; }
    bool leaf(int i) const { return node(i).left < 0; }

    // distance between the two (disjoint, ordered) intervals
    double gap(int a, int b) const
    {
        const Node& x = node(a);
        const Node& y = node(b);
        if (v_[x.hi - 1] < v_[y.lo])
            return v_[y.lo] - v_[x.hi - 1];
        return v_[x.lo] - v_[y.hi - 1];
    }

private:
    int build(std::size_t lo, std::size_t hi)
    {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back({lo, hi});
        if (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const int l = build(lo, mid);
            const int r = build(mid, hi);
            nodes_[static_cast<std::size_t>(id)].left = l;
            nodes_[static_cast<std::size_t>(id)].right = r;
        }
        return id;
    }

    const std::vector<double>& v_;
    std::vector<Node> nodes_;
};

void find_pairs(const SplitTree& t, int a, int b, double delta, std::vector<WspdPair>& out)
{
    if (std::max(t.diam(a), t.diam(b)) <= delta * t.gap(a, b)) {
        out.push_back({t.node(a).lo, t.node(a).hi, t.node(b).lo, t.node(b).hi});
        return;
    }
    // split the wider one; two leaves are always separated since values are distinct
    if (t.leaf(b) || (!t.leaf(a) && t.diam(a) >= t.diam(b))) {
        find_pairs(t, t.node(a).left, b, delta, out);
        find_pairs(t, t.node(a).right, b, delta, out);
    } else {
        find_pairs(t, a, t.node(b).left, delta, out);
        find_pairs(t, a, t.node(b).right, delta, out);
    }
}

void collect(const SplitTree& t, int u, double delta, std::vector<WspdPair>& out)
{
    if (t.leaf(u))
        return;
    find_pairs(t, t.node(u).left, t.node(u).right, delta, out);
    collect(t, t.node(u).left, delta, out);
    collect(t, t.node(u).right, delta, out);
}

} // namespace

std::vector<WspdPair> wspd_1d(const std::vector<double>& sorted_values, double delta)
{
    if (!(delta > 0.0))
        throw InvalidArgument("wspd_1d: delta must be positive");
    for (std::size_t i = 1; i < sorted_values.size(); ++i)
        if (!(sorted_values[i - 1] < sorted_values[i]))
            throw InvalidArgument("wspd_1d: values must be sorted and distinct");
    std::vector<WspdPair> out;
    if (sorted_values.size() < 2)
        return out;
    SplitTree t(sorted_values);
    collect(t, 0, delta, out);
    return out;
}

CriticalValues critical_values(const std::vector<double>& points, std::size_t dim, double a, double b,
                               double eps)
{
    if (dim == 0 || points.size() % dim != 0)
        throw InvalidArgument("critical_values: bad point buffer");
    if (!(a > 0.0) || !(a <= b))
        throw InvalidArgument("critical_values: need 0 < a <= b");
    if (!(eps > 0.0))
        throw InvalidArgument("critical_values: eps must be positive");
    const std::size_t n = points.size() / dim;
    if (n < 2)
        throw InvalidArgument("critical_values: need at least two points");

    const double base = std::log1p(eps);
    // one extra step on either side absorbs rounding in floor(log)
    const long q_lo = static_cast<long>(std::floor(std::log(a / 2.0) / base)) - 1;
    const long q_hi = static_cast<long>(std::floor(std::log(2.0 * b * std::sqrt(double(dim))) / base)) + 1;

    CriticalValues res;
    std::vector<double> reps;
    std::vector<double> coord(n);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t p = 0; p < n; ++p)
            coord[p] = points[p * dim + i];
        std::sort(coord.begin(), coord.end());
        coord.erase(std::unique(coord.begin(), coord.end()), coord.end());
        for (const auto& pr : wspd_1d(coord, 0.5))
            reps.push_back(coord[pr.b_lo] - coord[pr.a_lo]);
    }
    if (reps.empty()) {
        res.degenerate = true;
        return res;
    }
    res.values.reserve(reps.size() * static_cast<std::size_t>(q_hi - q_lo + 1));
    for (double r : reps) {
        for (long q = q_lo; q <= q_hi; ++q)
            res.values.push_back(r * std::pow(1.0 + eps, static_cast<double>(q)));
    }
    std::sort(res.values.begin(), res.values.end());
    res.values.erase(std::unique(res.values.begin(), res.values.end()), res.values.end());
    return res;
}

CriticalValues critical_values(const Curve& c, double a, double b, double eps)
{
    return critical_values(c.coords(), c.dim(), a, b, eps);
}

CriticalValues critical_values(const Curve& p, const Curve& q, double a, double b, double eps)
{
    require_compatible(p, q);
    std::vector<double> all = p.coords();
    all.insert(all.end(), q.coords().begin(), q.coords().end());
    return critical_values(all, p.dim(), a, b, eps);
}

} // namespace frechet
