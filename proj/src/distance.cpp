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
#include "frechet/distance.hpp"

#include "frechet/error.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace frechet {

double discrete_frechet(const Curve& p, const Curve& q)
{
    require_compatible(p, q);
    const std::size_t n = p.size(), m = q.size();
    std::vector<double> row(m);
    // row j holds D[i][j] for the current i
    for (std::size_t i = 0; i < n; ++i) {
        double left = 0.0; // D[i][j-1]
        double diag = 0.0; // D[i-1][j-1]
        for (std::size_t j = 0; j < m; ++j) {
            const double c = point_distance(p[i], q[j]);
            double v;
            if (i == 0 && j == 0)
                v = c;
            else if (i == 0)
                v = std::max(left, c);
            else if (j == 0)
                v = std::max(row[0], c);
            else
                v = std::max(std::min({row[j], left, diag}), c);
            diag = row[j];
            row[j] = v;
            left = v;
        }
    }
    return row[m - 1];
}

double discrete_frechet_parallel(const Curve& p, const Curve& q)
{
    require_compatible(p, q);
    const long n = static_cast<long>(p.size()), m = static_cast<long>(q.size());
    // three rotating anti-diagonals indexed by i
    std::vector<double> d0(n, 0.0), d1(n, 0.0), d2(n, 0.0);
    const double inf = std::numeric_limits<double>::infinity();
    for (long s = 0; s <= n + m - 2; ++s) {
        const long lo = std::max(0L, s - (m - 1));
        const long hi = std::min(n - 1, s);
        // d2 = diagonal s, d1 = s-1, d0 = s-2
#pragma omp parallel for schedule(static) if (hi - lo > 256)
        for (long i = lo; i <= hi; ++i) {
            const long j = s - i;
            const double c = point_distance(p[i], q[j]);
            if (i == 0 && j == 0) {
                d2[i] = c;
                continue;
            }
            const double up = (i > 0) ? d1[i - 1] : inf;          // D[i-1][j]
            const double left = (j > 0) ? d1[i] : inf;            // D[i][j-1]
            const double diag = (i > 0 && j > 0) ? d0[i - 1] : inf; // D[i-1][j-1]
            d2[i] = std::max(std::min({up, left, diag}), c);
        }
        std::swap(d0, d1);
        std::swap(d1, d2);
    }
    return d1[n - 1];
}

namespace {

struct WalkSearch {
    const Curve& p;
    const Curve& q;
    double best = std::numeric_limits<double>::infinity();

    // i, j: first unmatched indices; cost: max over pieces so far
    void run(std::size_t i, std::size_t j, double cost)
    {
        const std::size_t n = p.size(), m = q.size();
        if (i == n && j == m) {
            best = std::min(best, cost);
            return;
        }
        if (i == n || j == m)
            return;
        // piece (P[i], Q[j..j+t])
        double piece = 0.0;
        for (std::size_t t = j; t < m; ++t) {
            piece = std::max(piece, point_distance(p[i], q[t]));
            run(i + 1, t + 1, std::max(cost, piece));
        }
        // piece (P[i..i+t], Q[j]) with at least two points of P
        piece = point_distance(p[i], q[j]);
        for (std::size_t t = i + 1; t < n; ++t) {
            piece = std::max(piece, point_distance(p[t], q[j]));
            run(t + 1, j + 1, std::max(cost, piece));
        }
    }
};

} // namespace

double brute_force_frechet(const Curve& p, const Curve& q)
{
    require_compatible(p, q);
    if (p.size() * q.size() > kBruteForceLimit)
        throw InvalidArgument("brute_force_frechet: instance too large");
    WalkSearch w{p, q};
    w.run(0, 0, 0.0);
    return w.best;
}

double half_min_edge(const Curve& p)
{
    if (p.size() < 2)
        throw InvalidArgument("half_min_edge needs at least two points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        best = std::min(best, point_distance(p[i], p[i + 1]));
    return best / 2.0;
}

std::optional<double> small_distance(const Curve& x, const Curve& y)
{
    require_compatible(x, y);
    const double lambda = half_min_edge(x);
    const std::size_t m2 = y.size();
    std::size_t j = 0;
    double delta = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (j >= m2 || point_distance(x[i], y[j]) >= lambda)
            return std::nullopt;
        double dij;
        while (j < m2 && (dij = point_distance(x[i], y[j])) < lambda) {
            delta = std::max(delta, dij);
            ++j;
        }
    }
    // the sweep must have consumed all of Y, otherwise Y has a tail that no
    // point of X is close to
    if (j < m2)
        return std::nullopt;
    return delta;
}

double point_curve_distance(PointView a, const Curve& q)
{
    double r = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        r = std::max(r, point_distance(a, q[i]));
    return r;
}

} // namespace frechet
