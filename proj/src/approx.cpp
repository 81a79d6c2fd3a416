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
#include "frechet/approx.hpp"

#include "frechet/critical.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"

namespace frechet {

Curve coarsen(const Curve& c, double radius)
{
    Curve out(c.dim());
    out.push_back(c[0]);
    std::size_t anchor = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (point_distance(c[anchor], c[i]) > radius) {
            out.push_back(c[i]);
            anchor = i;
        }
    }
    return out;
}

bool decision_approx(const Curve& p, const Curve& q, double f, double scale)
{
    require_compatible(p, q);
    if (!(f > 1.0))
        throw InvalidArgument("decision_approx: f must exceed 1");
    if (!(scale > 0.0))
        throw InvalidArgument("decision_approx: scale must be positive");
    // coarsening moves dfd by at most 2s; YES side lands <= 1+2s, NO side
    // >= 1+3s, so split at 1+2.5s
    const double s = (f - 1.0) / 5.0;
    const Curve cp = coarsen(p, s * scale);
    const Curve cq = coarsen(q, s * scale);
    return discrete_frechet(cp, cq) <= scale * (1.0 + 2.5 * s);
}

double crude_approx(const Curve& p, const Curve& q, double f)
{
    require_compatible(p, q);
    if (!(f >= 1.0))
        throw InvalidArgument("crude_approx: f must be at least 1");
    if (f <= 2.0)
        return discrete_frechet(p, q);
    if (collapse_duplicates(p) == collapse_duplicates(q))
        return 0.0;

    const CriticalValues cv = critical_values(p, q, 1.0, 1.0, 0.5);
    const auto& m = cv.values;
    if (m.empty())
        return 0.0; // unreachable: distinct curves have distinct points
    const double fh = f / 2.0;
    auto yes = [&](std::size_t i) { return decision_approx(p, q, fh, 2.0 * m[i]); };

    if (yes(0))
        return 2.0 * m[0] * fh;
    // lo is a NO entry, hi a YES entry
    std::size_t lo = 0, hi = m.size() - 1;
    if (!yes(hi))
        throw ContractViolation("crude_approx: largest critical value answered NO");
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (yes(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 2.0 * m[hi] * fh;
}

} // namespace frechet
