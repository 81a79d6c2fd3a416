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
#pragma once

#include "frechet/curve.hpp"

#include <utility>
#include <vector>

namespace frechet {

/// One well-separated pair of a 1-D point set, stored as index ranges into
/// the sorted distinct values.
struct WspdPair {
    std::size_t a_lo, a_hi; // [a_lo, a_hi)
    std::size_t b_lo, b_hi;
};

/**
 * 1/delta-WSPD of sorted distinct reals via a balanced split tree. Every
 * unordered pair of distinct values lands in exactly one returned pair, and
 * max(diam A, diam B) <= delta * dist(A, B).
 */
std::vector<WspdPair> wspd_1d(const std::vector<double>& sorted_values, double delta = 0.5);

struct CriticalValues {
    std::vector<double> values; // sorted, distinct, positive
    bool degenerate = false;    // all input points equal
};

/**
 * Candidate distances M: for every pair x != y of the input and every
 * beta in [a, b] some alpha in M has alpha <= beta*|x-y| <= (1+eps)*alpha.
 * `points` is a flat row-major list of points of dimension `dim`.
 */
CriticalValues critical_values(const std::vector<double>& points, std::size_t dim, double a, double b,
                               double eps);

/// Convenience overload over the points of one or two curves.
CriticalValues critical_values(const Curve& c, double a, double b, double eps);
CriticalValues critical_values(const Curve& p, const Curve& q, double a, double b, double eps);

} // namespace frechet
