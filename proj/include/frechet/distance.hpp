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

#include <optional>

namespace frechet {

/// Exact discrete Fréchet distance, O(m1*m2*d) time, O(m2) memory.
double discrete_frechet(const Curve& p, const Curve& q);

/// Same value as discrete_frechet, computed by anti-diagonal wavefront with
/// OpenMP. Bit-equal to the serial version since both evaluate the same
/// recurrence on the same operands.
double discrete_frechet_parallel(const Curve& p, const Curve& q);

/// Instances larger than this (m1*m2) are refused by brute_force_frechet.
inline constexpr std::size_t kBruteForceLimit = 64;

/// Literal minimum over all paired walks. Exponential; for cross-checking only.
double brute_force_frechet(const Curve& p, const Curve& q);

/// lambda(P): half the shortest edge length. Needs at least two points.
double half_min_edge(const Curve& p);

/// Greedy one-to-many sweep. Returns dfd(X,Y) when it is below lambda(X),
/// otherwise nullopt (which implies dfd(X,Y) >= lambda(X)).
std::optional<double> small_distance(const Curve& x, const Curve& y);

/// max_i ||a - q[i]||, the distance between a single point and a curve.
double point_curve_distance(PointView a, const Curve& q);

} // namespace frechet
