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

namespace frechet {

/**
 * Gap decision for the distance threshold `scale` (1 means pre-scaled
 * curves): true when dfd(P,Q) <= scale, false when dfd(P,Q) >= f*scale,
 * either answer in between.
 */
bool decision_approx(const Curve& p, const Curve& q, double f, double scale = 1.0);

/// Greedy coarsening: a point is dropped when it lies within `radius` of the
/// last kept point. dfd(c, coarsen(c, radius)) <= radius.
Curve coarsen(const Curve& c, double radius);

/// Returns v with dfd(P,Q) <= v <= f*dfd(P,Q). Exact for f <= 2.
double crude_approx(const Curve& p, const Curve& q, double f);

} // namespace frechet
