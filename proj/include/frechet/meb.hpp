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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

struct Ball {
    Point center;
    double radius = 0.0;

    bool contains(PointView p, double rel_tol = 0.0) const
    {
        return point_distance(center, p) <= radius * (1.0 + rel_tol);
    }
};

/// Minimum enclosing ball, move-to-front Welzl. Any dimension; expected time
/// grows like (d+1)! so keep d small. The radius is the true max distance
/// from the computed center, so every point is contained.
Ball exact_meb(const Curve& points);

/// Core-set iteration: ceil(1/eps^2) steps toward the farthest point.
/// Radius <= (1+eps) * optimal.
Ball static_approx_meb(const Curve& points, double eps);

enum class MebKind : std::uint8_t { exact = 0, two = 1, kernel = 2 };

MebKind parse_meb_kind(const std::string& s);
std::string to_string(MebKind k);

/**
 * Streaming gamma-MEB. Every fed point lies in current(); current().radius
 * is at most gamma() times the optimal radius of the fed points.
 */
class StreamingMeb {
public:
    virtual ~StreamingMeb() = default;

    virtual void add(PointView p) = 0;
    virtual Ball current() const = 0;
    virtual double gamma() const noexcept = 0;
    virtual MebKind kind() const noexcept = 0;
    virtual std::unique_ptr<StreamingMeb> clone() const = 0;
    /// A fresh, empty instance with the same parameters.
    virtual std::unique_ptr<StreamingMeb> fresh() const = 0;
    /// Number of stored points (state size).
    virtual std::size_t stored_points() const noexcept = 0;
    virtual bool empty() const noexcept = 0;

    virtual void save(ByteWriter& w) const = 0;
    static std::unique_ptr<StreamingMeb> load(ByteReader& r);
};

/// Stores every point; current() is the exact MEB. gamma = 1.
std::unique_ptr<StreamingMeb> make_exact_streaming_meb(std::size_t dim);
/// Center at the first point, radius = farthest distance. gamma = 2.
std::unique_ptr<StreamingMeb> make_two_streaming_meb(std::size_t dim);
/// Directional-extreme kernel at eps/5, gamma = 1+eps. eps in (0, 1/2).
std::unique_ptr<StreamingMeb> make_kernel_streaming_meb(std::size_t dim, double eps);

std::unique_ptr<StreamingMeb> make_streaming_meb(MebKind kind, std::size_t dim, double eps);

/// Unit directions used by the kernel variant: symmetric under negation, and
/// every unit vector is within angle theta of one of them.
std::vector<Point> direction_net(std::size_t dim, double theta);

/// The kernel points currently held by a kernel-variant MEB (empty otherwise).
std::vector<Point> kernel_points(const StreamingMeb& meb);

} // namespace frechet
