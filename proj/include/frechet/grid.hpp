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

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace frechet {

/// Uniform grid through the origin. Grid point coordinates are always
/// computed as index * cell so that every route yields the same doubles.
struct GridSpec {
    double cell = 0;
    std::size_t dim = 0;

    /// Edge length eps * r / sqrt(d).
    static GridSpec make(double eps, double r, std::size_t dim);

    double coord(std::int32_t idx) const noexcept { return static_cast<double>(idx) * cell; }
    /// Nearest grid coordinate without the 32-bit index restriction; equal to
    /// coord(snap(x)) whenever the latter is defined.
    double snap_coord(double x) const noexcept { return std::floor(x / cell + 0.5) * cell; }
    /// Nearest grid index, ties rounded up. Throws InvalidArgument when the
    /// index does not fit in 32 bits.
    std::int32_t snap(double x) const;
    /// Like snap but reports out-of-range instead of throwing.
    bool try_snap(double x, std::int32_t& out) const noexcept;

    Point point(const std::int32_t* idx) const;
};

/// Grid points of the closed ball B(x, R), as flat index tuples (dim values
/// per point) in lexicographic order.
std::vector<std::int32_t> grid_points_in_ball(PointView x, double radius, const GridSpec& g);

/// Quantized grid curve: up to kMaxKey indices (curve length times dim).
class GridKey {
public:
    static constexpr std::size_t kMaxKey = 12;

    GridKey() = default;

    std::size_t size() const noexcept { return len_; }
    std::int32_t operator[](std::size_t i) const noexcept { return v_[i]; }
    const std::int32_t* data() const noexcept { return v_.data(); }

    void push(std::int32_t x) noexcept { v_[len_++] = x; }
    void pop(std::size_t n = 1) noexcept { len_ = static_cast<std::uint8_t>(len_ - n); }
    void append(const std::int32_t* xs, std::size_t n) noexcept
    {
        for (std::size_t i = 0; i < n; ++i) push(xs[i]);
    }
    /// The last `dim` values.
    const std::int32_t* tail(std::size_t dim) const noexcept { return v_.data() + len_ - dim; }

    friend bool operator==(const GridKey& a, const GridKey& b) noexcept
    {
        if (a.len_ != b.len_) return false;
        for (std::size_t i = 0; i < a.len_; ++i)
            if (a.v_[i] != b.v_[i]) return false;
        return true;
    }
    friend std::strong_ordering operator<=>(const GridKey& a, const GridKey& b) noexcept
    {
        std::size_t n = a.len_ < b.len_ ? a.len_ : b.len_;
        for (std::size_t i = 0; i < n; ++i)
            if (auto c = a.v_[i] <=> b.v_[i]; c != 0) return c;
        return a.len_ <=> b.len_;
    }

    std::size_t hash() const noexcept;

private:
    std::array<std::int32_t, kMaxKey> v_{};
    std::uint8_t len_ = 0;
};

struct GridKeyHash {
    std::size_t operator()(const GridKey& k) const noexcept { return k.hash(); }
};

/// Rounds every point of q to its nearest grid point. Returns false when some
/// coordinate falls outside the 32-bit index range or the key would not fit.
bool snap_curve(const Curve& q, const GridSpec& g, GridKey& out);

/// The curve spelled by a key.
Curve key_curve(const GridKey& key, const GridSpec& g);

} // namespace frechet
