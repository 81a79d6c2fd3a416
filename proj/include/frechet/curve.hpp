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

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace frechet {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Euclidean distance. Every distance in the library goes through this
/// function so that values computed along different routes are bit-equal.
double point_distance(PointView a, PointView b) noexcept;

/**
 * A polygonal curve: an ordered, non-empty sequence of points in R^d,
 * stored row-major in one flat buffer.
 *
 * Indices are 0-based. A default-constructed curve is empty and has
 * dimension 0; it is only a placeholder and most algorithms reject it.
 */
class Curve {
public:
    Curve() = default;
    explicit Curve(std::size_t dim);
    Curve(std::size_t dim, std::vector<double> coords);
    Curve(std::initializer_list<std::initializer_list<double>> points);

    static Curve from_points(const std::vector<Point>& points);

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return data_.empty(); }

    PointView operator[](std::size_t i) const noexcept
    {
        return {data_.data() + i * dim_, dim_};
    }
    PointView front() const noexcept { return (*this)[0]; }
    PointView back() const noexcept { return (*this)[size() - 1]; }

    void push_back(PointView p);
    void pop_back();
    void set(std::size_t i, PointView p);
    void reserve(std::size_t n) { data_.reserve(n * dim_); }
    void clear() noexcept { data_.clear(); }

    /// Points [first, last], inclusive on both ends.
    Curve subcurve(std::size_t first, std::size_t last) const;
    Curve concat(const Curve& other) const;

    const std::vector<double>& coords() const noexcept { return data_; }

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

/// Throws InvalidArgument for empty curves and DimensionMismatch when the
/// dimensions differ.
void require_compatible(const Curve& a, const Curve& b);

/// Drops every point that is exactly equal to its predecessor. The discrete
/// Fréchet distance to the original curve is zero.
Curve collapse_duplicates(const Curve& c);

/// Reads the curve text format: one point per line, whitespace separated
/// coordinates, `#` comment lines. Dimension is fixed by the first data line.
Curve read_curve(std::istream& in);
Curve read_curve_file(const std::string& path);

/// Writes the curve text format with shortest round-trip float formatting.
void write_curve(std::ostream& out, const Curve& c);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

} // namespace frechet
