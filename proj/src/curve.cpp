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
#include "frechet/curve.hpp"

#include "frechet/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace frechet {

double point_distance(PointView a, PointView b) noexcept
{
    double s = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        const double diff = a[t] - b[t];
        s += diff * diff;
    }
    return std::sqrt(s);
}

Curve::Curve(std::size_t dim) : dim_(dim)
{
    if (dim == 0)
        throw InvalidArgument("curve dimension must be at least 1");
}

Curve::Curve(std::size_t dim, std::vector<double> coords) : dim_(dim), data_(std::move(coords))
{
    if (dim == 0)
        throw InvalidArgument("curve dimension must be at least 1");
    if (data_.size() % dim != 0)
        throw InvalidArgument("coordinate count is not a multiple of the dimension");
    for (double v : data_)
        if (!std::isfinite(v))
            throw InvalidArgument("non-finite coordinate");
}

Curve::Curve(std::initializer_list<std::initializer_list<double>> points)
{
    for (const auto& p : points) {
        if (dim_ == 0) {
            if (p.size() == 0)
                throw InvalidArgument("curve dimension must be at least 1");
            dim_ = p.size();
        }
        push_back(PointView(p.begin(), p.size()));
    }
}

Curve Curve::from_points(const std::vector<Point>& points)
{
    if (points.empty())
        throw InvalidArgument("empty point list");
    Curve c(points.front().size());
    c.reserve(points.size());
    for (const auto& p : points)
        c.push_back(p);
    return c;
}

void Curve::push_back(PointView p)
{
    if (p.size() != dim_)
        throw DimensionMismatch("point has dimension " + std::to_string(p.size()) + ", curve has " +
                                std::to_string(dim_));
    for (double v : p)
        if (!std::isfinite(v))
            throw InvalidArgument("non-finite coordinate");
    data_.insert(data_.end(), p.begin(), p.end());
}

void Curve::pop_back()
{
    if (empty())
        throw InvalidArgument("pop_back on empty curve");
    data_.resize(data_.size() - dim_);
}

void Curve::set(std::size_t i, PointView p)
{
    if (p.size() != dim_)
        throw DimensionMismatch("point dimension mismatch");
    std::copy(p.begin(), p.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
}

Curve Curve::subcurve(std::size_t first, std::size_t last) const
{
    if (first > last || last >= size())
        throw InvalidArgument("subcurve range [" + std::to_string(first) + ", " + std::to_string(last) +
                              "] out of bounds for length " + std::to_string(size()));
    Curve c;
    c.dim_ = dim_;
    c.data_.assign(data_.begin() + static_cast<std::ptrdiff_t>(first * dim_),
                   data_.begin() + static_cast<std::ptrdiff_t>((last + 1) * dim_));
    return c;
}

Curve Curve::concat(const Curve& other) const
{
    if (empty())
        return other;
    if (other.empty())
        return *this;
    if (other.dim_ != dim_)
        throw DimensionMismatch("concat of curves with different dimensions");
    Curve c = *this;
    c.data_.insert(c.data_.end(), other.data_.begin(), other.data_.end());
    return c;
}

void require_compatible(const Curve& a, const Curve& b)
{
    if (a.empty() || b.empty())
        throw InvalidArgument("empty curve");
    if (a.dim() != b.dim())
        throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

Curve collapse_duplicates(const Curve& c)
{
    if (c.empty())
        return c;
    Curve out(c.dim());
    out.reserve(c.size());
    out.push_back(c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) {
        auto prev = c[i - 1];
        auto cur = c[i];
        if (!std::equal(prev.begin(), prev.end(), cur.begin()))
            out.push_back(cur);
    }
    return out;
}

Curve read_curve(std::istream& in)
{
    std::vector<double> coords;
    std::size_t dim = 0;
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        row.clear();
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
                throw FormatError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
            row.push_back(v);
        }
        if (dim == 0)
            dim = row.size();
        else if (row.size() != dim)
            throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                              " coordinates, got " + std::to_string(row.size()));
        coords.insert(coords.end(), row.begin(), row.end());
    }
    if (dim == 0)
        throw FormatError("curve file has no points");
    return Curve(dim, std::move(coords));
}

Curve read_curve_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    return read_curve(in);
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_curve(std::ostream& out, const Curve& c)
{
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c[i];
        for (std::size_t t = 0; t < p.size(); ++t) {
            if (t)
                out << ' ';
            out << format_double(p[t]);
        }
        out << '\n';
    }
}

} // namespace frechet
