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

#include "frechet/cover.hpp"
#include "frechet/curve.hpp"
#include "frechet/grid.hpp"
#include "frechet/simplify.hpp"
#include "frechet/symmetric.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

/**
 * Grid covers of one observed curve for every length 1..k, sharing one grid
 * and r. layer(j) holds exactly the j-point grid curves within (1+eps)r of
 * the points read so far, each with its distance to them.
 */
class LayeredCover {
public:
    LayeredCover() = default;
    /// Nothing read yet.
    LayeredCover(std::size_t k, double r, double eps, std::size_t dim);

    /// Static construction over a whole curve.
    static LayeredCover build(const Curve& p, std::size_t k, double r, double eps, bool parallel = true);

    /// Reads one more point. The first call creates the covers of a single
    /// point; later calls extend the previous covers.
    void extend(PointView p, bool parallel = true);

    std::size_t k() const noexcept { return k_; }
    std::size_t dim() const noexcept { return grid_.dim; }
    double r() const noexcept { return r_; }
    double eps() const noexcept { return eps_; }
    double radius() const noexcept { return radius_; }
    const GridSpec& grid() const noexcept { return grid_; }
    bool started() const noexcept { return started_; }

    /// Curves of length len, 1 <= len <= k.
    const CoverMap& layer(std::size_t len) const { return layers_.at(len - 1); }
    /// True when no k-point curve is within (1+eps)r (then no shorter one is).
    bool empty() const noexcept { return layers_.empty() || layers_.back().empty(); }
    std::size_t entries() const noexcept;

    /// Smallest stored key of the given length.
    std::optional<GridKey> smallest(std::size_t len) const;

    /// Decision query against the k-point layer: dist(W) plus the snap gap.
    std::optional<double> probe(const Curve& q) const;

    friend bool operator==(const LayeredCover& a, const LayeredCover& b);

    void save(ByteWriter& w) const;
    static LayeredCover load(ByteReader& r);

private:
    std::size_t k_ = 0;
    double r_ = 0, eps_ = 0, radius_ = 0;
    GridSpec grid_;
    bool started_ = false;
    std::vector<CoverMap> layers_;
};

/// StreamCover: reads p point by point from an empty cover.
LayeredCover stream_cover(const Curve& p, std::size_t k, double r, double eps);

/**
 * Leaping streaming cover. Warmup gathers k+1 points without consecutive
 * repeats and sets r = init * lambda; afterwards, whenever the cover empties,
 * it restarts from (smallest stored k-point curve) + p with r *= inc.
 */
class LeapingCover {
public:
    LeapingCover() = default;
    LeapingCover(std::size_t k, double eps, double init, double inc, std::size_t dim, bool keep_base = false);

    void add(PointView p, bool parallel = true);

    bool warm() const noexcept { return warm_; }
    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    double init() const noexcept { return init_; }
    double inc() const noexcept { return inc_; }
    double r() const noexcept { return cover_.r(); }
    /// Number of leaps so far; r = init * lambda * inc^h.
    std::size_t h() const noexcept { return h_; }
    double lambda() const noexcept { return lambda_; }
    const LayeredCover& cover() const noexcept { return cover_; }
    const Curve& warmup() const noexcept { return warmup_; }
    /// The curve the cover currently describes (only with keep_base).
    const Curve& base() const noexcept { return base_; }

    std::optional<double> probe(const Curve& q) const { return cover_.probe(q); }

    void save(ByteWriter& w) const;
    static LeapingCover load(ByteReader& r);

private:
    std::size_t k_ = 0;
    double eps_ = 0, init_ = 1, inc_ = 2, lambda_ = 0;
    std::size_t h_ = 0;
    bool warm_ = false, keep_base_ = false;
    std::size_t dim_ = 0;
    Curve warmup_;
    Curve base_;
    LayeredCover cover_;
};

/// Rough upper estimate of the curves one leaping cover may hold.
double stream_cover_estimate(std::size_t k, double e, std::size_t dim);
/// StreamingOracle refuses parameters whose estimate exceeds this.
inline constexpr double kStreamEntryLimit = 5e7;

struct StreamTrace {
    double value = 0;
    int branch = 0;       // 0: warmup (exact), 1: far, 2: near, 3: banded
    double sym = 0;       // symmetric answer against the simplification
    double L = 0;
    std::size_t leaper = 0;
    std::size_t band = 0; // leap count j of the selected leaper
    int probes = 0;
};

/**
 * Streaming (1+eps)-distance oracle for k-point queries against the stream
 * read so far: a streaming simplification, a symmetric oracle over it
 * (rebuilt lazily) and t leaping covers with inc = 2^t >= 25/e.
 */
class StreamingOracle {
public:
    StreamingOracle() = default;
    StreamingOracle(std::size_t k, double eps, std::size_t dim);

    void add(PointView p);
    void add_all(const Curve& c);

    double query(const Curve& q) { return trace(q).value; }
    StreamTrace trace(const Curve& q);

    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t points_read() const noexcept { return n_; }
    bool warm() const noexcept { return !leapers_.empty() && leapers_[0].warm(); }
    /// Cover parameter e of the leapers, their count t and inc = 2^t.
    double cover_eps() const noexcept { return eps_ / 32; }
    int t() const noexcept { return t_; }
    double inc() const noexcept { return std::ldexp(1.0, t_); }
    const std::vector<LeapingCover>& leapers() const noexcept { return leapers_; }
    const MultiLeapSimp& simplifier() const { return *simp_; }
    /// lambda of the first k+1 distinct-consecutive points (0 in warmup).
    double base_scale() const noexcept;

    /// Stored cover entries plus simplifier points; independent of the
    /// stream length.
    std::size_t state_size() const noexcept;

    void save(ByteWriter& w) const;
    static StreamingOracle load(ByteReader& r);

private:
    std::size_t k_ = 0;
    double eps_ = 0;
    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    int t_ = 0;
    std::optional<MultiLeapSimp> simp_;
    std::vector<LeapingCover> leapers_;
    std::optional<SymmetricOracle> sym_;
    Curve sym_of_;
};

} // namespace frechet
