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
#include "frechet/meb.hpp"

#include <memory>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

struct Simplification {
    Curve pi;
    double certified = 0.0; // dfd(P, pi) <= certified
};

/// MEB used by the static paths: exact for small d, core-set iteration above.
inline constexpr std::size_t kExactMebMaxDim = 4;

/**
 * Static greedy: grow each piece while its enclosing-ball radius stays within
 * (1+eps)*delta, emit the ball centers. dfd(P, result) <= certified <=
 * (1+eps)*delta, and any curve shorter than the result is farther than delta.
 */
Simplification greedy_delta_simplification(const Curve& p, double delta, double eps);

/// (k,1+eps)-simplification by binary search over critical values.
Simplification static_k_simplification(const Curve& p, std::size_t k, double eps);

/// Exact optimal k-simplification distance by partition DP over exact MEB
/// radii. O(m^2) MEB computations; refused above kOptimalKLimit points.
inline constexpr std::size_t kOptimalKLimit = 64;
double optimal_k_oracle(const Curve& p, std::size_t k);

/**
 * Greedy streaming simplification with a pluggable gamma-MEB. The last point
 * of pi() tracks the live ball center.
 */
class GreedyStreamSimp {
public:
    GreedyStreamSimp(double delta, std::unique_ptr<StreamingMeb> prototype);
    GreedyStreamSimp(const GreedyStreamSimp& o);
    GreedyStreamSimp& operator=(const GreedyStreamSimp& o);
    GreedyStreamSimp(GreedyStreamSimp&&) noexcept = default;
    GreedyStreamSimp& operator=(GreedyStreamSimp&&) noexcept = default;

    void add(PointView p);
    void add_all(const Curve& c);

    const Curve& pi() const noexcept { return pi_; }
    double delta() const noexcept { return delta_; }
    const StreamingMeb& meb() const { return *meb_; }

    void save(ByteWriter& w) const;
    static GreedyStreamSimp load(ByteReader& r);

private:
    GreedyStreamSimp() = default;

    double delta_ = 0.0;
    std::unique_ptr<StreamingMeb> proto_;
    std::unique_ptr<StreamingMeb> meb_;
    Curve pi_;
};

/**
 * Leaping streaming simplification (at most k points). Warmup collects k+1
 * points with consecutive repeats dropped; after that delta only ever grows
 * by whole factors of inc.
 */
class LeapingStreamSimp {
public:
    LeapingStreamSimp(std::size_t k, std::unique_ptr<StreamingMeb> prototype, double init, double inc);

    void add(PointView p);

    bool warm() const noexcept { return greedy_ != nullptr; }
    /// Current simplification; during warmup the (deduplicated) prefix.
    const Curve& pi() const;
    double delta() const noexcept;
    /// lambda of the warmup points; 0 during warmup.
    double lambda() const noexcept { return lambda_; }
    std::size_t k() const noexcept { return k_; }
    double init() const noexcept { return init_; }
    double inc() const noexcept { return inc_; }
    double gamma() const noexcept { return proto_->gamma(); }
    std::size_t leaps() const noexcept { return leaps_; }
    std::size_t state_points() const noexcept;

    void save(ByteWriter& w) const;
    static LeapingStreamSimp load(ByteReader& r);

private:
    LeapingStreamSimp() = default;
    void leap_until_short();

    std::size_t k_ = 0;
    double init_ = 1.0, inc_ = 2.0;
    double lambda_ = 0.0;
    std::size_t leaps_ = 0;
    std::unique_ptr<StreamingMeb> proto_;
    Curve warmup_;
    std::unique_ptr<GreedyStreamSimp> greedy_;
};

/**
 * Runs ceil(log_{1+eps}(1/eps)) leaping instances (init=(1+eps)^i, inc=1/eps)
 * and reports the one with the smallest delta, L = (1+2/inc)*delta. `eps` is
 * the raw analysis parameter; see make_streaming_simplifier for the public one.
 */
class MultiLeapSimp {
public:
    MultiLeapSimp(std::size_t k, double eps, const StreamingMeb& prototype);

    void add(PointView p);
    Simplification current() const;

    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    const std::vector<LeapingStreamSimp>& instances() const noexcept { return inst_; }
    std::size_t state_points() const noexcept;

    void save(ByteWriter& w) const;
    static MultiLeapSimp load(ByteReader& r);

private:
    MultiLeapSimp() = default;

    std::size_t k_ = 0;
    double eps_ = 0.0;
    std::vector<LeapingStreamSimp> inst_;
};

/// Public streaming simplifier: the raw parameter is eps/8 so the analysis
/// constant fits inside 1+eps.
MultiLeapSimp make_streaming_simplifier(std::size_t k, double eps, const StreamingMeb& prototype);

} // namespace frechet
