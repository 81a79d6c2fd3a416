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
#include "frechet/general.hpp"
#include "frechet/simplify.hpp"

#include <cstddef>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

/**
 * Shape shared by the zoom hierarchy and the subcurve oracle. The curve is
 * padded (conceptually) to M = 2^ceil(log2 m) points. Level t has blocks of
 * M/2^(t-1) points; within its block every point owns one subcurve: the
 * suffix of the left half starting at it, or the prefix of the right half
 * ending at it. Levels stop once blocks hold fewer than k+2 points. Entries
 * whose block split lies at or past the last real point are never queried
 * and are not built.
 *
 * Indices here are 0-based.
 */
struct SplitLayout {
    std::size_t m = 0, k = 0, padded = 0, levels = 0;

    static SplitLayout make(std::size_t m, std::size_t k);
    std::size_t half(std::size_t level) const noexcept { return padded >> level; }
    /// Inclusive range [first, last] owned by point p at the given level
    /// (1-based level), or false when that entry is unused.
    bool range(std::size_t level, std::size_t p, std::size_t& first, std::size_t& last) const noexcept;

    struct Split {
        std::size_t level = 0;
        std::size_t y = 0; // last index of the left part
    };
    /// Smallest level whose split lies in [i, j); requires j - i > k.
    Split split(std::size_t i, std::size_t j) const;
};

struct ZoomResult {
    Curve curve;
    double certified = 0;  // dfd(P[i,j], curve) <= certified
    std::size_t level = 0; // 0 for the exact branch
    std::size_t split = 0; // 1-based last index of the left part, 0 if exact
};

/// Answers (k, 1+eps, 2)-simplifications of any index range of P.
class ZoomHierarchy {
public:
    ZoomHierarchy() = default;
    ZoomHierarchy(const Curve& p, std::size_t k, double eps, bool parallel = true);

    /// 1-based, 1 <= i < j <= m.
    ZoomResult query(std::size_t i, std::size_t j) const;

    const Curve& curve() const noexcept { return p_; }
    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    const SplitLayout& layout() const noexcept { return lay_; }
    /// Stored simplification of the subcurve owned by p (0-based) at level.
    const Simplification& entry(std::size_t level, std::size_t p) const;
    std::size_t stored_entries() const noexcept;
    std::size_t stored_points() const noexcept;

    void save(ByteWriter& w) const;
    static ZoomHierarchy load(ByteReader& r);

private:
    Curve p_;
    std::size_t k_ = 0;
    double eps_ = 0;
    SplitLayout lay_;
    std::vector<std::vector<Simplification>> levels_;
};

struct SubcurveTrace {
    double value = 0;
    bool exact = false;
    std::size_t level = 0;
    std::size_t split = 0;   // 1-based y
    std::size_t q = 0;       // 1-based query index of the best split
    bool shared = false;     // Q[q] matched on both sides
    int probes = 0;
};

/// (1+eps)-distance oracle for k-point queries against any subcurve P[i,j].
class SubcurveOracle {
public:
    SubcurveOracle() = default;
    SubcurveOracle(const Curve& p, std::size_t k, double eps, bool parallel = true);

    /// 1-based, 1 <= i <= j <= m, |q| = k.
    double query(std::size_t i, std::size_t j, const Curve& q) const { return trace(i, j, q).value; }
    SubcurveTrace trace(std::size_t i, std::size_t j, const Curve& q) const;

    const Curve& curve() const noexcept { return p_; }
    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    const SplitLayout& layout() const noexcept { return lay_; }
    /// Oracle over the subcurve owned by p at level for queries of len points.
    const GeneralOracle& oracle(std::size_t level, std::size_t p, std::size_t len) const;
    /// Number of subcurves carrying oracles (each has k of them).
    std::size_t leaves() const noexcept;

    void save(ByteWriter& w) const;
    static SubcurveOracle load(ByteReader& r);

private:
    Curve p_;
    std::size_t k_ = 0;
    double eps_ = 0;
    SplitLayout lay_;
    // levels_[t-1][p][len-1]; empty vector for unused entries
    std::vector<std::vector<std::vector<GeneralOracle>>> levels_;
};

} // namespace frechet
