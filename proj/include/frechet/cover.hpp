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
#include "frechet/grid.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <absl/container/flat_hash_map.h>
#include <utility>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

using CoverMap = absl::flat_hash_map<GridKey, double, GridKeyHash>;

/// Every grid curve W with 1..k points over the union of the balls
/// G(P[i], R) and dfd(P, W) <= R, grouped by length (layers[j-1] holds
/// length j). When all_layers is false only layer k is filled. Each stored
/// value is the exact dfd(P, W).
std::vector<CoverMap> enumerate_grid_curves(const Curve& p, std::size_t k, const GridSpec& g, double radius,
                                            bool all_layers, bool parallel = true);

enum class CoverStorage : std::uint8_t { materialized = 0, implicit = 1 };

struct CoverOptions {
    /// Forces a storage mode; by default covers are materialized unless the
    /// enumeration would exceed materialize_limit candidate curves.
    std::optional<CoverStorage> storage;
    double materialize_limit = 1 << 16;
    bool parallel = true;
};

/// Counts dictionary probes. Copying snapshots the value.
class ProbeCounter {
public:
    ProbeCounter() = default;
    ProbeCounter(const ProbeCounter& o) : n_(o.get()) {}
    ProbeCounter& operator=(const ProbeCounter& o)
    {
        n_.store(o.get(), std::memory_order_relaxed);
        return *this;
    }
    void bump() const noexcept { n_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t get() const noexcept { return n_.load(std::memory_order_relaxed); }
    void reset() const noexcept { n_.store(0, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> n_{0};
};

/**
 * A (k, r, eps)-cover of P: the k-point grid curves within (1+eps)r of P,
 * on the grid with edge eps*r/sqrt(d), each with its exact distance to P.
 *
 * Materialized covers keep a hash map. Implicit covers keep P instead and
 * decide membership of a snapped query with one DP, which gives the same
 * answers: a grid curve within (1+eps)r of P only uses grid points of the
 * balls around P.
 */
class Cover {
public:
    Cover() = default;

    static Cover build(const Curve& p, std::size_t k, double r, double eps, const CoverOptions& opt = {});

    std::size_t k() const noexcept { return k_; }
    std::size_t dim() const noexcept { return grid_.dim; }
    double r() const noexcept { return r_; }
    double eps() const noexcept { return eps_; }
    double radius() const noexcept { return radius_; }
    const GridSpec& grid() const noexcept { return grid_; }
    CoverStorage storage() const noexcept { return storage_; }

    /// Entry count; only meaningful for materialized covers.
    std::size_t size() const noexcept { return map_.size(); }

    /// dist(W) for a stored grid curve W, nullopt when absent.
    std::optional<double> find(const GridKey& key) const;

    /// Snaps q pointwise to W and probes once. Returns dist(W) plus the
    /// largest snap offset, or nullopt (NO).
    std::optional<double> probe(const Curve& q) const;

    std::uint64_t probes() const noexcept { return probes_.get(); }
    void reset_probes() const noexcept { probes_.reset(); }

    std::vector<std::pair<GridKey, double>> sorted_entries() const;

    void save(ByteWriter& w) const;
    static Cover load(ByteReader& r);

private:
    std::size_t k_ = 0;
    double r_ = 0, eps_ = 0, radius_ = 0;
    GridSpec grid_;
    CoverStorage storage_ = CoverStorage::materialized;
    CoverMap map_;
    Curve p_;
    ProbeCounter probes_;
};

/// Decision oracle at r: answers within dfd + (eps/2) r whenever dfd <= r,
/// NO only when dfd > r. Backed by a cover at eps/4.
class DecisionOracle {
public:
    DecisionOracle() = default;
    DecisionOracle(const Curve& p, std::size_t k, double r, double eps, const CoverOptions& opt = {});

    std::optional<double> query(const Curve& q) const;

    std::size_t k() const noexcept { return cover_.k(); }
    double r() const noexcept { return cover_.r(); }
    double eps() const noexcept { return eps_; }
    const Cover& cover() const noexcept { return cover_; }

    void save(ByteWriter& w) const;
    static DecisionOracle load(ByteReader& r);

private:
    double eps_ = 0;
    Cover cover_;
};

/// (1+eps)-approximate distances for queries with dfd in [alpha, beta],
/// by binary search over decision oracles at alpha * 2^i.
class BoundedRangeOracle {
public:
    BoundedRangeOracle() = default;
    BoundedRangeOracle(const Curve& p, std::size_t k, double alpha, double beta, double eps,
                       const CoverOptions& opt = {});

    /// nullopt when the top level answers NO (dfd above the range).
    std::optional<double> query(const Curve& q) const;

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double eps() const noexcept { return eps_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t levels() const noexcept { return levels_.size(); }
    const DecisionOracle& level(std::size_t i) const { return levels_.at(i); }
    std::uint64_t probes() const noexcept;

    void save(ByteWriter& w) const;
    static BoundedRangeOracle load(ByteReader& r);

private:
    std::size_t k_ = 0;
    double alpha_ = 0, beta_ = 0, eps_ = 0;
    std::vector<DecisionOracle> levels_;
};

} // namespace frechet
