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

#include <array>
#include <cstdint>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

/// How a symmetric query was answered.
struct SymmetricTrace {
    double value = 0;   // returned value
    double raw = 0;     // value before rescaling
    double crude = 0;   // the crude estimate driving the case split
    int which = 0;      // 0 for a single-point curve, else case 1..4
    std::size_t edge = 0; // edge rank i for cases 3 and 4
    int band = 0;       // bank index j for case 4
};

/**
 * (1+eps)-distance oracle for queries whose length is comparable to P's.
 *
 * P is stored with consecutive duplicates removed. Queries must have
 * query_len points (by default |P|). Returns v with dfd <= v <= (1+eps) dfd.
 */
class SymmetricOracle {
public:
    SymmetricOracle() = default;
    SymmetricOracle(const Curve& p, double eps, std::size_t query_len = 0, const CoverOptions& opt = {});

    double query(const Curve& q) const { return trace(q).value; }
    SymmetricTrace trace(const Curve& q) const;

    const Curve& curve() const noexcept { return p_; }
    std::size_t query_len() const noexcept { return qlen_; }
    double eps() const noexcept { return eps_; }
    /// Sorted edge lengths l_1..l_{m-1}.
    const std::vector<double>& edges() const noexcept { return l_; }
    std::size_t bank_size() const noexcept;
    int band_lo() const noexcept { return jlo_; }
    int band_hi() const noexcept { return jhi_; }

    /// Per-case hit counts (index 0: single-point curve) and bank probes.
    std::array<std::uint64_t, 5> case_counts() const noexcept;
    std::uint64_t bank_queries() const noexcept { return bank_q_.get(); }
    void reset_counters() const noexcept;

    void save(ByteWriter& w) const;
    static SymmetricOracle load(ByteReader& r);

private:
    double factor() const noexcept; // d * max(m, q)
    double case_scale() const noexcept; // d * max(m, q) * m / eps_s

    Curve p_;
    std::size_t qlen_ = 0;
    double eps_ = 0, eps_s_ = 0;
    std::vector<double> l_;
    int jlo_ = 0, jhi_ = -1;
    // bank_[(i-1) * (jhi-jlo+1) + (j-jlo)] for edge rank i in [1, m-1]
    std::vector<BoundedRangeOracle> bank_;
    std::array<ProbeCounter, 5> cases_{};
    ProbeCounter bank_q_;
};

} // namespace frechet
