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
#include "frechet/simplify.hpp"
#include "frechet/symmetric.hpp"

#include <cstdint>
#include <vector>

namespace frechet {

class ByteWriter;
class ByteReader;

struct GeneralTrace {
    double value = 0;
    double sym = 0;  // symmetric oracle answer against the simplification
    int branch = 0;  // 0: direct (L = 0), 1: far, 2: near (O_0), 3: banded
    std::size_t level = 0; // bank index used by branches 2 and 3
    int probes = 0;  // sub-oracle queries issued
};

/**
 * (1+eps)-distance oracle for k-point queries against an arbitrary curve P.
 * Built from a (k, 1+eps)-simplification of P, a symmetric oracle over it and
 * a bank of bounded range oracles over P at doubling scales of L.
 */
class GeneralOracle {
public:
    GeneralOracle() = default;
    GeneralOracle(const Curve& p, std::size_t k, double eps, const CoverOptions& opt = {});

    double query(const Curve& q) const { return trace(q).value; }
    GeneralTrace trace(const Curve& q) const;

    const Curve& curve() const noexcept { return p_; }
    std::size_t k() const noexcept { return k_; }
    double eps() const noexcept { return eps_; }
    double eps_internal() const noexcept { return eps_ / 8; }
    const Curve& simplification() const noexcept { return pi_; }
    double L() const noexcept { return l_; }
    const SymmetricOracle& symmetric() const noexcept { return sym_; }
    std::size_t bank_size() const noexcept { return bank_.size(); }
    const BoundedRangeOracle& bank(std::size_t i) const { return bank_.at(i); }

    void save(ByteWriter& w) const;
    static GeneralOracle load(ByteReader& r);

private:
    Curve p_;
    std::size_t k_ = 0;
    double eps_ = 0;
    Curve pi_;
    double l_ = 0;
    SymmetricOracle sym_;
    std::vector<BoundedRangeOracle> bank_;
};

} // namespace frechet
