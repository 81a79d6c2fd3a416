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
#include "frechet/general.hpp"

#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <cmath>
#include <exception>

namespace frechet {

namespace {
constexpr std::uint32_t kGeneralVersion = 1;
}

GeneralOracle::GeneralOracle(const Curve& p, std::size_t k, double eps, const CoverOptions& opt)
    : p_(p), k_(k), eps_(eps)
{
    if (p.empty()) throw InvalidArgument("oracle of an empty curve");
    if (k == 0) throw InvalidArgument("k must be positive");
    if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
    const double eg = eps_internal();

    auto s = static_k_simplification(p, k, eg / 2);
    pi_ = std::move(s.pi);
    l_ = s.certified;
    if (l_ == 0) {
        // P itself has at most k distinct runs; answer through it directly
        sym_ = SymmetricOracle(p, eps, k, opt);
        return;
    }
    sym_ = SymmetricOracle(pi_, eg, k, opt);

    const int top = static_cast<int>(std::ceil(std::log2(1 / eg)));
    bank_.resize(static_cast<std::size_t>(top) + 1);
    std::exception_ptr err;
    CoverOptions inner = opt;
    inner.parallel = false;
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
    for (int i = 0; i <= top; ++i) {
        try {
            bank_[static_cast<std::size_t>(i)] =
                BoundedRangeOracle(p, k, std::ldexp(l_, i - 1), std::ldexp(l_, i + 3), eg, inner);
        } catch (...) {
#pragma omp critical(frechet_general_err)
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

GeneralTrace GeneralOracle::trace(const Curve& q) const
{
    if (q.size() != k_) throw InvalidArgument("query length must equal k");
    require_compatible(p_, q);
    GeneralTrace t;
    t.sym = sym_.query(q);
    t.probes = 1;
    if (l_ == 0) {
        t.value = t.sym;
        return t;
    }
    const double eg = eps_internal();
    const double delta = t.sym;
    if (delta >= l_ / eg) {
        t.branch = 1;
        t.value = (1 + eg) * delta;
        return t;
    }
    std::size_t i = 0;
    if (delta <= 7 * l_) {
        t.branch = 2;
    } else {
        t.branch = 3;
        while (i + 1 < bank_.size() && std::ldexp(l_, static_cast<int>(i) + 1) <= delta / 2) ++i;
    }
    t.level = i;
    auto v = bank_[i].query(q);
    ++t.probes;
    if (!v) throw ContractViolation("general oracle: bounded range oracle answered NO");
    t.value = *v;
    return t;
}

void GeneralOracle::save(ByteWriter& w) const
{
    w.u32(kGeneralVersion);
    w.size(k_);
    w.f64(eps_);
    w.curve(p_);
    w.curve(pi_);
    w.f64(l_);
    sym_.save(w);
    w.size(bank_.size());
    for (const auto& b : bank_) b.save(w);
}

GeneralOracle GeneralOracle::load(ByteReader& r)
{
    if (r.u32() != kGeneralVersion) throw FormatError("unsupported general oracle version");
    GeneralOracle o;
    o.k_ = r.size();
    o.eps_ = r.f64();
    o.p_ = r.curve();
    o.pi_ = r.curve();
    o.l_ = r.f64();
    if (o.k_ == 0 || !(o.eps_ > 0 && o.eps_ < 1) || o.p_.empty() || !(o.l_ >= 0))
        throw FormatError("bad general oracle header");
    o.sym_ = SymmetricOracle::load(r);
    if (o.sym_.query_len() != o.k_) throw FormatError("general oracle symmetric part mismatch");
    std::size_t n = r.size(16);
    if ((o.l_ == 0) != (n == 0)) throw FormatError("general oracle bank mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        o.bank_.push_back(BoundedRangeOracle::load(r));
        if (o.bank_.back().k() != o.k_) throw FormatError("general oracle bank query length mismatch");
    }
    return o;
}

} // namespace frechet
