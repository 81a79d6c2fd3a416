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
#include "frechet/symmetric.hpp"

#include "frechet/approx.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace frechet {

namespace {

constexpr std::uint32_t kSymVersion = 1;

// largest j with base^j <= x
int floor_log(double base, double x)
{
    int j = static_cast<int>(std::floor(std::log(x) / std::log(base)));
    while (std::pow(base, j) > x) --j;
    while (std::pow(base, j + 1) <= x) ++j;
    return j;
}

} // namespace

SymmetricOracle::SymmetricOracle(const Curve& p, double eps, std::size_t query_len, const CoverOptions& opt)
{
    if (p.empty()) throw InvalidArgument("symmetric oracle of an empty curve");
    if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
    p_ = collapse_duplicates(p);
    qlen_ = query_len ? query_len : p.size();
    eps_ = eps;
    eps_s_ = eps / 3;
    const std::size_t m = p_.size();
    if (m == 1) return;

    for (std::size_t i = 0; i + 1 < m; ++i) l_.push_back(point_distance(p_[i], p_[i + 1]));
    std::sort(l_.begin(), l_.end());

    const double dm = factor();
    jlo_ = floor_log(dm, 1 / (5 * dm));
    jhi_ = floor_log(dm, static_cast<double>(m) / eps_s_);
    const auto bands = static_cast<std::size_t>(jhi_ - jlo_ + 1);
    bank_.resize((m - 1) * bands);

    CoverOptions inner = opt;
    inner.parallel = false;
    std::exception_ptr err;
    const auto n = static_cast<std::ptrdiff_t>(bank_.size());
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
    for (std::ptrdiff_t b = 0; b < n; ++b) {
        const auto u = static_cast<std::size_t>(b);
        const double li = l_[u / bands];
        const int j = jlo_ + static_cast<int>(u % bands);
        try {
            bank_[u] = BoundedRangeOracle(p_, qlen_, li * std::pow(dm, j), li * std::pow(dm, j + 2), eps_s_, inner);
        } catch (...) {
#pragma omp critical(frechet_sym_err)
            err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

double SymmetricOracle::factor() const noexcept
{
    return static_cast<double>(p_.dim()) * static_cast<double>(std::max(p_.size(), qlen_));
}

double SymmetricOracle::case_scale() const noexcept
{
    return factor() * static_cast<double>(p_.size()) / eps_s_;
}

std::size_t SymmetricOracle::bank_size() const noexcept { return bank_.size(); }

SymmetricTrace SymmetricOracle::trace(const Curve& q) const
{
    if (q.size() != qlen_) throw InvalidArgument("query length does not match the oracle");
    require_compatible(p_, q);

    SymmetricTrace t;
    const std::size_t m = p_.size();
    if (m == 1) {
        t.raw = t.value = point_curve_distance(p_[0], q);
        cases_[0].bump();
        return t;
    }

    const double crude = crude_approx(p_, q, factor());
    const double c = case_scale();
    t.crude = crude;

    if (crude < l_.front() / 2) {
        auto v = small_distance(p_, q);
        if (!v) throw ContractViolation("symmetric oracle: small distance refused in case 1");
        t.which = 1;
        t.raw = t.value = *v;
    } else if (crude > c * l_.back()) {
        t.which = 2;
        t.raw = point_curve_distance(p_[0], q);
        t.value = t.raw / (1 - eps_s_);
    } else {
        // case 3 window between consecutive edge ranks
        std::size_t hit = 0;
        for (std::size_t i = 1; i + 1 < m; ++i)
            if (c * l_[i - 1] <= crude && crude <= l_[i] / 5) {
                hit = i;
                break;
            }
        if (hit) {
            const double li = l_[hit - 1];
            Curve pp(p_.dim());
            for (std::size_t j = 0; j + 1 < m; ++j)
                if (point_distance(p_[j], p_[j + 1]) > li) pp.push_back(p_[j]);
            pp.push_back(p_[m - 1]);
            if (pp.size() < 2 || !(half_min_edge(pp) > l_[hit] / 4))
                throw ContractViolation("symmetric oracle: contracted curve has a short edge");
            auto v = small_distance(pp, q);
            if (!v) throw ContractViolation("symmetric oracle: small distance refused in case 3");
            t.which = 3;
            t.edge = hit;
            t.raw = *v;
            t.value = t.raw / (1 - eps_s_);
        } else {
            for (std::size_t i = 1; i < m; ++i)
                if (l_[i - 1] / 5 <= crude && crude <= c * l_[i - 1]) {
                    hit = i;
                    break;
                }
            if (!hit) throw ContractViolation("symmetric oracle: crude estimate falls in no case");
            const auto bands = static_cast<std::size_t>(jhi_ - jlo_ + 1);
            const double target = crude / factor();
            std::size_t pick = bands;
            for (std::size_t b = 0; b < bands; ++b)
                if (bank_[(hit - 1) * bands + b].alpha() <= target) pick = b;
            if (pick == bands) throw ContractViolation("symmetric oracle: no bank range fits");
            auto v = bank_[(hit - 1) * bands + pick].query(q);
            bank_q_.bump();
            if (!v) throw ContractViolation("symmetric oracle: bounded range oracle answered NO");
            t.which = 4;
            t.edge = hit;
            t.band = jlo_ + static_cast<int>(pick);
            t.raw = t.value = *v;
        }
    }
    cases_[static_cast<std::size_t>(t.which)].bump();
    return t;
}

std::array<std::uint64_t, 5> SymmetricOracle::case_counts() const noexcept
{
    std::array<std::uint64_t, 5> out{};
    for (std::size_t i = 0; i < 5; ++i) out[i] = cases_[i].get();
    return out;
}

void SymmetricOracle::reset_counters() const noexcept
{
    for (const auto& c : cases_) c.reset();
    bank_q_.reset();
}

void SymmetricOracle::save(ByteWriter& w) const
{
    w.u32(kSymVersion);
    w.f64(eps_);
    w.size(qlen_);
    w.curve(p_);
    w.i32(jlo_);
    w.i32(jhi_);
    w.size(bank_.size());
    for (const auto& b : bank_) b.save(w);
}

SymmetricOracle SymmetricOracle::load(ByteReader& r)
{
    if (r.u32() != kSymVersion) throw FormatError("unsupported symmetric oracle version");
    SymmetricOracle o;
    o.eps_ = r.f64();
    o.eps_s_ = o.eps_ / 3;
    o.qlen_ = r.size();
    o.p_ = r.curve();
    o.jlo_ = r.i32();
    o.jhi_ = r.i32();
    if (!(o.eps_ > 0 && o.eps_ < 1) || o.qlen_ == 0 || o.p_.empty() || o.p_ != collapse_duplicates(o.p_))
        throw FormatError("bad symmetric oracle header");
    const std::size_t m = o.p_.size();
    std::size_t n = r.size(16);
    if (m == 1) {
        if (n != 0) throw FormatError("single-point symmetric oracle with a bank");
        return o;
    }
    if (o.jhi_ < o.jlo_ || n != (m - 1) * static_cast<std::size_t>(o.jhi_ - o.jlo_ + 1))
        throw FormatError("symmetric oracle bank size mismatch");
    for (std::size_t i = 0; i + 1 < m; ++i) o.l_.push_back(point_distance(o.p_[i], o.p_[i + 1]));
    std::sort(o.l_.begin(), o.l_.end());
    o.bank_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        o.bank_.push_back(BoundedRangeOracle::load(r));
        if (o.bank_.back().k() != o.qlen_) throw FormatError("symmetric bank query length mismatch");
    }
    return o;
}

} // namespace frechet
