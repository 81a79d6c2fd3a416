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
#include "frechet/subcurve.hpp"

#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <utility>

namespace frechet {

namespace {

constexpr char kZoomMagic[] = "FZOM";
constexpr char kSubMagic[] = "FSUB";
constexpr std::uint32_t kVersion = 1;

using Task = std::pair<std::size_t, std::size_t>; // (level, point)

std::vector<Task> used_entries(const SplitLayout& lay)
{
    std::vector<Task> out;
    for (std::size_t t = 1; t <= lay.levels; ++t)
        for (std::size_t p = 0; p < lay.m; ++p) {
            std::size_t a, b;
            if (lay.range(t, p, a, b)) out.emplace_back(t, p);
        }
    return out;
}

template <class F>
void run_tasks(const std::vector<Task>& tasks, bool parallel, F&& f)
{
    std::exception_ptr err;
    const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (std::ptrdiff_t e = 0; e < n; ++e) {
        try {
            f(tasks[static_cast<std::size_t>(e)]);
        } catch (...) {
#pragma omp critical(frechet_subcurve_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

void check_params(const Curve& p, std::size_t k, double eps)
{
    if (p.empty()) throw InvalidArgument("empty curve");
    if (k == 0) throw InvalidArgument("k must be positive");
    if (k >= p.size()) throw InvalidArgument("k must be smaller than the curve length");
    if (!(eps > 0 && eps < 1)) throw InvalidArgument("eps must lie in (0, 1)");
}

void check_range(std::size_t i, std::size_t j, std::size_t m, bool strict)
{
    if (i < 1 || j > m || i > j || (strict && i == j))
        throw InvalidArgument("index range out of bounds: need 1 <= i " + std::string(strict ? "<" : "<=") +
                              " j <= " + std::to_string(m));
}

} // namespace

SplitLayout SplitLayout::make(std::size_t m, std::size_t k)
{
    SplitLayout l;
    l.m = m;
    l.k = k;
    l.padded = std::bit_ceil(m);
    while ((l.padded >> l.levels) >= k + 2) ++l.levels;
    return l;
}

bool SplitLayout::range(std::size_t level, std::size_t p, std::size_t& first, std::size_t& last) const noexcept
{
    if (level < 1 || level > levels || p >= m) return false;
    const std::size_t h = half(level);
    const std::size_t start = p / (2 * h) * (2 * h);
    const std::size_t mid = start + h - 1;
    if (mid + 1 >= m) return false;
    if (p <= mid) {
        first = p;
        last = mid;
    } else {
        first = mid + 1;
        last = p;
    }
    return true;
}

SplitLayout::Split SplitLayout::split(std::size_t i, std::size_t j) const
{
    if (!(i < j && j < m)) throw InvalidArgument("split of an empty range");
    const int bit = std::bit_width(i ^ j) - 1;
    const int top = std::bit_width(padded) - 1;
    Split s;
    s.level = static_cast<std::size_t>(top - bit);
    s.y = (j >> bit << bit) - 1;
    if (s.level < 1 || s.level > levels) throw ContractViolation("subcurve split lies outside the built levels");
    return s;
}

ZoomHierarchy::ZoomHierarchy(const Curve& p, std::size_t k, double eps, bool parallel)
    : p_(p), k_(k), eps_(eps)
{
    check_params(p, k, eps);
    lay_ = SplitLayout::make(p.size(), k);
    levels_.assign(lay_.levels, std::vector<Simplification>(lay_.m));
    run_tasks(used_entries(lay_), parallel, [&](const Task& t) {
        std::size_t a, b;
        lay_.range(t.first, t.second, a, b);
        levels_[t.first - 1][t.second] = static_k_simplification(p_.subcurve(a, b), k_, eps_);
    });
}

const Simplification& ZoomHierarchy::entry(std::size_t level, std::size_t p) const
{
    std::size_t a, b;
    if (!lay_.range(level, p, a, b)) throw InvalidArgument("no zoom entry at this level and index");
    return levels_[level - 1][p];
}

ZoomResult ZoomHierarchy::query(std::size_t i, std::size_t j) const
{
    check_range(i, j, lay_.m, true);
    ZoomResult r;
    if (j - i <= k_) {
        r.curve = p_.subcurve(i - 1, j - 1);
        return r;
    }
    const auto s = lay_.split(i - 1, j - 1);
    const auto& a = levels_[s.level - 1][i - 1];
    const auto& b = levels_[s.level - 1][j - 1];
    r.curve = a.pi.concat(b.pi);
    r.certified = std::max(a.certified, b.certified);
    r.level = s.level;
    r.split = s.y + 1;
    return r;
}

std::size_t ZoomHierarchy::stored_entries() const noexcept { return used_entries(lay_).size(); }

std::size_t ZoomHierarchy::stored_points() const noexcept
{
    std::size_t n = 0;
    for (const auto& l : levels_)
        for (const auto& s : l) n += s.pi.size();
    return n;
}

void ZoomHierarchy::save(ByteWriter& w) const
{
    w.bytes(std::string_view(kZoomMagic, 4));
    w.u32(kVersion);
    w.curve(p_);
    w.size(k_);
    w.f64(eps_);
    for (const auto& [t, p] : used_entries(lay_)) {
        const auto& s = levels_[t - 1][p];
        w.curve(s.pi);
        w.f64(s.certified);
    }
}

ZoomHierarchy ZoomHierarchy::load(ByteReader& r)
{
    if (r.bytes(4) != std::string_view(kZoomMagic, 4)) throw FormatError("bad zoom magic");
    if (r.u32() != kVersion) throw FormatError("unsupported zoom version");
    ZoomHierarchy z;
    z.p_ = r.curve();
    z.k_ = r.size();
    z.eps_ = r.f64();
    try {
        check_params(z.p_, z.k_, z.eps_);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad zoom header: ") + e.what());
    }
    z.lay_ = SplitLayout::make(z.p_.size(), z.k_);
    z.levels_.assign(z.lay_.levels, std::vector<Simplification>(z.lay_.m));
    for (const auto& [t, p] : used_entries(z.lay_)) {
        auto& s = z.levels_[t - 1][p];
        s.pi = r.curve();
        s.certified = r.f64();
        if (s.pi.dim() != z.p_.dim() || s.pi.size() > z.k_ || !(s.certified >= 0))
            throw FormatError("bad zoom entry");
    }
    return z;
}

SubcurveOracle::SubcurveOracle(const Curve& p, std::size_t k, double eps, bool parallel)
    : p_(p), k_(k), eps_(eps)
{
    check_params(p, k, eps);
    lay_ = SplitLayout::make(p.size(), k);
    levels_.assign(lay_.levels, std::vector<std::vector<GeneralOracle>>(lay_.m));
    CoverOptions opt;
    opt.parallel = false;
    run_tasks(used_entries(lay_), parallel, [&](const Task& t) {
        std::size_t a, b;
        lay_.range(t.first, t.second, a, b);
        const Curve s = p_.subcurve(a, b);
        auto& bank = levels_[t.first - 1][t.second];
        bank.reserve(k_);
        for (std::size_t len = 1; len <= k_; ++len) bank.emplace_back(s, len, eps_, opt);
    });
}

const GeneralOracle& SubcurveOracle::oracle(std::size_t level, std::size_t p, std::size_t len) const
{
    std::size_t a, b;
    if (!lay_.range(level, p, a, b) || len < 1 || len > k_) throw InvalidArgument("no subcurve oracle here");
    return levels_[level - 1][p][len - 1];
}

std::size_t SubcurveOracle::leaves() const noexcept { return used_entries(lay_).size(); }

SubcurveTrace SubcurveOracle::trace(std::size_t i, std::size_t j, const Curve& q) const
{
    check_range(i, j, lay_.m, false);
    if (q.size() != k_) throw InvalidArgument("query length must equal k");
    if (q.dim() != p_.dim()) throw DimensionMismatch("query dimension does not match the curve");
    SubcurveTrace t;
    if (j - i <= k_) {
        t.exact = true;
        t.value = discrete_frechet(p_.subcurve(i - 1, j - 1), q);
        return t;
    }
    const auto s = lay_.split(i - 1, j - 1);
    const auto& left = levels_[s.level - 1][i - 1];
    const auto& right = levels_[s.level - 1][j - 1];
    // pre[q] = O1(Q[1,q]), suf[q] = O2(Q[q,k]), 1-based q
    std::vector<double> pre(k_ + 2), suf(k_ + 2);
    for (std::size_t a = 1; a <= k_; ++a) {
        pre[a] = left[a - 1].query(q.subcurve(0, a - 1));
        suf[a] = right[k_ - a].query(q.subcurve(a - 1, k_ - 1));
        t.probes += 2;
    }
    t.value = std::numeric_limits<double>::infinity();
    for (std::size_t a = 1; a <= k_; ++a) {
        const double shared = std::max(pre[a], suf[a]);
        if (shared < t.value) {
            t.value = shared;
            t.q = a;
            t.shared = true;
        }
        if (a < k_) {
            const double next = std::max(pre[a], suf[a + 1]);
            if (next < t.value) {
                t.value = next;
                t.q = a;
                t.shared = false;
            }
        }
    }
    t.level = s.level;
    t.split = s.y + 1;
    return t;
}

void SubcurveOracle::save(ByteWriter& w) const
{
    w.bytes(std::string_view(kSubMagic, 4));
    w.u32(kVersion);
    w.curve(p_);
    w.size(k_);
    w.f64(eps_);
    for (const auto& [t, p] : used_entries(lay_))
        for (const auto& o : levels_[t - 1][p]) o.save(w);
}

SubcurveOracle SubcurveOracle::load(ByteReader& r)
{
    if (r.bytes(4) != std::string_view(kSubMagic, 4)) throw FormatError("bad subcurve oracle magic");
    if (r.u32() != kVersion) throw FormatError("unsupported subcurve oracle version");
    SubcurveOracle o;
    o.p_ = r.curve();
    o.k_ = r.size();
    o.eps_ = r.f64();
    try {
        check_params(o.p_, o.k_, o.eps_);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("bad subcurve oracle header: ") + e.what());
    }
    o.lay_ = SplitLayout::make(o.p_.size(), o.k_);
    o.levels_.assign(o.lay_.levels, std::vector<std::vector<GeneralOracle>>(o.lay_.m));
    for (const auto& [t, p] : used_entries(o.lay_)) {
        std::size_t a, b;
        o.lay_.range(t, p, a, b);
        auto& bank = o.levels_[t - 1][p];
        for (std::size_t len = 1; len <= o.k_; ++len) {
            bank.push_back(GeneralOracle::load(r));
            const auto& g = bank.back();
            if (g.k() != len || g.eps() != o.eps_ || !(g.curve() == o.p_.subcurve(a, b)))
                throw FormatError("subcurve oracle entry does not match its subcurve");
        }
    }
    return o;
}

} // namespace frechet
