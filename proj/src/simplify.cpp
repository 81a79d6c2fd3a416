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
#include "frechet/simplify.hpp"

#include "frechet/critical.hpp"
#include "frechet/distance.hpp"
#include "frechet/error.hpp"
#include "frechet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace frechet {

namespace {

Ball static_ball(const Curve& piece, double eps)
{
    if (piece.dim() <= kExactMebMaxDim)
        return exact_meb(piece);
    return static_approx_meb(piece, std::min(eps, 0.5));
}

} // namespace

Simplification greedy_delta_simplification(const Curve& p, double delta, double eps)
{
    if (p.empty())
        throw InvalidArgument("greedy_delta_simplification: empty curve");
    if (!(delta >= 0.0) || !(eps > 0.0 && eps <= 1.0))
        throw InvalidArgument("greedy_delta_simplification: need delta >= 0 and eps in (0,1]");
    const double threshold = (1.0 + eps) * delta;
    Simplification out{Curve(p.dim()), 0.0};
    std::size_t start = 0;
    Ball ball = static_ball(p.subcurve(0, 0), eps);
    for (std::size_t i = 1; i <= p.size(); ++i) {
        if (i < p.size()) {
            Ball grown = static_ball(p.subcurve(start, i), eps);
            if (grown.radius <= threshold) {
                ball = std::move(grown);
                continue;
            }
        }
        out.pi.push_back(ball.center);
        out.certified = std::max(out.certified, ball.radius);
        if (i < p.size()) {
            start = i;
            ball = static_ball(p.subcurve(i, i), eps);
        }
    }
    return out;
}

Simplification static_k_simplification(const Curve& p, std::size_t k, double eps)
{
    if (p.empty())
        throw InvalidArgument("static_k_simplification: empty curve");
    if (k < 1)
        throw InvalidArgument("static_k_simplification: k must be at least 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidArgument("static_k_simplification: eps must lie in (0,1)");
    Curve dedup = collapse_duplicates(p);
    if (dedup.size() <= k)
        return {dedup, 0.0};

    const double e = eps / 3.0;
    const auto cv = critical_values(p, 0.5, 1.0 / std::sqrt(2.0), e);
    const auto& m = cv.values;
    auto attempt = [&](std::size_t i) { return greedy_delta_simplification(p, (1.0 + e) * m[i], e); };

    Simplification best = attempt(0);
    if (best.pi.size() <= k)
        return best;
    // lo infeasible, hi feasible; sound even if feasibility is not monotone
    std::size_t lo = 0, hi = m.size() - 1;
    best = attempt(hi);
    if (best.pi.size() > k) {
        // cannot happen for a curve with more than k distinct points; keep a
        // valid answer anyway
        Ball b = static_ball(p, e);
        return {Curve::from_points({b.center}), b.radius};
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        Simplification s = attempt(mid);
        if (s.pi.size() <= k) {
            hi = mid;
            best = std::move(s);
        } else {
            lo = mid;
        }
    }
    return best;
}

double optimal_k_oracle(const Curve& p, std::size_t k)
{
    if (p.empty() || k < 1)
        throw InvalidArgument("optimal_k_oracle: need a curve and k >= 1");
    const std::size_t m = p.size();
    if (m > kOptimalKLimit)
        throw InvalidArgument("optimal_k_oracle: instance too large");
    if (k >= m)
        return 0.0;
    std::vector<std::vector<double>> rad(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            rad[i][j] = exact_meb(p.subcurve(i, j)).radius;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
    prev[0] = 0.0;
    double best = inf;
    for (std::size_t c = 1; c <= k; ++c) {
        std::fill(cur.begin(), cur.end(), inf);
        for (std::size_t j = 1; j <= m; ++j)
            for (std::size_t i = 0; i < j; ++i)
                cur[j] = std::min(cur[j], std::max(prev[i], rad[i][j - 1]));
        best = std::min(best, cur[m]);
        std::swap(prev, cur);
    }
    return best;
}

// --- GreedyStreamSimp -------------------------------------------------------

GreedyStreamSimp::GreedyStreamSimp(double delta, std::unique_ptr<StreamingMeb> prototype)
    : delta_(delta), proto_(std::move(prototype))
{
    if (!(delta >= 0.0))
        throw InvalidArgument("GreedyStreamSimp: delta must be nonnegative");
    if (!proto_)
        throw InvalidArgument("GreedyStreamSimp: missing MEB prototype");
}

GreedyStreamSimp::GreedyStreamSimp(const GreedyStreamSimp& o)
    : delta_(o.delta_), proto_(o.proto_ ? o.proto_->clone() : nullptr), meb_(o.meb_ ? o.meb_->clone() : nullptr),
      pi_(o.pi_)
{
}

GreedyStreamSimp& GreedyStreamSimp::operator=(const GreedyStreamSimp& o)
{
    if (this != &o) {
        GreedyStreamSimp tmp(o);
        *this = std::move(tmp);
    }
    return *this;
}

void GreedyStreamSimp::add(PointView p)
{
    if (!meb_) {
        meb_ = proto_->fresh();
        meb_->add(p);
        pi_ = Curve(p.size());
        pi_.push_back(meb_->current().center);
        return;
    }
    auto grown = meb_->clone();
    grown->add(p);
    Ball b = grown->current();
    if (b.radius <= delta_) {
        meb_ = std::move(grown);
        pi_.set(pi_.size() - 1, b.center);
    } else {
        meb_ = proto_->fresh();
        meb_->add(p);
        pi_.push_back(meb_->current().center);
    }
}

void GreedyStreamSimp::add_all(const Curve& c)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        add(c[i]);
}

void GreedyStreamSimp::save(ByteWriter& w) const
{
    w.f64(delta_);
    proto_->save(w);
    w.u8(meb_ ? 1 : 0);
    if (meb_) {
        meb_->save(w);
        w.curve(pi_);
    }
}

GreedyStreamSimp GreedyStreamSimp::load(ByteReader& r)
{
    GreedyStreamSimp g;
    g.delta_ = r.f64();
    g.proto_ = StreamingMeb::load(r);
    if (r.u8()) {
        g.meb_ = StreamingMeb::load(r);
        g.pi_ = r.curve();
    }
    return g;
}

// --- LeapingStreamSimp ------------------------------------------------------

LeapingStreamSimp::LeapingStreamSimp(std::size_t k, std::unique_ptr<StreamingMeb> prototype, double init,
                                     double inc)
    : k_(k), init_(init), inc_(inc), proto_(std::move(prototype))
{
    if (k < 1)
        throw InvalidArgument("LeapingStreamSimp: k must be at least 1");
    if (!(init >= 1.0) || !(inc >= 2.0))
        throw InvalidArgument("LeapingStreamSimp: need init >= 1 and inc >= 2");
    if (!proto_)
        throw InvalidArgument("LeapingStreamSimp: missing MEB prototype");
}

const Curve& LeapingStreamSimp::pi() const { return greedy_ ? greedy_->pi() : warmup_; }

double LeapingStreamSimp::delta() const noexcept { return greedy_ ? greedy_->delta() : 0.0; }

std::size_t LeapingStreamSimp::state_points() const noexcept
{
    if (!greedy_)
        return warmup_.size();
    return greedy_->pi().size() + greedy_->meb().stored_points();
}

void LeapingStreamSimp::leap_until_short()
{
    while (greedy_->pi().size() > k_) {
        const Curve base = greedy_->pi();
        auto next = std::make_unique<GreedyStreamSimp>(greedy_->delta() * inc_, proto_->fresh());
        next->add_all(base);
        greedy_ = std::move(next);
        ++leaps_;
    }
}

void LeapingStreamSimp::add(PointView p)
{
    if (!greedy_) {
        if (warmup_.empty())
            warmup_ = Curve(p.size());
        else if (std::equal(p.begin(), p.end(), warmup_.back().begin()))
            return;
        warmup_.push_back(p);
        if (warmup_.size() == k_ + 1) {
            lambda_ = half_min_edge(warmup_);
            greedy_ = std::make_unique<GreedyStreamSimp>(init_ * lambda_, proto_->fresh());
            greedy_->add_all(warmup_);
            // with gamma > 1 the warmup greedy can still hold k+1 points
            leap_until_short();
        }
        return;
    }
    const std::size_t before = greedy_->pi().size();
    greedy_->add(p);
    if (greedy_->pi().size() > before)
        leap_until_short();
}

void LeapingStreamSimp::save(ByteWriter& w) const
{
    w.size(k_);
    w.f64(init_);
    w.f64(inc_);
    w.f64(lambda_);
    w.size(leaps_);
    proto_->save(w);
    w.u8(greedy_ ? 1 : 0);
    if (greedy_)
        greedy_->save(w);
    else {
        w.u8(warmup_.empty() ? 0 : 1);
        if (!warmup_.empty())
            w.curve(warmup_);
    }
}

LeapingStreamSimp LeapingStreamSimp::load(ByteReader& r)
{
    LeapingStreamSimp s;
    s.k_ = r.size();
    s.init_ = r.f64();
    s.inc_ = r.f64();
    s.lambda_ = r.f64();
    s.leaps_ = r.size();
    s.proto_ = StreamingMeb::load(r);
    if (s.k_ < 1 || !(s.inc_ >= 2.0) || !(s.init_ >= 1.0))
        throw FormatError("bad leaping simplifier header");
    if (r.u8())
        s.greedy_ = std::make_unique<GreedyStreamSimp>(GreedyStreamSimp::load(r));
    else if (r.u8())
        s.warmup_ = r.curve();
    return s;
}

// --- MultiLeapSimp ----------------------------------------------------------

MultiLeapSimp::MultiLeapSimp(std::size_t k, double eps, const StreamingMeb& prototype) : k_(k), eps_(eps)
{
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidArgument("MultiLeapSimp: eps must lie in (0, 1/2)");
    const auto count = static_cast<std::size_t>(std::ceil(std::log(1.0 / eps) / std::log1p(eps)));
    inst_.reserve(count);
    for (std::size_t i = 1; i <= count; ++i)
        inst_.emplace_back(k, prototype.fresh(), std::pow(1.0 + eps, double(i)), 1.0 / eps);
}

void MultiLeapSimp::add(PointView p)
{
    if (!inst_.empty() && inst_[0].pi().size() > 0 && inst_[0].pi().dim() != p.size())
        throw DimensionMismatch("streaming simplifier: point dimension mismatch");
    const long n = static_cast<long>(inst_.size());
#pragma omp parallel for schedule(dynamic) if (n > 8)
    for (long i = 0; i < n; ++i)
        inst_[static_cast<std::size_t>(i)].add(p);
}

Simplification MultiLeapSimp::current() const
{
    if (inst_.empty() || inst_[0].pi().empty())
        throw InvalidArgument("streaming simplifier read before first point");
    if (!inst_[0].warm())
        return {inst_[0].pi(), 0.0};
    std::size_t best = 0;
    for (std::size_t i = 1; i < inst_.size(); ++i)
        if (inst_[i].delta() < inst_[best].delta())
            best = i;
    const auto& b = inst_[best];
    return {b.pi(), (1.0 + 2.0 / b.inc()) * b.delta()};
}

std::size_t MultiLeapSimp::state_points() const noexcept
{
    std::size_t s = 0;
    for (const auto& i : inst_)
        s += i.state_points();
    return s;
}

void MultiLeapSimp::save(ByteWriter& w) const
{
    w.size(k_);
    w.f64(eps_);
    w.size(inst_.size());
    for (const auto& i : inst_)
        i.save(w);
}

MultiLeapSimp MultiLeapSimp::load(ByteReader& r)
{
    MultiLeapSimp m;
    m.k_ = r.size();
    m.eps_ = r.f64();
    const std::size_t n = r.size(8);
    for (std::size_t i = 0; i < n; ++i)
        m.inst_.push_back(LeapingStreamSimp::load(r));
    return m;
}

MultiLeapSimp make_streaming_simplifier(std::size_t k, double eps, const StreamingMeb& prototype)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw InvalidArgument("streaming simplifier: eps must lie in (0,1)");
    return MultiLeapSimp(k, eps / 8.0, prototype);
}

} // namespace frechet
