#pragma once

#include <functional>
#include <vector>

#include "carlitz/cinf.hpp"

namespace carlitz {

// Truncated Tate-algebra series: coefficients f_0..f_T in the C_inf model.
// tail_num bounds the log-norm of the dropped coefficients beyond t^T
// (kExactFloor when the series is an exact polynomial of degree <= T).
struct TateSeries {
    std::vector<CInfElem> c;
    int64_t tail_num = kExactFloor;

    bool tail_exact() const { return tail_num <= kFloorSentinelCut; }
};

inline TateSeries tate_zero(const Context& ctx) {
    TateSeries f;
    f.c.assign(ctx.T() + 1, ctx.zero_exact());
    return f;
}

inline TateSeries tate_from_cinf(const Context& ctx, CInfElem a) {
    TateSeries f = tate_zero(ctx);
    f.c[0] = std::move(a);
    return f;
}

inline TateSeries tate_one(const Context& ctx) { return tate_from_cinf(ctx, ctx.one()); }

inline TateSeries tate_t_pow(const Context& ctx, int k, CInfElem coeff) {
    TateSeries f = tate_zero(ctx);
    if (k <= ctx.T()) f.c[k] = std::move(coeff);
    return f;
}

inline void tate_lift(const Context& ctx, TateSeries& f) {
    for (auto& a : f.c) ctx.lift(a);
}

inline bool tate_is_zero(const Context& ctx, const TateSeries& f) {
    for (const auto& a : f.c)
        if (!a.terms.empty()) return false;
    return true;
}

inline int64_t tate_gauss_lognorm(const Context& ctx, const TateSeries& f) {
    int64_t g = kExactFloor;
    for (const auto& a : f.c) g = std::max(g, ctx.lognorm_num(a));
    return g;
}

// largest known-coefficient uncertainty (for "equal within floors" checks)
inline int64_t tate_floor_lognorm(const Context& ctx, const TateSeries& f) {
    int64_t g = kExactFloor;
    for (const auto& a : f.c)
        if (!a.exact()) g = std::max(g, a.floor_num);
    if (!f.tail_exact()) g = std::max(g, f.tail_num);
    return g;
}

inline TateSeries tate_add(const Context& ctx, const TateSeries& f, const TateSeries& g) {
    TateSeries r = tate_zero(ctx);
    for (int k = 0; k <= ctx.T(); ++k) r.c[k] = ctx.add(f.c[k], g.c[k]);
    r.tail_num = std::max(f.tail_num, g.tail_num);
    return r;
}

inline TateSeries tate_sub(const Context& ctx, const TateSeries& f, const TateSeries& g) {
    TateSeries r = tate_zero(ctx);
    for (int k = 0; k <= ctx.T(); ++k) r.c[k] = ctx.sub(f.c[k], g.c[k]);
    r.tail_num = std::max(f.tail_num, g.tail_num);
    return r;
}

inline TateSeries tate_neg(const Context& ctx, TateSeries f) {
    for (auto& a : f.c) a = ctx.neg(std::move(a));
    return f;
}

inline TateSeries tate_scale(const Context& ctx, TateSeries f, const CInfElem& s) {
    int64_t slog = ctx.lognorm_num(s);
    for (auto& a : f.c) a = ctx.mul(std::move(a), s);
    if (!f.tail_exact()) f.tail_num += slog;
    return f;
}

inline TateSeries tate_mul(const Context& ctx, const TateSeries& f, const TateSeries& g) {
    TateSeries r = tate_zero(ctx);
    int T = ctx.T();
    for (int i = 0; i <= T; ++i) {
        if (f.c[i].terms.empty() && f.c[i].exact()) continue;
        for (int j = 0; i + j <= T; ++j) {
            if (g.c[j].terms.empty() && g.c[j].exact()) continue;
            r.c[i + j] = ctx.add(std::move(r.c[i + j]), ctx.mul(f.c[i], g.c[j]));
        }
    }
    // tail bounds: propagated tails and the convolution spill past t^T
    int64_t gf = tate_gauss_lognorm(ctx, f), gg = tate_gauss_lognorm(ctx, g);
    int64_t tail = kExactFloor;
    if (!f.tail_exact()) tail = std::max(tail, f.tail_num + std::max(gg, g.tail_num));
    if (!g.tail_exact()) tail = std::max(tail, g.tail_num + std::max(gf, f.tail_num));
    {
        // max over k+l > T of |f_k||g_l| via suffix maxima of g
        std::vector<int64_t> suf(T + 2, kExactFloor);
        for (int j = T; j >= 0; --j)
            suf[j] = std::max(suf[j + 1], ctx.lognorm_num(g.c[j]));
        for (int i = 0; i <= T; ++i) {
            int64_t fi = ctx.lognorm_num(f.c[i]);
            if (fi <= kFloorSentinelCut) continue;
            int jmin = T - i + 1;
            if (jmin <= T && suf[jmin] > kFloorSentinelCut)
                tail = std::max(tail, fi + suf[jmin]);
        }
    }
    r.tail_num = tail;
    return r;
}

inline TateSeries tate_twist(Context& ctx, TateSeries f, int n) {
    for (auto& a : f.c) a = ctx.frobenius(std::move(a), n);
    if (!f.tail_exact()) {
        if (n >= 0) {
            int64_t s = 1;
            for (int i = 0; i < n; ++i) s *= ctx.q();
            f.tail_num *= s;
        } else {
            int64_t s = 1;
            for (int i = 0; i < -n; ++i) s *= ctx.q();
            int64_t t = f.tail_num;
            f.tail_num = (t >= 0) ? (t + s - 1) / s : -((-t) / s);
        }
    }
    return f;
}

inline TateSeries tate_invert(const Context& ctx, const TateSeries& f) {
    if (f.c[0].terms.empty())
        throw NotAUnit("constant term is zero (to precision); series is not invertible");
    int T = ctx.T();
    CInfElem c0inv = ctx.invert(f.c[0]);
    // f = f0 (1 + u) with u = f0^{-1}(f - f0); Neumann series terminates mod t^{T+1}
    TateSeries u = tate_zero(ctx);
    for (int k = 1; k <= T; ++k) u.c[k] = ctx.neg(ctx.mul(f.c[k], c0inv));
    TateSeries geo = tate_one(ctx);
    TateSeries term = tate_one(ctx);
    for (int k = 1; k <= T; ++k) {
        term = tate_mul(ctx, term, u);
        if (tate_is_zero(ctx, term)) break;
        geo = tate_add(ctx, geo, term);
    }
    TateSeries r = tate_scale(ctx, std::move(geo), c0inv);
    if (!f.tail_exact())
        r.tail_num = std::max(r.tail_num,
                              f.tail_num - 2 * ctx.lognorm_num(f.c[0]));
    else if (!tate_is_zero(ctx, u))
        r.tail_num = std::max(r.tail_num, ctx.lognorm_num(r.c[T]));
    return r;
}

inline TateSeries tate_pow(const Context& ctx, const TateSeries& f, int n) {
    TateSeries r = tate_one(ctx);
    for (int i = 0; i < n; ++i) r = tate_mul(ctx, r, f);
    return r;
}

// Evaluation at x. Exact finite sum for exact-tail series; otherwise the
// omitted tail must be certifiably below the working window.
inline CInfElem tate_eval(const Context& ctx, const TateSeries& f, const CInfElem& x) {
    int T = ctx.T();
    int64_t xlog = x.terms.empty() ? kExactFloor : x.terms.front().j;
    int last = -1;
    for (int k = T; k >= 0; --k)
        if (!(f.c[k].terms.empty() && f.c[k].exact())) {
            last = k;
            break;
        }
    CInfElem acc = ctx.zero_exact();
    CInfElem xp = ctx.one();
    std::vector<int64_t> termlog;
    for (int k = 0; k <= last; ++k) {
        if (!(f.c[k].terms.empty() && f.c[k].exact())) {
            acc = ctx.add(std::move(acc), ctx.mul(f.c[k], xp));
            termlog.push_back(ctx.lognorm_num(f.c[k]) +
                              (xlog <= kFloorSentinelCut ? 0 : k * xlog));
        }
        if (k < last) xp = ctx.mul(std::move(xp), x);
    }
    if (!f.tail_exact()) {
        if (xlog > 0) {
            // certificate: known term norms must end decreasing, and the sup
            // bound for the first omitted term must fall below the window
            int H = (int)std::min<size_t>(3, termlog.size() > 1 ? termlog.size() - 1 : 0);
            for (int i = 0; i < H; ++i) {
                size_t n = termlog.size();
                if (termlog[n - 1 - i] > termlog[n - 2 - i])
                    throw DivergentEvaluation("term norms grow at t-degree tail",
                                              (int)(n - 1 - i));
            }
            int64_t omitted = f.tail_num + (int64_t)(T + 1) * xlog;
            int64_t target = ctx.lognorm_num(acc) - ctx.window();
            if (omitted > target)
                throw DivergentEvaluation("omitted tail not certifiably below window", T + 1);
            ctx.lift(acc);
            acc.floor_num = std::max(acc.floor_num, omitted);
        } else {
            ctx.lift(acc);
            int64_t omitted = f.tail_num + (xlog <= kFloorSentinelCut ? 0 : (T + 1) * xlog);
            acc.floor_num = std::max(acc.floor_num, omitted);
        }
        if (acc.floor_num > kFloorSentinelCut)
            std::erase_if(acc.terms, [&](const CTerm& t) { return t.j <= acc.floor_num; });
    }
    return acc;
}

// First n coefficients of the (t-theta)-adic expansion, ascending (c_0..c_{n-1}).
// Each step divides synthetically by (t - theta) and evaluates at theta.
inline std::vector<CInfElem> tate_theta_jet(const Context& ctx, TateSeries f, int n) {
    std::vector<CInfElem> out;
    out.reserve(n);
    int T = ctx.T();
    CInfElem th = ctx.theta();
    for (int step = 0; step < n; ++step) {
        out.push_back(tate_eval(ctx, f, th));
        TateSeries g = tate_zero(ctx);
        CInfElem carry = ctx.zero_exact();
        for (int k = T - 1; k >= 0; --k) {
            // g_k = f_{k+1} + theta*g_{k+1}
            carry = ctx.add(f.c[k + 1], ctx.mul(carry, th));
            g.c[k] = carry;
        }
        if (!f.tail_exact()) g.tail_num = f.tail_num + (int64_t)T * ctx.e();
        f = std::move(g);
    }
    return out;
}

// spec order: (c_{n-1}, ..., c_1, c_0)
inline std::vector<CInfElem> tate_theta_expand(const Context& ctx, const TateSeries& f, int n) {
    auto asc = tate_theta_jet(ctx, f, n);
    return {asc.rbegin(), asc.rend()};
}

// Operational entireness: coefficient root-norms non-increasing and negative
// at the far end.
inline bool tate_entire_certified(const Context& ctx, const TateSeries& f) {
    bool have_prev = false;
    double prev = 0.0, lastu = 0.0;
    bool any = false;
    for (int k = 1; k <= ctx.T(); ++k) {
        int64_t ln = ctx.lognorm_num(f.c[k]);
        if (ln <= kFloorSentinelCut) continue;
        double u = (double)ln / ((double)k * (double)ctx.e());
        if (have_prev && u > prev + 1e-12) return false;
        prev = u;
        lastu = u;
        have_prev = true;
        any = true;
    }
    return !any || lastu < 0.0;
}

// distance of every t-coefficient from an F_q constant; returns the largest
// residual log-norm (kExactFloor when exactly F_q[t])
inline int64_t tate_fq_distance(const Context& ctx, const TateSeries& f) {
    int64_t worst = kExactFloor;
    for (const auto& a : f.c) {
        CInfElem r = a;
        ctx.lift(r);
        FqElem c0 = ctx.digit(r, 0);
        FqElem fq = ctx.tower().fq_part(c0);
        r = ctx.sub(r, ctx.constant(fq));
        worst = std::max(worst, ctx.lognorm_num(r));
    }
    if (!f.tail_exact()) worst = std::max(worst, f.tail_num);
    return worst;
}

enum class TateOp { add, mul };

inline TateSeries tate_arith(const Context& ctx, const TateSeries& f, const TateSeries& g,
                             TateOp op) {
    return op == TateOp::add ? tate_add(ctx, f, g) : tate_mul(ctx, f, g);
}

}  // namespace carlitz
