#pragma once

#include <map>

#include "carlitz/aschreier.hpp"

namespace carlitz {

// t-degree of the truncated product defining omega: factors beyond it deviate
// from 1 below the precision window.
inline int omega_product_depth(const Context& ctx) {
    if (ctx.params().omega_depth > 0) return ctx.params().omega_depth;
    // deep enough that even after one inverse twist the first omitted factor
    // sits below the window
    int64_t need = ctx.P() + 16;
    int64_t pw = 1;
    int i = 0;
    while (pw < need) {
        pw *= ctx.q();
        ++i;
    }
    return std::max(i, 2);
}

// small (t-theta)-adic jets: coefficient vectors ascending, fixed length
struct ThetaJet {
    std::vector<CInfElem> c;
};

inline ThetaJet jet_mul(const Context& ctx, const ThetaJet& a, const ThetaJet& b) {
    size_t n = a.c.size();
    ThetaJet r;
    r.c.assign(n, ctx.zero_exact());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j)
            r.c[i + j] = ctx.add(std::move(r.c[i + j]), ctx.mul(a.c[i], b.c[j]));
    return r;
}

inline ThetaJet jet_invert(const Context& ctx, const ThetaJet& a) {
    size_t n = a.c.size();
    ThetaJet r;
    r.c.assign(n, ctx.zero_exact());
    CInfElem inv0 = ctx.invert(a.c[0]);
    r.c[0] = inv0;
    for (size_t k = 1; k < n; ++k) {
        CInfElem s = ctx.zero_exact();
        for (size_t j = 1; j <= k; ++j) s = ctx.add(std::move(s), ctx.mul(a.c[j], r.c[k - j]));
        r.c[k] = ctx.neg(ctx.mul(std::move(s), inv0));
    }
    return r;
}

inline ThetaJet jet_pow(const Context& ctx, const ThetaJet& a, int s) {
    ThetaJet r;
    r.c.assign(a.c.size(), ctx.zero_exact());
    r.c[0] = ctx.one();
    for (int i = 0; i < s; ++i) r = jet_mul(ctx, r, a);
    return r;
}

// Cache of the special constants: omega, its inverse, the Carlitz period,
// and the L/D/Lt factorial ladders.
class SpecialCache {
  public:
    explicit SpecialCache(Context& ctx) : ctx_(ctx), depth_(omega_product_depth(ctx)) {
        build_omega();
        grow_factorials(8);
    }

    Context& ctx() { return ctx_; }
    int depth() const { return depth_; }

    const TateSeries& omega() const { return omega_; }

    const TateSeries& omega_inv() {
        if (omega_inv_.c.empty()) omega_inv_ = tate_invert(ctx_, omega_);
        return omega_inv_;
    }

    const CInfElem& pi_tilde() const { return pi_; }

    // pi^s for s >= 0 (cached)
    CInfElem pi_pow(int s) {
        auto it = pi_pows_.find(s);
        if (it != pi_pows_.end()) return it->second;
        CInfElem v = ctx_.one();
        for (int i = 0; i < s; ++i) v = ctx_.mul(std::move(v), pi_);
        pi_pows_.emplace(s, v);
        return v;
    }

    const TateSeries& omega_pow(int s) {
        auto it = omega_pows_.find(s);
        if (it == omega_pows_.end()) {
            TateSeries v = s == 0 ? tate_one(ctx_) : tate_mul(ctx_, omega_pow(s - 1), omega_);
            it = omega_pows_.emplace(s, std::move(v)).first;
        }
        return it->second;
    }

    const TateSeries& omega_inv_pow(int s) {
        auto it = omega_inv_pows_.find(s);
        if (it == omega_inv_pows_.end()) {
            TateSeries v =
                s == 0 ? tate_one(ctx_) : tate_mul(ctx_, omega_inv_pow(s - 1), omega_inv());
            it = omega_inv_pows_.emplace(s, std::move(v)).first;
        }
        return it->second;
    }

    // ascending (t-theta)-jet of omega^{-s} to length n
    ThetaJet omega_inv_jet(int s, int n) {
        ThetaJet base;
        base.c = tate_theta_jet(ctx_, omega_, n);
        return jet_pow(ctx_, jet_invert(ctx_, base), s);
    }

    const CInfElem& L(size_t i) {
        grow_factorials(i);
        return L_[i];
    }
    const CInfElem& D(size_t i) {
        grow_factorials(i);
        return D_[i];
    }
    const TateSeries& Lt(size_t i) {
        grow_factorials(i);
        return Lt_[i];
    }

    size_t factorial_depth() const { return L_.size() - 1; }

  private:
    Context& ctx_;
    int depth_;
    TateSeries omega_, omega_inv_;
    CInfElem pi_;
    std::vector<CInfElem> L_, D_;
    std::vector<TateSeries> Lt_;
    std::map<int, TateSeries> omega_pows_, omega_inv_pows_;
    std::map<int, CInfElem> pi_pows_;

    void build_omega() {
        int64_t q = ctx_.q();
        FqElem gamma = ctx_.gamma();
        // (-theta)^{-q/(q-1)} for the fixed root gamma * theta^{1/(q-1)}
        FqElem g_inv_q = ctx_.tower().inv(ctx_.tower().pow(gamma, (uint64_t)q));
        int64_t jlead = -q * (ctx_.e() / (q - 1));
        TateSeries acc = tate_from_cinf(ctx_, ctx_.monomial(g_inv_q, jlead));
        int64_t pw = 1;
        for (int i = 1; i <= depth_; ++i) {
            pw *= q;
            TateSeries factor = tate_one(ctx_);
            factor.c[1] = ctx_.neg(ctx_.monomial(ctx_.tower().one(), -pw * ctx_.e()));
            acc = tate_mul(ctx_, acc, factor);
        }
        // the truncated product is an exact polynomial; the omitted factors
        // contribute relative error below q^{-q^{depth+1}}, folded into floors
        int64_t qpow = 1;
        for (int i = 0; i <= depth_ && qpow < 4 * ctx_.P(); ++i) qpow *= q;
        int64_t relerr = -std::min<int64_t>(qpow, 4 * ctx_.P()) * ctx_.e();
        for (auto& a : acc.c) {
            if (a.terms.empty()) continue;
            ctx_.lift(a);
            a.floor_num = std::max(a.floor_num, a.terms.front().j + relerr);
        }
        omega_ = std::move(acc);
        pi_ = ctx_.invert(tate_eval(ctx_, omega_, ctx_.theta()));
    }

    void grow_factorials(size_t imax) {
        if (L_.empty()) {
            L_.push_back(ctx_.one());
            D_.push_back(ctx_.one());
            Lt_.push_back(tate_one(ctx_));
        }
        int64_t q = ctx_.q();
        while (L_.size() <= imax) {
            size_t i = L_.size();
            int64_t pw = ctx_.e();
            for (size_t k = 0; k < i; ++k) pw *= q;  // q^i * e
            CInfElem thqi = ctx_.monomial(ctx_.tower().one(), pw);
            L_.push_back(ctx_.mul(L_.back(), ctx_.sub(ctx_.theta(), thqi)));
            CInfElem dd = D_.back();
            dd = ctx_.frobenius(std::move(dd), 1);
            D_.push_back(ctx_.mul(std::move(dd), ctx_.sub(thqi, ctx_.theta())));
            TateSeries fac = tate_from_cinf(ctx_, ctx_.neg(thqi));
            fac.c[1] = ctx_.one();
            Lt_.push_back(tate_mul(ctx_, Lt_.back(), fac));
        }
    }
};

inline TateSeries build_omega(SpecialCache& sc) { return sc.omega(); }

}  // namespace carlitz
