#pragma once

#include "carlitz/tate.hpp"

namespace carlitz {

// wp(f) = f - f^{(1)}
inline TateSeries wp(Context& ctx, const TateSeries& f) {
    return tate_sub(ctx, f, tate_twist(ctx, f, 1));
}

inline CInfElem wp_coeff(Context& ctx, const CInfElem& a) {
    return ctx.sub(a, ctx.frobenius(a, 1));
}

// Canonical coefficient solve of b - b^q = a.
//  (i) exponents > 0 are peeled by q-th roots of the dominant part;
//  (ii) an exponent-0 digit is an Artin-Schreier equation in the constants,
//       solved there (extending the constant field when needed);
//  (iii) the remaining |a| < 1 part sums the convergent tail;
//  (iv) the F_q-part of the theta^0 digit is projected away, fixing the
//       coset representative.
// Peeling exponents only approach 0 (never reach it), so inputs whose
// dominant exponent is positive stall; that raises PrecisionExhausted.
inline CInfElem wp_inv_coeff(Context& ctx, CInfElem a) {
    ctx.lift(a);
    CInfElem b = ctx.zero_exact();
    int64_t e_entry = ctx.e();
    int64_t e_limit = e_entry;
    for (int i = 0; i < 3; ++i) e_limit *= ctx.q();

    int peels = 0;
    while (!a.terms.empty() && a.terms.front().j > 0) {
        if (++peels > 64 || ctx.e() > e_limit)
            throw PrecisionExhausted("leading-term peeling stalls");
        CInfElem dom = a;
        ctx.lift(dom);
        std::erase_if(dom.terms, [](const CTerm& t) { return t.j <= 0; });
        dom.floor_num = kExactFloor;
        CInfElem r = ctx.qth_root(ctx.neg(dom));
        b = ctx.add(std::move(b), r);
        a = ctx.sub(std::move(a), ctx.sub(r, ctx.frobenius(r, 1)));
    }
    if (!a.terms.empty() && a.terms.front().j == 0) {
        FqElem c0 = ctx.digit(a, 0);
        FqElem x = ctx.solve_as_constant(c0);
        b = ctx.add(std::move(b), ctx.constant(x));
        a = ctx.sub(std::move(a), ctx.constant(c0));  // x - x^q = c0 exactly
    }
    // convergent tail sum_{k>=0} a^{q^k}
    if (!a.terms.empty()) {
        int64_t target = a.exact() ? ctx.seed_floor(a.terms.front().j) : a.floor_num;
        CInfElem term = a;
        while (!term.terms.empty() && term.terms.front().j > target) {
            b = ctx.add(std::move(b), term);
            term = ctx.frobenius(std::move(term), 1);
        }
        ctx.lift(b);
        b.floor_num = std::max(b.floor_num, target);
        std::erase_if(b.terms, [&](const CTerm& t) { return t.j <= b.floor_num; });
    } else if (!a.exact()) {
        ctx.lift(b);
        b.floor_num = std::max(b.floor_num, a.floor_num);
        std::erase_if(b.terms, [&](const CTerm& t) { return t.j <= b.floor_num; });
    }
    // canonical representative: no F_q-component in the theta^0 digit
    FqElem d0 = ctx.digit(b, 0);
    FqElem fq = ctx.tower().fq_part(d0);
    if (!ctx.tower().is_zero(fq)) b = ctx.sub(std::move(b), ctx.constant(fq));
    return b;
}

inline TateSeries wp_inv(Context& ctx, const TateSeries& g) {
    TateSeries b = tate_zero(ctx);
    for (int k = 0; k <= ctx.T(); ++k) b.c[k] = wp_inv_coeff(ctx, g.c[k]);
    b.tail_num = g.tail_num;
    tate_lift(ctx, b);
    return b;
}

// The full solution coset b + F_q[t]_{<= deg}.
struct ASCoset {
    TateSeries canonical;
    int deg;
};

inline ASCoset wp_inv_all_branches(Context& ctx, const TateSeries& g, int deg) {
    return ASCoset{wp_inv(ctx, g), deg};
}

// series of an F_q[t] element given by its coefficient indices (base-p digits
// of each index encode the F_q element)
inline TateSeries fqt_series(const Context& ctx, const std::vector<int64_t>& coeff_idx) {
    TateSeries f = tate_zero(ctx);
    for (size_t k = 0; k < coeff_idx.size() && (int)k <= ctx.T(); ++k)
        f.c[k] = ctx.constant(ctx.tower().fq_element(coeff_idx[k]));
    return f;
}

// enumeration helper for small q and degree
inline std::vector<TateSeries> enumerate_branches(Context& ctx, const ASCoset& coset) {
    int64_t q = ctx.q();
    int64_t count = 1;
    for (int i = 0; i <= coset.deg; ++i) {
        count *= q;
        if (count > 4096) throw UsageError("branch enumeration too large");
    }
    std::vector<TateSeries> out;
    out.reserve(count);
    for (int64_t code = 0; code < count; ++code) {
        int64_t v = code;
        std::vector<int64_t> idx(coset.deg + 1, 0);
        for (int k = 0; k <= coset.deg; ++k, v /= q) idx[k] = v % q;
        out.push_back(tate_add(ctx, coset.canonical, fqt_series(ctx, idx)));
    }
    return out;
}

}  // namespace carlitz
