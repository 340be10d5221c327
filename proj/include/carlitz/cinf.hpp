#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "carlitz/ffield.hpp"

namespace carlitz {

// Exponents of theta are rationals j/e with a context-global denominator e.
// Anything at or below the floor exponent is unknown; the floor is propagated
// honestly through every operation. EXACT marks values with no error term.
inline constexpr int64_t kExactFloor = INT64_MIN / 4;
inline constexpr int64_t kFloorSentinelCut = INT64_MIN / 8;

struct CTerm {
    int64_t j;  // exponent numerator over the context ramification e
    FqElem c;
};

struct CInfElem {
    int ver = 0;
    int64_t floor_num = kExactFloor;  // largest unknown exponent numerator
    std::vector<CTerm> terms;         // descending j, nonzero coefficients, j > floor

    bool known_zero() const { return terms.empty(); }
    bool exact() const { return floor_num <= kFloorSentinelCut; }
    int64_t top(int64_t fallback_floor) const {
        return terms.empty() ? fallback_floor : terms.front().j;
    }
};

struct Params {
    int T = 32;   // t-adic truncation order
    int P = 64;   // precision window in whole theta-digits
    int R = 24;   // tau depth for module exponentials
    int omega_depth = 0;  // 0 = choose from P
};

// Computation context: the constant-field tower, the ramification index e,
// truncation parameters, and the snapshot list that lets elements created
// before an extension be re-indexed losslessly.
class Context {
  public:
    Context(int p, int mq, Params prm = {})
        : tower_(p, mq), prm_(prm), e_((tower_.q() - 1) > 0 ? tower_.q() - 1 : 1) {
        if (prm_.T < 4) throw UsageError("T must be >= 4");
        if (prm_.P < 8) throw UsageError("P must be >= 8");
        snaps_.push_back({tower_.version(), e_});
    }

    static Context from_q(int64_t q, Params prm = {}) {
        for (int p = 2; p <= q; ++p) {
            bool prime = true;
            for (int d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (!prime) continue;
            int64_t v = q;
            int mq = 0;
            while (v % p == 0) {
                v /= p;
                ++mq;
            }
            if (v == 1 && mq >= 1) return Context(p, mq, prm);
        }
        throw UsageError("q is not a prime power");
    }

    Tower& tower() { return tower_; }
    const Tower& tower() const { return tower_; }
    int64_t q() const { return tower_.q(); }
    int p() const { return tower_.p(); }
    int64_t e() const { return e_; }
    int T() const { return prm_.T; }
    int P() const { return prm_.P; }
    int R() const { return prm_.R; }
    const Params& params() const { return prm_; }

    int version() const { return (int)snaps_.size() - 1; }
    int64_t window() const { return (int64_t)prm_.P * e_; }
    // comparison tolerance exponent numerator: q^{-P/2}
    int64_t tol_num() const { return -(int64_t)prm_.P * e_ / 2; }

    void extend_ramification(int factor) {
        if (factor <= 1) return;
        e_ *= factor;
        snaps_.push_back({tower_.version(), e_});
    }

    void extend_constants(int factor) {
        if (factor <= 1) return;
        tower_.extend(factor);
        snaps_.push_back({tower_.version(), e_});
    }

    FqElem solve_as_constant(const FqElem& c) {
        int tv = tower_.version();
        FqElem x = tower_.solve_artin_schreier(c);
        if (tower_.version() != tv) snaps_.push_back({tower_.version(), e_});
        return x;
    }

    FqElem gamma() {
        if (!gamma_) {
            int tv = tower_.version();
            gamma_ = tower_.gamma();
            if (tower_.version() != tv) snaps_.push_back({tower_.version(), e_});
        }
        return tower_.lifted(*gamma_);
    }

    //-- lifting ---------------------------------------------------------------

    void lift(CInfElem& a) const {
        if (a.ver == version()) return;
        if (a.ver > version()) throw TowerMismatch("element from a newer context");
        int64_t eold = snaps_[a.ver].e;
        int64_t scale = e_ / eold;
        for (auto& t : a.terms) {
            t.j *= scale;
            tower_.lift(t.c);
        }
        if (!a.exact()) a.floor_num *= scale;
        a.ver = version();
    }
    CInfElem lifted(CInfElem a) const {
        lift(a);
        return a;
    }

    //-- construction ------------------------------------------------------------

    CInfElem zero_exact() const { return CInfElem{version(), kExactFloor, {}}; }

    CInfElem zero_to_precision(int64_t floor_num) const {
        return CInfElem{version(), floor_num, {}};
    }

    CInfElem constant(FqElem c) const {
        tower_.lift(c);
        CInfElem r = zero_exact();
        if (!tower_.is_zero(c)) r.terms.push_back({0, std::move(c)});
        return r;
    }

    CInfElem from_int(int64_t v) const { return constant(tower_.from_int(v)); }

    CInfElem one() const { return from_int(1); }

    // c * theta^{jnum/e}
    CInfElem monomial(FqElem c, int64_t jnum) const {
        tower_.lift(c);
        CInfElem r = zero_exact();
        if (!tower_.is_zero(c)) r.terms.push_back({jnum, std::move(c)});
        return r;
    }

    CInfElem theta(int64_t power = 1) const {
        return monomial(tower_.one(), power * e_);
    }

    //-- predicates / access -------------------------------------------------------

    bool is_zero_to_precision(const CInfElem& a) const { return a.terms.empty(); }

    // norm exponent as a reduced rational (num, den); nullopt for zero
    std::optional<std::pair<int64_t, int64_t>> norm_exponent(CInfElem a) const {
        lift(a);
        if (a.terms.empty()) return std::nullopt;
        int64_t num = a.terms.front().j, den = e_;
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return std::make_pair(num, den);
    }

    // log_q |a| * e, i.e. the exponent numerator; fallback for zero values
    int64_t lognorm_num(const CInfElem& a) const {
        return a.terms.empty() ? a.floor_num : a.terms.front().j;
    }

    FqElem digit(CInfElem a, int64_t jnum) const {
        lift(a);
        for (const auto& t : a.terms)
            if (t.j == jnum) return t.c;
        return tower_.zero();
    }

    //-- arithmetic -------------------------------------------------------------

    CInfElem add(CInfElem a, CInfElem b) const {
        lift(a);
        lift(b);
        CInfElem r;
        r.ver = version();
        r.floor_num = std::max(a.floor_num, b.floor_num);
        r.terms.reserve(a.terms.size() + b.terms.size());
        size_t i = 0, k = 0;
        while (i < a.terms.size() || k < b.terms.size()) {
            bool ta = i < a.terms.size();
            bool tb = k < b.terms.size();
            int64_t j;
            FqElem c;
            if (ta && (!tb || a.terms[i].j > b.terms[k].j)) {
                j = a.terms[i].j;
                c = a.terms[i].c;
                ++i;
            } else if (tb && (!ta || b.terms[k].j > a.terms[i].j)) {
                j = b.terms[k].j;
                c = b.terms[k].c;
                ++k;
            } else {
                j = a.terms[i].j;
                c = tower_.add(a.terms[i].c, b.terms[k].c);
                ++i;
                ++k;
            }
            if (j <= r.floor_num) break;
            if (!tower_.is_zero(c)) r.terms.push_back({j, std::move(c)});
        }
        return r;
    }

    CInfElem neg(CInfElem a) const {
        lift(a);
        for (auto& t : a.terms) t.c = tower_.neg(t.c);
        return a;
    }

    CInfElem sub(CInfElem a, CInfElem b) const { return add(std::move(a), neg(std::move(b))); }

    CInfElem mul(CInfElem a, CInfElem b) const {
        lift(a);
        lift(b);
        CInfElem r;
        r.ver = version();
        int64_t ta = a.top(a.floor_num), tb = b.top(b.floor_num);
        r.floor_num = mul_floor(a, b, ta, tb);
        if (a.terms.empty() || b.terms.empty()) return r;
        // accumulate into a map keyed by exponent
        std::map<int64_t, FqElem, std::greater<int64_t>> acc;
        FqElem tmp = tower_.zero();
        for (const auto& x : a.terms) {
            if (x.j + tb <= r.floor_num) break;
            for (const auto& y : b.terms) {
                int64_t j = x.j + y.j;
                if (j <= r.floor_num) break;
                tower_.mul_into(x.c, y.c, tmp);
                if (tower_.is_zero(tmp)) continue;
                auto it = acc.find(j);
                if (it == acc.end())
                    acc.emplace(j, tmp);
                else
                    tower_.add_into(it->second, tmp);
            }
        }
        for (auto& [j, c] : acc)
            if (!tower_.is_zero(c)) r.terms.push_back({j, std::move(c)});
        return r;
    }

    CInfElem scale(CInfElem a, const FqElem& s) const {
        lift(a);
        FqElem sl = tower_.lifted(s);
        if (tower_.is_zero(sl)) return zero_exact();
        FqElem tmp = tower_.zero();
        for (auto& t : a.terms) {
            tower_.mul_into(t.c, sl, tmp);
            t.c = tmp;
        }
        std::erase_if(a.terms, [&](const CTerm& t) { return tower_.is_zero(t.c); });
        return a;
    }

    // shift exponents by jnum/e
    CInfElem shift(CInfElem a, int64_t jnum) const {
        lift(a);
        for (auto& t : a.terms) t.j += jnum;
        if (!a.exact()) a.floor_num += jnum;
        return a;
    }

    CInfElem invert(CInfElem b) const {
        lift(b);
        if (b.terms.empty()) throw DivisionByZero(b.exact() ? "inverse of zero"
                                                            : "inverse of zero-to-precision");
        int64_t tb = b.terms.front().j;
        int64_t rtop = -tb;
        int64_t rfloor = rtop - window();
        if (!b.exact()) rfloor = std::max(rfloor, b.floor_num - 2 * tb);
        FqElem lead_inv = tower_.inv(b.terms.front().c);
        // b = c th^tb (1+u); 1/b = c^{-1} th^{-tb} sum (-u)^k
        CInfElem u;  // -u, exponents relative
        u.ver = version();
        u.floor_num = b.exact() ? kExactFloor : b.floor_num - tb;
        FqElem tmp = tower_.zero();
        for (size_t i = 1; i < b.terms.size(); ++i) {
            tower_.mul_into(b.terms[i].c, lead_inv, tmp);
            u.terms.push_back({b.terms[i].j - tb, tower_.neg(tmp)});
        }
        CInfElem geo = one();
        CInfElem term = one();
        if (!u.terms.empty()) {
            int64_t ustep = u.terms.front().j;  // < 0
            int64_t needed = rfloor - rtop;     // < 0
            u = truncate(std::move(u), needed);
            int guard = (int)(needed / ustep) + 2;
            for (int k = 0; k < guard; ++k) {
                term = truncate(mul(term, u), needed);
                if (term.terms.empty() || term.terms.front().j <= needed) break;
                geo = add(geo, term);
            }
        }
        CInfElem r = scale(shift(std::move(geo), rtop), lead_inv);
        lift(r);
        r.floor_num = std::max(r.floor_num, rfloor);
        std::erase_if(r.terms, [&](const CTerm& t) { return t.j <= r.floor_num; });
        return r;
    }

    CInfElem div(CInfElem a, CInfElem b) const { return mul(std::move(a), invert(std::move(b))); }

    // raise the floor and drop what falls at or below it
    CInfElem truncate(CInfElem a, int64_t floor_num) const {
        lift(a);
        if (floor_num <= a.floor_num) return a;
        a.floor_num = floor_num;
        std::erase_if(a.terms, [&](const CTerm& t) { return t.j <= floor_num; });
        return a;
    }

    // exact q^n-power (n may be negative; negative powers may extend e)
    CInfElem frobenius(CInfElem a, int n) {
        lift(a);
        if (n == 0) return a;
        if (n > 0) {
            int64_t scale = 1;
            for (int i = 0; i < n; ++i) scale *= q();
            for (auto& t : a.terms) {
                t.j *= scale;
                t.c = tower_.frobenius(t.c, n);
            }
            if (!a.exact()) a.floor_num *= scale;
            return a;
        }
        // q^n-th roots, n < 0
        for (int step = 0; step < -n; ++step) {
            int64_t qq = q();
            bool need_ext = false;
            for (const auto& t : a.terms)
                if (t.j % qq != 0) {
                    need_ext = true;
                    break;
                }
            if (need_ext) {
                extend_ramification((int)qq);
                lift(a);
            }
            for (auto& t : a.terms) {
                t.j /= qq;
                t.c = tower_.frobenius(t.c, -1);
            }
            if (!a.exact()) {
                // conservative ceil for the unknown part
                int64_t f = a.floor_num;
                a.floor_num = (f >= 0) ? (f + qq - 1) / qq : -((-f) / qq);
            }
        }
        return a;
    }

    CInfElem qth_root(CInfElem a) { return frobenius(std::move(a), -1); }

    //-- comparison helpers -------------------------------------------------------

    // true if |a| <= q^{tol/e}
    bool below(const CInfElem& a, int64_t tolnum) const {
        return a.terms.empty() || a.terms.front().j <= tolnum;
    }

    bool close(const CInfElem& a, const CInfElem& b, int64_t tolnum) const {
        return below(sub(a, b), tolnum);
    }

    //-- rendering -----------------------------------------------------------------

    std::string digit_string(const FqElem& c) const {
        if (tower_.dim() == 1) return std::to_string((int)c.digits[0]);
        std::string s = "[";
        for (size_t i = 0; i < c.digits.size(); ++i) {
            if (i) s += ",";
            s += std::to_string((int)c.digits[i]);
        }
        return s + "]";
    }

    std::string to_string(CInfElem a, size_t max_terms = 8) const {
        lift(a);
        if (a.terms.empty()) return a.exact() ? "0" : "O(th^" + expstr(a.floor_num) + ")";
        std::string s;
        size_t n = std::min(max_terms, a.terms.size());
        for (size_t i = 0; i < n; ++i) {
            if (i) s += " + ";
            s += digit_string(a.terms[i].c);
            if (a.terms[i].j != 0) s += "*th^" + expstr(a.terms[i].j);
        }
        if (n < a.terms.size()) s += " + ...";
        if (!a.exact()) s += " + O(th^" + expstr(a.floor_num) + ")";
        return s;
    }

    std::string expstr(int64_t jnum) const {
        int64_t g = std::gcd(jnum < 0 ? -jnum : jnum, e_);
        int64_t num = jnum / g, den = e_ / g;
        if (den == 1) return std::to_string(num);
        return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
    }

    // default window floor for a freshly truncated value with given top
    int64_t seed_floor(int64_t top) const { return top - window(); }

  private:
    struct Snap {
        int tower_ver;
        int64_t e;
    };
    Tower tower_;
    Params prm_;
    int64_t e_;
    std::vector<Snap> snaps_;
    std::optional<FqElem> gamma_;

    int64_t mul_floor(const CInfElem& a, const CInfElem& b, int64_t ta, int64_t tb) const {
        if (a.exact() && b.exact() && !a.terms.empty() && !b.terms.empty())
            return kExactFloor;
        if (a.exact() && a.terms.empty()) return b.exact() ? kExactFloor : kExactFloor;
        if (b.exact() && b.terms.empty()) return kExactFloor;
        int64_t f = kExactFloor;
        if (!a.exact()) f = std::max(f, a.floor_num + tb);
        if (!b.exact()) f = std::max(f, b.floor_num + ta);
        if (!a.exact() && !b.exact()) f = std::max(f, a.floor_num + b.floor_num);
        return f;
    }
};

//-- spec-facing free functions ---------------------------------------------------

enum class CinfOp { add, mul, div };

inline CInfElem cinf_arith(Context& ctx, const CInfElem& a, const CInfElem& b, CinfOp op) {
    switch (op) {
        case CinfOp::add:
            return ctx.add(a, b);
        case CinfOp::mul:
            return ctx.mul(a, b);
        case CinfOp::div:
            return ctx.div(a, b);
    }
    throw UsageError("unknown cinf op");
}

inline std::optional<std::pair<int64_t, int64_t>> cinf_norm(Context& ctx, const CInfElem& a) {
    return ctx.norm_exponent(a);
}

inline CInfElem cinf_qth_root(Context& ctx, const CInfElem& a) { return ctx.qth_root(a); }

inline CInfElem cinf_frobenius(Context& ctx, const CInfElem& a, int n) {
    return ctx.frobenius(a, n);
}

}  // namespace carlitz
