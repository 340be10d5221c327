#include <gtest/gtest.h>

#include <random>

#include "carlitz/cinf.hpp"

using namespace carlitz;

namespace {

CInfElem random_elem(Context& ctx, std::mt19937_64& rng, int nterms, int64_t jhi, int64_t jlo) {
    CInfElem r = ctx.zero_exact();
    for (int i = 0; i < nterms; ++i) {
        int64_t j = jlo + (int64_t)(rng() % (uint64_t)(jhi - jlo + 1));
        int64_t idx = 1 + (int64_t)(rng() % (uint64_t)(ctx.q() - 1));
        r = ctx.add(std::move(r), ctx.monomial(ctx.tower().fq_element(idx), j));
    }
    return r;
}

}  // namespace

TEST(CInf, ThetaPlusTheta) {
    Context ctx(5, 1);
    auto s = cinf_arith(ctx, ctx.theta(), ctx.theta(), CinfOp::add);
    EXPECT_TRUE(ctx.close(s, ctx.scale(ctx.theta(), ctx.tower().from_int(2)), ctx.tol_num()));
}

TEST(CInf, ThetaTimesInverse) {
    Context ctx(3, 1);
    auto r = cinf_arith(ctx, ctx.theta(), ctx.invert(ctx.theta()), CinfOp::mul);
    EXPECT_TRUE(ctx.close(r, ctx.one(), ctx.tol_num()));
}

TEST(CInf, GeometricInverse) {
    // 1/(theta-1) = theta^-1 + theta^-2 + ... ; check by multiplying back
    Context ctx(5, 1);
    auto d = ctx.sub(ctx.theta(), ctx.one());
    auto inv = ctx.invert(d);
    EXPECT_EQ(ctx.norm_exponent(inv)->first, -1);
    auto back = ctx.mul(inv, d);
    EXPECT_TRUE(ctx.close(back, ctx.one(), ctx.tol_num()));
    // first digits all ones
    for (int k = 1; k <= 4; ++k)
        EXPECT_TRUE(ctx.tower().equal(ctx.digit(inv, -k * ctx.e()), ctx.tower().one()));
}

TEST(CInf, NormExamples) {
    Context ctx(3, 1);
    EXPECT_EQ(ctx.norm_exponent(ctx.theta()).value(), (std::pair<int64_t, int64_t>{1, 1}));
    // 1/(theta^2+1) has norm exponent -2
    auto x = ctx.invert(ctx.add(ctx.mul(ctx.theta(), ctx.theta()), ctx.one()));
    EXPECT_EQ(ctx.norm_exponent(x).value(), (std::pair<int64_t, int64_t>{-2, 1}));
    EXPECT_FALSE(ctx.norm_exponent(ctx.zero_exact()).has_value());
    // theta^{q/(q-1)} built from the ramified lattice
    auto frac = ctx.monomial(ctx.tower().one(), 3 * ctx.e() / 2);
    EXPECT_EQ(ctx.norm_exponent(frac).value(), (std::pair<int64_t, int64_t>{3, 2}));
}

TEST(CInf, QthRootOfThetaPowQ) {
    Context ctx(3, 1);
    auto a = ctx.theta(3);
    EXPECT_TRUE(ctx.close(cinf_qth_root(ctx, a), ctx.theta(), ctx.tol_num()));
}

TEST(CInf, QthRootExtendsRamification) {
    Context ctx(2, 1);
    EXPECT_EQ(ctx.e(), 1);
    auto r = cinf_qth_root(ctx, ctx.theta());
    EXPECT_EQ(ctx.e(), 2);
    EXPECT_EQ(ctx.norm_exponent(r).value(), (std::pair<int64_t, int64_t>{1, 2}));
    EXPECT_TRUE(ctx.close(ctx.mul(r, r), ctx.theta(), ctx.tol_num()));
}

TEST(CInf, QthRootSeries) {
    // q=2: sqrt(theta^2 + theta) squares back within floor
    Context ctx(2, 1);
    auto a = ctx.add(ctx.theta(2), ctx.theta());
    auto r = cinf_qth_root(ctx, a);
    EXPECT_TRUE(ctx.close(ctx.mul(r, r), a, ctx.tol_num()));
}

TEST(CInf, FrobeniusFixesFq) {
    Context ctx(2, 2);
    for (int64_t k = 0; k < 4; ++k) {
        auto c = ctx.constant(ctx.tower().fq_element(k));
        EXPECT_TRUE(ctx.close(cinf_frobenius(ctx, c, 1), c, ctx.tol_num()));
        EXPECT_TRUE(ctx.close(cinf_frobenius(ctx, c, -1), c, ctx.tol_num()));
    }
}

TEST(CInf, FreshmansDream) {
    Context ctx(3, 1);
    auto a = ctx.add(ctx.theta(), ctx.one());
    auto f = cinf_frobenius(ctx, a, 1);
    auto expect = ctx.add(ctx.theta(3), ctx.one());
    EXPECT_TRUE(ctx.close(f, expect, ctx.tol_num()));
}

TEST(CInf, FrobeniusRingHomAndInverse) {
    Context ctx(3, 1, Params{});
    std::mt19937_64 rng(7);
    for (int it = 0; it < 30; ++it) {
        auto a = random_elem(ctx, rng, 4, 5, -5);
        auto b = random_elem(ctx, rng, 4, 5, -5);
        auto lhs = ctx.frobenius(ctx.mul(a, b), 1);
        auto rhs = ctx.mul(ctx.frobenius(a, 1), ctx.frobenius(b, 1));
        EXPECT_TRUE(ctx.close(lhs, rhs, ctx.tol_num()));
        auto round = ctx.frobenius(ctx.frobenius(a, 1), -1);
        EXPECT_TRUE(ctx.close(round, a, ctx.tol_num()));
    }
}

TEST(CInf, UltrametricInequality) {
    Context ctx(2, 1);
    std::mt19937_64 rng(13);
    for (int it = 0; it < 50; ++it) {
        auto a = random_elem(ctx, rng, 3, 6, -6);
        auto b = random_elem(ctx, rng, 3, 6, -6);
        auto s = ctx.add(a, b);
        int64_t la = ctx.lognorm_num(a), lb = ctx.lognorm_num(b);
        int64_t ls = ctx.lognorm_num(s);
        EXPECT_LE(ls, std::max(la, lb));
        if (la != lb && !a.terms.empty() && !b.terms.empty())
            EXPECT_EQ(ls, std::max(la, lb));
    }
}

TEST(CInf, RandomQthRootRoundTrip) {
    Context ctx(3, 1);
    std::mt19937_64 rng(99);
    for (int it = 0; it < 20; ++it) {
        auto a = random_elem(ctx, rng, 4, 4, -4);
        if (a.terms.empty()) continue;
        auto r = cinf_qth_root(ctx, a);
        auto back = ctx.frobenius(r, 1);
        EXPECT_TRUE(ctx.close(back, a, ctx.tol_num()));
    }
}

TEST(CInf, DivisionByZeroThrows) {
    Context ctx(2, 1);
    EXPECT_THROW(ctx.invert(ctx.zero_exact()), DivisionByZero);
    EXPECT_THROW(ctx.invert(ctx.zero_to_precision(-5)), DivisionByZero);
}

TEST(CInf, CancellationKeepsFloor) {
    // (theta + fuzz) - theta is a zero-to-precision, not an exact zero
    Context ctx(2, 1);
    auto inv = ctx.invert(ctx.sub(ctx.theta(), ctx.one()));  // windowed value
    auto diff = ctx.sub(inv, inv);
    EXPECT_TRUE(diff.terms.empty());
    EXPECT_FALSE(diff.exact());
}

TEST(CInf, FloorPropagationThroughMul) {
    Context ctx(2, 1);
    auto inv = ctx.invert(ctx.sub(ctx.theta(), ctx.one()));
    int64_t f = inv.floor_num;
    auto prod = ctx.mul(inv, ctx.theta(4));
    EXPECT_EQ(prod.floor_num, f + 4 * ctx.e());
}
