#include <gtest/gtest.h>

#include "carlitz/special.hpp"

using namespace carlitz;

TEST(Special, OmegaLeadingCoefficient) {
    for (int64_t q : {2, 3, 4, 5}) {
        Context ctx = Context::from_q(q);
        SpecialCache sc(ctx);
        // |Omega(0)| = q^{-q/(q-1)} and the series is a unit with dominant head
        auto n = ctx.norm_exponent(sc.omega().c[0]).value();
        EXPECT_EQ(n.first * (q - 1), -q * n.second) << "q=" << q;
    }
}

TEST(Special, OmegaDifferenceEquation) {
    for (int64_t q : {2, 3, 4, 5}) {
        Context ctx = Context::from_q(q);
        SpecialCache sc(ctx);
        auto lhs = tate_twist(ctx, sc.omega(), -1);
        TateSeries tmth = tate_t_pow(ctx, 1, ctx.one());
        tmth.c[0] = ctx.neg(ctx.theta());
        auto rhs = tate_mul(ctx, tmth, sc.omega());
        auto diff = tate_sub(ctx, lhs, rhs);
        for (int k = 0; k <= ctx.T(); ++k)
            EXPECT_TRUE(ctx.below(diff.c[k], ctx.tol_num())) << "q=" << q << " k=" << k;
    }
}

TEST(Special, OmegaVanishesAtThetaQ) {
    Context ctx(3, 1);
    SpecialCache sc(ctx);
    for (int k = 1; k <= 2; ++k) {
        int64_t pw = 1;
        for (int i = 0; i < k; ++i) pw *= ctx.q();
        auto v = tate_eval(ctx, sc.omega(), ctx.theta(pw));
        EXPECT_TRUE(ctx.below(v, ctx.tol_num())) << "k=" << k;
    }
}

TEST(Special, PiNorm) {
    for (int64_t q : {2, 3, 4, 5}) {
        Context ctx = Context::from_q(q);
        SpecialCache sc(ctx);
        auto n = ctx.norm_exponent(sc.pi_tilde()).value();
        EXPECT_EQ(n.first * (q - 1), q * n.second) << "q=" << q;
    }
}

TEST(Special, PiMatchesDirectProductOracle) {
    // independent route: pi = rho^q / prod (1 - theta^{1-q^i}), no Tate series
    for (int64_t q : {2, 3, 5}) {
        Context ctx = Context::from_q(q);
        SpecialCache sc(ctx);
        FqElem gamma = ctx.gamma();
        CInfElem rho_q = ctx.monomial(ctx.tower().pow(gamma, (uint64_t)q),
                                      q * (ctx.e() / (q - 1)));
        CInfElem prod = ctx.one();
        int64_t pw = 1;
        for (int i = 1; i <= sc.depth() + 2; ++i) {
            pw *= q;
            auto factor = ctx.sub(ctx.one(), ctx.monomial(ctx.tower().one(), (1 - pw) * ctx.e()));
            prod = ctx.mul(std::move(prod), factor);
        }
        auto oracle = ctx.div(rho_q, prod);
        EXPECT_TRUE(ctx.close(sc.pi_tilde(), oracle, ctx.tol_num())) << "q=" << q;
    }
}

TEST(Special, OmegaUnitRoundTrip) {
    Context ctx(2, 1);
    SpecialCache sc(ctx);
    auto prod = tate_mul(ctx, sc.omega(), sc.omega_inv());
    EXPECT_TRUE(ctx.close(prod.c[0], ctx.one(), ctx.tol_num()));
    for (int k = 1; k <= ctx.T(); ++k) EXPECT_TRUE(ctx.below(prod.c[k], ctx.tol_num()));
}

TEST(Special, OmegaEntireCertified) {
    Context ctx(3, 1);
    SpecialCache sc(ctx);
    EXPECT_TRUE(tate_entire_certified(ctx, sc.omega()));
}

TEST(Special, FactorialValues) {
    Context ctx(3, 1);
    SpecialCache sc(ctx);
    EXPECT_TRUE(ctx.close(sc.L(0), ctx.one(), ctx.tol_num()));
    auto l1 = ctx.sub(ctx.theta(), ctx.theta(3));
    EXPECT_TRUE(ctx.close(sc.L(1), l1, ctx.tol_num()));
    // |L_i| = q^{q + q^2 + ... + q^i}
    int64_t expnum = 0, pw = 1;
    for (int i = 1; i <= 5; ++i) {
        pw *= ctx.q();
        expnum += pw;
        auto n = ctx.norm_exponent(sc.L(i)).value();
        EXPECT_EQ(n.first, expnum);
        EXPECT_EQ(n.second, 1);
    }
}

TEST(Special, CarlitzDRecursion) {
    // D_1 = theta^q - theta; alpha_1 = 1/D_1 is the first module coefficient
    Context ctx(2, 1);
    SpecialCache sc(ctx);
    auto d1 = ctx.sub(ctx.theta(2), ctx.theta());
    EXPECT_TRUE(ctx.close(sc.D(1), d1, ctx.tol_num()));
    // |D_i| = q^{i q^i}
    for (int i = 1; i <= 4; ++i) {
        int64_t qi = 1;
        for (int k = 0; k < i; ++k) qi *= ctx.q();
        EXPECT_EQ(ctx.norm_exponent(sc.D(i)).value().first, i * qi);
    }
}

TEST(Special, LtPolynomialValues) {
    Context ctx(2, 1);
    SpecialCache sc(ctx);
    // Lt_1 = t - theta^q
    auto lt1 = sc.Lt(1);
    EXPECT_TRUE(ctx.close(lt1.c[1], ctx.one(), ctx.tol_num()));
    EXPECT_TRUE(ctx.close(lt1.c[0], ctx.neg(ctx.theta(2)), ctx.tol_num()));
    // twisting omega gives omega / Lt_1
    auto tw = tate_twist(ctx, sc.omega(), 1);
    auto back = tate_mul(ctx, tw, lt1);
    auto diff = tate_sub(ctx, back, sc.omega());
    for (int k = 0; k <= ctx.T(); ++k) EXPECT_TRUE(ctx.below(diff.c[k], ctx.tol_num()));
}

TEST(Special, OmegaInvJet) {
    // order-1 jet of omega^{-1} is pi tilde itself
    Context ctx(2, 1);
    SpecialCache sc(ctx);
    auto jet = sc.omega_inv_jet(1, 1);
    ASSERT_EQ(jet.c.size(), 1u);
    EXPECT_TRUE(ctx.close(jet.c[0], sc.pi_tilde(), ctx.tol_num()));
    // jets multiply: jet(omega^-2) = jet(omega^-1)^2 at order 2
    auto j2 = sc.omega_inv_jet(2, 2);
    auto j1 = sc.omega_inv_jet(1, 2);
    auto sq = jet_mul(ctx, j1, j1);
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(ctx.close(j2.c[i], sq.c[i], ctx.tol_num()));
}
