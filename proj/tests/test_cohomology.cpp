#include <c3monge/cohomology/homology.hpp>
#include <c3monge/liealg/embedded.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace c3monge;

namespace {

LieAlgebra<Rational> heisenberg() {
    LieAlgebra<Rational> h({"z", "x", "y"}, {-2, -1, -1});
    h.set_bracket(1, 2, {1, 0, 0});
    return h;
}

Cochain<Rational> random_cochain(const CochainAlgebra<Rational>& ops, int p, std::mt19937& rng, int terms = 6) {
    auto keys = ops.keys_of_degree(p);
    Cochain<Rational> c(p);
    std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i < terms; ++i) c.add(keys[pick(rng)], Rational(coef(rng)));
    return c;
}

Vec<Rational> add(Vec<Rational> a, const Vec<Rational>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

// cyclic sum f(f(x,y),z) on basis triples, evaluated directly
Vec<Rational> cyclic_composite(const CochainAlgebra<Rational>& ops, const Cochain<Rational>& f, int x, int y, int z) {
    size_t n = ops.dim();
    Vec<Rational> s(n, Rational(0));
    int t[3][3] = {{x, y, z}, {y, z, x}, {z, x, y}};
    for (auto& r : t) {
        Vec<Rational> in = ops.eval(f, {r[0], r[1]});
        s = add(s, ops.eval2(f, in, unit_vec<Rational>(n, r[2])));
    }
    return s;
}

int dgla_deg(const Cochain<Rational>& c) { return c.p - 1; }

const std::vector<std::vector<std::string>>& class_words() {
    static const std::vector<std::vector<std::string>> w{
        {"X", "H-5*E", "E'"}, {"H-5*E", "E'"}, {"H-3*E", "E'"}, {"H-E", "E'"}, {"X", "E'"}};
    return w;
}

// annihilated by the torus part of k0: weight layout (E, H, E')
CochainComplex<Rational>::Filter torus_filter(const std::vector<std::array<int, 3>>& forms) {
    return [forms](const Weight& w) {
        for (auto& f : forms)
            if (f[0] * w[0] + f[1] * w[1] + f[2] * w[2] != 0) return false;
        return true;
    };
}

}  // namespace

TEST(Cochains, ZeroDifferential) {
    auto h = heisenberg();
    CochainAlgebra<Rational> ops(h);
    EXPECT_TRUE(ops.d(Cochain<Rational>(2)).is_zero());
    EXPECT_TRUE(ops.nr(Cochain<Rational>(2), Cochain<Rational>(2)).is_zero());
}

TEST(Cochains, HeisenbergDerivationsMatchCocycles) {
    auto h = heisenberg();
    CochainAlgebra<Rational> ops(h);
    // independent count: D[ei,ej] = [D ei, ej] + [ei, D ej], unknowns D(a,b) at a*3+b
    Matrix<Rational> eq(27, 9);
    size_t row = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j, row += 3)
            for (int out = 0; out < 3; ++out) {
                Vec<Rational> br = h.bracket_basis(i, j);
                for (int m = 0; m < 3; ++m) eq(row + out, out * 3 + m) += br[m];
                for (int m = 0; m < 3; ++m) {
                    eq(row + out, m * 3 + i) -= h.bracket_basis(m, j)[out];
                    eq(row + out, m * 3 + j) -= h.bracket_basis(i, m)[out];
                }
            }
    size_t ders = kernel_basis(eq).size();
    EXPECT_EQ(ders, 6u);
    auto keys1 = ops.keys_of_degree(1);
    auto keys2 = ops.keys_of_degree(2);
    Matrix<Rational> D(keys2.size(), keys1.size());
    for (size_t j = 0; j < keys1.size(); ++j) {
        Cochain<Rational> e(1);
        e.add(keys1[j], Rational(1));
        auto de = ops.d(e);
        for (size_t i = 0; i < keys2.size(); ++i) D(i, j) = de.get(keys2[i]);
    }
    EXPECT_EQ(kernel_basis(D).size(), ders);
}

TEST(Cochains, DSquaredZeroOnFullBases) {
    for (auto& words : class_words()) {
        auto E = embed_words(words);
        CochainAlgebra<Rational> ops(E.k);
        for (int p = 0; p <= 3; ++p)
            for (CKey k : ops.keys_of_degree(p)) {
                Cochain<Rational> e(p);
                e.add(k, Rational(1));
                ASSERT_TRUE(ops.d(ops.d(e)).is_zero()) << "p=" << p;
            }
    }
}

TEST(Cochains, DSquaredZeroOnC3Samples) {
    CochainAlgebra<Rational> ops(c3().g);
    std::mt19937 rng(7);
    for (int s = 0; s < 50; ++s) {
        auto c = random_cochain(ops, 1 + s % 3, rng);
        EXPECT_TRUE(ops.d(ops.d(c)).is_zero());
    }
}

TEST(Cochains, DifferentialIsBracketWithMu) {
    auto E = embed_words({"X", "H-5*E", "E'"});
    CochainAlgebra<Rational> ops(E.k);
    auto mu = ops.mu();
    std::mt19937 rng(3);
    for (int p = 1; p <= 3; ++p)
        for (int s = 0; s < 10; ++s) {
            auto f = random_cochain(ops, p, rng);
            auto br = ops.nr(mu, f);
            EXPECT_EQ(ops.d(f), (p % 2 == 1) ? br : br.scaled(Rational(-1)));
        }
}

TEST(Cochains, NRSquareIsTwiceCyclicComposite) {
    auto E = embed_words({"H-3*E", "E'"});
    CochainAlgebra<Rational> ops(E.k);
    std::mt19937 rng(11);
    for (int s = 0; s < 10; ++s) {
        auto f = random_cochain(ops, 2, rng, 12);
        auto ff = ops.nr(f, f);
        auto bb = ops.bracket(f, f);
        for (int x = 0; x < 6; ++x)
            for (int y = x + 1; y < 8; ++y)
                for (int z = y + 1; z < 10; ++z) {
                    Vec<Rational> cyc = cyclic_composite(ops, f, x, y, z);
                    Vec<Rational> lhs = ops.eval(ff, {x, y, z});
                    Vec<Rational> dg = ops.eval(bb, {x, y, z});
                    for (size_t k = 0; k < cyc.size(); ++k) {
                        ASSERT_EQ(lhs[k], Rational(2) * cyc[k]);
                        ASSERT_EQ(dg[k], Rational(-2) * cyc[k]);
                    }
                }
    }
    EXPECT_TRUE(ops.bracket(random_cochain(ops, 2, rng), Cochain<Rational>(2)).is_zero());
}

TEST(Cochains, GradedSkewnessJacobiLeibniz) {
    auto E = embed_words({"X", "E'"});
    CochainAlgebra<Rational> ops(E.k);
    std::mt19937 rng(5);
    for (int s = 0; s < 20; ++s) {
        int p = 1 + s % 3, q = 1 + (s / 3) % 3, r = 1 + (s / 2) % 2;
        auto x = random_cochain(ops, p, rng, 4);
        auto y = random_cochain(ops, q, rng, 4);
        auto z = random_cochain(ops, r, rng, 4);
        int a = dgla_deg(x), b = dgla_deg(y), c = dgla_deg(z);
        // [x,y] = -(-1)^{|x||y|} [y,x]
        auto yx = ops.bracket(y, x);
        EXPECT_EQ(ops.bracket(x, y), ((a * b) % 2 == 0) ? yx.scaled(Rational(-1)) : yx);
        // d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
        auto rhs = ops.bracket(ops.d(x), y);
        auto t = ops.bracket(x, ops.d(y));
        rhs = (a % 2 == 0) ? rhs + t : rhs - t;
        EXPECT_EQ(ops.d(ops.bracket(x, y)), rhs);
        // (-1)^{|x||z|}[x,[y,z]] + cyclic = 0
        auto term = [&](const Cochain<Rational>& u, const Cochain<Rational>& v, const Cochain<Rational>& w, int du,
                        int dw) {
            auto t2 = ops.bracket(u, ops.bracket(v, w));
            return ((du * dw) % 2 == 0) ? t2 : t2.scaled(Rational(-1));
        };
        auto jac = term(x, y, z, a, c);
        jac += term(y, z, x, b, a);
        jac += term(z, x, y, c, b);
        EXPECT_TRUE(jac.is_zero());
    }
}

TEST(Cochains, InsertionOfOneCochainIsNaturalAction) {
    auto E = embed_words({"H-E", "E'"});
    CochainAlgebra<Rational> ops(E.k);
    std::mt19937 rng(9);
    size_t n = ops.dim();
    for (int s = 0; s < 5; ++s) {
        auto y = random_cochain(ops, 1, rng, 8);
        auto f = random_cochain(ops, 2, rng, 8);
        auto br = ops.nr(y, f);
        Matrix<Rational> Y = ops.to_matrix(y);
        for (int a = 0; a < int(n); ++a)
            for (int b = a + 1; b < int(n); ++b) {
                Vec<Rational> ea = unit_vec<Rational>(n, a), eb = unit_vec<Rational>(n, b);
                Vec<Rational> want = Y * ops.eval(f, {a, b});
                Vec<Rational> t1 = ops.eval2(f, Y * ea, eb), t2 = ops.eval2(f, ea, Y * eb);
                for (size_t k = 0; k < n; ++k) want[k] -= t1[k] + t2[k];
                ASSERT_EQ(ops.eval(br, {a, b}), want);
            }
    }
}

TEST(Cochains, WeightIsPreserved) {
    auto E = embed_words({"X", "H-5*E", "E'"});
    CochainComplex<Rational> cx(E.k, E.weights, 1, 3);
    std::mt19937 rng(1);
    for (auto& w : cx.blocks(2)) {
        auto v = cx.keys(2, w);
        Cochain<Rational> c(2);
        c.add(v[rng() % v.size()], Rational(1));
        for (auto& w2 : cx.support(cx.ops().d(c))) EXPECT_EQ(w2, w);
        for (auto& w2 : cx.support(cx.ops().bracket(c, c))) {
            Weight twice = w;
            for (size_t i = 0; i < w.size(); ++i) twice[i] *= 2;
            EXPECT_EQ(w2, twice);
        }
    }
}

TEST(Betti, DiscreteClasses) {
    struct Case {
        std::vector<std::string> words;
        std::vector<std::array<int, 3>> forms;
        size_t b21;
    };
    std::vector<Case> cases{{{"X", "H-5*E", "E'"}, {{-5, 1, 0}, {0, 0, 1}}, 1},
                            {{"H-5*E", "E'"}, {{-5, 1, 0}, {0, 0, 1}}, 1},
                            {{"H-3*E", "E'"}, {{-3, 1, 0}, {0, 0, 1}}, 2},
                            {{"H-E", "E'"}, {{-1, 1, 0}, {0, 0, 1}}, 2}};
    for (auto& cs : cases) {
        auto E = embed_words(cs.words);
        CochainComplex<Rational> inv(E.k, E.weights, 1, 3, torus_filter(cs.forms));
        CochainComplex<Rational> full(E.k, E.weights, 1, 3);
        auto bi = inv.betti(1, 6);
        auto bf = full.betti(1, 6, false);
        EXPECT_EQ(bi.row(2, 1, 6), (std::vector<size_t>{cs.b21, 0, 0, 0, 0, 0}));
        EXPECT_EQ(bi.row(3, 2, 6), (std::vector<size_t>{0, 0, 0, 0, 0}));
        EXPECT_EQ(bi.row(1, 1, 6), (std::vector<size_t>{0, 0, 0, 0, 0, 0}));
        for (int p = 1; p <= 3; ++p)
            for (int i = 1; i <= 6; ++i) EXPECT_EQ(bi.get(p, i), bf.get(p, i)) << "p=" << p << " i=" << i;
        // representatives are cocycles outside the coboundaries
        for (auto& r : bi.reps[{2, 1}]) EXPECT_TRUE(inv.ops().d(r).is_zero());
    }
}

TEST(Betti, N2aInfinity) {
    auto E = embed_words({"X", "E'"});
    CochainComplex<Rational> inv(E.k, E.weights, 1, 3, torus_filter({{0, 0, 1}}));
    auto b = inv.betti(1, 6, false);
    EXPECT_EQ(b.row(2, 1, 6), (std::vector<size_t>{3, 1, 0, 0, 0, 0}));
    EXPECT_EQ(b.row(1, 1, 6), (std::vector<size_t>{0, 0, 0, 0, 0, 0}));
    CochainComplex<Rational> full(E.k, E.weights, 1, 3);
    auto bf = full.betti(1, 6, false);
    for (int p = 1; p <= 3; ++p)
        for (int i = 1; i <= 6; ++i) EXPECT_EQ(b.get(p, i), bf.get(p, i)) << "p=" << p << " i=" << i;
}

TEST(Betti, SplittingIdentities) {
    auto E = embed_words({"X", "E'"});
    CochainComplex<Rational> cx(E.k, E.weights, 1, 3, torus_filter({{0, 0, 1}}));
    const auto& ops = cx.ops();
    for (int p = 1; p <= 3; ++p)
        for (auto& w : cx.blocks(p)) {
            if (w[0] < 1) continue;
            for (CKey k : cx.keys(p, w)) {
                Cochain<Rational> e(p);
                e.add(k, Rational(1));
                using P = CochainComplex<Rational>::Part;
                ASSERT_TRUE(cx.delta(cx.delta(e)).is_zero());
                ASSERT_EQ(ops.d(cx.delta(e)), cx.project(e, P::B));
                ASSERT_EQ(cx.delta(ops.d(e)), cx.project(e, P::C));
                ASSERT_EQ(cx.project(e, P::B) + cx.project(e, P::H) + cx.project(e, P::C), e);
            }
        }
}

TEST(Homology, BoundarySquaredZeroOnFullBases) {
    const auto& hc = homology_complex();
    for (int q = 2; q <= 4; ++q)
        for (CKey k : hc.keys_of_degree(q)) {
            Cochain<Rational> e(q);
            e.add(k, Rational(1));
            ASSERT_TRUE(hc.boundary(hc.boundary(e)).is_zero()) << "q=" << q;
        }
    EXPECT_TRUE(hc.boundary(Cochain<Rational>(2)).is_zero());
}

TEST(Homology, BoundaryCommutesWithP0Action) {
    const auto& hc = homology_complex();
    std::mt19937 rng(2);
    auto keys = hc.keys_of_degree(2);
    for (const char* z : {"H", "X", "Y", "E", "E'"}) {
        Cochain<Rational> c(2);
        for (int i = 0; i < 5; ++i) c.add(keys[rng() % keys.size()], Rational(int(rng() % 5) - 2));
        auto zv = c3().vec(z);
        EXPECT_EQ(hc.boundary(hc.act(zv, c)), hc.act(zv, hc.boundary(c)));
    }
}

TEST(Homology, HarmonicModuleIsScalarPlusQuintic) {
    const auto& hd = harmonic_decomposition();
    EXPECT_EQ(hd.dim(), 7u);
    ASSERT_EQ(hd.quintic.size(), 6u);
    std::multiset<int> hs;
    for (auto& w : hd.quintic_weights) {
        EXPECT_EQ(w[0], 1);  // E
        EXPECT_EQ(w[2], 0);  // E'
        hs.insert(w[1]);
    }
    EXPECT_EQ(hs, (std::multiset<int>{-5, -3, -1, 1, 3, 5}));
    EXPECT_EQ(hd.quintic_weights[0][1], 5);
    // scalar line is g0-invariant up to the torus: X, Y kill it
    EXPECT_TRUE(is_zero_vec(hd.rho.at("X") * hd.scalar));
    EXPECT_TRUE(is_zero_vec(hd.rho.at("Y") * hd.scalar));
    EXPECT_TRUE(is_zero_vec(hd.rho.at("H") * hd.scalar));
    auto j = to_json(hd);
    EXPECT_EQ(j["dim"], 7);
}
