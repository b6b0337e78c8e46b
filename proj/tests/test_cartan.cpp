#include <c3monge/cartan/harmonic.hpp>
#include <c3monge/cartan/symmetry.hpp>
#include <c3monge/kuranishi/family.hpp>
#include <c3monge/liealg/embedded.hpp>

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace c3monge;

namespace {

RatFunc lift1(const Rational& r) { return RatFunc(r); }

struct Case {
    EmbeddedAlgebra<Rational> E;
    Matrix<RatFunc> iota;
    std::unique_ptr<Dgla<RatFunc>> L;
    KuranishiFamily fam;
};

Case make_case(const std::vector<std::string>& words, std::vector<std::array<int, 3>> forms) {
    Case s;
    s.E = embed_words(words);
    s.iota = Matrix<RatFunc>(s.E.iota.rows(), s.E.iota.cols());
    for (size_t i = 0; i < s.iota.rows(); ++i)
        for (size_t j = 0; j < s.iota.cols(); ++j) s.iota(i, j) = RatFunc(s.E.iota(i, j));
    s.L = std::make_unique<Dgla<RatFunc>>(s.E.k.map_scalars<RatFunc>(lift1), s.E.weights, [forms](const Weight& w) {
        for (auto& f : forms)
            if (f[0] * w[0] + f[1] * w[1] + f[2] * w[2] != 0) return false;
        return true;
    });
    s.fam = kuranishi_family(*s.L);
    return s;
}

const Case& n3() {
    static Case s = make_case({"X", "H-5*E", "E'"}, {{-5, 1, 0}, {0, 0, 1}});
    return s;
}
const Case& iv2() {
    static Case s = make_case({"H-3*E", "E'"}, {{-3, 1, 0}, {0, 0, 1}});
    return s;
}
const Case& f2() {
    static Case s = make_case({"H-E", "E'"}, {{-1, 1, 0}, {0, 0, 1}});
    return s;
}
const Case& n2ainf() {
    static Case s = make_case({"X", "E'"}, {{0, 0, 1}});
    return s;
}

CartanConnection<RatFunc> normal_member(const Case& s, const Cochain<RatFunc>& xi) {
    return normalize(initial_connection(s.L->deformed_algebra(xi), s.iota));
}

std::vector<RatFunc> q(std::initializer_list<Rational> c) {
    std::vector<RatFunc> v;
    for (auto& x : c) v.push_back(RatFunc(x));
    return v;
}

bool same_span(const std::vector<Vec<Rational>>& a, const std::vector<Vec<Rational>>& b) {
    size_t n = a.empty() ? 0 : a[0].size();
    std::vector<Vec<Rational>> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto r = [&](const std::vector<Vec<Rational>>& v) { return v.empty() ? 0 : rank(Matrix<Rational>::from_rows(v, n)); };
    return r(a) == a.size() && r(b) == b.size() && r(ab) == a.size() && a.size() == b.size();
}

std::vector<Vec<Rational>> words(std::initializer_list<const char*> ws) {
    std::vector<Vec<Rational>> v;
    for (auto w : ws) v.push_back(c3().vec(w));
    return v;
}

}  // namespace

TEST(Quintic, Labels) {
    Rational z(0);
    EXPECT_EQ(classify_quintic(q({1, z, z, z, z, z})).label, "N");
    EXPECT_EQ(classify_quintic(q({z, Rational(1, 5), z, z, z, z})).label, "IV");
    EXPECT_EQ(classify_quintic(q({z, z, Rational(1, 20), z, z, z})).label, "F");
    // z^5 - z w^4
    auto t = classify_quintic(q({1, z, z, z, Rational(-1, 120), z}));
    EXPECT_EQ(t.multiplicities, (std::vector<int>{1, 1, 1, 1, 1}));
    EXPECT_EQ(t.label, "[1,1,1,1,1]");
    // w^5 is type N with the root at infinity; (z - w)^5 as well
    EXPECT_EQ(classify_quintic(q({z, z, z, z, z, Rational(1, 120)})).label, "N");
    EXPECT_EQ(classify_quintic(q({1, -1, Rational(1, 2), Rational(-1, 6), Rational(1, 24), Rational(-1, 120)})).label, "N");
    // z^2 (z - w)^3 = z^5 - 3 z^4 w + 3 z^3 w^2 - z^2 w^3
    EXPECT_EQ(classify_quintic(q({1, Rational(-3, 5), Rational(3, 20), Rational(-1, 60), z, z})).label, "F");
    EXPECT_THROW(classify_quintic(q({z, z, z, z, z, z})), std::invalid_argument);
    // over Q(t): t z^4 w is type IV for generic t
    std::vector<RatFunc> qt(6, RatFunc(0));
    qt[1] = RatFunc::var("t");
    EXPECT_EQ(classify_quintic(qt).label, "IV");
}

TEST(Quintic, Stabilizers) {
    Rational z(0);
    auto sN = quintic_stabilizer({1, z, z, z, z, z});
    auto sIV = quintic_stabilizer({z, 1, z, z, z, z});
    auto sF = quintic_stabilizer({z, z, 1, z, z, z});
    EXPECT_EQ(sN.size(), 3u);
    EXPECT_EQ(sIV.size(), 2u);
    EXPECT_EQ(sF.size(), 2u);
    EXPECT_TRUE(same_span(sN, words({"X", "H-5*E", "E'"})));
    EXPECT_TRUE(same_span(sIV, words({"H-3*E", "E'"})));
    EXPECT_TRUE(same_span(sF, words({"H-E", "E'"})));
    // closed under bracket
    for (auto* s : {&sN, &sIV, &sF})
        for (auto& a : *s)
            for (auto& b : *s) {
                auto ab = *s;
                ab.push_back(c3().g.bracket(a, b));
                EXPECT_EQ(rank(Matrix<Rational>::from_rows(ab, c3().dim())), s->size());
            }
}

TEST(Connection, UndeformedIsFlat) {
    const auto& s = n3();
    auto c0 = initial_connection(s.L->algebra(), s.iota);
    EXPECT_EQ(c0.transversal().size(), 8u);
    auto K0 = curvature(c0);
    EXPECT_TRUE(K0.is_zero());
    auto c = normalize(c0);
    EXPECT_EQ(c.omega, s.iota);
    auto h = holonomy(c, curvature(c));
    std::vector<HolonomyWord> used;
    EXPECT_EQ(generic_symmetry_dimension(h).dim, 21u);
    EXPECT_EQ(symmetry_dimension(specialize(h, {}), &used), 21u);
    EXPECT_TRUE(used.empty());
    EXPECT_TRUE(harmonic_curvature(curvature(c)).is_zero());
}

TEST(Connection, RejectsBadEmbedding) {
    const auto& s = n3();
    Matrix<RatFunc> bad = s.iota;
    for (size_t i = 0; i < bad.rows(); ++i) bad(i, 0) = RatFunc(0);
    EXPECT_THROW(initial_connection(s.L->algebra(), bad), std::invalid_argument);
}

TEST(Connection, N3NormalFamily) {
    const auto& s = n3();
    auto c = normal_member(s, s.fam.xi);
    auto K = curvature(c);
    EXPECT_TRUE(is_normal(K));
    for (auto& [k, v] : K.chain.c) EXPECT_GE(homology_complex().weight_of(k)[0], 1);
    // gr omega = iota
    for (size_t b = 0; b < c.k.dim(); ++b)
        for (size_t i = 0; i < c3().dim(); ++i)
            if (c3().g.degree(i) == c.k.degree(b)) EXPECT_EQ(c.omega(i, b), s.iota(i, b));
    // flat limit
    std::map<int, Rational> t0{{Vars::id("t"), Rational(0)}};
    for (auto& [k, v] : K.chain.c) EXPECT_TRUE(v.specialize(t0).is_zero());
    auto hc = harmonic_curvature(K);
    EXPECT_TRUE(hc.scalar.is_zero());
    EXPECT_EQ(classify_quintic(hc.quintic).label, "N");
    EXPECT_EQ(generic_symmetry_dimension(holonomy(c, K)).dim, 11u);
}

TEST(Connection, BianchiInvariance) {
    // kappa is killed by ad(omega X) for X in k^0, checked at rational points
    std::mt19937 rng(2);
    for (const Case* s : {&n3(), &iv2(), &f2()}) {
        auto c = normal_member(*s, s->fam.xi);
        auto K = curvature(c);
        for (int i = 0; i < 3; ++i) {
            std::map<int, Rational> at;
            for (int v : s->fam.var_ids()) at[v] = Rational(std::uniform_int_distribution<int>(-5, 5)(rng));
            Cochain<Rational> ch = K.chain.map_scalars<Rational>([&](const RatFunc& r) { return r.specialize(at); });
            for (size_t x : c.isotropy()) {
                Vec<Rational> z = specialize(c.omega.col(x), at);
                EXPECT_TRUE(homology_complex().act(z, ch).is_zero());
            }
        }
    }
}

TEST(Harmonic, IV2AndF2) {
    for (auto [s, label] : {std::pair{&iv2(), "IV"}, std::pair{&f2(), "F"}}) {
        auto c = normal_member(*s, s->fam.xi);
        auto hc = harmonic_curvature(curvature(c));
        EXPECT_TRUE(hc.scalar.is_zero());
        EXPECT_EQ(classify_quintic(hc.quintic).label, label);
        // one nonzero coefficient, linear in the coordinates: kappa_H is proportional to one coordinate
        int nz = 0;
        for (auto& x : hc.quintic)
            if (!x.is_zero()) {
                ++nz;
                EXPECT_TRUE(x.is_polynomial());
                EXPECT_EQ(x.num().total_degree(), 1);
            }
        EXPECT_EQ(nz, 1);
        EXPECT_EQ(generic_symmetry_dimension(holonomy(c, curvature(c))).dim, 10u);
    }
}

TEST(Harmonic, N2aInfinityComponent) {
    const auto& s = n2ainf();
    ASSERT_EQ(s.fam.components.size(), 2u);
    auto c = normal_member(s, s.fam.xi_on(s.fam.components[0]));
    auto K = curvature(c);
    auto hc = harmonic_curvature(K);
    EXPECT_TRUE(hc.scalar.is_zero());
    RatFunc t1 = RatFunc::var("t1");
    for (auto& x : hc.quintic)
        if (!x.is_zero()) EXPECT_TRUE((x / t1).is_constant());
    EXPECT_EQ(classify_quintic(hc.quintic).label, "N");
    EXPECT_EQ(generic_symmetry_dimension(holonomy(c, K)).dim, 10u);
    // the line component is flat
    auto c2 = normal_member(s, s.fam.xi_on(s.fam.components[1]));
    EXPECT_TRUE(harmonic_curvature(curvature(c2)).is_zero());
}

TEST(Harmonic, BasisOrderDoesNotMatter) {
    // permute the basis of k (reverse order inside each degree) and renormalize
    for (const Case* s : {&n3(), &iv2(), &f2()}) {
        auto k = s->L->deformed_algebra(s->fam.xi);
        size_t n = k.dim();
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
            return k.degree(a) != k.degree(b) ? k.degree(a) < k.degree(b) : a > b;
        });
        std::vector<std::string> labels;
        std::vector<int> degs;
        for (size_t i : perm) {
            labels.push_back(k.labels()[i]);
            degs.push_back(k.degree(i));
        }
        std::vector<size_t> pos(n);
        for (size_t i = 0; i < n; ++i) pos[perm[i]] = i;
        LieAlgebra<RatFunc> kp(labels, degs, true);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b) {
                Vec<RatFunc> v(n, RatFunc(0));
                for (auto& [c, x] : k.basis_bracket(perm[a], perm[b])) v[pos[size_t(c)]] = x;
                kp.set_bracket(a, b, v);
            }
        Matrix<RatFunc> ip(s->iota.rows(), n);
        for (size_t i = 0; i < ip.rows(); ++i)
            for (size_t j = 0; j < n; ++j) ip(i, j) = s->iota(i, perm[j]);
        auto h1 = harmonic_curvature(curvature(normalize(initial_connection(k, s->iota))));
        auto h2 = harmonic_curvature(curvature(normalize(initial_connection(kp, ip))));
        EXPECT_EQ(h1.scalar.is_zero(), h2.scalar.is_zero());
        EXPECT_EQ(classify_quintic(h1.quintic).label, classify_quintic(h2.quintic).label);
    }
}

TEST(Symmetry, Semicontinuity) {
    std::mt19937 rng(4);
    for (const Case* s : {&n3(), &iv2(), &f2()}) {
        auto c = normal_member(*s, s->fam.xi);
        auto h = holonomy(c, curvature(c));
        size_t gen = generic_symmetry_dimension(h).dim;
        int checked = 0;
        for (int i = 0; i < 20; ++i) {
            std::map<int, Rational> at;
            for (int v : s->fam.var_ids()) at[v] = Rational(std::uniform_int_distribution<int>(-3, 3)(rng));
            EXPECT_GE(symmetry_dimension(specialize(h, at)), gen);
            ++checked;
        }
        EXPECT_EQ(checked, 20);
        // the flat point has the full dimension
        std::map<int, Rational> zero;
        for (int v : s->fam.var_ids()) zero[v] = Rational(0);
        EXPECT_EQ(symmetry_dimension(specialize(h, zero)), 21u);
    }
}
