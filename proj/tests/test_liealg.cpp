#include <c3monge/liealg/c3_prolongation.hpp>

#include <gtest/gtest.h>

using namespace c3monge;

namespace {

std::vector<int> dims_by_degree(const LieAlgebra<Rational>& L) {
    std::vector<int> d;
    for (int k = L.min_degree(); k <= L.max_degree(); ++k) d.push_back(static_cast<int>(L.basis_of_degree(k).size()));
    return d;
}

LieAlgebra<Rational> heisenberg() {
    LieAlgebra<Rational> h({"z", "x", "y"}, {-2, -1, -1});
    h.set_bracket(1, 2, {1, 0, 0});
    return h;
}

}  // namespace

TEST(C3, DimensionsByDegree) {
    auto g = build_c3();
    EXPECT_EQ(g.dim(), 21u);
    EXPECT_EQ(dims_by_degree(g), (std::vector<int>{3, 2, 3, 5, 3, 2, 3}));
}

TEST(C3, JacobiAndGrading) {
    const auto& C = c3();
    EXPECT_TRUE(check_jacobi(C.g));
    EXPECT_TRUE(check_grading(C.g));
    for (size_t i = 0; i < C.dim(); ++i) {
        Vec<Rational> v = C.g.bracket_basis(C.grading.E, i);
        Vec<Rational> want(C.dim(), Rational(0));
        want[i] = Rational(C.g.degree(i));
        EXPECT_EQ(v, want) << C.g.labels()[i];
    }
}

TEST(C3, Sl2TripleAndEprime) {
    const auto& C = c3();
    const auto& gr = C.grading;
    auto& g = C.g;
    auto scaled = [&](int i, long c) {
        Vec<Rational> v = g.unit(i);
        for (auto& x : v) x *= Rational(c);
        return v;
    };
    EXPECT_EQ(g.bracket_basis(gr.H, gr.X), scaled(gr.X, 2));
    EXPECT_EQ(g.bracket_basis(gr.H, gr.Y), scaled(gr.Y, -2));
    EXPECT_EQ(g.bracket_basis(gr.X, gr.Y), g.unit(gr.H));
    // E' is the identity on x = g_{-alpha3} and kills a
    int x = g.index_of("x(0,0,-1)");
    EXPECT_EQ(g.bracket_basis(gr.Ep, x), g.unit(x));
    for (auto lab : {"x(0,-1,0)", "x(-1,-1,0)"}) {
        int a = g.index_of(lab);
        EXPECT_TRUE(is_zero_vec(g.bracket_basis(gr.Ep, a)));
    }
}

TEST(C3, PerturbedStructureConstantBreaksJacobi) {
    auto g = build_c3();
    int i = g.index_of("x(0,0,-1)"), j = g.index_of("x(0,-1,0)");
    Vec<Rational> v = g.bracket_basis(i, j);
    int k = g.index_of("x(0,-1,-1)");
    v[k] += 1;
    g.set_bracket(i, j, v);
    EXPECT_FALSE(check_jacobi(g));
}

TEST(C3, AbelianIsJacobi) {
    LieAlgebra<Rational> a({"a", "b", "c"}, {0, 0, 0});
    EXPECT_TRUE(check_jacobi(a));
}

TEST(C3, JsonRoundTrip) {
    auto g = build_c3();
    std::string s = to_json(g).dump();
    auto h = lie_algebra_from_json<Rational>(nlohmann::json::parse(s));
    EXPECT_EQ(g, h);
    EXPECT_EQ(to_json(h).dump(), s);
}

TEST(Subalgebra, Basics) {
    const auto& C = c3();
    std::vector<Vec<Rational>> minus;
    for (int i : C.minus()) minus.push_back(C.g.unit(i));
    EXPECT_TRUE(is_graded_subalgebra(C.g, minus));
    std::vector<Vec<Rational>> gm2;
    for (int i : C.g.basis_of_degree(-2)) gm2.push_back(C.g.unit(i));
    Matrix<Rational> ad = adjoint_action(C.g, C.g.unit(C.grading.E), Subspace<Rational>(C.dim(), gm2));
    EXPECT_EQ(ad, Matrix<Rational>::identity(2).scaled(Rational(-2)));
    EXPECT_THROW(adjoint_action(C.g, C.g.unit(C.grading.X), Subspace<Rational>(C.dim(), {C.g.unit(C.grading.Y)})),
                 std::invalid_argument);
    // <X, E> plus one degree -1 vector: brute force closure
    int v = C.g.basis_of_degree(-1)[0];
    auto cl = subalgebra_closure(C.g, {C.vec("X"), C.vec("E"), C.g.unit(v)});
    EXPECT_TRUE(is_subalgebra(C.g, cl.basis));
    EXPECT_GE(cl.dim(), 3u);
}

TEST(Prolongation, RecoversC3) {
    Prolongation P(c3_minus(), 3);
    EXPECT_EQ(P.dims_nonnegative(), (std::vector<size_t>{5, 3, 2, 3}));
    EXPECT_TRUE(prolongation_matches_g(P));
    auto L = P.algebra();
    EXPECT_TRUE(check_jacobi(L));
    EXPECT_EQ(dims_by_degree(L), (std::vector<int>{3, 2, 3, 5, 3, 2, 3}));
}

TEST(Prolongation, StopsAtZeroDegree) {
    Prolongation P(c3_minus(), 6);
    EXPECT_EQ(P.dims_nonnegative(), (std::vector<size_t>{5, 3, 2, 3}));
}

TEST(Prolongation, Heisenberg) {
    Prolongation P(heisenberg(), 0);
    EXPECT_EQ(P.dims_nonnegative()[0], 4u);
}

TEST(Prolongation, NotGeneratedInDegreeMinusOne) {
    LieAlgebra<Rational> m({"a", "b"}, {-2, -1});
    EXPECT_THROW(Prolongation(m, 2), std::invalid_argument);
}

TEST(Prolongation, PositiveDims) {
    const auto& C = c3();
    EXPECT_EQ(positive_prolongation_dims({C.vec("X"), C.vec("H-5*E"), C.vec("E'")}), (std::vector<size_t>{0, 0, 0}));
    EXPECT_EQ(positive_prolongation_dims({C.vec("H"), C.vec("X"), C.vec("Y"), C.vec("E"), C.vec("E'")}),
              (std::vector<size_t>{3, 2, 3}));
    EXPECT_EQ(positive_prolongation_dims({C.vec("H-E"), C.vec("E'")}), (std::vector<size_t>{0, 0, 0}));
    EXPECT_EQ(positive_prolongation_dims({C.vec("H-3*E"), C.vec("E'")}), (std::vector<size_t>{0, 0, 0}));
    EXPECT_EQ(positive_prolongation_dims({C.vec("X"), C.vec("E'")}), (std::vector<size_t>{0, 0, 0}));
    EXPECT_EQ(positive_prolongation_dims({C.vec("H-5*E"), C.vec("E'")}), (std::vector<size_t>{0, 0, 0}));
}
