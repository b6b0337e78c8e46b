// One line per acceptance criterion; exit status 1 if any fails.
#include <c3monge/cohomology/homology.hpp>
#include <c3monge/liealg/c3_prolongation.hpp>
#include <c3monge/pipeline/models.hpp>
#include <c3monge/pipeline/run.hpp>

#include <functional>
#include <iostream>
#include <random>
#include <set>

using namespace c3monge;

namespace {

struct Result {
    bool ok = true;
    std::vector<std::string> why;
    void check(bool c, const std::string& what) {
        if (!c) {
            ok = false;
            why.push_back(what);
        }
    }
};

size_t span_rank(const std::vector<Vec<Rational>>& vs, size_t n) {
    return vs.empty() ? 0 : rank(Matrix<Rational>::from_rows(vs, n));
}

bool same_span(const std::vector<Vec<Rational>>& a, const std::vector<Vec<Rational>>& b, size_t n) {
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return span_rank(a, n) == span_rank(b, n) && span_rank(ab, n) == span_rank(a, n);
}

std::vector<Vec<Rational>> words(std::initializer_list<const char*> ws) {
    std::vector<Vec<Rational>> out;
    for (auto w : ws) out.push_back(c3().vec(w));
    return out;
}

const ClassDescriptor& catalog(const std::string& label) {
    static const auto cs = enumerate_classes();
    for (auto& c : cs)
        if (c.label == label) return c;
    throw std::invalid_argument(label);
}

const ClassRun& run(const std::string& label) {
    static std::map<std::string, ClassRun> cache;
    auto it = cache.find(label);
    if (it == cache.end())
        it = cache.emplace(label, run_class_full(label == "N2a_inf" ? n2a_descriptor(std::nullopt) : catalog(label)))
                 .first;
    return it->second;
}

Rational rnd(std::mt19937& rng, int lo = -3, int hi = 3) { return Rational(std::uniform_int_distribution<int>(lo, hi)(rng)); }

Cochain<Rational> random_element(const Dgla<Rational>& L, int p, std::mt19937& rng, int terms) {
    std::vector<CKey> all;
    for (auto& w : L.complex().blocks(p))
        for (CKey k : L.complex().keys(p, w)) all.push_back(k);
    Cochain<Rational> c(p);
    if (all.empty()) return c;
    std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
    for (int i = 0; i < terms; ++i) c.add(all[pick(rng)], rnd(rng));
    return c;
}

// the class dgla over Q, with its Kuranishi family over Q(coordinates)
struct QClass {
    std::unique_ptr<Dgla<Rational>> L;
    const KuranishiFamily* fam;
};

QClass qclass(const std::string& label) {
    const auto& R = run(label);
    auto forms = R.cls.forms;
    auto kq = R.cls.E.k.map_scalars<Rational>([](const RatFunc& r) { return r.specialize(std::map<int, Rational>{}); });
    QClass q;
    q.L = std::make_unique<Dgla<Rational>>(kq, R.cls.E.weights, [forms](const Weight& w) {
        for (auto& f : forms)
            if (!(f[0] * Rational(w[0]) + f[1] * Rational(w[1]) + f[2] * Rational(w[2])).is_zero()) return false;
        return true;
    });
    q.fam = &R.family;
    return q;
}

Cochain<Rational> random_mc(const QClass& q, std::mt19937& rng) {
    const auto& fam = *q.fam;
    const auto& comp = fam.components[std::uniform_int_distribution<size_t>(0, fam.components.size() - 1)(rng)];
    std::map<int, Rational> at;
    for (int v : fam.var_ids()) at[v] = rnd(rng);
    auto x = fam.xi_on(comp).map_scalars<Rational>([&](const RatFunc& v) { return v.specialize(at); });
    return q.L->gauge_act(random_element(*q.L, 1, rng, 4), x);
}

// q is a rational multiple of the variable v
bool proportional_to(const RatFunc& q, const std::string& v) {
    return q.is_zero() || (q / RatFunc::var(v)).is_constant();
}

const std::vector<std::string> kFamilies{"N3", "N2b", "IV2", "F2", "N2a_inf"};

// ---- criteria

Result c3_construction() {
    Result r;
    auto g = build_c3();
    std::vector<size_t> dims;
    for (int k = g.min_degree(); k <= g.max_degree(); ++k) dims.push_back(g.basis_of_degree(k).size());
    r.check(dims == std::vector<size_t>{3, 2, 3, 5, 3, 2, 3}, "dims by degree");
    r.check(g.dim() == 21, "total dimension");
    const auto& C = c3();
    r.check(check_jacobi(C.g), "Jacobi");
    r.check(check_grading(C.g), "grading");
    for (size_t i = 0; i < C.dim(); ++i) {
        Vec<Rational> want(C.dim(), Rational(0));
        want[i] = Rational(C.g.degree(i));
        r.check(C.g.bracket_basis(C.grading.E, i) == want, "[E, x] = deg(x) x for " + C.g.labels()[i]);
    }
    return r;
}

Result prolongation() {
    Result r;
    Prolongation P(c3_minus(), 5);
    r.check(P.dims_nonnegative() == std::vector<size_t>{5, 3, 2, 3}, "dims of Pr(g_-) in degrees >= 0");
    r.check(prolongation_matches_g(P), "ad: g -> Pr(g_-) is a graded isomorphism");
    return r;
}

Result harmonic_module() {
    Result r;
    const auto& hd = harmonic_decomposition();
    size_t n = hd.dim();
    r.check(n == 7, "dim H_2(p+, g)^1 = 7");
    r.check(hd.quintic.size() == 6 && !is_zero_vec(hd.scalar), "1 + 6 split");
    auto all = hd.quintic;
    all.push_back(hd.scalar);
    r.check(span_rank(all, n) == 7, "scalar and quintic span the module");
    // both summands are g0-invariant
    for (auto& [name, rho] : hd.rho) {
        std::vector<Vec<Rational>> img = hd.quintic;
        for (auto& u : hd.quintic) img.push_back(rho * u);
        r.check(span_rank(img, n) == 6, "quintic block invariant under " + name);
        std::vector<Vec<Rational>> s{hd.scalar, rho * hd.scalar};
        r.check(span_rank(s, n) == 1, "scalar line invariant under " + name);
    }
    std::multiset<int> hs;
    for (auto& w : hd.quintic_weights) {
        r.check(w[0] == 1, "quintic E-weight 1");
        r.check(w[2] == 0, "quintic E'-weight 0");
        hs.insert(w[1]);
    }
    r.check(hs == std::multiset<int>{-5, -3, -1, 1, 3, 5}, "H-spectrum of the quintic block");
    return r;
}

Result stabilizers() {
    Result r;
    Rational z(0);
    size_t n = c3().dim();
    auto sN = quintic_stabilizer({1, z, z, z, z, z});
    auto sIV = quintic_stabilizer({z, 1, z, z, z, z});
    auto sF = quintic_stabilizer({z, z, 1, z, z, z});
    r.check(sN.size() == 3 && sIV.size() == 2 && sF.size() == 2, "dimensions 3, 2, 2");
    r.check(same_span(sN, words({"X", "H-5*E", "E'"}), n), "stab z^5");
    r.check(same_span(sIV, words({"H-3*E", "E'"}), n), "stab z^4 w");
    r.check(same_span(sF, words({"H-E", "E'"}), n), "stab z^3 w^2");
    return r;
}

Result betti() {
    Result r;
    for (auto l : {"N3", "N2b", "IV2", "F2"}) {
        auto b = run(l).dgla->betti(false);
        size_t want = std::string(l) == "IV2" || std::string(l) == "F2" ? 2 : 1;
        r.check(b.get(2, 1) == want, std::string("b2_1 of ") + l);
        for (int j = 2; j <= 12; ++j) {
            r.check(b.get(2, j) == 0, std::string("b2_j, j >= 2 of ") + l);
            r.check(b.get(3, j) == 0, std::string("b3_j, j >= 2 of ") + l);
        }
    }
    auto b = run("N2a_inf").dgla->betti(false);
    r.check(b.get(2, 1) == 3 && b.get(2, 2) == 1, "b2_1, b2_2 of N2a_inf");
    for (int j = 3; j <= 12; ++j) r.check(b.get(2, j) == 0, "b2_j, j >= 3 of N2a_inf");
    return r;
}

Result kuranishi() {
    Result r;
    for (auto l : {"N3", "N2b", "IV2", "F2"}) {
        auto& f = run(l).family;
        r.check(f.obstructions.empty(), std::string("no obstructions for ") + l);
        r.check(f.components.size() == 1 && f.components[0].dim == f.coords.size(), std::string("smooth family for ") + l);
    }
    auto& f = run("N2a_inf").family;
    r.check(f.components.size() == 2, "N2a_inf has two components");
    if (f.components.size() == 2) {
        r.check(f.components[0].equations == std::vector<std::string>{"t3 = 0"} && f.components[0].dim == 3,
                "component t3 = 0");
        r.check(f.components[1].equations == std::vector<std::string>{"s = 0", "t1 = 0", "t2 = 0"} &&
                    f.components[1].dim == 1,
                "component t1 = t2 = s = 0");
        for (auto& c : f.components)
            for (auto& p : f.obstructions) r.check(p.compose(c.substitution).is_zero(), "obstructions vanish on components");
    }
    // F2: v''' solves d v''' = -[v', v''] and t v' + s v'' + s t v''' is a solution
    const auto& R = run("F2");
    const auto& L = *R.dgla;
    auto harmonic = kuranishi_family(L);
    auto pair = isotropic_pair(L, harmonic.h1[0], harmonic.h1[1]);
    r.check(pair.has_value(), "F2 isotropic pair");
    if (pair) {
        r.check(!pair->v3.is_zero(), "F2 corrector nonzero");
        r.check(L.d(pair->v3) == L.bracket(pair->v1, pair->v2).scaled(RatFunc(-1)), "F2 corrector equation");
        RatFunc t = RatFunc::var("t"), s = RatFunc::var("s");
        r.check(L.is_mc(pair->v1.scaled(t) + pair->v2.scaled(s) + pair->v3.scaled(s * t)), "F2 xi is MC");
    }
    r.check(L.is_mc(R.family.xi), "F2 family in the flat basis is MC");
    return r;
}

Result generic_d() {
    Result r;
    auto main = [&](const std::string& l) { return run(l).report.components.front(); };
    r.check(main("N3").generic_d == 11, "N3 11");
    r.check(main("N2b").generic_d == 11, "N2b 11");
    r.check(main("IV2").generic_d == 10, "IV2 10");
    r.check(main("F2").generic_d == 10, "F2 10");
    r.check(main("N2a").generic_d == 11, "N2a generic lambda 11");
    r.check(main("N2a_inf").generic_d == 10 && main("N2a_inf").dim == 3, "N2a_inf 3-dim component 10");
    for (auto l : {"N3", "IV2", "F2", "N2a_inf"}) r.check(run(l).report.retained, std::string(l) + " retained");
    for (auto l : {"N2b", "N2a"}) r.check(!run(l).report.retained, std::string(l) + " discarded");
    return r;
}

Result harmonic_curvature_types() {
    Result r;
    for (auto l : {"N3", "IV2", "F2", "N2a_inf"})
        for (size_t i = 0; i < run(l).report.components.size(); ++i) {
            auto& c = run(l).report.components[i];
            if (!c.retained) continue;
            r.check(run(l).data[i].harmonic.scalar.is_zero(), std::string("scalar part zero on ") + l);
        }
    auto prop = [&](const std::string& l, const std::string& v) {
        auto& q = run(l).data.front().harmonic.quintic;
        bool ok = true;
        for (auto& x : q) ok = ok && proportional_to(x, v);
        r.check(ok && !run(l).data.front().harmonic.quintic_zero(), "quintic part of " + l + " proportional to " + v);
    };
    prop("IV2", "s");
    prop("F2", "s");
    prop("N2a_inf", "t1");
    std::map<std::string, std::string> want{{"N3", "N"}, {"IV2", "IV"}, {"F2", "F"}, {"N2a_inf", "N"}};
    for (auto& [l, lab] : want) r.check(run(l).report.components.front().label == lab, "quintic label of " + l);
    return r;
}

Result torus_weights() {
    Result r;
    std::map<std::string, CoordinateWeights> w;
    for (auto& x : run("N2a_inf").report.weights) w[x.name] = x;
    r.check(w["t1"].H == 5 && w["t2"].H == 1 && w["s"].H == 2, "H weights (5, 1, 2)");
    r.check(w["t1"].E == 1 && w["t2"].E == 1 && w["s"].E == 2, "E weights (1, 1, 2)");
    r.check(w["t1"].Ep == 0 && w["t2"].Ep == 0 && w["s"].Ep == 0, "E' weights (0, 0, 0)");
    return r;
}

Result models() {
    Result r;
    auto ms = verify_models();
    std::set<std::string> labels;
    for (auto& t : model_tables()) labels.insert(t.label);
    r.check(labels.size() == 5, "five tables");
    for (auto& m : ms) {
        r.check(m.jacobi, m.name + ": d^2 = 0");
        r.check(m.symbol_iso, m.name + ": symbol isomorphic to g_-");
        r.check(m.ok(), m.name + ": " + (m.failures.empty() ? "" : m.failures.front()));
        size_t want = m.name == "N3" ? 11 : 10;
        r.check(m.symmetry_d == want, m.name + ": symmetry dimension");
    }
    return r;
}

Result properties() {
    Result r;
    std::mt19937 rng(2024);
    // d^2 = 0 on C3 cochains, boundary^2 = 0 on the homology complex
    {
        CochainAlgebra<Rational> ops(c3().g);
        for (int s = 0; s < 50; ++s) {
            int p = 1 + s % 3;
            auto keys = ops.keys_of_degree(p);
            Cochain<Rational> c(p);
            for (int i = 0; i < 6; ++i) c.add(keys[rng() % keys.size()], rnd(rng));
            r.check(ops.d(ops.d(c)).is_zero(), "d^2 = 0");
        }
        const auto& hc = homology_complex();
        for (int q = 2; q <= 4; ++q)
            for (CKey k : hc.keys_of_degree(q)) {
                Cochain<Rational> e(q);
                e.add(k, Rational(1));
                r.check(hc.boundary(hc.boundary(e)).is_zero(), "boundary^2 = 0");
            }
    }
    int jac = 0, gauge = 0, phi = 0;
    for (auto& l : kFamilies) {
        auto q = qclass(l);
        const auto& L = *q.L;
        for (int i = 0; i < 12; ++i) {
            auto x = random_mc(q, rng);
            r.check(L.is_mc(x) && check_jacobi(L.ops().deformed(x)), "Jacobi on MC sample of " + l);
            auto y = random_element(L, 2, rng, 3);
            r.check(L.is_mc(y) == check_jacobi(L.ops().deformed(y)), "Jacobi iff MC on " + l);
            auto z = x + random_element(L, 2, rng, 1);
            r.check(L.is_mc(z) == check_jacobi(L.ops().deformed(z)), "Jacobi iff MC on " + l);
            jac += 3;
            auto u = random_element(L, 1, rng, 4);
            auto gx = L.gauge_act(u, x);
            r.check(L.is_mc(gx) && L.pi(gx) == L.pi(x), "gauge preserves MC and pi on " + l);
            ++gauge;
            auto w = random_element(L, 2, rng, 5);
            r.check(L.phi_inverse(L.phi(w)) == w, "Phi^-1 Phi = id on " + l);
            ++phi;
        }
    }
    r.check(jac >= 100 && gauge >= 50 && phi >= 50, "sample counts");
    // semicontinuity of the symmetry dimension, and the flat member
    for (auto& l : kFamilies) {
        const auto& R = run(l);
        for (size_t ci = 0; ci < R.data.size(); ++ci) {
            const auto& h = R.data[ci].holonomy;
            size_t gen = R.report.components[ci].generic_d;
            const Component* comp = nullptr;
            for (auto& c : R.family.components)
                if (c.equations == R.report.components[ci].equations) comp = &c;
            if (!comp) continue;
            int n = 0;
            for (int i = 0; i < 20; ++i, ++n) {
                std::map<int, Rational> at;
                for (int v : R.family.var_ids())
                    if (!comp->substitution.count(v)) at[v] = rnd(rng);
                r.check(symmetry_dimension(specialize(h, at)) >= gen, "semicontinuity on " + l);
            }
            r.check(n >= 20, "20 points on " + l);
            std::map<int, Rational> zero;
            for (int v : R.family.var_ids()) zero[v] = Rational(0);
            r.check(symmetry_dimension(specialize(h, zero)) == 21, "flat member of " + l + " has d = 21");
        }
    }
    return r;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"C3 construction", c3_construction},
        {"Tanaka prolongation recovers g", prolongation},
        {"harmonic module 1 + 6", harmonic_module},
        {"quintic stabilizers", stabilizers},
        {"Betti tables", betti},
        {"Kuranishi families", kuranishi},
        {"generic symmetry dimensions and verdicts", generic_d},
        {"harmonic curvature types", harmonic_curvature_types},
        {"torus weights on N2a_inf", torus_weights},
        {"model tables", models},
        {"property suites", properties},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Result res;
        try {
            res = criteria[i].second();
        } catch (const std::exception& e) {
            res.ok = false;
            res.why.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << " " << (res.ok ? "PASS" : "FAIL") << "  " << criteria[i].first;
        if (!res.ok) std::cout << "  (" << res.why.front() << (res.why.size() > 1 ? ", ..." : "") << ")";
        std::cout << std::endl;
        failed += !res.ok;
    }
    return failed ? 1 : 0;
}
