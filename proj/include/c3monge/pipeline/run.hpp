#pragma once

#include "catalog.hpp"
#include "../cartan/symmetry.hpp"

#include <atomic>
#include <deque>
#include <cstdlib>
#include <thread>

namespace c3monge {

struct CoordinateWeights {
    std::string name;
    int H = 0, E = 0, Ep = 0;
};

struct ComponentReport {
    std::vector<std::string> equations;
    size_t dim = 0;
    std::string scalar;
    std::vector<std::string> quintic;
    std::string label;  // quintic type, or "flat"
    size_t generic_d = 0;
    std::string flat_locus;  // "p = 0" for the flat part, "none", or "" if identically flat
    bool retained = false;
    std::string reason;  // why discarded
};

struct ClassReport {
    std::string label;
    std::vector<std::string> k0;
    size_t dim_k = 0;
    std::vector<size_t> b2, b3;  // b^2_j for j >= 1, b^3_j for j >= 2
    nlohmann::json kuranishi;
    std::vector<CoordinateWeights> weights;
    std::vector<ComponentReport> components;
    std::vector<std::string> notes;
    bool retained = false;
};

// Everything run_class derives for one component, kept for tests.
struct ComponentData {
    CartanConnection<RatFunc> connection;
    Curvature<RatFunc> curvature;
    HarmonicClass<RatFunc> harmonic;
    Holonomy<RatFunc> holonomy;
};

namespace detail {

inline ComponentData analyse_member(const Dgla<RatFunc>& L, const Cochain<RatFunc>& xi, const Matrix<RatFunc>& iota) {
    auto c = normalize(initial_connection(L.deformed_algebra(xi), iota));
    auto K = curvature(c);
    auto h = harmonic_curvature(K);
    auto hol = holonomy(c, K);
    return {std::move(c), std::move(K), std::move(h), std::move(hol)};
}

inline bool is_discrete(const std::string& label) {
    return label == "N3" || label == "N2b" || label == "IV2" || label == "F2";
}

// common factor of the numerators of the harmonic class, as a primitive polynomial
inline MultiPoly flat_factor(const HarmonicClass<RatFunc>& h) {
    MultiPoly g;
    auto take = [&](const RatFunc& x) {
        if (x.is_zero()) return;
        g = g.is_zero() ? x.num().monic() : poly_gcd(g, x.num());
    };
    take(h.scalar);
    for (auto& q : h.quintic) take(q);
    return g.is_zero() ? g : g.monic();
}

// a nonzero (a, b) with l(a, b) = 0 for every nonzero entry l = alpha x + beta y, or nothing
inline std::optional<std::pair<Rational, Rational>> common_kernel(const std::vector<RatFunc>& q, int x, int y) {
    std::optional<std::pair<Rational, Rational>> dir;
    for (auto& e : q) {
        if (e.is_zero()) continue;
        if (!e.is_polynomial()) return std::nullopt;
        auto lf = linear_form(e.num(), {x, y});
        if (!lf || !lf->second.is_zero()) return std::nullopt;
        std::pair<Rational, Rational> d{lf->first[1], -lf->first[0]};
        if (dir && !(dir->first * d.second - dir->second * d.first).is_zero()) return std::nullopt;
        if (!dir) dir = d;
    }
    return dir;
}

}  // namespace detail

struct ClassRun {
    ClassReport report;
    EmbeddedClass cls;
    std::unique_ptr<Dgla<RatFunc>> dgla;
    KuranishiFamily family;
    std::vector<ComponentData> data;  // per component
};

// Steps of the classification for one class: Kuranishi family, normal
// connection, harmonic curvature and generic symmetry dimension per component,
// torus weights of the coordinates, verdict.
inline ClassRun run_class_full(const ClassDescriptor& desc) {
    ClassRun run;
    run.cls = embed_class(desc);
    run.dgla = run.cls.dgla();
    const auto& L = *run.dgla;
    auto& R = run.report;
    R.label = desc.label;
    R.k0 = desc.k0;
    R.dim_k = run.cls.E.dim();

    auto betti = L.betti(false);
    int jmax = 3;
    for (int p : {2, 3})
        for (auto& w : L.complex().blocks(p)) jmax = std::max(jmax, w[0]);
    R.b2 = betti.row(2, 1, jmax);
    R.b3 = betti.row(3, 2, std::max(2, jmax));

    run.family = kuranishi_family(L);
    auto& fam = run.family;
    const auto& iota = run.cls.E.iota;

    // two classes of one weight: rebase so that the flat direction is the t axis
    if (fam.coords.size() == 2 && fam.coords[0].weight == fam.coords[1].weight && fam.components.size() == 1 &&
        fam.components[0].equations.empty()) {
        auto probe = detail::analyse_member(L, fam.xi, iota);
        auto ids = fam.var_ids();
        auto dir = detail::common_kernel(probe.harmonic.quintic, ids[0], ids[1]);
        std::optional<CorrectedPair> pair;
        if (dir && probe.harmonic.scalar.is_zero())
            pair = corrected_pair_through(L, fam.h1[0], fam.h1[1], dir->first, dir->second);
        if (pair) {
            fam = kuranishi_family(L, {pair->v1, pair->v2}, {"t", "s"});
            RatFunc t = RatFunc::var("t"), s = RatFunc::var("s");
            bool exact = fam.xi == pair->v1.scaled(t) + pair->v2.scaled(s) + pair->v3.scaled(s * t);
            R.notes.push_back(std::string("basis: t along the flat class ") + "(" + dir->first.str() + ", " +
                              dir->second.str() + "), s along (" + pair->change[2].str() + ", " +
                              pair->change[3].str() + "); xi = t v' + s v'' + s t v''' " +
                              (exact ? "holds exactly" : "FAILS"));
            if (!pair->v3.is_zero()) R.notes.push_back("corrector v''' = -delta[v', v''] is nonzero");
        } else {
            R.notes.push_back("no flat isotropic basis found; harmonic basis kept");
        }
    }
    R.kuranishi = to_json(fam);
    for (auto& c : fam.coords) R.weights.push_back({c.name, c.weight[1], c.weight[0], c.weight[2]});

    std::deque<Component> todo(fam.components.begin(), fam.components.end());
    while (!todo.empty()) {
        Component comp = std::move(todo.front());
        todo.pop_front();
        ComponentReport cr;
        cr.equations = comp.equations;
        cr.dim = comp.dim;
        auto data = detail::analyse_member(L, fam.xi_on(comp), iota);
        const auto& h = data.harmonic;
        cr.scalar = h.scalar.str();
        for (auto& q : h.quintic) cr.quintic.push_back(q.str());
        cr.label = h.quintic_zero() ? "flat" : classify_quintic(h.quintic).label;
        cr.generic_d = generic_symmetry_dimension(data.holonomy).dim;
        MultiPoly ff = detail::flat_factor(h);
        cr.flat_locus = ff.is_zero() ? "" : ff.is_constant() ? "none" : ff.str() + " = 0";
        if (h.is_zero())
            cr.reason = "harmonic curvature identically flat";
        else if (!h.scalar.is_zero()) {
            cr.reason = "scalar component nonzero";
            // continue on the scalar-flat locus when it is a linear subspace
            std::vector<int> free;
            for (int v : fam.var_ids())
                if (!comp.substitution.count(v)) free.push_back(v);
            auto sub = h.scalar.is_polynomial() && comp.dim > 0
                           ? detail::solve_linear_locus({h.scalar.num()}, free)
                           : std::nullopt;
            if (sub) {
                Component c2;
                for (auto& [v, e] : comp.substitution) c2.substitution[v] = e.compose(sub->substitution);
                for (auto& [v, e] : sub->substitution) c2.substitution[v] = e;
                c2.equations = comp.equations;
                c2.equations.insert(c2.equations.end(), sub->equations.begin(), sub->equations.end());
                std::sort(c2.equations.begin(), c2.equations.end());
                c2.dim = comp.dim - (free.size() - sub->dim);
                todo.push_back(std::move(c2));
            } else if (!h.scalar.is_constant()) {
                R.notes.push_back("scalar-flat locus " + h.scalar.str() + " = 0 is not linear and was not examined");
            }
        } else if (cr.generic_d > R.dim_k)
            cr.reason = "generic d = " + std::to_string(cr.generic_d) + " > " + std::to_string(R.dim_k);
        else if (cr.generic_d < R.dim_k)
            throw std::logic_error(R.label + ": generic symmetry dimension below dim k");
        cr.retained = cr.reason.empty();
        R.retained = R.retained || cr.retained;
        R.components.push_back(std::move(cr));
        run.data.push_back(std::move(data));
    }
    if (fam.needs_manual_components) R.notes.push_back("obstruction locus has components that were not resolved");
    return run;
}

inline ClassReport run_class(const ClassDescriptor& desc) { return run_class_full(desc).report; }

inline size_t worker_count() {
    const char* s = std::getenv("C3_WORKERS");
    if (!s || !*s) return 1;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v <= 0) throw std::invalid_argument("C3_WORKERS must be a positive integer");
    return size_t(v);
}

// Runs f(i) for i < n on a small work queue; results are written by index.
template <class Fn>
void parallel_for(size_t n, size_t workers, Fn&& f) {
    workers = std::max<size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> ts;
    for (size_t w = 0; w < workers; ++w)
        ts.emplace_back([&] {
            for (size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
}

// catalog classes followed by the special values of lambda
inline std::vector<ClassDescriptor> all_classes() {
    auto cs = enumerate_classes();
    for (auto& p : special_points()) cs.push_back(n2a_descriptor(p.lambda));
    return cs;
}

inline std::vector<ClassReport> run_classes(const std::vector<ClassDescriptor>& cs, size_t workers = 1) {
    std::vector<ClassReport> out(cs.size());
    parallel_for(cs.size(), workers, [&](size_t i) { out[i] = run_class(cs[i]); });
    return out;
}

// ---- serialization

inline nlohmann::json to_json(const ClassReport& r) {
    nlohmann::json j;
    j["label"] = r.label;
    j["k0"] = r.k0;
    j["dim_k"] = r.dim_k;
    j["betti"] = {{"b2", r.b2}, {"b3", r.b3}};
    j["kuranishi"] = r.kuranishi;
    j["torus_weights"] = nlohmann::json::array();
    for (auto& w : r.weights) j["torus_weights"].push_back({{"coordinate", w.name}, {"H", w.H}, {"E", w.E}, {"E'", w.Ep}});
    j["components"] = nlohmann::json::array();
    for (auto& c : r.components)
        j["components"].push_back({{"equations", c.equations},
                                   {"dim", c.dim},
                                   {"harmonic", {{"scalar", c.scalar}, {"quintic", c.quintic}}},
                                   {"quintic_type", c.label},
                                   {"generic_d", c.generic_d},
                                   {"flat_locus", c.flat_locus},
                                   {"verdict", c.retained ? "retained" : "discarded"},
                                   {"reason", c.reason}});
    j["notes"] = r.notes;
    j["verdict"] = r.retained ? "retained" : "discarded";
    return j;
}

inline nlohmann::json report_json(const std::vector<ClassReport>& rs) {
    nlohmann::json j;
    j["classes"] = nlohmann::json::array();
    for (auto& r : rs) j["classes"].push_back(to_json(r));
    return j;
}

inline std::string emit_json(const std::vector<ClassReport>& rs) { return report_json(rs).dump(2) + "\n"; }

namespace detail {

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}
inline std::string join(const std::vector<size_t>& v, const std::string& sep) {
    std::vector<std::string> s;
    for (auto x : v) s.push_back(std::to_string(x));
    return join(s, sep);
}
inline std::string pad(std::string s, size_t n) {
    if (s.size() < n) s += std::string(n - s.size(), ' ');
    return s;
}

}  // namespace detail

inline std::string emit_text(const std::vector<ClassReport>& rs) {
    using detail::join;
    using detail::pad;
    std::ostringstream o;
    if (rs.empty()) return "no classes\n";
    o << "Betti numbers\n";
    o << pad("label", 14) << pad("b2_j, j>=1", 16) << "b3_j, j>=2\n";
    for (auto& r : rs) o << pad(r.label, 14) << pad(join(r.b2, ","), 16) << join(r.b3, ",") << "\n";

    // generic d of the main (largest non-flat) component; discrete classes first
    o << "\ngeneric d\n";
    auto main_d = [](const ClassReport& r) -> std::string {
        const ComponentReport* best = nullptr;
        for (auto& c : r.components)
            if (c.label != "flat" && (!best || c.dim > best->dim)) best = &c;
        if (!best && !r.components.empty()) best = &r.components.front();
        return best ? std::to_string(best->generic_d) : "-";
    };
    auto table = [&](bool discrete) {
        std::string head = pad("label", 12), line = pad("generic d", 12);
        bool any = false;
        for (auto& r : rs) {
            if (detail::is_discrete(r.label) != discrete) continue;
            size_t w = std::max<size_t>(r.label.size() + 2, 6);
            head += pad(r.label, w);
            line += pad(main_d(r), w);
            any = true;
        }
        if (any) o << head << "\n" << line << "\n";
    };
    table(true);
    table(false);

    o << "\nclasses\n";
    for (auto& r : rs) {
        o << r.label << "  k0 = <" << join(r.k0, ", ") << ">  dim k = " << r.dim_k << "  "
          << (r.retained ? "retained" : "discarded") << "\n";
        std::vector<std::string> ws;
        for (auto& w : r.weights)
            ws.push_back(w.name + " (H " + std::to_string(w.H) + ", E " + std::to_string(w.E) + ", E' " +
                         std::to_string(w.Ep) + ")");
        if (!ws.empty()) o << "  weights: " << join(ws, ", ") << "\n";
        for (size_t i = 0; i < r.components.size(); ++i) {
            auto& c = r.components[i];
            o << "  component " << i + 1 << ": {" << (c.equations.empty() ? "all" : join(c.equations, ", "))
              << "} dim " << c.dim << ", quintic " << c.label << ", d " << c.generic_d;
            if (c.flat_locus == "none")
                o << ", nowhere flat";
            else if (!c.flat_locus.empty())
                o << ", flat on " << c.flat_locus;
            o << ", " << (c.retained ? "retained" : "discarded: " + c.reason) << "\n";
        }
        for (auto& n : r.notes) o << "  note: " << n << "\n";
    }

    std::vector<std::string> kept;
    for (auto& r : rs)
        if (r.retained) kept.push_back(r.label);
    o << "\nretained: " << (kept.empty() ? "none" : join(kept, ", ")) << "\n";
    return o.str();
}

// ---- expected values, for the exit status of the command line tool

struct Expectation {
    std::string label;
    std::vector<size_t> generic_d;  // per component
    std::vector<std::string> quintic;
    bool retained;
};

inline const std::vector<Expectation>& expectations() {
    static const std::vector<Expectation> e{
        {"N3", {11}, {"N"}, true},
        {"N2a", {11}, {"N"}, false},
        {"N2b", {11}, {"N"}, false},
        {"IV2", {10}, {"IV"}, true},
        {"F2", {10}, {"F"}, true},
        {"N2a_inf", {10, 21}, {"N", "flat"}, true},
    };
    return e;
}

// mismatches between reports and the expected table; special lambda points
// other than infinity are expected to be discarded
inline std::vector<std::string> check_expectations(const std::vector<ClassReport>& rs) {
    std::vector<std::string> bad;
    for (auto& r : rs) {
        auto it = std::find_if(expectations().begin(), expectations().end(),
                               [&](const Expectation& e) { return e.label == r.label; });
        if (it == expectations().end()) {
            if (r.retained) bad.push_back(r.label + ": expected no retained component");
            continue;
        }
        if (r.retained != it->retained) bad.push_back(r.label + ": verdict differs");
        if (r.components.size() != it->generic_d.size()) {
            bad.push_back(r.label + ": number of components differs");
            continue;
        }
        for (size_t i = 0; i < r.components.size(); ++i) {
            if (r.components[i].generic_d != it->generic_d[i])
                bad.push_back(r.label + ": generic d " + std::to_string(r.components[i].generic_d) + ", expected " +
                              std::to_string(it->generic_d[i]));
            if (r.components[i].label != it->quintic[i])
                bad.push_back(r.label + ": quintic type " + r.components[i].label + ", expected " + it->quintic[i]);
        }
    }
    return bad;
}

}  // namespace c3monge
