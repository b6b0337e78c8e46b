#include <c3monge/liealg/c3_prolongation.hpp>
#include <c3monge/pipeline/models.hpp>
#include <c3monge/pipeline/run.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace c3monge;

namespace {

// catalog label, N2a_inf, or N2a[q] for a rational value of lambda
ClassDescriptor find_class(const std::string& label) {
    for (auto& c : enumerate_classes())
        if (c.label == label) return c;
    if (label == "N2a_inf") return n2a_descriptor(std::nullopt);
    if (label.rfind("N2a[", 0) == 0 && label.back() == ']')
        return n2a_descriptor(Rational::parse(label.substr(4, label.size() - 5)));
    throw std::invalid_argument("unknown class " + label);
}

const std::map<std::string, std::pair<std::vector<size_t>, std::vector<size_t>>>& expected_betti() {
    static const std::map<std::string, std::pair<std::vector<size_t>, std::vector<size_t>>> e{
        {"N3", {{1, 0, 0}, {0, 0}}},  {"N2a", {{1, 0, 0}, {0, 0}}}, {"N2b", {{1, 0, 0}, {0, 0}}},
        {"IV2", {{2, 0, 0}, {0, 0}}}, {"F2", {{2, 0, 0}, {0, 0}}},  {"N2a_inf", {{3, 1, 0, 0}, {2, 1, 1}}},
    };
    return e;
}

void write(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int cmd_classify(const std::string& label, const std::string& format, const std::string& out) {
    auto cs = label.empty() ? all_classes() : std::vector<ClassDescriptor>{find_class(label)};
    auto rs = run_classes(cs, worker_count());
    write(format == "json" ? emit_json(rs) : emit_text(rs), out);
    auto bad = check_expectations(rs);
    for (auto& b : bad) std::cerr << "mismatch: " << b << "\n";
    return bad.empty() ? 0 : 1;
}

int cmd_verify_models(const std::string& label, const std::string& format) {
    auto tables = model_tables();
    std::vector<ModelTable> todo;
    for (auto& t : tables)
        if (label.empty() || t.label == label) todo.push_back(t);
    if (todo.empty()) throw std::invalid_argument("unknown model " + label);
    std::vector<ModelCheck> ms(todo.size());
    parallel_for(todo.size(), worker_count(), [&](size_t i) { ms[i] = verify_model(todo[i]); });
    bool ok = true;
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (auto& m : ms) j.push_back(to_json(m));
        std::cout << j.dump(2) << "\n";
    }
    for (auto& m : ms) {
        ok = ok && m.ok();
        if (format != "json") {
            std::cout << detail::pad(m.name, 28) << (m.ok() ? "ok      " : "FAILED  ") << "d " << m.symmetry_d
                      << "  quintic " << (m.quintic.empty() ? "-" : m.quintic) << "\n";
            for (auto& f : m.failures) std::cout << "    " << f << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_prolong() {
    Prolongation P(c3_minus(), 4);
    auto d = P.dims_nonnegative();
    const auto& g = c3().g;
    bool ok = prolongation_matches_g(P);
    std::cout << "degree  dim Pr(g_-)  dim g\n";
    for (int k = -3; k <= 4; ++k) {
        size_t pr = k < 0 ? g.basis_of_degree(k).size() : (size_t(k) < d.size() ? d[size_t(k)] : 0);
        std::cout << detail::pad(std::to_string(k), 8) << detail::pad(std::to_string(pr), 13)
                  << g.basis_of_degree(k).size() << "\n";
        if (pr != g.basis_of_degree(k).size()) ok = false;
    }
    std::cout << "total " << P.total_dim() << ", isomorphic to g: " << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
}

int cmd_betti(const std::string& label) {
    auto cls = embed_class(find_class(label));
    auto L = cls.dgla();
    auto b = L->betti(false);
    int jmax = 3;
    for (int p : {1, 2, 3})
        for (auto& w : L->complex().blocks(p)) jmax = std::max(jmax, w[0]);
    std::cout << label << "  (dim k = " << cls.E.dim() << ")\n";
    for (int p = 1; p <= 3; ++p) {
        std::cout << "b" << p << "_j, j = 0.." << jmax << ":";
        for (size_t x : b.row(p, 0, jmax)) std::cout << " " << x;
        std::cout << "\n";
    }
    auto it = expected_betti().find(label);
    if (it == expected_betti().end()) return 0;
    auto b2 = b.row(2, 1, std::max(jmax, int(it->second.first.size())));
    auto b3 = b.row(3, 2, std::max(jmax, int(it->second.second.size()) + 1));
    b2.resize(it->second.first.size());
    b3.resize(it->second.second.size());
    bool ok = b2 == it->second.first && b3 == it->second.second;
    if (!ok) std::cerr << "mismatch: Betti numbers of " << label << " differ from the expected table\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification of C3 Monge geometries with large symmetry"};
    app.require_subcommand(1);

    std::string cls, format = "text", out, model;
    auto* classify = app.add_subcommand("classify", "run the classification and print the report");
    classify->add_option("--class", cls, "a single class: N3, N2a, N2b, IV2, F2, N2a_inf or N2a[q]");
    classify->add_option("--output", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    classify->add_option("--out", out, "write the report to a file");

    std::string mformat = "text";
    auto* verify = app.add_subcommand("verify-models", "check the embedded model tables");
    verify->add_option("--model", model, "N3, N2a_inf, N2a_inf_boundary, IV2 or F2");
    verify->add_option("--output", mformat, "json or text")->check(CLI::IsMember({"json", "text"}));

    auto* prolong = app.add_subcommand("prolong", "Tanaka prolongation of g_-");

    std::string bcls;
    auto* betti = app.add_subcommand("betti", "Betti table of the invariant subcomplex");
    betti->add_option("--class", bcls, "class label")->required();

    auto* dump = app.add_subcommand("dump-algebra", "structure constants of C3 as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*classify) return cmd_classify(cls, format, out);
        if (*verify) return cmd_verify_models(model, mformat);
        if (*prolong) return cmd_prolong();
        if (*betti) return cmd_betti(bcls);
        if (*dump) {
            std::cout << to_json(c3().g).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
