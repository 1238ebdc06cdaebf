#include <lspectra/io.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <regex>

using namespace lspectra;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Window {
    int lo, hi;
};

Window parse_window(const std::string& s) {
    static const std::regex re(R"(^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("--window: expected a..b, got '" + s + "'");
    Window w{std::stoi(m[1]), std::stoi(m[2])};
    if (w.lo > w.hi) throw UsageError("--window: " + s + " is empty (need a <= b)");
    return w;
}

std::string element_label(const LinkingForm& L, long i) {
    auto x = L.element(i);
    bool small = std::all_of(L.factors().begin(), L.factors().end(), [](long f) { return f <= 10; });
    std::string out;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!small && k) out += ",";
        out += std::to_string(x[k]);
    }
    return out;
}

std::string linking_tsv(const LinkingForm& L) {
    std::string out;
    for (long i = 0; i < L.order(); ++i) out += element_label(L, i) + "\t" + L.q(i).to_string() + "\n";
    return out;
}

// "E", "F", or a product such as "E*F".
StructuredComplex named_structure(const std::string& name) {
    auto star = name.find('*');
    if (star == std::string::npos) return builtin_structure(name);
    return tensor_structured(named_structure(name.substr(0, star)), named_structure(name.substr(star + 1)));
}

std::string kind_name(StructureKind k) { return k == StructureKind::Symmetric ? "symmetric" : "quadratic"; }

struct Options {
    std::string window, format = "tsv", name, input;
    bool json() const { return format == "json"; }
};

void emit(const Options& o, const json& j, const std::string& tsv) {
    if (o.json()) std::cout << j.dump(2) << "\n";
    else std::cout << tsv;
}

void require_name_or_input(const Options& o) {
    if (o.name.empty() == o.input.empty()) throw UsageError("--name: give exactly one of --name or --input");
}

void check_table_name(const std::string& name) {
    auto names = table_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string all;
        for (auto& n : names) all += (all.empty() ? "" : ", ") + n;
        throw UsageError("--name: unknown table '" + name + "' (known: " + all + ")");
    }
}

int cmd_table(const Options& o) {
    require_name_or_input(o);
    GradedGroup G = GradedGroup(0, 0, {FgAbGroup()});
    if (!o.name.empty()) {
        check_table_name(o.name);
        Window w = parse_window(o.window.empty() ? "-8..8" : o.window);
        G = table(o.name, w.lo, w.hi);
    } else {
        G = graded_from_json(read_json_file(o.input));
        if (!o.window.empty()) {
            Window w = parse_window(o.window);
            G = G.restrict(w.lo, w.hi);
        }
    }
    emit(o, graded_to_json(G, o.name), graded_to_tsv(G));
    return 0;
}

int cmd_dual(const Options& o) {
    require_name_or_input(o);
    GradedGroup D = GradedGroup(0, 0, {FgAbGroup()});
    if (!o.name.empty()) {
        check_table_name(o.name);
        Window w = parse_window(o.window.empty() ? "-8..8" : o.window);
        D = anderson_dual(table(o.name, -w.hi - 1, -w.lo), w.lo, w.hi);
    } else {
        GradedGroup G = graded_from_json(read_json_file(o.input));
        if (o.window.empty()) D = anderson_dual(G);
        else {
            Window w = parse_window(o.window);
            D = anderson_dual(G, w.lo, w.hi);
        }
    }
    emit(o, graded_to_json(D, o.name.empty() ? "" : "I(" + o.name + ")"), graded_to_tsv(D));
    return 0;
}

int cmd_invariant(const Options& o) {
    require_name_or_input(o);
    if (!o.window.empty()) throw UsageError("--window: not used by invariant");
    json j;
    std::string tsv;
    std::optional<StructuredComplex> S;
    if (!o.name.empty()) S = named_structure(o.name);
    else {
        json in = read_json_file(o.input);
        if (in.contains("factors")) {
            LinkingForm L = linking_from_json(in);
            int beta = brown_kervaire(L);
            j = json{{"linking_form", linking_to_json(L)}, {"beta", beta}};
            emit(o, j, "beta = " + std::to_string(beta) + "\n" + linking_tsv(L));
            return 0;
        }
        S = structure_from_json(in);
    }
    bool acyclic = acyclic_after_inverting_two(S->C);
    j["structure"] = o.name.empty() ? json(nullptr) : json(o.name);
    j["kind"] = kind_name(S->kind);
    j["dimension"] = S->dim;
    j["acyclic_after_inverting_two"] = acyclic;
    tsv = "kind\t" + kind_name(S->kind) + "\ndimension\t" + std::to_string(S->dim) + "\nacyclic_after_inverting_two\t" +
          (acyclic ? "true" : "false") + "\n";
    if (acyclic && S->kind == StructureKind::Quadratic) {
        LinkingForm L = linking_form(*S);
        int beta = brown_kervaire(L);
        j["linking_form"] = linking_to_json(L);
        j["beta"] = beta;
        tsv = "beta = " + std::to_string(beta) + "\n" + tsv + linking_tsv(L);
    }
    emit(o, j, tsv);
    return 0;
}

int cmd_certify_ef(const Options& o) {
    if (!o.window.empty() || !o.name.empty() || !o.input.empty())
        throw UsageError("certify-ef takes no --window, --name or --input");
    StructuredComplex P = tensor_structured(builtin_E(), builtin_F());
    LinkingForm L = linking_form(P);
    int beta = brown_kervaire(L);
    ChainForm psi1 = P.level(1);
    bool top_zero = std::all_of(psi1.blocks.begin(), psi1.blocks.end(), [](auto& kv) { return kv.second.is_zero(); });
    json j{{"beta", beta},
           {"linking_form", linking_to_json(L)},
           {"psi1_zero", top_zero},
           {"acyclic_after_inverting_two", acyclic_after_inverting_two(P.C)}};
    emit(o, j, "beta = " + std::to_string(beta) + "\n" + linking_tsv(L));
    return beta == 4 ? 0 : 1;
}

int cmd_verify(const Options& o, const std::string& which) {
    if (!o.input.empty()) throw UsageError("--input: not used by verify");
    if (which != "presentations" && !o.name.empty()) throw UsageError("--name: not used by verify " + which);
    Window w = parse_window(o.window.empty() ? (which == "presentations" ? "-16..16" : "-12..12") : o.window);
    Report r;
    if (which == "A") r = verify_thmA(w.lo, w.hi);
    else if (which == "B") r = verify_thmB(w.lo, w.hi);
    else if (which == "presentations") {
        if (o.name.empty()) r = verify_presentations(w.lo, w.hi);
        else {
            r.title = "presentation " + o.name;
            r.add(o.name, verify_presentation(presentation(o.name, w.lo, w.hi)));
        }
    } else throw UsageError("verify: expected A, B or presentations, got '" + which + "'");
    emit(o, report_to_json(r), report_to_tsv(r));
    return r.all_pass() ? 0 : 1;
}

int cmd_torsor(const Options& o) {
    require_name_or_input(o);
    GradedGroup G = GradedGroup(0, 0, {FgAbGroup()});
    if (!o.name.empty()) {
        check_table_name(o.name);
        Window w = parse_window(o.window.empty() ? "-8..8" : o.window);
        G = table(o.name, w.lo, w.hi);
    } else G = graded_from_json(read_json_file(o.input));
    if (!G.period()) throw InvalidInput("torsor count needs a periodic table");
    FgAbGroup t = torsor_count(G, *G.period());
    json j{{"name", o.name.empty() ? json(nullptr) : json(o.name)}, {"period", *G.period()}, {"torsor", t.to_string()}};
    emit(o, j, "torsor\t" + t.to_string() + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with L-theory tables, forms and Poincare structures"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&](CLI::App* c, bool name, bool input) {
        c->add_option("--window", o.window, "degree window a..b")->allow_extra_args(false);
        c->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
        if (name) c->add_option("--name", o.name, "table or structure name");
        if (input) c->add_option("--input", o.input, "JSON input file");
    };
    auto* t = app.add_subcommand("table", "print a homotopy-group table");
    add_common(t, true, true);
    auto* d = app.add_subcommand("dual", "Anderson dual of a table");
    add_common(d, true, true);
    auto* inv = app.add_subcommand("invariant", "linking form and Brown-Kervaire invariant of a structure");
    add_common(inv, true, true);
    auto* ef = app.add_subcommand("certify-ef", "evaluate the product of E and F");
    add_common(ef, true, true);
    std::string which;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("suite", which, "A, B or presentations")->required()->check(CLI::IsMember({"A", "B", "presentations"}));
    add_common(v, true, true);
    auto* tor = app.add_subcommand("torsor", "count the choices of splitting of a periodic table");
    add_common(tor, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (t->parsed()) return cmd_table(o);
        if (d->parsed()) return cmd_dual(o);
        if (inv->parsed()) return cmd_invariant(o);
        if (ef->parsed()) return cmd_certify_ef(o);
        if (v->parsed()) return cmd_verify(o, which);
        if (tor->parsed()) return cmd_torsor(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
