// Command-line front end: smoothness certificates, derivation-module
// generators, brackets, ampleness/simplicity witnesses, singular filtrations,
// and the sphere / hyperelliptic-curve / SL_n analyses, with text or JSON
// reports. Exit codes: 0 success, 1 property/certificate failure,
// 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <liefield/liefield.hpp>

#include <cstdlib>
#include <random>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace liefield;
using nlohmann::json;

namespace {

struct Options {
    std::string format = "text";
    unsigned long seed = 0;
    int jet_order = 6;
    int bound = 12;
    int verbosity = 0;
};

int default_jet_order() {
    if (const char* env = std::getenv("LIEFIELD_JET_ORDER")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 6;
}

std::vector<std::string> split_names(const std::string& vars) {
    std::vector<std::string> names;
    std::istringstream in(vars);
    std::string w;
    while (in >> w) names.push_back(w);
    return names;
}

struct VarietyArgs {
    std::string vars;
    std::vector<std::string> ideal;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--vars", vars, "space-separated variable names, e.g. \"x1 x2\"");
        cmd->add_option("--ideal", ideal, "ideal generator (repeatable, parser grammar)");
        cmd->add_option("--file", file, "variety file: 'vars: ...' then one generator per line");
    }

    Variety build() const {
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw std::invalid_argument("cannot open variety file: " + file);
            std::stringstream buf;
            buf << in.rdbuf();
            return parse_variety_file(buf.str());
        }
        std::vector<std::string> names = split_names(vars);
        if (names.empty())
            throw std::invalid_argument("--vars is required (or use --file)");
        std::vector<Polynomial> gens;
        for (const std::string& s : ideal) gens.push_back(parse_polynomial(s, names));
        return Variety(static_cast<int>(names.size()), std::move(gens), names);
    }
};

std::string poly_text(const Polynomial& p, const std::vector<std::string>& names) {
    return format_polynomial(p, names);
}

json expr_to_json(const WitnessExpr& e, const std::vector<std::string>& names) {
    json j;
    switch (e.op) {
        case WitnessExpr::Op::seed:
            j["op"] = "seed";
            break;
        case WitnessExpr::Op::scale:
            j["op"] = "scale";
            j["factor"] = poly_text(*e.factor, names);
            j["arg"] = expr_to_json(*e.child, names);
            break;
        case WitnessExpr::Op::bracket:
            j["op"] = "bracket";
            j["with"] = e.with->str();
            j["arg"] = expr_to_json(*e.child, names);
            break;
    }
    return j;
}

std::string certificate_line(const std::vector<Polynomial>& combined,
                             const std::vector<Polynomial>& cofactors,
                             const std::vector<std::string>& names) {
    std::ostringstream os;
    os << "1 =";
    bool first = true;
    for (size_t i = 0; i < combined.size(); ++i) {
        if (cofactors[i].is_zero()) continue;
        os << (first ? " " : " + ");
        os << "(" << poly_text(cofactors[i], names) << ")*(" << poly_text(combined[i], names)
           << ")";
        first = false;
    }
    return os.str();
}

json certificate_json(const std::vector<Polynomial>& combined,
                      const std::vector<Polynomial>& cofactors,
                      const std::vector<std::string>& names) {
    json arr = json::array();
    for (size_t i = 0; i < combined.size(); ++i) {
        if (cofactors[i].is_zero()) continue;
        arr.push_back({{"generator", poly_text(combined[i], names)},
                       {"cofactor", poly_text(cofactors[i], names)}});
    }
    return arr;
}

void emit(const Options& opts, const json& j, const std::string& text) {
    if (opts.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json base_report(const std::string& command) {
    return json{{"schema", 1}, {"command", command}};
}

// ---------------------------------------------------------------------------

int cmd_smooth(const Options& opts, const VarietyArgs& va) {
    Variety X = va.build();
    const SmoothnessCertificate& c = X.is_smooth();
    json j = base_report("smooth");
    j["smooth"] = c.smooth;
    std::ostringstream text;
    text << "smooth: " << (c.smooth ? "true" : "false") << "\n";
    if (c.smooth) {
        j["certificate"] = certificate_json(c.combined, c.cofactors, X.names());
        text << certificate_line(c.combined, c.cofactors, X.names()) << "\n";
    } else {
        json sing = json::array();
        for (const Polynomial& m : X.singular_minors()) sing.push_back(poly_text(m, X.names()));
        j["singular_ideal"] = sing;
        text << "singular ideal generators:";
        for (const Polynomial& m : X.singular_minors())
            text << " " << poly_text(m, X.names()) << ";";
        text << "\n";
    }
    emit(opts, j, text.str());
    return 0;
}

int cmd_generators(const Options& opts, const VarietyArgs& va, bool relations) {
    Variety X = va.build();
    DerivationModuleGens g = derivation_module_generators(X, relations);
    json j = base_report("generators");
    j["generators"] = json::array();
    std::ostringstream text;
    for (const VectorField& f : g.generators) {
        j["generators"].push_back(f.str());
        text << f.str() << "\n";
    }
    if (relations) {
        j["relations"] = json::array();
        for (const auto& row : g.relations) {
            json r = json::array();
            std::ostringstream line;
            for (size_t t = 0; t < row.size(); ++t) {
                r.push_back(poly_text(row[t].rep(), X.names()));
                line << (t ? " | " : "") << poly_text(row[t].rep(), X.names());
            }
            j["relations"].push_back(r);
            text << "relation: " << line.str() << "\n";
        }
    }
    emit(opts, j, text.str());
    return 0;
}

int cmd_bracket(const Options& opts, const VarietyArgs& va, const std::string& f1,
                const std::string& f2) {
    Variety X = va.build();
    VectorField a(X, f1), b(X, f2);
    VectorField r = lie_bracket(a, b);
    json j = base_report("bracket");
    j["bracket"] = r.str();
    emit(opts, j, r.str() + "\n");
    return 0;
}

int cmd_witness(const Options& opts, const VarietyArgs& va, const std::string& point_s,
                const std::string& field_s) {
    Variety X = va.build();
    std::vector<Rational> P = parse_point(point_s);
    VectorField seed(X, field_s);
    AmpleWitnessOptions wopts;
    wopts.jet_order = opts.jet_order;
    AmpleWitness w = ample_witness(X, P, seed, wopts);
    json j = base_report("witness");
    j["found"] = w.found;
    std::ostringstream text;
    text << "found: " << (w.found ? "true" : "false") << "\n";
    if (w.found) {
        j["mu"] = w.mu->str();
        j["f"] = poly_text(w.f->rep(), X.names());
        j["value"] = w.value.str();
        j["jet_order"] = w.jet_order_used;
        j["chain"] = expr_to_json(w.chain, X.names());
        text << "mu: " << w.mu->str() << "\n";
        text << "f: " << poly_text(w.f->rep(), X.names()) << "\n";
        text << "value: " << w.value.str() << "\n";
        text << "chain: " << expr_to_json(w.chain, X.names()).dump() << "\n";
    } else {
        j["message"] = w.message;
        text << "message: " << w.message << "\n";
    }
    emit(opts, j, text.str());
    return w.found ? 0 : 1;
}

int cmd_simplicity(const Options& opts, const VarietyArgs& va, const std::string& field_s,
                   const std::string& points_s) {
    Variety X = va.build();
    VectorField seed(X, field_s);
    std::vector<std::vector<Rational>> samples;
    if (!points_s.empty()) {
        std::istringstream in(points_s);
        std::string one;
        while (std::getline(in, one, ';'))
            if (!one.empty()) samples.push_back(parse_point(one));
    }
    AmpleWitnessOptions wopts;
    wopts.jet_order = opts.jet_order;
    GlobalOneCertificate cert = global_one_certificate(X, seed, samples, wopts);
    json j = base_report("simplicity");
    j["found"] = cert.found;
    std::ostringstream text;
    text << "certificate: " << (cert.found ? "found" : "not found") << "\n";
    json locals = json::array();
    for (const Polynomial& u : cert.local_generators) locals.push_back(poly_text(u, X.names()));
    j["local_generators"] = locals;
    if (cert.found) {
        j["certificate"] = certificate_json(cert.combined, cert.cofactors, X.names());
        text << certificate_line(cert.combined, cert.cofactors, X.names()) << "\n";
    } else {
        json unc = json::array();
        text << "uncovered coordinates:";
        for (int c : cert.uncovered_coordinates) {
            unc.push_back(X.names()[static_cast<size_t>(c)]);
            text << " " << X.names()[static_cast<size_t>(c)];
        }
        j["uncovered_coordinates"] = unc;
        j["message"] = cert.message;
        text << "\nmessage: " << cert.message << "\n";
    }
    emit(opts, j, text.str());
    return cert.found ? 0 : 1;
}

int cmd_filtration(const Options& opts, const VarietyArgs& va, const std::string& field_s,
                   int power) {
    Variety X = va.build();
    VectorField eta(X, field_s);
    bool member = filtration_membership(X, eta, power);
    json j = base_report("filtration");
    j["power"] = power;
    j["member"] = member;
    std::ostringstream text;
    text << "member of J_" << power << ": " << (member ? "true" : "false") << "\n";
    emit(opts, j, text.str());
    return 0;
}

SlElement parse_sl_element(const std::string& kind, const std::string& ab) {
    std::vector<Rational> idx = parse_point(ab);
    if (idx.size() != 2 || !idx[0].is_integer() || !idx[1].is_integer())
        throw std::invalid_argument("expected two 1-based indices, e.g. \"1,2\"");
    int a = static_cast<int>(idx[0].numerator().get_si()) - 1;
    int b = static_cast<int>(idx[1].numerator().get_si()) - 1;
    return kind == "H" ? SlElement::H(a, b) : SlElement::E(a, b);
}

int cmd_sphere(const Options& opts, int N, const std::string& op, const std::string& poly_s,
               int ell, const std::string& direction, const std::string& elem_kind,
               const std::string& elem_idx) {
    SphereContext ctx(N);
    std::vector<std::string> names = default_variable_names(N);
    json j = base_report("sphere");
    j["n"] = N;
    j["op"] = op;
    std::ostringstream text;
    if (op == "project") {
        Polynomial f = parse_polynomial(poly_s, names);
        Polynomial p = harmonic_project(f);
        j["degree"] = f.degree() ? *f.degree() : 0;
        j["projection"] = poly_text(p, names);
        text << poly_text(p, names) << "\n";
    } else if (op == "decompose") {
        Polynomial f = parse_polynomial(poly_s, names);
        HarmonicDecomposition d = harmonic_decompose(f);
        j["degree"] = d.ell;
        j["components"] = json::array();
        text << "degree: " << d.ell << "\n";
        for (size_t k = 0; k < d.components.size(); ++k) {
            int level = d.ell - 2 * static_cast<int>(k);
            j["components"].push_back(
                {{"level", level}, {"polynomial", poly_text(d.components[k], names)}});
            text << "H_" << level << ": " << poly_text(d.components[k], names) << "\n";
        }
    } else if (op == "spread") {
        Polynomial h = parse_polynomial(poly_s, names);
        SlElement e = parse_sl_element(elem_kind, elem_idx);
        SpreadResult r = spread_check(ctx, h, e);
        j["element"] = e.str();
        j["up"] = poly_text(r.up, names);
        j["mid"] = poly_text(r.mid, names);
        j["down"] = poly_text(r.down, names);
        text << "element: " << e.str() << "\n";
        text << "up: " << poly_text(r.up, names) << "\n";
        text << "mid: " << poly_text(r.mid, names) << "\n";
        text << "down: " << poly_text(r.down, names) << "\n";
    } else if (op == "generation") {
        SpreadDirection dir =
            direction == "down" ? SpreadDirection::down : SpreadDirection::up;
        bool ok = generation_check(ctx, ell, dir);
        j["ell"] = ell;
        j["direction"] = direction;
        j["generates"] = ok;
        text << "generates: " << (ok ? "true" : "false") << "\n";
    } else {
        throw std::invalid_argument("unknown sphere op: " + op);
    }
    emit(opts, j, text.str());
    return 0;
}

std::string curve_h_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open curve file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::string body = line.substr(a);
        if (body.empty() || body[0] == '#') continue;
        if (body.rfind("h:", 0) == 0) return body.substr(2);
    }
    throw std::invalid_argument("curve file: missing 'h:' line");
}

int cmd_curve(const Options& opts, const std::string& h_opt, const std::string& file,
              const std::string& op, const std::string& f_s, int bound) {
    std::string h_s = h_opt;
    if (h_s.empty() && !file.empty()) h_s = curve_h_from_file(file);
    if (h_s.empty()) throw std::invalid_argument("curve: --hx or --file is required");
    HyperellipticCurve C(parse_polynomial(h_s, {"x"}));
    std::vector<std::string> xy{"x", "y"};
    json j = base_report("curve");
    j["h"] = poly_text(C.h, {"x"});
    j["m"] = C.m;
    j["op"] = op;
    std::ostringstream text;
    auto parse_he = [&](const std::string& s) {
        return he_of_xy(parse_polynomial(s, xy), C);
    };
    if (op == "info") {
        Polynomial d = C.smoothness_gcd();
        j["smooth"] = C.is_smooth();
        j["gcd"] = poly_text(d, {"x"});
        text << "m: " << C.m << "\n";
        text << "smooth: " << (C.is_smooth() ? "true" : "false") << "\n";
        text << "gcd(h, h'): " << poly_text(d, {"x"}) << "\n";
    } else if (op == "generators") {
        CurveGenerators g = module_generators(C);
        j["tau"] = g.tau.str();
        text << "tau: " << g.tau.str() << "\n";
        if (g.mu) {
            j["mu"] = g.mu->str();
            j["relation"] = "y*tau = (" + poly_text(g.d, {"x"}) + ")*mu";
            text << "mu: " << g.mu->str() << "\n";
            text << "relation: y*tau = (" << poly_text(g.d, {"x"}) << ")*mu\n";
        }
    } else if (op == "kernel") {
        std::vector<HEElement> ker = kernel_ad_bounded(C, parse_he(f_s), bound);
        j["bound"] = bound;
        j["kernel"] = json::array();
        text << "kernel dimension (degree <= " << bound << "): " << ker.size() << "\n";
        for (const HEElement& g : ker) {
            std::string s = poly_text(g.to_xy(), xy);
            j["kernel"].push_back(s);
            text << "  " << s << "\n";
        }
    } else if (op == "notinimage") {
        NotInImageReport rep = not_in_image_check(C, parse_he(f_s), bound);
        j["bound"] = bound;
        j["degree_raises"] = rep.degree_raises;
        j["no_semisimple"] = rep.no_semisimple;
        j["no_nilpotent_escape"] = rep.no_nilpotent_escape;
        j["ok"] = rep.ok();
        text << "ok: " << (rep.ok() ? "true" : "false") << "\n";
    } else {
        throw std::invalid_argument("unknown curve op: " + op);
    }
    emit(opts, j, text.str());
    return 0;
}

int cmd_group(const Options& opts, int n, bool slow, const std::string& op,
              const std::string& field_s) {
    if (n > 2 && !slow)
        throw std::invalid_argument("n > 2 is slow; pass --slow to confirm");
    GroupContext G(n);
    DualBases b = dual_bases(G);
    json j = base_report("group");
    j["n"] = n;
    j["op"] = op;
    std::ostringstream text;
    if (op == "commutation") {
        bool ok = commutation_check(G);
        j["commute"] = ok;
        text << "left/right frames commute: " << (ok ? "true" : "false") << "\n";
    } else if (op == "table") {
        bool ok = true;
        for (const TangentVectorAtE& x : b.tangent)
            for (const TangentVectorAtE& y : b.tangent) {
                VectorField lhs =
                    lie_bracket(left_invariant_field(G, x), left_invariant_field(G, y));
                if (!(lhs ==
                      left_invariant_field(G, TangentVectorAtE(matrix_commutator(x.m, y.m)))))
                    ok = false;
            }
        j["homomorphism"] = ok;
        text << "theta_L structure constants match: " << (ok ? "true" : "false") << "\n";
    } else if (op == "trivialize") {
        VectorField eta(G.X, field_s);
        std::vector<QuotientElement> coords = trivialize(G, eta);
        j["coordinates"] = json::array();
        for (size_t i = 0; i < coords.size(); ++i) {
            j["coordinates"].push_back({{"basis", b.labels[i]},
                                        {"coefficient", poly_text(coords[i].rep(), G.X.names())}});
            text << b.labels[i] << ": " << poly_text(coords[i].rep(), G.X.names()) << "\n";
        }
        VectorField back = untrivialize(G, coords);
        bool ok = back == eta;
        j["round_trip"] = ok;
        text << "round trip: " << (ok ? "true" : "false") << "\n";
        emit(opts, j, text.str());
        return ok ? 0 : 1;
    } else {
        throw std::invalid_argument("unknown group op: " + op);
    }
    emit(opts, j, text.str());
    return 0;
}

int cmd_selftest(const Options& opts) {
    std::mt19937_64 rng(opts.seed);
    auto rnd_poly = [&](int nvars, int terms, int deg) {
        Polynomial p(nvars);
        std::uniform_int_distribution<int> coef(-6, 6), den(1, 3), pick(0, nvars - 1),
            dd(0, deg);
        for (int t = 0; t < terms; ++t) {
            std::vector<int> e(static_cast<size_t>(nvars), 0);
            int budget = dd(rng);
            for (int k = 0; k < budget; ++k) ++e[static_cast<size_t>(pick(rng))];
            p += Polynomial::from_monomial(Monomial(e), Rational(coef(rng), den(rng)));
        }
        return p;
    };

    int failures = 0;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };

    {
        Variety W = Variety::affine_space(2);
        bool ok = true;
        for (int iter = 0; iter < 50 && ok; ++iter) {
            VectorField a(W, {rnd_poly(2, 3, 2), rnd_poly(2, 3, 2)}, false);
            VectorField bfield(W, {rnd_poly(2, 3, 2), rnd_poly(2, 3, 2)}, false);
            QuotientElement f = W.element(rnd_poly(2, 3, 2));
            QuotientElement g = W.element(rnd_poly(2, 3, 2));
            ok = lie_bracket(f * a, g * bfield) ==
                 (f * g) * lie_bracket(a, bfield) + (f * a.apply(g)) * bfield -
                     (g * bfield.apply(f)) * a;
        }
        report("bracket module identity", ok);
    }
    {
        bool ok = true;
        for (int iter = 0; iter < 10 && ok; ++iter) {
            std::vector<Polynomial> gens{rnd_poly(2, 3, 3), rnd_poly(2, 3, 3)};
            ok = verify_groebner(buchberger(gens));
        }
        report("groebner S-polynomial closure", ok);
    }
    {
        std::vector<std::string> v2{"x1", "x2"};
        Variety X(2, {parse_polynomial("x1^2 + x2^2 - 1", v2)}, v2);
        const SmoothnessCertificate& c = X.is_smooth();
        Polynomial acc(2);
        for (size_t i = 0; i < c.combined.size(); ++i) acc += c.cofactors[i] * c.combined[i];
        report("circle smoothness certificate",
               c.smooth && acc == Polynomial::constant(2, Rational(1)));
    }
    {
        bool ok = true;
        for (int ell = 0; ell <= 4 && ok; ++ell) {
            Polynomial f(3);
            for (const Monomial& m : monomials_of_degree(3, ell))
                f += Polynomial::from_monomial(m, Rational(1));
            Polynomial p = harmonic_project(f);
            ok = laplacian(p).is_zero() && harmonic_project(p) == p;
        }
        report("harmonic projector", ok);
    }
    {
        HyperellipticCurve C(parse_polynomial("x^3 + 1", {"x"}));
        bool ok = true;
        for (int iter = 0; iter < 40 && ok; ++iter) {
            HEElement a(rnd_poly(1, 3, 3), rnd_poly(1, 3, 3));
            HEElement bb(rnd_poly(1, 3, 3), rnd_poly(1, 3, 3));
            if (a.is_zero() || bb.is_zero()) continue;
            ok = leading_term_map(he_multiply(a, bb, C), C).value ==
                 leading_term_map(a, C).value * leading_term_map(bb, C).value;
        }
        report("hyperelliptic leading-term map", ok);
    }
    {
        GroupContext G(2);
        report("SL2 frame commutation", commutation_check(G));
    }
    std::cout << (failures == 0 ? "selftest: all suites passed"
                                : "selftest: " + std::to_string(failures) + " suite(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie algebras of polynomial vector fields on affine varieties"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opts;
    opts.jet_order = default_jet_order();
    app.add_option("--format", opts.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", opts.seed, "random seed for selftest");
    app.add_option("--jet-order", opts.jet_order, "default jet truncation order");
    app.add_option("--bound", opts.bound, "degree bound for windowed checks");
    app.add_flag("-v,--verbose", opts.verbosity, "increase verbosity");

    VarietyArgs va_smooth, va_gens, va_bracket, va_witness, va_simpl, va_filtr;

    CLI::App* smooth = app.add_subcommand("smooth", "Jacobian smoothness certificate");
    smooth->fallthrough();
    va_smooth.attach(smooth);

    CLI::App* gens = app.add_subcommand("generators", "derivation-module generators");
    gens->fallthrough();
    va_gens.attach(gens);
    bool with_relations = false;
    gens->add_flag("--relations", with_relations, "also compute relations among the generators");

    CLI::App* bracket = app.add_subcommand("bracket", "Lie bracket of two vector fields");
    bracket->fallthrough();
    va_bracket.attach(bracket);
    std::string field1, field2;
    bracket->add_option("--field", field1, "first vector field (comma-separated components)")
        ->required();
    bracket->add_option("--field2", field2, "second vector field")->required();

    CLI::App* witness = app.add_subcommand("witness", "local ampleness witness at a point");
    witness->fallthrough();
    va_witness.attach(witness);
    std::string w_point, w_field;
    witness->add_option("--point", w_point, "rational point on X, e.g. \"0,1\"")->required();
    witness->add_option("--field", w_field, "seed vector field")->required();

    CLI::App* simplicity =
        app.add_subcommand("simplicity", "global 1-in-ideal certificate from a seed field");
    simplicity->fallthrough();
    va_simpl.attach(simplicity);
    std::string s_field, s_points;
    simplicity->add_option("--field", s_field, "seed vector field")->required();
    simplicity->add_option("--points", s_points,
                           "semicolon-separated sample points, e.g. \"0,1;1,0\"");

    CLI::App* filtration =
        app.add_subcommand("filtration", "membership in J_i = {mu : mu(A) in I_sing^i}");
    filtration->fallthrough();
    va_filtr.attach(filtration);
    std::string f_field;
    int f_power = 1;
    filtration->add_option("--field", f_field, "vector field")->required();
    filtration->add_option("--power", f_power, "filtration index i")->required();

    CLI::App* sphere = app.add_subcommand("sphere", "harmonic analysis on S^{N-1}");
    sphere->fallthrough();
    int sph_n = 3, sph_ell = 1;
    std::string sph_op, sph_poly, sph_dir = "up", sph_kind = "E", sph_idx = "1,2";
    sphere->add_option("--n", sph_n, "ambient dimension N");
    sphere->add_option("--op", sph_op, "project | decompose | spread | generation")->required();
    sphere->add_option("--poly", sph_poly, "homogeneous polynomial");
    sphere->add_option("--ell", sph_ell, "harmonic degree");
    sphere->add_option("--direction", sph_dir, "up | down");
    sphere->add_option("--kind", sph_kind, "sl element kind: E or H");
    sphere->add_option("--indices", sph_idx, "sl element indices, 1-based, e.g. \"1,2\"");

    CLI::App* curve = app.add_subcommand("curve", "hyperelliptic curve y^2 = 2h(x)");
    curve->fallthrough();
    std::string c_h, c_file, c_op = "info", c_f = "1";
    curve->add_option("--hx", c_h, "monic odd-degree polynomial h(x)");
    curve->add_option("--file", c_file, "curve file with a line 'h: <polynomial in x>'");
    curve->add_option("--op", c_op, "info | generators | kernel | notinimage");
    curve->add_option("--f", c_f, "coefficient element of A = k[x,y]/(y^2-2h)");

    CLI::App* group = app.add_subcommand("group", "vector fields on SL_n");
    group->fallthrough();
    int g_n = 2;
    bool g_slow = false;
    std::string g_op, g_field;
    group->add_option("--n", g_n, "matrix size n");
    group->add_flag("--slow", g_slow, "allow n > 2");
    group->add_option("--op", g_op, "commutation | table | trivialize")->required();
    group->add_option("--field", g_field, "vector field in the n^2 matrix coordinates");

    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in property suite");
    selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (smooth->parsed()) return cmd_smooth(opts, va_smooth);
        if (gens->parsed()) return cmd_generators(opts, va_gens, with_relations);
        if (bracket->parsed()) return cmd_bracket(opts, va_bracket, field1, field2);
        if (witness->parsed()) return cmd_witness(opts, va_witness, w_point, w_field);
        if (simplicity->parsed()) return cmd_simplicity(opts, va_simpl, s_field, s_points);
        if (filtration->parsed()) return cmd_filtration(opts, va_filtr, f_field, f_power);
        if (sphere->parsed())
            return cmd_sphere(opts, sph_n, sph_op, sph_poly, sph_ell, sph_dir, sph_kind,
                              sph_idx);
        if (curve->parsed()) return cmd_curve(opts, c_h, c_file, c_op, c_f, opts.bound);
        if (group->parsed()) return cmd_group(opts, g_n, g_slow, g_op, g_field);
        if (selftest->parsed()) return cmd_selftest(opts);
    } catch (const ParseError& e) {
        std::cerr << "parse error at [" << e.span().start << ", " << e.span().end
                  << "): " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
