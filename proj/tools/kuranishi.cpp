// Command-line surface: one subcommand per library operation, JSON in,
// deterministic reports out. Exit codes: 0 pass, 1 mathematical failure,
// 2 input error.

#include "CLI11.hpp"

#include "kuranishi/io.hpp"

#include <chrono>
#include <iostream>
#include <set>

using namespace kuranishi;

namespace {

struct Options {
    bool json = false;
    std::optional<std::filesystem::path> fixture_dir;
    int order = 8;
    int arity = 6;
    int length_cap = 4;
};

struct Report {
    Json machine = Json::object();
    int exit_code = 0;

    Json& findings()
    {
        if (!machine.contains("findings"))
            machine["findings"] = Json::array();
        return machine["findings"];
    }
    void finding(const std::string& location, const std::string& detail)
    {
        Json f = Json::object();
        f["location"] = location;
        f["detail"] = detail;
        findings().push_back(std::move(f));
    }
};

const std::set<std::string> kMathFailureCodes = {
    "NotMaurerCartan", "ObstructionMismatch", "KSNotSurjective",      "ObstructionEscapes",
    "NotStronglyConvex", "InvalidCochain",    "PushforwardNotBounding"};

std::string tuple_names(const BasisPtr& basis, const std::vector<int>& tuple)
{
    std::string s = "(";
    for (size_t i = 0; i < tuple.size(); ++i)
        s += (i ? "," : "") + basis->name(tuple[i]);
    return s + ")";
}

void add_relation_findings(Report& report, const RelationReport& rel, const BasisPtr& basis)
{
    for (const auto& v : rel.violations)
        report.finding("arity " + std::to_string(v.arity) + " at " + tuple_names(basis, v.tuple),
                       "residual " + v.residual.str());
    if (!rel.unchecked_arities.empty()) {
        std::string s;
        for (int a : rel.unchecked_arities)
            s += (s.empty() ? "" : ",") + std::to_string(a);
        report.machine["unchecked_arities"] = s;
    }
}

Json caps_json(const Options& opt, const RingPtr& ring = nullptr)
{
    Json caps = Json::object();
    caps["arity"] = opt.arity;
    caps["truncation"] = ring ? ring->truncation_order() : opt.order;
    caps["length_cap"] = opt.length_cap;
    return caps;
}

ParsedFile load(const std::string& path, const Options& opt, const std::string& kind)
{
    ParsedFile f = parse_file(path, opt.fixture_dir);
    if (f.kind != kind)
        fail("SchemaError", path + ": expected kind '" + kind + "', got '" + f.kind + "'");
    return f;
}

// --- cross-file rebinding: files are parsed independently, so structurally
// identical objects must be re-expressed against one chosen instance.

SeriesElement rebind_series(const SeriesElement& x, const RingPtr& to)
{
    if (x.ring()->is_trivial())
        return x.promote(to);
    TermMap terms;
    for (const auto& [m, c] : x.terms()) {
        Monomial translated(size_t(to->num_variables()), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            int idx = to->variable_index(x.ring()->variables()[i].name);
            if (idx < 0)
                fail("SchemaError", "rings do not match: missing variable '" +
                                        x.ring()->variables()[i].name + "'");
            translated[size_t(idx)] = m[i];
        }
        terms.emplace(std::move(translated), c);
    }
    return SeriesElement::from_terms(to, std::move(terms));
}

Element rebind_element(const Element& x, const BasisPtr& from, const BasisPtr& to,
                       const RingPtr& to_ring)
{
    Element out(to, to_ring);
    for (const auto& [i, c] : x.coefficients()) {
        int idx = to->index(from->name(i));
        if (idx < 0)
            fail("SchemaError", "bases do not match: missing generator '" + from->name(i) + "'");
        out.set_coefficient(idx, rebind_series(c, to_ring));
    }
    return out;
}

CategoryPtr rebind_category(const CategoryPtr& cat, const CategoryPtr& skeleton)
{
    // express cat's structure on skeleton's basis/objects (names must agree)
    if (cat->objects() != skeleton->objects())
        fail("SchemaError", "categories do not share objects");
    std::map<int, MultilinearOperation> maps;
    for (const auto& [s, op] : cat->structure_maps()) {
        MultilinearOperation re(s, op.degree(), Symmetry::None, skeleton->basis(),
                                skeleton->basis(), cat->ring());
        for (const auto& [tuple, value] : op.stored_entries()) {
            std::vector<int> mapped;
            for (int i : tuple) {
                int idx = skeleton->basis()->index(cat->basis()->name(i));
                if (idx < 0)
                    fail("SchemaError", "categories do not share hom generators");
                mapped.push_back(idx);
            }
            re.set_entry(mapped,
                         rebind_element(value, cat->basis(), skeleton->basis(), cat->ring()));
        }
        if (!re.is_zero())
            maps.emplace(s, std::move(re));
    }
    return CurvedCategory::make(cat->ring(), skeleton->objects(), skeleton->basis(),
                                skeleton->hom_tags(), std::move(maps), cat->arity_cap());
}

// --- subcommand handlers ---

Report run_check_linf(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "linf");
    auto rel = check_linf_relations(*parsed.algebra, opt.arity);
    report.machine["verdict"] = rel.pass() ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt);
    add_relation_findings(report, rel, parsed.algebra->basis());
    report.exit_code = rel.pass() ? 0 : 1;
    return report;
}

Report run_check_ainf(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "ainf");
    auto rel = check_ainf(*parsed.category, opt.arity);
    report.machine["verdict"] = rel.pass() ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt, parsed.category->ring());
    add_relation_findings(report, rel, parsed.category->basis());
    report.exit_code = rel.pass() ? 0 : 1;
    return report;
}

Report run_check_functor(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "functor");
    auto rel = check_functor(*parsed.functor, opt.arity);
    report.machine["verdict"] = rel.pass() ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt, parsed.functor->target()->ring());
    add_relation_findings(report, rel, parsed.functor->source()->basis());
    report.exit_code = rel.pass() ? 0 : 1;
    return report;
}

Report run_mc_residual(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "mc");
    if (!parsed.mc)
        fail("SchemaError", "expected the Maurer-Cartan element variant");
    Element res = mc_residual(*parsed.mc);
    report.machine["verdict"] = res.is_zero() ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt, parsed.mc->ring);
    report.machine["residual"] = element_to_json(res, parsed.mc->algebra->basis());
    if (!res.is_zero())
        report.finding("residual", res.str());
    report.exit_code = res.is_zero() ? 0 : 1;
    return report;
}

Report run_gauge(const std::string& file_a, const std::string& file_b, const Options& opt)
{
    Report report;
    auto pa = load(file_a, opt, "mc");
    auto pb = load(file_b, opt, "mc");
    if (!pa.mc || !pb.mc)
        fail("SchemaError", "expected Maurer-Cartan element variants");
    // rebind beta against alpha's algebra and ring
    if (algebra_to_json(pa.mc->algebra) != algebra_to_json(pb.mc->algebra))
        fail("SchemaError", "the two elements live in different algebras");
    if (ring_to_json(pa.mc->ring) != ring_to_json(pb.mc->ring))
        fail("SchemaError", "the two elements live over different rings");
    Element beta_val = rebind_element(pb.mc->value, pb.mc->algebra->basis(),
                                      pa.mc->algebra->basis(), pa.mc->ring);
    auto beta = MaurerCartanElement::make(pa.mc->algebra, pa.mc->ring, std::move(beta_val));

    auto res = gauge_equivalent(*pa.mc, beta);
    report.machine["verdict"] = res.equivalent ? "equivalent" : "not-equivalent";
    report.machine["caps"] = caps_json(opt, pa.mc->ring);
    if (res.equivalent) {
        Json paths = Json::array();
        for (const auto& p : res.paths) {
            Json coeffs = Json::array();
            for (const auto& c : p.coefficients)
                coeffs.push_back(element_to_json(c, pa.mc->algebra->basis()));
            paths.push_back(std::move(coeffs));
        }
        report.machine["paths"] = std::move(paths);
        report.exit_code = 0;
    } else {
        report.machine["obstruction_order"] = res.obstruction_order;
        report.finding("obstruction at order " + std::to_string(res.obstruction_order),
                       res.obstruction_class.str());
        report.exit_code = 1;
    }
    return report;
}

Report run_minimal_model(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "linf");
    auto mm = minimal_model(parsed.algebra, parsed.algebra->arity_cap());
    auto rel = check_linf_relations(*mm.minimal, opt.arity);
    auto mor = check_linf_morphism(mm.inclusion, opt.arity);
    bool ok = rel.pass() && mor.pass() && mm.minimal->is_minimal();
    report.machine["verdict"] = ok ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt);
    report.machine["minimal"] = algebra_to_json(mm.minimal);
    add_relation_findings(report, rel, mm.minimal->basis());
    add_relation_findings(report, mor, mm.minimal->basis());
    report.exit_code = ok ? 0 : 1;
    return report;
}

Report run_versal(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "linf");
    AlgebraPtr minimal = parsed.algebra;
    bool transferred = false;
    if (!minimal->is_minimal()) {
        minimal = minimal_model(parsed.algebra, parsed.algebra->arity_cap()).minimal;
        transferred = true;
    }
    auto vp = versal_presentation(minimal, opt.order);
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, vp.ring);
    report.machine["minimal_model_computed"] = transferred;
    report.machine["dimension"] = int(vp.h1_indices.size());
    report.machine["homotopy_abelian_at_caps"] = vp.obstruction_polys.empty();
    Json polys = Json::array();
    Json pretty = Json::array();
    for (const auto& p : vp.obstruction_polys) {
        polys.push_back(series_to_json(p));
        pretty.push_back(p.str());
    }
    report.machine["obstruction_polynomials"] = std::move(polys);
    report.machine["obstruction_polynomials_pretty"] = std::move(pretty);
    report.machine["base_ring"] = ring_to_json(vp.ring);
    return report;
}

Report run_ks(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "mc");
    if (!parsed.mc)
        fail("SchemaError", "expected the Maurer-Cartan element variant");
    Matrix ks = kodaira_spencer(*parsed.mc);
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, parsed.mc->ring);
    Json rows = Json::array();
    for (int r = 0; r < ks.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < ks.cols(); ++c)
            row.push_back(scalar_to_string(ks.at(r, c)));
        rows.push_back(std::move(row));
    }
    report.machine["matrix"] = std::move(rows);
    report.machine["rank"] = rank(ks);
    return report;
}

Report run_classify(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "mc");
    if (!parsed.mc)
        fail("SchemaError", "expected the Maurer-Cartan element variant");
    int order = parsed.mc->ring->truncation_order();
    ClassifyResult res = [&] {
        if (parsed.mc->algebra->is_minimal()) {
            auto vp = versal_presentation(parsed.mc->algebra, order);
            return classify_mc(*parsed.mc, vp);
        }
        auto mm = minimal_model(parsed.mc->algebra, parsed.mc->algebra->arity_cap());
        auto vp = versal_presentation(mm.minimal, order);
        return classify_mc(*parsed.mc, vp, &mm);
    }();
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, parsed.mc->ring);
    Json images = Json::object();
    for (int i = 0; i < res.psi.source()->num_variables(); ++i)
        images[res.psi.source()->variables()[size_t(i)].name] =
            series_to_json(res.psi.images()[size_t(i)]);
    report.machine["psi"] = std::move(images);
    report.machine["gauge_paths"] = int(res.paths.size());
    return report;
}

Report run_verdict(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "mc");
    if (!parsed.mc)
        fail("SchemaError", "expected the Maurer-Cartan element variant");
    auto v = versality_verdict(*parsed.mc);
    const char* name = v.verdict == Versality::Versal     ? "versal"
                       : v.verdict == Versality::Complete ? "complete"
                                                          : "inconclusive";
    report.machine["verdict"] = name;
    report.machine["caps"] = caps_json(opt, parsed.mc->ring);
    report.machine["rank"] = v.rank;
    report.machine["ring_variables"] = v.source_dim;
    report.machine["h1_dimension"] = v.target_dim;
    return report;
}

Report run_hochschild(const std::string& file, int degree, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "ainf");
    auto hh = hh_cohomology(parsed.category, degree, opt.length_cap);
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, parsed.category->ring());
    report.machine["degree"] = degree;
    report.machine["dimension"] = hh.dimension;
    Json reps = Json::array();
    for (const auto& rep : hh.representatives)
        reps.push_back(cochain_to_json(rep));
    report.machine["representatives"] = std::move(reps);
    return report;
}

Report run_deform_to_mc(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "ainf");
    auto base = reduce_mod_max_ideal(parsed.category);
    auto family = make_deformation(base, parsed.category);
    auto alpha = deformation_to_mc(family);
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, parsed.category->ring());
    report.machine["cochain"] = cochain_to_json(alpha);
    return report;
}

Report run_mc_to_deform(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "cochain");
    auto family = mc_to_deformation(*parsed.cochain);
    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, family.total->ring());
    report.machine["family"] = category_to_json(family.total);
    return report;
}

Report run_versal_extend(const std::string& file_b, const std::string& file_a,
                         const std::optional<std::string>& iso_file, const Options& opt)
{
    Report report;
    auto pb = load(file_b, opt, "ainf");
    auto pa = load(file_a, opt, "ainf");
    auto base_b = reduce_mod_max_ideal(pb.category);
    auto family_b = make_deformation(base_b, pb.category);

    std::optional<CurvedFunctor> iso;
    CategoryPtr a_total = pa.category;
    if (iso_file) {
        auto pi = load(*iso_file, opt, "functor");
        // rebind: source must be A0 (a_total's reduction), target B0
        auto a0 = reduce_mod_max_ideal(a_total);
        if (category_to_json(pi.functor->source()) != category_to_json(a0) ||
            category_to_json(pi.functor->target()) != category_to_json(base_b))
            fail("SchemaError", "isomorphism endpoints do not match A0 -> B0");
        std::map<int, MultilinearOperation> comps;
        for (const auto& [s, comp] : pi.functor->components()) {
            MultilinearOperation re(s, comp.degree(), Symmetry::None, a0->basis(),
                                    base_b->basis(), LocalRing::ground_field());
            for (const auto& [tuple, value] : comp.stored_entries()) {
                std::vector<int> mapped;
                for (int i : tuple)
                    mapped.push_back(a0->basis()->index(pi.functor->source()->basis()->name(i)));
                re.set_entry(mapped, rebind_element(value, pi.functor->target()->basis(),
                                                    base_b->basis(),
                                                    LocalRing::ground_field()));
            }
            comps.emplace(s, std::move(re));
        }
        std::vector<int> omap;
        for (size_t i = 0; i < a0->objects().size(); ++i) {
            const std::string& target_name =
                pi.functor->target()->objects()[size_t(pi.functor->object_map()[i])];
            omap.push_back(base_b->object_index(target_name));
        }
        iso.emplace(a0, base_b, std::move(omap), std::move(comps));
    } else {
        a_total = rebind_category(pa.category, base_b);
    }

    auto res = versal_extension(family_b, a_total, iso ? &*iso : nullptr, opt.length_cap);
    bool ok = res.functor_check.pass();
    report.machine["verdict"] = ok ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt, a_total->ring());
    Json images = Json::object();
    for (int i = 0; i < res.psi.source()->num_variables(); ++i)
        images[res.psi.source()->variables()[size_t(i)].name] =
            series_to_json(res.psi.images()[size_t(i)]);
    report.machine["psi"] = std::move(images);
    report.machine["reduced_quasi_embedding"] = res.reduced_quasi_embedding;
    report.machine["notes"] = res.notes;
    add_relation_findings(report, res.functor_check, base_b->basis());
    report.exit_code = ok ? 0 : 1;
    return report;
}

Report run_bc_solve(const std::string& file, const std::string& object, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "ainf");
    int idx = parsed.category->object_index(object);
    if (idx < 0)
        fail("SchemaError", "unknown object '" + object + "'");
    auto res = solve_bounding_cochain(parsed.category, idx);
    report.machine["caps"] = caps_json(opt, parsed.category->ring());
    if (std::holds_alternative<BoundingCochain>(res)) {
        const auto& bc = std::get<BoundingCochain>(res);
        report.machine["verdict"] = "unobstructed";
        report.machine["cochain"] = element_to_json(bc.value, parsed.category->basis());
    } else {
        const auto& ob = std::get<BcObstruction>(res);
        report.machine["verdict"] = "obstructed";
        report.machine["obstruction_order"] = ob.order;
        report.machine["obstruction_class"] =
            element_to_json(ob.cohomology_class, parsed.category->basis());
        report.finding("obstruction at order " + std::to_string(ob.order),
                       ob.cohomology_class.str());
        report.exit_code = 1;
    }
    return report;
}

Report run_bc_build(const std::string& file, const std::string& cochain_file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "ainf");
    auto pc = load(cochain_file, opt, "mc");
    if (!pc.bc_category_ref)
        fail("SchemaError", "expected the cochain-assignment variant");
    if (category_to_json(pc.bc_category_ref) != category_to_json(parsed.category))
        fail("SchemaError", "cochain assignment targets a different category");
    std::map<int, Element> cochains;
    for (const auto& [obj, val] : pc.bc_cochains)
        cochains[obj] = rebind_element(val, pc.bc_category_ref->basis(),
                                       parsed.category->basis(), parsed.category->ring());
    auto bc = bc_category(parsed.category, cochains);
    auto rel = check_ainf(*bc.category, opt.arity);
    bool ok = rel.pass() && !bc.category->is_curved();
    report.machine["verdict"] = ok ? "pass" : "fail";
    report.machine["caps"] = caps_json(opt, parsed.category->ring());
    report.machine["category"] = category_to_json(bc.category);
    add_relation_findings(report, rel, bc.category->basis());
    report.exit_code = ok ? 0 : 1;
    return report;
}

Report run_cone(const std::string& file, const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "cone");
    bool convex = is_strongly_convex(*parsed.cone);
    report.machine["caps"] = caps_json(opt);
    report.machine["strongly_convex"] = convex;
    auto bad = inequality_violations(*parsed.cone);
    if (!bad.empty()) {
        for (size_t j : bad)
            report.finding("generator " + parsed.cone->name_of(j),
                           "violates the inequality presentation");
    }
    if (!convex) {
        report.machine["verdict"] = "fail";
        report.finding("cone", "the spanned cone contains a line");
        report.exit_code = 1;
        return report;
    }
    auto cc = cone_completion(*parsed.cone, opt.order);
    report.machine["verdict"] = "pass";
    report.machine["completion"] = ring_to_json(cc.ring);
    return report;
}

Report run_specialize(const std::string& file, const std::string& omega_arg,
                      const std::string& b_arg, const std::string& cutoff_arg,
                      const Options& opt)
{
    Report report;
    auto parsed = load(file, opt, "cone");
    auto cc = cone_completion(*parsed.cone, opt.order);

    auto parse_assign = [&](const std::string& arg) {
        std::map<std::string, Rational> out;
        size_t pos = 0;
        while (pos < arg.size()) {
            size_t comma = arg.find(',', pos);
            std::string item = arg.substr(pos, comma == std::string::npos ? comma : comma - pos);
            size_t colon = item.find(':');
            if (colon == std::string::npos)
                fail("SchemaError", "expected name:value pairs in '" + arg + "'");
            out[item.substr(0, colon)] = rational_from_string(item.substr(colon + 1));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        return out;
    };

    auto omega_map = parse_assign(omega_arg);
    auto b_map = b_arg.empty() ? std::map<std::string, Rational>{} : parse_assign(b_arg);
    LambdaPoint p;
    for (size_t j = 0; j < cc.cone.generators.size(); ++j) {
        std::string name = cc.cone.name_of(j);
        auto it = omega_map.find(name);
        if (it == omega_map.end())
            fail("SchemaError", "missing omega value for generator '" + name + "'");
        p.omega.push_back(it->second);
        auto bit = b_map.find(name);
        p.b_field.push_back(bit == b_map.end() ? Rational(0) : bit->second);
    }
    Rational cutoff = rational_from_string(cutoff_arg);

    report.machine["verdict"] = "pass";
    report.machine["caps"] = caps_json(opt, cc.ring);
    Json values = Json::object();
    for (size_t j = 0; j < cc.cone.generators.size(); ++j) {
        auto v = lambda_point_specialize(SeriesElement::variable(cc.ring, int(j)), cc, p, cutoff);
        values[cc.cone.name_of(j)] = v.str();
    }
    report.machine["specializations"] = std::move(values);
    return report;
}

void print_human(const Json& j, std::ostream& os, int indent = 0)
{
    std::string pad(size_t(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || value.is_array()) {
                os << pad << key << ":\n";
                print_human(value, os, indent + 1);
            } else {
                os << pad << key << ": " << (value.is_string() ? value.get<std::string>()
                                                               : value.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& value : j) {
            if (value.is_object() || value.is_array())
                print_human(value, os, indent + 1);
            else
                os << pad << "- "
                   << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact deformation-theory workbench"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_flag("--json", opt.json, "machine-readable report on stdout");
    std::string fixture_dir;
    app.add_option("--fixture-dir", fixture_dir, "directory for resolving file references");
    app.add_option("--order,-n", opt.order, "truncation order (default 8)");
    app.add_option("--arity", opt.arity, "arity bound for relation checks (default 6)");
    app.add_option("--length-cap", opt.length_cap, "Hochschild length cap (default 4)");

    std::string file_a, file_b, object_name, iso_file, omega_arg, b_arg, cutoff_arg = "10";
    int degree = 2;

    auto* c1 = app.add_subcommand("check-linf", "L-infinity relation check");
    c1->add_option("file", file_a)->required();
    auto* c2 = app.add_subcommand("check-ainf", "A-infinity relation check");
    c2->add_option("file", file_a)->required();
    auto* c3 = app.add_subcommand("check-functor", "functor relation check");
    c3->add_option("file", file_a)->required();
    auto* c4 = app.add_subcommand("mc-residual", "Maurer-Cartan residual");
    c4->add_option("file", file_a)->required();
    auto* c5 = app.add_subcommand("gauge", "gauge equivalence search");
    c5->add_option("alpha", file_a)->required();
    c5->add_option("beta", file_b)->required();
    auto* c6 = app.add_subcommand("minimal-model", "homotopy transfer to a minimal model");
    c6->add_option("file", file_a)->required();
    auto* c7 = app.add_subcommand("versal", "versal presentation of a minimal algebra");
    c7->add_option("file", file_a)->required();
    auto* c8 = app.add_subcommand("ks", "Kodaira-Spencer matrix");
    c8->add_option("file", file_a)->required();
    auto* c9 = app.add_subcommand("classify", "classify against the versal base");
    c9->add_option("file", file_a)->required();
    auto* c10 = app.add_subcommand("verdict", "versality verdict");
    c10->add_option("file", file_a)->required();
    auto* c11 = app.add_subcommand("hochschild", "Hochschild cohomology at the length cap");
    c11->add_option("file", file_a)->required();
    c11->add_option("--degree", degree, "cohomological degree (default 2)");
    auto* c12 = app.add_subcommand("deform-to-mc", "family to Maurer-Cartan cochain");
    c12->add_option("file", file_a)->required();
    auto* c13 = app.add_subcommand("mc-to-deform", "Maurer-Cartan cochain to family");
    c13->add_option("file", file_a)->required();
    auto* c14 = app.add_subcommand("versal-extend", "versal extension of a family");
    c14->add_option("family", file_a)->required();
    c14->add_option("target", file_b)->required();
    c14->add_option("--iso", iso_file, "A0 -> B0 isomorphism file");
    auto* c15 = app.add_subcommand("bc-solve", "solve for a bounding cochain");
    c15->add_option("file", file_a)->required();
    c15->add_option("--object", object_name, "object name")->required();
    auto* c16 = app.add_subcommand("bc-build", "build the bounding-cochain category");
    c16->add_option("file", file_a)->required();
    c16->add_option("--cochains", iso_file, "cochain assignment file")->required();
    auto* c17 = app.add_subcommand("cone", "strong convexity and cone completion");
    c17->add_option("file", file_a)->required();
    auto* c18 = app.add_subcommand("specialize", "Lambda-point specialization");
    c18->add_option("file", file_a)->required();
    c18->add_option("--omega", omega_arg, "name:value pairs")->required();
    c18->add_option("--b", b_arg, "name:value pairs for the B-field");
    c18->add_option("--cutoff", cutoff_arg, "valuation cutoff (default 10)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!fixture_dir.empty())
        opt.fixture_dir = fixture_dir;

    auto started = std::chrono::steady_clock::now();
    Report report;
    try {
        if (c1->parsed())
            report = run_check_linf(file_a, opt);
        else if (c2->parsed())
            report = run_check_ainf(file_a, opt);
        else if (c3->parsed())
            report = run_check_functor(file_a, opt);
        else if (c4->parsed())
            report = run_mc_residual(file_a, opt);
        else if (c5->parsed())
            report = run_gauge(file_a, file_b, opt);
        else if (c6->parsed())
            report = run_minimal_model(file_a, opt);
        else if (c7->parsed())
            report = run_versal(file_a, opt);
        else if (c8->parsed())
            report = run_ks(file_a, opt);
        else if (c9->parsed())
            report = run_classify(file_a, opt);
        else if (c10->parsed())
            report = run_verdict(file_a, opt);
        else if (c11->parsed())
            report = run_hochschild(file_a, degree, opt);
        else if (c12->parsed())
            report = run_deform_to_mc(file_a, opt);
        else if (c13->parsed())
            report = run_mc_to_deform(file_a, opt);
        else if (c14->parsed())
            report = run_versal_extend(
                file_a, file_b,
                iso_file.empty() ? std::nullopt : std::optional<std::string>(iso_file), opt);
        else if (c15->parsed())
            report = run_bc_solve(file_a, object_name, opt);
        else if (c16->parsed())
            report = run_bc_build(file_a, iso_file, opt);
        else if (c17->parsed())
            report = run_cone(file_a, opt);
        else if (c18->parsed())
            report = run_specialize(file_a, omega_arg, b_arg, cutoff_arg, opt);
    } catch (const Error& e) {
        report.machine["verdict"] = "error";
        report.machine["error"] = std::string(e.what());
        report.exit_code = kMathFailureCodes.count(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        report.machine["verdict"] = "error";
        report.machine["error"] = std::string(e.what());
        report.exit_code = 2;
    }

    if (opt.json) {
        std::cout << report.machine.dump(2) << "\n";
    } else {
        print_human(report.machine, std::cout);
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    std::cerr << "# elapsed_ms " << elapsed << "\n";
    return report.exit_code;
}
