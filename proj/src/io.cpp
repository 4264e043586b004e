#include "kuranishi/io.hpp"

#include <fstream>
#include <set>

namespace kuranishi {

namespace {

constexpr const char* kVersion = "1";
constexpr int kMaxDepth = 16;

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    fail("SchemaError", path + ": " + what);
}

void check_keys(const Json& j, const std::string& path, std::set<std::string> allowed)
{
    if (!j.is_object())
        schema_error(path, "expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            schema_error(path + "." + key, "unknown field");
}

const Json& field(const Json& j, const std::string& path, const std::string& name)
{
    auto it = j.find(name);
    if (it == j.end())
        schema_error(path + "." + name, "missing field");
    return *it;
}

std::string str_field(const Json& j, const std::string& path, const std::string& name)
{
    const Json& v = field(j, path, name);
    if (!v.is_string())
        schema_error(path + "." + name, "expected a string");
    return v.get<std::string>();
}

int int_field(const Json& j, const std::string& path, const std::string& name)
{
    const Json& v = field(j, path, name);
    if (!v.is_number_integer())
        schema_error(path + "." + name, "expected an integer");
    return v.get<int>();
}

Scalar parse_scalar(const Json& j, const std::string& path)
{
    if (j.is_string())
        return Scalar(rational_from_string(j.get<std::string>()));
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
        return Scalar(rational_from_string(j[0].get<std::string>()),
                      rational_from_string(j[1].get<std::string>()));
    schema_error(path, "expected \"p/q\" or [\"re\",\"im\"]");
}

Monomial parse_exponents(const Json& j, const std::string& path, const RingPtr& ring)
{
    if (!j.is_object())
        schema_error(path, "expected an object of variable exponents");
    Monomial m(size_t(ring->num_variables()), 0);
    for (const auto& [name, value] : j.items()) {
        int idx = ring->variable_index(name);
        if (idx < 0)
            schema_error(path + "." + name, "unknown variable");
        if (!value.is_number_integer() || value.get<int>() < 0)
            schema_error(path + "." + name, "expected a nonnegative integer exponent");
        m[size_t(idx)] = unsigned(value.get<int>());
    }
    return m;
}

SeriesElement parse_series(const Json& j, const std::string& path, const RingPtr& ring)
{
    if (j.is_string() || (j.is_array() && j.size() == 2 && !j.empty() && j[0].is_string()))
        return SeriesElement::constant(ring, parse_scalar(j, path));
    if (!j.is_array())
        schema_error(path, "expected a coefficient or a term list");
    TermMap terms;
    for (size_t i = 0; i < j.size(); ++i) {
        const Json& t = j[i];
        std::string tp = path + "[" + std::to_string(i) + "]";
        check_keys(t, tp, {"coeff", "exponents"});
        Scalar c = parse_scalar(field(t, tp, "coeff"), tp + ".coeff");
        Monomial m = parse_exponents(field(t, tp, "exponents"), tp + ".exponents", ring);
        auto hit = terms.find(m);
        if (hit == terms.end())
            terms.emplace(std::move(m), c);
        else
            hit->second += c;
    }
    return SeriesElement::from_terms(ring, std::move(terms));
}

Element parse_element(const Json& j, const std::string& path, const BasisPtr& basis,
                      const RingPtr& ring)
{
    if (!j.is_array())
        schema_error(path, "expected a list of generator terms");
    Element out(basis, ring);
    for (size_t i = 0; i < j.size(); ++i) {
        const Json& t = j[i];
        std::string tp = path + "[" + std::to_string(i) + "]";
        check_keys(t, tp, {"coeff", "generator"});
        std::string name = str_field(t, tp, "generator");
        int idx = basis->index(name);
        if (idx < 0)
            schema_error(tp + ".generator", "unknown generator '" + name + "'");
        SeriesElement c = parse_series(field(t, tp, "coeff"), tp + ".coeff", ring);
        out.set_coefficient(idx, out.coefficient(idx) + c);
    }
    return out;
}

struct ParseContext {
    std::optional<std::filesystem::path> base_dir;
    int depth = 0;
};

ParsedFile parse_json(const Json& j, const ParseContext& ctx);

ParsedFile parse_ref(const Json& j, const std::string& path, const std::string& expect_kind,
                     const ParseContext& ctx)
{
    if (ctx.depth > kMaxDepth)
        schema_error(path, "reference nesting too deep");
    ParsedFile parsed;
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative() && ctx.base_dir)
            p = *ctx.base_dir / p;
        std::ifstream in(p);
        if (!in)
            fail("SchemaError", path + ": cannot open referenced file " + p.string());
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        ParseContext sub{p.parent_path(), ctx.depth + 1};
        Json nested;
        try {
            nested = Json::parse(bytes);
        } catch (const nlohmann::json::parse_error& e) {
            fail("SyntaxError", path + ": " + e.what());
        }
        parsed = parse_json(nested, sub);
    } else {
        ParseContext sub{ctx.base_dir, ctx.depth + 1};
        parsed = parse_json(j, sub);
    }
    if (parsed.kind != expect_kind)
        schema_error(path, "expected a '" + expect_kind + "' description, got '" + parsed.kind +
                               "'");
    return parsed;
}

// ---- kind parsers ----

RingPtr parse_ring(const Json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "format_version", "variables", "relations", "truncation"});
    const Json& vars = field(j, path, "variables");
    if (!vars.is_array())
        schema_error(path + ".variables", "expected a list");
    std::vector<LocalRing::Variable> variables;
    for (size_t i = 0; i < vars.size(); ++i) {
        std::string vp = path + ".variables[" + std::to_string(i) + "]";
        check_keys(vars[i], vp, {"name", "weight"});
        LocalRing::Variable v;
        v.name = str_field(vars[i], vp, "name");
        v.weight = vars[i].contains("weight") ? int_field(vars[i], vp, "weight") : 1;
        variables.push_back(std::move(v));
    }
    int trunc = int_field(j, path, "truncation");
    // relations need the ring's variable table; parse against a relation-free
    // scratch ring with the same variables
    RingPtr scratch = LocalRing::make(variables, {}, std::max(trunc, 1));
    std::vector<TermMap> relations;
    const Json& rels = field(j, path, "relations");
    if (!rels.is_array())
        schema_error(path + ".relations", "expected a list");
    for (size_t i = 0; i < rels.size(); ++i) {
        // raw terms: bypass scratch normalization by reading term by term
        const Json& rj = rels[i];
        std::string rp = path + ".relations[" + std::to_string(i) + "]";
        if (!rj.is_array())
            schema_error(rp, "expected a term list");
        TermMap terms;
        for (size_t t = 0; t < rj.size(); ++t) {
            std::string tp = rp + "[" + std::to_string(t) + "]";
            check_keys(rj[t], tp, {"coeff", "exponents"});
            Scalar c = parse_scalar(field(rj[t], tp, "coeff"), tp + ".coeff");
            Monomial m = parse_exponents(field(rj[t], tp, "exponents"), tp + ".exponents",
                                         scratch);
            auto hit = terms.find(m);
            if (hit == terms.end())
                terms.emplace(std::move(m), c);
            else
                hit->second += c;
        }
        relations.push_back(std::move(terms));
    }
    return LocalRing::make(std::move(variables), std::move(relations), trunc);
}

ConeMonoid parse_cone(const Json& j, const std::string& path)
{
    check_keys(j, path,
               {"kind", "format_version", "ambient_rank", "generators", "inequalities"});
    ConeMonoid cone;
    cone.ambient_rank = int_field(j, path, "ambient_rank");
    const Json& gens = field(j, path, "generators");
    if (!gens.is_array())
        schema_error(path + ".generators", "expected a list");
    for (size_t i = 0; i < gens.size(); ++i) {
        std::string gp = path + ".generators[" + std::to_string(i) + "]";
        check_keys(gens[i], gp, {"name", "vector"});
        cone.generator_names.push_back(str_field(gens[i], gp, "name"));
        const Json& vec = field(gens[i], gp, "vector");
        if (!vec.is_array() || int(vec.size()) != cone.ambient_rank)
            schema_error(gp + ".vector", "expected ambient_rank integers");
        std::vector<long> v;
        for (const auto& x : vec) {
            if (!x.is_number_integer())
                schema_error(gp + ".vector", "expected integers");
            v.push_back(x.get<long>());
        }
        cone.generators.push_back(std::move(v));
    }
    if (j.contains("inequalities")) {
        const Json& ineqs = j["inequalities"];
        if (!ineqs.is_array())
            schema_error(path + ".inequalities", "expected a list");
        for (const auto& f : ineqs) {
            if (!f.is_array())
                schema_error(path + ".inequalities", "expected integer vectors");
            std::vector<long> v;
            for (const auto& x : f)
                v.push_back(x.get<long>());
            cone.inequalities.push_back(std::move(v));
        }
    }
    return cone;
}

BasisPtr parse_basis(const Json& j, const std::string& path)
{
    if (!j.is_array())
        schema_error(path, "expected a list of generators");
    std::vector<std::pair<std::string, int>> gens;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string gp = path + "[" + std::to_string(i) + "]";
        check_keys(j[i], gp, {"name", "degree"});
        gens.emplace_back(str_field(j[i], gp, "name"), int_field(j[i], gp, "degree"));
    }
    return GradedBasis::make(std::move(gens));
}

std::map<int, MultilinearOperation>
parse_operations(const Json& j, const std::string& path, const BasisPtr& domain,
                 const BasisPtr& codomain, const RingPtr& ring, Symmetry sym,
                 int degree_of_arity_base, bool functor_degrees)
{
    std::map<int, MultilinearOperation> out;
    if (!j.is_object())
        schema_error(path, "expected an object keyed by arity");
    for (const auto& [key, entries] : j.items()) {
        int s;
        try {
            size_t pos = 0;
            s = std::stoi(key, &pos);
            if (pos != key.size())
                throw std::invalid_argument(key);
        } catch (...) {
            schema_error(path + "." + key, "arity keys are integers");
        }
        if (s < 0)
            schema_error(path + "." + key, "negative arity");
        int degree = functor_degrees ? 1 - s : degree_of_arity_base - s;
        MultilinearOperation op(s, degree, sym, domain, codomain, ring);
        if (!entries.is_array())
            schema_error(path + "." + key, "expected a list of entries");
        for (size_t i = 0; i < entries.size(); ++i) {
            std::string ep = path + "." + key + "[" + std::to_string(i) + "]";
            check_keys(entries[i], ep, {"inputs", "value"});
            const Json& inputs = field(entries[i], ep, "inputs");
            if (!inputs.is_array() || int(inputs.size()) != s)
                schema_error(ep + ".inputs", "expected " + std::to_string(s) + " generators");
            std::vector<int> tuple;
            for (const auto& name : inputs) {
                if (!name.is_string())
                    schema_error(ep + ".inputs", "expected generator names");
                int idx = domain->index(name.get<std::string>());
                if (idx < 0)
                    schema_error(ep + ".inputs",
                                 "unknown generator '" + name.get<std::string>() + "'");
                tuple.push_back(idx);
            }
            Element value =
                parse_element(field(entries[i], ep, "value"), ep + ".value", codomain, ring);
            op.add_entry(tuple, value);
        }
        if (!op.is_zero())
            out.emplace(s, std::move(op));
    }
    return out;
}

AlgebraPtr parse_linf(const Json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "format_version", "basis", "arity_cap", "operations"});
    BasisPtr basis = parse_basis(field(j, path, "basis"), path + ".basis");
    int cap = int_field(j, path, "arity_cap");
    auto ops = parse_operations(field(j, path, "operations"), path + ".operations", basis, basis,
                                LocalRing::ground_field(), Symmetry::GradedSymmetricReduced, 2,
                                false);
    return LInfinityAlgebra::make(std::move(basis), std::move(ops), cap);
}

CategoryPtr parse_ainf(const Json& j, const std::string& path, const ParseContext& ctx)
{
    check_keys(j, path,
               {"kind", "format_version", "ring", "objects", "hom", "arity_cap", "operations"});
    RingPtr ring = LocalRing::ground_field();
    if (j.contains("ring") && !j["ring"].is_null())
        ring = parse_ref(j["ring"], path + ".ring", "ring", ctx).ring;
    const Json& objs = field(j, path, "objects");
    if (!objs.is_array())
        schema_error(path + ".objects", "expected a list");
    std::vector<std::string> objects;
    for (const auto& o : objs)
        objects.push_back(o.get<std::string>());

    const Json& hom = field(j, path, "hom");
    if (!hom.is_array())
        schema_error(path + ".hom", "expected a list");
    std::vector<std::pair<std::string, int>> gens;
    std::vector<std::pair<int, int>> tags;
    for (size_t i = 0; i < hom.size(); ++i) {
        std::string hp = path + ".hom[" + std::to_string(i) + "]";
        check_keys(hom[i], hp, {"name", "degree", "source", "target"});
        gens.emplace_back(str_field(hom[i], hp, "name"), int_field(hom[i], hp, "degree"));
        auto find_obj = [&](const std::string& n) {
            for (size_t k = 0; k < objects.size(); ++k)
                if (objects[k] == n)
                    return int(k);
            schema_error(hp, "unknown object '" + n + "'");
        };
        tags.emplace_back(find_obj(str_field(hom[i], hp, "source")),
                          find_obj(str_field(hom[i], hp, "target")));
    }
    BasisPtr basis = GradedBasis::make(std::move(gens));
    int cap = int_field(j, path, "arity_cap");
    auto mu = parse_operations(field(j, path, "operations"), path + ".operations", basis, basis,
                               ring, Symmetry::None, 2, false);
    return CurvedCategory::make(std::move(ring), std::move(objects), std::move(basis),
                                std::move(tags), std::move(mu), cap);
}

CurvedFunctor parse_functor(const Json& j, const std::string& path, const ParseContext& ctx)
{
    check_keys(j, path,
               {"kind", "format_version", "source", "target", "object_map", "components"});
    CategoryPtr source = parse_ref(field(j, path, "source"), path + ".source", "ainf", ctx).category;
    CategoryPtr target = parse_ref(field(j, path, "target"), path + ".target", "ainf", ctx).category;
    const Json& om = field(j, path, "object_map");
    if (!om.is_object())
        schema_error(path + ".object_map", "expected an object");
    std::vector<int> object_map(source->objects().size(), -1);
    for (const auto& [from, to] : om.items()) {
        int fi = source->object_index(from);
        if (fi < 0)
            schema_error(path + ".object_map", "unknown source object '" + from + "'");
        int ti = target->object_index(to.get<std::string>());
        if (ti < 0)
            schema_error(path + ".object_map",
                         "unknown target object '" + to.get<std::string>() + "'");
        object_map[size_t(fi)] = ti;
    }
    for (int t : object_map)
        if (t < 0)
            schema_error(path + ".object_map", "object map must cover every source object");
    RingPtr ring = source->ring()->is_trivial() ? target->ring() : source->ring();
    auto comps = parse_operations(field(j, path, "components"), path + ".components",
                                  source->basis(), target->basis(), ring, Symmetry::None, 0, true);
    return CurvedFunctor(std::move(source), std::move(target), std::move(object_map),
                         std::move(comps));
}

void parse_mc(ParsedFile& out, const Json& j, const std::string& path, const ParseContext& ctx)
{
    if (j.contains("algebra")) {
        check_keys(j, path, {"kind", "format_version", "algebra", "ring", "value"});
        AlgebraPtr algebra =
            parse_ref(field(j, path, "algebra"), path + ".algebra", "linf", ctx).algebra;
        RingPtr ring = parse_ref(field(j, path, "ring"), path + ".ring", "ring", ctx).ring;
        Element value =
            parse_element(field(j, path, "value"), path + ".value", algebra->basis(), ring);
        out.mc = MaurerCartanElement::make(std::move(algebra), std::move(ring), std::move(value));
        return;
    }
    check_keys(j, path, {"kind", "format_version", "category", "cochains"});
    CategoryPtr cat =
        parse_ref(field(j, path, "category"), path + ".category", "ainf", ctx).category;
    const Json& cs = field(j, path, "cochains");
    if (!cs.is_object())
        schema_error(path + ".cochains", "expected an object keyed by object name");
    for (const auto& [name, value] : cs.items()) {
        int idx = cat->object_index(name);
        if (idx < 0)
            schema_error(path + ".cochains", "unknown object '" + name + "'");
        out.bc_cochains[idx] =
            parse_element(value, path + ".cochains." + name, cat->basis(), cat->ring());
    }
    out.bc_category_ref = std::move(cat);
}

HochschildCochain parse_cochain(const Json& j, const std::string& path, const ParseContext& ctx)
{
    check_keys(j, path,
               {"kind", "format_version", "category", "ring", "degree", "length_cap",
                "components"});
    CategoryPtr cat =
        parse_ref(field(j, path, "category"), path + ".category", "ainf", ctx).category;
    RingPtr ring = LocalRing::ground_field();
    if (j.contains("ring") && !j["ring"].is_null())
        ring = parse_ref(j["ring"], path + ".ring", "ring", ctx).ring;
    int degree = int_field(j, path, "degree");
    int cap = int_field(j, path, "length_cap");
    HochschildCochain out(cat, ring, degree, cap);
    const Json& comps = field(j, path, "components");
    if (!comps.is_object())
        schema_error(path + ".components", "expected an object keyed by length");
    for (const auto& [key, entries] : comps.items()) {
        int s = std::stoi(key);
        MultilinearOperation op(s, degree - s, Symmetry::None, cat->basis(), cat->basis(), ring);
        for (size_t i = 0; i < entries.size(); ++i) {
            std::string ep = path + ".components." + key + "[" + std::to_string(i) + "]";
            check_keys(entries[i], ep, {"inputs", "value"});
            const Json& inputs = field(entries[i], ep, "inputs");
            std::vector<int> tuple;
            for (const auto& name : inputs) {
                int idx = cat->basis()->index(name.get<std::string>());
                if (idx < 0)
                    schema_error(ep + ".inputs", "unknown generator");
                tuple.push_back(idx);
            }
            Element value =
                parse_element(field(entries[i], ep, "value"), ep + ".value", cat->basis(), ring);
            op.add_entry(tuple, value);
        }
        if (!op.is_zero())
            out.set_component(s, std::move(op));
    }
    return out;
}

void parse_point(ParsedFile& out, const Json& j, const std::string& path)
{
    check_keys(j, path, {"kind", "format_version", "omega", "b_field"});
    const Json& om = field(j, path, "omega");
    if (!om.is_object())
        schema_error(path + ".omega", "expected an object keyed by generator name");
    for (const auto& [name, value] : om.items())
        out.point_omega[name] = rational_from_string(value.get<std::string>());
    if (j.contains("b_field")) {
        for (const auto& [name, value] : j["b_field"].items())
            out.point_b[name] = rational_from_string(value.get<std::string>());
    }
}

ParsedFile parse_json(const Json& j, const ParseContext& ctx)
{
    if (!j.is_object())
        schema_error("$", "top level must be an object");
    ParsedFile out;
    out.kind = str_field(j, "$", "kind");
    std::string version = str_field(j, "$", "format_version");
    if (version != kVersion)
        fail("VersionUnsupported", "format_version '" + version + "' is not supported");

    if (out.kind == "ring")
        out.ring = parse_ring(j, "$");
    else if (out.kind == "cone")
        out.cone = parse_cone(j, "$");
    else if (out.kind == "linf")
        out.algebra = parse_linf(j, "$");
    else if (out.kind == "ainf")
        out.category = parse_ainf(j, "$", ctx);
    else if (out.kind == "functor")
        out.functor = parse_functor(j, "$", ctx);
    else if (out.kind == "mc")
        parse_mc(out, j, "$", ctx);
    else if (out.kind == "cochain")
        out.cochain = parse_cochain(j, "$", ctx);
    else if (out.kind == "point")
        parse_point(out, j, "$");
    else
        schema_error("$.kind", "unknown kind '" + out.kind + "'");
    return out;
}

std::pair<int, int> line_column(const std::string& bytes, size_t byte)
{
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < bytes.size(); ++i) {
        if (bytes[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

ParsedFile parse_text(const std::string& bytes,
                      const std::optional<std::filesystem::path>& base_dir)
{
    Json j;
    try {
        j = Json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = line_column(bytes, e.byte > 0 ? e.byte - 1 : 0);
        fail("SyntaxError",
             "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    return parse_json(j, ParseContext{base_dir, 0});
}

ParsedFile parse_file(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& fixture_dir)
{
    std::ifstream in(path);
    if (!in)
        fail("SchemaError", "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::optional<std::filesystem::path> base =
        fixture_dir ? fixture_dir : std::optional<std::filesystem::path>(path.parent_path());
    return parse_text(bytes, base);
}

std::string scalar_to_string(const Scalar& c) { return c.str(); }

namespace {

Json scalar_json(const Scalar& c)
{
    if (c.is_rational())
        return Json(to_string(c.re()));
    return Json::array({to_string(c.re()), to_string(c.im())});
}

Json exponents_json(const Monomial& m, const RingPtr& ring)
{
    Json out = Json::object();
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0)
            out[ring->variables()[i].name] = int(m[i]);
    return out;
}

Json poly_json(const TermMap& terms, const RingPtr& ring)
{
    Json out = Json::array();
    for (const auto& [m, c] : terms) {
        Json t = Json::object();
        t["coeff"] = scalar_json(c);
        t["exponents"] = exponents_json(m, ring);
        out.push_back(std::move(t));
    }
    return out;
}

Json ops_json(const std::map<int, MultilinearOperation>& ops, const BasisPtr& domain,
              const BasisPtr& codomain)
{
    Json out = Json::object();
    for (const auto& [s, op] : ops) {
        if (op.is_zero())
            continue;
        Json list = Json::array();
        for (const auto& [tuple, value] : op.stored_entries()) {
            Json entry = Json::object();
            Json inputs = Json::array();
            for (int i : tuple)
                inputs.push_back(domain->name(i));
            entry["inputs"] = std::move(inputs);
            entry["value"] = element_to_json(value, codomain);
            list.push_back(std::move(entry));
        }
        out[std::to_string(s)] = std::move(list);
    }
    return out;
}

} // namespace

Json series_to_json(const SeriesElement& value)
{
    if (value.ring()->is_trivial())
        return scalar_json(value.constant_term());
    return poly_json(value.terms(), value.ring());
}

Json element_to_json(const Element& value, const BasisPtr& basis)
{
    Json out = Json::array();
    for (const auto& [i, c] : value.coefficients()) {
        Json t = Json::object();
        t["coeff"] = series_to_json(c);
        t["generator"] = basis->name(i);
        out.push_back(std::move(t));
    }
    return out;
}

Json ring_to_json(const RingPtr& ring)
{
    Json out = Json::object();
    out["kind"] = "ring";
    out["format_version"] = kVersion;
    Json vars = Json::array();
    for (const auto& v : ring->variables()) {
        Json jv = Json::object();
        jv["name"] = v.name;
        jv["weight"] = v.weight;
        vars.push_back(std::move(jv));
    }
    out["variables"] = std::move(vars);
    Json rels = Json::array();
    for (const auto& r : ring->relations())
        rels.push_back(poly_json(r, ring));
    out["relations"] = std::move(rels);
    out["truncation"] = ring->truncation_order();
    return out;
}

Json cone_to_json(const ConeMonoid& cone)
{
    Json out = Json::object();
    out["kind"] = "cone";
    out["format_version"] = kVersion;
    out["ambient_rank"] = cone.ambient_rank;
    Json gens = Json::array();
    for (size_t i = 0; i < cone.generators.size(); ++i) {
        Json g = Json::object();
        g["name"] = cone.name_of(i);
        g["vector"] = cone.generators[i];
        gens.push_back(std::move(g));
    }
    out["generators"] = std::move(gens);
    if (!cone.inequalities.empty())
        out["inequalities"] = cone.inequalities;
    return out;
}

Json algebra_to_json(const AlgebraPtr& algebra)
{
    Json out = Json::object();
    out["kind"] = "linf";
    out["format_version"] = kVersion;
    Json basis = Json::array();
    for (int i = 0; i < algebra->basis()->dimension(); ++i) {
        Json g = Json::object();
        g["name"] = algebra->basis()->name(i);
        g["degree"] = algebra->basis()->degree(i);
        basis.push_back(std::move(g));
    }
    out["basis"] = std::move(basis);
    out["arity_cap"] = algebra->arity_cap();
    std::map<int, MultilinearOperation> ops;
    for (int s = 1; s <= algebra->arity_cap(); ++s)
        if (algebra->op(s))
            ops.emplace(s, *algebra->op(s));
    out["operations"] = ops_json(ops, algebra->basis(), algebra->basis());
    return out;
}

Json category_to_json(const CategoryPtr& category)
{
    Json out = Json::object();
    out["kind"] = "ainf";
    out["format_version"] = kVersion;
    if (!category->ring()->is_trivial())
        out["ring"] = ring_to_json(category->ring());
    out["objects"] = category->objects();
    Json hom = Json::array();
    for (int i = 0; i < category->basis()->dimension(); ++i) {
        Json g = Json::object();
        g["name"] = category->basis()->name(i);
        g["degree"] = category->basis()->degree(i);
        g["source"] = category->objects()[size_t(category->hom_source(i))];
        g["target"] = category->objects()[size_t(category->hom_target(i))];
        hom.push_back(std::move(g));
    }
    out["hom"] = std::move(hom);
    out["arity_cap"] = category->arity_cap();
    out["operations"] = ops_json(category->structure_maps(), category->basis(), category->basis());
    return out;
}

Json functor_to_json(const CurvedFunctor& functor)
{
    Json out = Json::object();
    out["kind"] = "functor";
    out["format_version"] = kVersion;
    out["source"] = category_to_json(functor.source());
    out["target"] = category_to_json(functor.target());
    Json om = Json::object();
    for (size_t i = 0; i < functor.object_map().size(); ++i)
        om[functor.source()->objects()[i]] =
            functor.target()->objects()[size_t(functor.object_map()[i])];
    out["object_map"] = std::move(om);
    out["components"] =
        ops_json(functor.components(), functor.source()->basis(), functor.target()->basis());
    return out;
}

Json mc_to_json(const MaurerCartanElement& mc)
{
    Json out = Json::object();
    out["kind"] = "mc";
    out["format_version"] = kVersion;
    out["algebra"] = algebra_to_json(mc.algebra);
    out["ring"] = ring_to_json(mc.ring);
    out["value"] = element_to_json(mc.value, mc.algebra->basis());
    return out;
}

Json bc_assignment_to_json(const CategoryPtr& category, const std::map<int, Element>& cochains)
{
    Json out = Json::object();
    out["kind"] = "mc";
    out["format_version"] = kVersion;
    out["category"] = category_to_json(category);
    Json cs = Json::object();
    for (const auto& [obj, value] : cochains)
        cs[category->objects()[size_t(obj)]] = element_to_json(value, category->basis());
    out["cochains"] = std::move(cs);
    return out;
}

Json point_to_json(const std::map<std::string, Rational>& omega,
                   const std::map<std::string, Rational>& b_field)
{
    Json out = Json::object();
    out["kind"] = "point";
    out["format_version"] = kVersion;
    Json om = Json::object();
    for (const auto& [name, value] : omega)
        om[name] = to_string(value);
    out["omega"] = std::move(om);
    Json bf = Json::object();
    for (const auto& [name, value] : b_field)
        bf[name] = to_string(value);
    out["b_field"] = std::move(bf);
    return out;
}

Json cochain_to_json(const HochschildCochain& cochain)
{
    Json out = Json::object();
    out["kind"] = "cochain";
    out["format_version"] = kVersion;
    out["category"] = category_to_json(cochain.category());
    if (!cochain.ring()->is_trivial())
        out["ring"] = ring_to_json(cochain.ring());
    out["degree"] = cochain.degree();
    out["length_cap"] = cochain.length_cap();
    out["components"] =
        ops_json(cochain.components(), cochain.category()->basis(), cochain.category()->basis());
    return out;
}

} // namespace kuranishi
