#ifndef KURANISHI_IO_HPP
#define KURANISHI_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "kuranishi/hochschild.hpp"
#include "kuranishi/novikov.hpp"

namespace kuranishi {

using Json = nlohmann::ordered_json;

/// Parsed description file. `kind` selects which member is populated.
/// Nested references (rings, algebras, categories) may be inline objects or
/// string paths resolved against the fixture directory.
struct ParsedFile {
    std::string kind;

    RingPtr ring;
    std::optional<ConeMonoid> cone;
    AlgebraPtr algebra;
    CategoryPtr category;
    std::optional<CurvedFunctor> functor;

    // kind == "mc", element variant
    std::optional<MaurerCartanElement> mc;
    // kind == "mc", cochain-assignment variant
    CategoryPtr bc_category_ref;
    std::map<int, Element> bc_cochains;

    std::optional<HochschildCochain> cochain;

    // kind == "point": named omega / B values, resolved against a cone later
    std::map<std::string, Rational> point_omega;
    std::map<std::string, Rational> point_b;
};

/// Parses and validates one description file. SyntaxError carries line and
/// column; SchemaError carries the offending field path; unknown fields are
/// rejected.
ParsedFile parse_file(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& fixture_dir = std::nullopt);

/// Same, from raw bytes; `base_dir` resolves nested string references.
ParsedFile parse_text(const std::string& bytes,
                      const std::optional<std::filesystem::path>& base_dir = std::nullopt);

// Canonical serializers (deterministic field and term order).
Json ring_to_json(const RingPtr& ring);
Json cone_to_json(const ConeMonoid& cone);
Json algebra_to_json(const AlgebraPtr& algebra);
Json category_to_json(const CategoryPtr& category);
Json functor_to_json(const CurvedFunctor& functor);
Json mc_to_json(const MaurerCartanElement& mc);
Json bc_assignment_to_json(const CategoryPtr& category, const std::map<int, Element>& cochains);
Json point_to_json(const std::map<std::string, Rational>& omega,
                   const std::map<std::string, Rational>& b_field);
Json cochain_to_json(const HochschildCochain& cochain);
Json series_to_json(const SeriesElement& value);
Json element_to_json(const Element& value, const BasisPtr& basis);

std::string scalar_to_string(const Scalar& c);

} // namespace kuranishi

#endif
