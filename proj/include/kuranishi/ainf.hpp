#ifndef KURANISHI_AINF_HPP
#define KURANISHI_AINF_HPP

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "kuranishi/graded.hpp"
#include "kuranishi/linf.hpp" // RelationReport

namespace kuranishi {

class CurvedCategory;
using CategoryPtr = std::shared_ptr<const CurvedCategory>;

/// Curved A-infinity category over a truncated local ring. Hom spaces are
/// encoded by one global graded basis whose generators carry (source, target)
/// object tags; structure maps store entries on composable tuples only, so
/// category bookkeeping is enforced at insertion time.
class CurvedCategory {
  public:
    static CategoryPtr make(RingPtr ring, std::vector<std::string> objects, BasisPtr basis,
                            std::vector<std::pair<int, int>> hom_of,
                            std::map<int, MultilinearOperation> structure, int arity_cap);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::string>& objects() const { return objects_; }
    int object_index(const std::string& name) const;
    const BasisPtr& basis() const { return basis_; }
    int hom_source(int generator) const { return hom_of_[size_t(generator)].first; }
    int hom_target(int generator) const { return hom_of_[size_t(generator)].second; }
    const std::vector<std::pair<int, int>>& hom_tags() const { return hom_of_; }
    int arity_cap() const { return arity_cap_; }
    const MultilinearOperation* structure_map(int s) const;
    const std::map<int, MultilinearOperation>& structure_maps() const { return mu_; }
    bool is_curved() const { return structure_map(0) != nullptr; }

    Element apply(int s, const std::vector<Element>& args) const;
    /// Total curvature (sum of the per-object components of mu^0).
    Element curvature() const;
    /// Component of the curvature at one object.
    Element curvature_at(int object) const;
    /// True iff the element is supported on hom(source, target).
    bool supported_on(const Element& e, int source, int target) const;

    /// All composable generator chains of the given length.
    std::vector<std::vector<int>> composable_tuples(int length) const;

  private:
    CurvedCategory() = default;
    RingPtr ring_;
    std::vector<std::string> objects_;
    BasisPtr basis_;
    std::vector<std::pair<int, int>> hom_of_;
    std::map<int, MultilinearOperation> mu_;
    int arity_cap_ = 0;
};

/// Signed A-infinity relation residuals on all composable tuples up to the
/// bound; arities whose terms would need operations beyond the cap are
/// reported unchecked, never silently assumed.
RelationReport check_ainf(const CurvedCategory& a, int arity_bound);

/// Reduction modulo the maximal ideal: ground-field category, curvature dies.
CategoryPtr reduce_mod_max_ideal(const CategoryPtr& a);

/// Curved functor: components F^s of degree 1-s with F^0 per-object in the
/// maximal ideal (encoded as one arity-0 operation summed over objects).
class CurvedFunctor {
  public:
    CurvedFunctor(CategoryPtr source, CategoryPtr target, std::vector<int> object_map,
                  std::map<int, MultilinearOperation> components);

    static CurvedFunctor identity(CategoryPtr a);

    const CategoryPtr& source() const { return source_; }
    const CategoryPtr& target() const { return target_; }
    const std::vector<int>& object_map() const { return object_map_; }
    const MultilinearOperation* component(int s) const;
    const std::map<int, MultilinearOperation>& components() const { return comps_; }
    bool is_strict() const;

    Element apply(int s, const std::vector<Element>& args) const;
    Element curvature_component() const; // F^0 total
    Element curvature_at(int source_object) const;

  private:
    CategoryPtr source_, target_;
    std::vector<int> object_map_;
    std::map<int, MultilinearOperation> comps_;
};

/// Functor relation residuals (source-insertion side against block side).
RelationReport check_functor(const CurvedFunctor& f, int arity_bound);

CurvedFunctor compose_functors(const CurvedFunctor& g, const CurvedFunctor& f);

struct BoundingCochain {
    int object = 0;
    Element value; // degree-1 endomorphism with coefficients in m
};

struct BcObstruction {
    Element cohomology_class; // harmonic representative, order-k coefficients
    int order = 0;
};

/// Order-by-order solve of the weak Maurer-Cartan equation for one object.
/// `variant` permutes the complement choices; the first obstruction class is
/// independent of it. Returns the cochain or the first obstruction.
std::variant<BoundingCochain, BcObstruction>
solve_bounding_cochain(const CategoryPtr& a, int object, int variant = 0);

struct BcCategory {
    CategoryPtr category;            // uncurved, same ring and bases
    std::vector<int> unchecked;      // arities where cap truncated insertions
};

/// Deforms the structure maps by inserting each object's bounding cochain in
/// all slots adjacent to that object. The curvature cancels exactly.
BcCategory bc_category(const CategoryPtr& a, const std::map<int, Element>& cochains);

struct BcFunctor {
    CurvedFunctor functor;                 // between the bc categories
    std::map<int, Element> target_cochains; // keyed by target object
    bool reduced_quasi_embedding = false;   // certified on the reduced level
    std::vector<int> unchecked;
};

/// Pushes bounding cochains forward through a curved functor and deforms its
/// components accordingly. Requires an injective object map.
BcFunctor bc_functor(const CurvedFunctor& f, const std::map<int, Element>& source_cochains,
                     const BcCategory& source_bc);

/// Strict inverse of an A-infinity isomorphism (uncurved, F^1 invertible,
/// bijective on objects): G with G o F = id exactly up to the arity cap.
CurvedFunctor invert_iso(const CurvedFunctor& f);

struct TransportResult {
    CategoryPtr category;  // new structure on the target skeleton
    CurvedFunctor functor; // the given components, now a functor A -> new
};

/// Unique structure on the target skeleton making the given components
/// (F^0 = 0, F^1 invertible) an A-infinity functor from `a`. The target of
/// `f` supplies the skeleton; its own structure maps are ignored.
TransportResult transport_structure(const CategoryPtr& a, const CurvedFunctor& f);

/// Reduction of a functor modulo the maximal ideal (components get constant
/// terms, F^0 dies).
CurvedFunctor reduce_functor(const CurvedFunctor& f);

/// Cohomology of every hom pair of a ground-field uncurved category; used for
/// quasi-embedding certification.
struct HomCohomology {
    std::map<std::pair<int, int>, std::map<int, int>> dims; // (src,dst) -> degree -> dim
};
HomCohomology hom_cohomology(const CategoryPtr& a);

/// True iff the reduced functor induces isomorphisms on the cohomology of
/// every hom pair (the associated-graded certificate for quasi-embedding).
bool reduced_functor_is_quasi_iso_on_homs(const CurvedFunctor& reduced);

} // namespace kuranishi

#endif
