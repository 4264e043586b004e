#ifndef KURANISHI_HOCHSCHILD_HPP
#define KURANISHI_HOCHSCHILD_HPP

#include <map>
#include <string>
#include <vector>

#include "kuranishi/ainf.hpp"

namespace kuranishi {

/// Hochschild cochain on an uncurved ground-field category: components
/// phi^s for 0 <= s <= length_cap, each a degree (d - s) map between hom
/// spaces, with coefficients in `ring` (the ground field for plain cochains,
/// the deformation base for family cochains). Components beyond the cap are
/// unknown, not zero; operations only ever read stored lengths.
class HochschildCochain {
  public:
    HochschildCochain(CategoryPtr category, RingPtr ring, int degree, int length_cap);
    HochschildCochain(CategoryPtr category, RingPtr ring, int degree, int length_cap,
                      std::map<int, MultilinearOperation> components);

    const CategoryPtr& category() const { return cat_; }
    const RingPtr& ring() const { return ring_; }
    int degree() const { return degree_; }
    int reduced_degree() const { return degree_ - 1; }
    int length_cap() const { return length_cap_; }
    const MultilinearOperation* component(int s) const;
    const std::map<int, MultilinearOperation>& components() const { return comps_; }
    void set_component(int s, MultilinearOperation op);

    Element apply(int s, const std::vector<Element>& args) const;
    /// Length-0 value at one object.
    Element value_at(int object) const;

    bool is_zero() const;
    HochschildCochain operator-() const;
    HochschildCochain& operator+=(const HochschildCochain& o);
    friend HochschildCochain operator+(HochschildCochain a, const HochschildCochain& b)
    {
        return a += b;
    }
    friend HochschildCochain operator-(HochschildCochain a, const HochschildCochain& b)
    {
        return a += -b;
    }
    HochschildCochain scaled(const Scalar& c) const;
    HochschildCochain scaled(const SeriesElement& c) const;
    friend bool operator==(const HochschildCochain& a, const HochschildCochain& b);

  private:
    CategoryPtr cat_;
    RingPtr ring_;
    int degree_ = 0;
    int length_cap_ = 0;
    std::map<int, MultilinearOperation> comps_;
};

/// Brace/circle product: insert psi into phi in all slots, with the
/// Gerstenhaber sign on the prefix.
HochschildCochain brace_compose(const HochschildCochain& phi, const HochschildCochain& psi);

/// [phi, psi] = phi o psi - (-1)^(|phi|-1)(|psi|-1) psi o phi.
HochschildCochain gerstenhaber_bracket(const HochschildCochain& phi,
                                       const HochschildCochain& psi);

/// d(phi) = [mu, phi] for the category's structure maps.
HochschildCochain hochschild_differential(const HochschildCochain& phi);

/// Coordinates of the length-truncated cochain space of one degree.
struct CochainBasis {
    struct Slot {
        int length;              // s
        std::vector<int> tuple;  // composable generators (s >= 1), or {object}
        int target;              // target generator index
    };
    std::vector<Slot> slots;
};
CochainBasis cochain_basis(const CategoryPtr& a0, int degree, int length_cap);
std::vector<SeriesElement> cochain_coordinates(const HochschildCochain& phi,
                                               const CochainBasis& basis);
HochschildCochain cochain_from_coordinates(const CategoryPtr& a0, const RingPtr& ring, int degree,
                                           int length_cap, const CochainBasis& basis,
                                           const std::vector<SeriesElement>& coords);

struct HHResult {
    int degree = 0;
    int length_cap = 0;
    int dimension = 0;
    std::vector<HochschildCochain> representatives;
};

/// Cohomology of the length-truncated complex in one degree. Answers are
/// labelled by the cap: the untruncated complex is a product over all
/// lengths.
HHResult hh_cohomology(const CategoryPtr& a0, int degree, int length_cap);

/// Curved structure on A0 tensor R whose reduction is A0 on the nose.
struct DeformationFamily {
    CategoryPtr base;  // A0 over the ground field
    CategoryPtr total; // over R, same basis and tags
};

/// Validates the reduction (ReductionMismatch) and the A-infinity relations.
DeformationFamily make_deformation(CategoryPtr a0, CategoryPtr total);

/// mu_total - mu_0 as a Hochschild cochain with maximal-ideal coefficients;
/// its length cap is the category arity cap.
HochschildCochain deformation_to_mc(const DeformationFamily& d);

/// mu_0 + alpha; fails NotMaurerCartan (with the violating tuple in the
/// message) when the result breaks the A-infinity relations.
DeformationFamily mc_to_deformation(const HochschildCochain& alpha);

struct FamilyKS {
    Matrix matrix; // rows: base variables, columns: HH^2 classes
    int rank = 0;
    bool surjective = false;
    bool injective = false;
    HHResult hh2;
};

/// Kodaira-Spencer data of a family: contraction of the order-1 part of the
/// deformation cochain, projected to HH^2 at the length cap.
FamilyKS family_ks_map(const DeformationFamily& d, int length_cap);

struct VersalExtensionResult {
    RingMap psi;              // R -> S
    CategoryPtr pulled_back;  // Psi* B over S
    CurvedFunctor functor;    // Psi* B -> A (through the transported structure)
    RelationReport functor_check;
    bool reduced_quasi_embedding = false;
    int length_cap = 0;
    std::vector<std::string> notes;
};

/// Order-by-order construction of Psi*: R -> S and a functor Psi*B -> A
/// reducing to the given isomorphism, per the surjective-Kodaira-Spencer
/// criterion. Pass iso = nullptr when A0 and B0 coincide on the nose.
VersalExtensionResult versal_extension(const DeformationFamily& b, const CategoryPtr& a_total,
                                       const CurvedFunctor* iso, int length_cap);

/// Applies a base change to every structure coefficient.
CategoryPtr pullback_category(const CategoryPtr& total, const RingMap& psi);

} // namespace kuranishi

#endif
