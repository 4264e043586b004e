#ifndef KURANISHI_LINF_HPP
#define KURANISHI_LINF_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kuranishi/graded.hpp"
#include "kuranishi/matrix.hpp"

namespace kuranishi {

/// L-infinity algebra over the ground field: graded basis with brackets
/// l^s of degree 2-s, graded symmetric in reduced degrees, for
/// 1 <= s <= arity_cap. Absent arities are zero. Immutable once made.
class LInfinityAlgebra {
  public:
    static std::shared_ptr<const LInfinityAlgebra>
    make(BasisPtr basis, std::map<int, MultilinearOperation> operations, int arity_cap);

    const BasisPtr& basis() const { return basis_; }
    int arity_cap() const { return arity_cap_; }
    const MultilinearOperation* op(int s) const;
    bool is_minimal() const; // l^1 == 0

    /// l^s extended multilinearly; zero when the arity is absent.
    Element apply(int s, const std::vector<Element>& args) const;

  private:
    LInfinityAlgebra() = default;
    BasisPtr basis_;
    std::map<int, MultilinearOperation> ops_;
    int arity_cap_ = 0;
};

using AlgebraPtr = std::shared_ptr<const LInfinityAlgebra>;

struct RelationViolation {
    int arity = 0;
    std::vector<int> tuple;
    Element residual;
};

struct RelationReport {
    int arity_bound = 0;
    std::vector<RelationViolation> violations;
    std::vector<int> unchecked_arities; // arities needing operations beyond the cap
    bool pass() const { return violations.empty(); }
};

/// Checks the L-infinity coherence relations on every sorted basis tuple up
/// to the arity bound. Graded symmetry of the stored operations makes the
/// relation symmetric, so sorted tuples suffice.
RelationReport check_linf_relations(const LInfinityAlgebra& g, int arity_bound);

/// Exact splitting g = H (+) im l^1 (+) C with the homotopy h inverting l^1
/// from C onto its image: id - i p = l^1 h + h l^1, h^2 = 0, h i = 0, p h = 0.
/// Works coefficient-wise over any ring through the order filtration.
class HarmonicSplitting {
  public:
    explicit HarmonicSplitting(AlgebraPtr algebra); // DifferentialNotSquareZero

    const AlgebraPtr& algebra() const { return algebra_; }
    /// Basis of the cohomology; generator i of `harmonic_basis()` includes
    /// into the algebra as `representative(i)`.
    const BasisPtr& harmonic_basis() const { return hbasis_; }
    const Element& representative(int i) const { return reps_[size_t(i)]; }

    Element include(const Element& x) const;  // H-coordinates -> algebra
    Element project(const Element& x) const;  // algebra -> H-coordinates
    Element homotopy(const Element& x) const; // h
    Element differential(const Element& x) const;

  private:
    AlgebraPtr algebra_;
    BasisPtr hbasis_;
    std::vector<Element> reps_;
    // per degree: the change-of-basis [H | im | C] and its inverse, plus the
    // bookkeeping to invert the differential on its image
    struct DegreeData {
        std::vector<int> indices;       // algebra basis indices of this degree
        std::vector<int> h_slots;       // positions of harmonic columns -> hbasis ids
        std::vector<Element> c_basis;   // complement vectors one degree down
        Matrix inverse;                 // inverse of [H | im | C]
        int h_count = 0, im_count = 0;
    };
    std::map<int, DegreeData> by_degree_;
};

struct CohomologyData {
    std::map<int, int> dims;
    std::map<int, std::vector<Element>> representatives;
};
CohomologyData cohomology(const AlgebraPtr& g);

/// Degree-1 element with coefficients in the maximal ideal.
struct MaurerCartanElement {
    AlgebraPtr algebra;
    RingPtr ring;
    Element value;

    static MaurerCartanElement make(AlgebraPtr algebra, RingPtr ring, Element value);
};

/// Sum over s of l^s(alpha,...,alpha)/s!, truncated exactly.
Element mc_residual(const MaurerCartanElement& alpha);

/// Polynomial in the flow time t with degree-0, maximal-ideal coefficients.
struct GaugePath {
    AlgebraPtr algebra;
    RingPtr ring;
    std::vector<Element> coefficients; // coefficient of t^k at index k

    static GaugePath constant(AlgebraPtr algebra, RingPtr ring, Element value);
};

/// Time-1 flow of the gauge vector field attached to gamma, computed by
/// exact Picard iteration (the field is nilpotent at finite truncation).
MaurerCartanElement gauge_flow(const GaugePath& gamma, const MaurerCartanElement& alpha);

struct GaugeResult {
    bool equivalent = false;
    std::vector<GaugePath> paths;      // composite flow carries alpha to beta
    int obstruction_order = 0;         // maximal-ideal order of the blocker
    Element obstruction_class;         // harmonic coordinates tensor m^k part
};

/// Searches a single flowline with constant gamma, solving order by order;
/// on failure reports the lowest-order cohomology class obstructing.
GaugeResult gauge_equivalent(const MaurerCartanElement& alpha, const MaurerCartanElement& beta);

/// Morphism of L-infinity algebras: components f^s of degree 1-s, graded
/// symmetric in reduced degrees.
class LInfinityMorphism {
  public:
    LInfinityMorphism(AlgebraPtr source, AlgebraPtr target,
                      std::map<int, MultilinearOperation> components);

    static LInfinityMorphism identity(AlgebraPtr g);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const MultilinearOperation* component(int s) const;
    int max_component() const;

    Element apply(int s, const std::vector<Element>& args) const;

  private:
    AlgebraPtr source_, target_;
    std::map<int, MultilinearOperation> comps_;
};

/// Both sides of the morphism coherence relation on sorted tuples up to the
/// bound: source-bracket side against target-bracket-of-blocks side.
RelationReport check_linf_morphism(const LInfinityMorphism& f, int arity_bound);

/// Pushforward sum over s of f^s(alpha,...,alpha)/s!.
MaurerCartanElement push_forward_mc(const LInfinityMorphism& f, const MaurerCartanElement& alpha);

struct MinimalModel {
    AlgebraPtr minimal;
    LInfinityMorphism inclusion; // quasi-isomorphism minimal -> original
    /// Splitting of the original algebra; its harmonic basis is the basis
    /// object of `minimal` (null when the input was already minimal).
    std::shared_ptr<const HarmonicSplitting> splitting;
};

/// Minimal model by homotopy transfer against the harmonic splitting,
/// constructed arity by arity so the morphism relations hold exactly;
/// the transferred relations follow and are re-checked by callers.
MinimalModel minimal_model(const AlgebraPtr& g, int arity_cap);

struct VersalPresentation {
    AlgebraPtr algebra;  // minimal
    RingPtr free_ring;   // power series on x_1..x_a
    RingPtr ring;        // free_ring modulo the obstruction polynomials
    std::vector<SeriesElement> obstruction_polys; // over free_ring, canonical order
    std::vector<int> h1_indices, h2_indices;
    MaurerCartanElement tautological; // alpha_v over `ring`
};

/// Expands the Maurer-Cartan sum of the tautological element on a minimal
/// algebra and cuts the base by the resulting obstruction polynomials.
VersalPresentation versal_presentation(const AlgebraPtr& minimal, int truncation_order);

/// Contraction with the order-1 part: rows ring variables, columns harmonic
/// degree-1 classes. The order-1 part must be closed (OrderOnePartNotClosed).
Matrix kodaira_spencer(const MaurerCartanElement& alpha);

struct ClassifyResult {
    RingMap psi;                      // R_v -> R
    std::vector<GaugePath> paths;     // certificate
    MaurerCartanElement transported;  // the classified element in the minimal algebra
};

/// Writes beta as psi* of the tautological element, up to gauge. For minimal
/// algebras this is the exact coefficient read-off with an empty path list.
/// When beta lives in a non-minimal algebra, pass its minimal model (whose
/// `minimal` must be vp.algebra).
ClassifyResult classify_mc(const MaurerCartanElement& beta, const VersalPresentation& vp,
                           const MinimalModel* transport = nullptr);

enum class Versality { Versal, Complete, Inconclusive };

struct VersalityVerdict {
    Versality verdict = Versality::Inconclusive;
    Matrix ks;
    int rank = 0;
    int source_dim = 0; // number of ring variables
    int target_dim = 0; // dim H^1
};

/// Rank test of the Kodaira-Spencer matrix over a relation-free power series
/// base (RingHasRelations otherwise). Inconclusive is reported when the
/// criterion gives no verdict, never "not versal".
VersalityVerdict versality_verdict(const MaurerCartanElement& beta);

} // namespace kuranishi

#endif
