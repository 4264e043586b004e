#ifndef KURANISHI_GRADED_HPP
#define KURANISHI_GRADED_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kuranishi/local_ring.hpp"

namespace kuranishi {

/// Finite basis of a graded vector space: named generators with integer
/// degrees. Identity is object identity (shared_ptr), like rings.
class GradedBasis {
  public:
    static std::shared_ptr<const GradedBasis>
    make(std::vector<std::pair<std::string, int>> generators);

    int dimension() const { return int(generators_.size()); }
    int degree(int i) const { return generators_[size_t(i)].second; }
    int reduced_degree(int i) const { return generators_[size_t(i)].second + 1; }
    const std::string& name(int i) const { return generators_[size_t(i)].first; }
    int index(const std::string& name) const; // -1 if absent
    std::vector<int> indices_of_degree(int d) const;

  private:
    GradedBasis() = default;
    std::vector<std::pair<std::string, int>> generators_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

/// Element of basis tensor ring: a finite coefficient map. Coefficients are
/// SeriesElements over a common ring (the ground field for plain vectors).
class Element {
  public:
    Element() = default;
    Element(BasisPtr basis, RingPtr ring) : basis_(std::move(basis)), ring_(std::move(ring)) {}

    static Element generator(BasisPtr basis, int index, RingPtr ring);

    const BasisPtr& basis() const { return basis_; }
    const RingPtr& ring() const;
    const std::map<int, SeriesElement>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    SeriesElement coefficient(int index) const;
    void set_coefficient(int index, SeriesElement c);

    /// Degree when homogeneous and nonzero.
    std::optional<int> degree() const;
    bool is_homogeneous_of_degree(int d) const;

    /// Smallest maximal-ideal order over the coefficients (INT_MAX if zero).
    int order() const;
    Element homogeneous_order_part(int k) const;
    bool coefficients_in_maximal_ideal() const;

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    Element scaled(const Scalar& c) const;
    Element scaled(const SeriesElement& c) const;
    Element promote(const RingPtr& target) const;

    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    std::string str() const;

  private:
    BasisPtr basis_;
    RingPtr ring_;
    std::map<int, SeriesElement> coeffs_;
};

/// Koszul sign of the permutation taking (v_1,...,v_s) to
/// (v_{perm[0]+1},...,v_{perm[s-1]+1}), computed by adjacent transpositions
/// against the given reduced degrees of v_1,...,v_s.
int koszul_sign(const std::vector<int>& perm, const std::vector<int>& reduced_degrees);

/// All permutations of {0,...,s-1} increasing on the first j slots and on the
/// last s-j slots, in lexicographic order of the first block.
std::vector<std::vector<int>> unshuffles(int j, int s);

enum class Symmetry { None, GradedSymmetricReduced };

/// Sparse s-ary operation of fixed degree between graded bases. Symmetric
/// operations store canonical (sorted) tuples only; reads transport the
/// Koszul sign, so the read-out map is graded symmetric in reduced degrees
/// by construction. Entries with a repeated input of odd reduced degree are
/// forced to zero in characteristic zero.
class MultilinearOperation {
  public:
    MultilinearOperation() = default;
    MultilinearOperation(int arity, int degree, Symmetry sym, BasisPtr domain, BasisPtr codomain,
                         RingPtr ring);

    int arity() const { return arity_; }
    int degree() const { return degree_; }
    Symmetry symmetry() const { return sym_; }
    const BasisPtr& domain() const { return domain_; }
    const BasisPtr& codomain() const { return codomain_; }
    const RingPtr& ring() const;
    bool is_zero() const { return entries_.empty(); }

    /// Signed read; the zero element for absent or forced-zero tuples.
    Element entry(const std::vector<int>& tuple) const;
    void set_entry(const std::vector<int>& tuple, Element value);
    void add_entry(const std::vector<int>& tuple, const Element& value);
    const std::map<std::vector<int>, Element>& stored_entries() const { return entries_; }

    /// Multilinear extension. Args must live over the domain basis; the
    /// result ring is the common coefficient ring.
    Element evaluate(const std::vector<Element>& args) const;

    /// For symmetric discipline: sorted tuple, Koszul sign, forced-zero flag.
    struct Canonical {
        std::vector<int> tuple;
        int sign = 1;
        bool forced_zero = false;
    };
    Canonical canonicalize(const std::vector<int>& tuple) const;

    MultilinearOperation promote(const RingPtr& target) const;

  private:
    int arity_ = 0;
    int degree_ = 0;
    Symmetry sym_ = Symmetry::None;
    BasisPtr domain_, codomain_;
    RingPtr ring_;
    std::map<std::vector<int>, Element> entries_;
};

/// Symmetry audit: for every stored tuple and adjacent transposition, the raw
/// table read must match the Koszul-signed read; degree-law violations are
/// reported too. Empty report means consistent.
std::vector<std::string> check_symmetry(const MultilinearOperation& op);

} // namespace kuranishi

#endif
