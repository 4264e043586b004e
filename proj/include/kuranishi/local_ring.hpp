#ifndef KURANISHI_LOCAL_RING_HPP
#define KURANISHI_LOCAL_RING_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kuranishi/scalar.hpp"

namespace kuranishi {

/// Exponent vector; entry i is the exponent of variable i.
using Monomial = std::vector<unsigned>;

/// Raw polynomial data: term map without any normalization attached.
using TermMap = std::map<Monomial, Scalar>;

class LocalRing;
using RingPtr = std::shared_ptr<const LocalRing>;

/// Truncated presentation of a complete Noetherian local algebra over the
/// ground field: power series in weighted variables modulo a relation ideal
/// and modulo all monomials of weighted degree > N. Ring identity is object
/// identity; elements of distinct ring objects do not mix.
///
/// The truncated quotient is finite-dimensional, so at construction the
/// image of the relation ideal in it is computed exactly (all monomial
/// multiples of the relations, echelonized with graded-lex pivots). Every
/// element then has a unique normal form and equality is term-map equality.
class LocalRing : public std::enable_shared_from_this<LocalRing> {
  public:
    struct Variable {
        std::string name;
        int weight = 1;
    };

    static RingPtr make(std::vector<Variable> variables, std::vector<TermMap> relations,
                        int truncation_order);

    /// The ground field itself (no variables). Shared singleton, so that
    /// constants made in different places live in the same ring.
    static const RingPtr& ground_field();

    int truncation_order() const { return truncation_; }
    int num_variables() const { return int(variables_.size()); }
    const std::vector<Variable>& variables() const { return variables_; }
    int variable_index(const std::string& name) const; // -1 if absent
    bool is_trivial() const { return variables_.empty(); }
    bool has_relations() const { return !relations_.empty(); }
    const std::vector<TermMap>& relations() const { return relations_; }
    const std::vector<TermMap>& groebner_basis() const { return groebner_; }

    int weighted_degree(const Monomial& m) const;

    /// Reduces a raw term map to normal form: fully reduced against the
    /// Groebner basis, truncated, zero coefficients erased.
    TermMap normal_form(TermMap p) const;

  private:
    LocalRing() = default;

    std::vector<Variable> variables_;
    std::vector<int> weights_;
    std::vector<TermMap> relations_;
    std::vector<TermMap> groebner_;
    std::map<Monomial, size_t> pivot_index_; // leading monomial -> row
    int truncation_ = 0;
};

/// Element of a LocalRing, stored in normal form. Immutable value type;
/// two elements are equal iff their rings match and term maps coincide.
class SeriesElement {
  public:
    SeriesElement() = default; // zero over the ground field

    static SeriesElement zero(RingPtr ring);
    static SeriesElement constant(RingPtr ring, Scalar value);
    static SeriesElement variable(RingPtr ring, int index);
    static SeriesElement monomial(RingPtr ring, Monomial m, Scalar coeff);
    static SeriesElement from_terms(RingPtr ring, TermMap raw);

    const RingPtr& ring() const;
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    Scalar constant_term() const;
    bool in_maximal_ideal() const { return constant_term().is_zero(); }

    /// Smallest weighted degree of a term; INT_MAX for the zero element.
    int order() const;
    SeriesElement homogeneous_part(int weight) const;
    SeriesElement truncate_to(int max_weight) const;

    SeriesElement operator-() const;
    SeriesElement& operator+=(const SeriesElement& o);
    SeriesElement& operator-=(const SeriesElement& o);
    friend SeriesElement operator+(SeriesElement a, const SeriesElement& b) { return a += b; }
    friend SeriesElement operator-(SeriesElement a, const SeriesElement& b) { return a -= b; }
    friend SeriesElement operator*(const SeriesElement& a, const SeriesElement& b);
    SeriesElement& operator*=(const SeriesElement& o) { return *this = *this * o; }

    SeriesElement scaled(const Scalar& c) const;
    SeriesElement pow(unsigned e) const;

    /// Multiplicative inverse; requires a unit (nonzero constant term).
    SeriesElement invert() const;

    friend bool operator==(const SeriesElement& a, const SeriesElement& b);
    friend bool operator!=(const SeriesElement& a, const SeriesElement& b) { return !(a == b); }

    /// Embeds a ground-field constant into `target`.
    SeriesElement promote(const RingPtr& target) const;

    std::string str() const;

  private:
    RingPtr ring_; // null means ground field
    TermMap terms_;
};

/// Picks the ring both operands live in, promoting ground-field constants.
RingPtr common_ring(const SeriesElement& a, const SeriesElement& b);

/// Local homomorphism between truncated rings, given by images of the source
/// variables (each in the target's maximal ideal). Checked to kill the source
/// relations. Target truncation must not exceed the source's.
class RingMap {
  public:
    RingMap(RingPtr source, RingPtr target, std::vector<SeriesElement> images);

    static RingMap identity(RingPtr ring);

    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::vector<SeriesElement>& images() const { return images_; }

    SeriesElement apply(const SeriesElement& a) const;

  private:
    RingPtr source_, target_;
    std::vector<SeriesElement> images_;
};

/// Buchberger in the (untruncated) polynomial ring for the weighted graded
/// order; used for toric saturation, where the input is homogeneous for the
/// chosen weights. `cheapest >= 0` selects graded reverse lex with that
/// variable last; -1 selects graded lex. Returns the reduced monic basis.
std::vector<TermMap> groebner(std::vector<TermMap> generators, const std::vector<int>& weights,
                              int cheapest = -1);

/// Full reduction of p against basis G for the same order parameters.
TermMap reduce_full(TermMap p, const std::vector<TermMap>& basis, const std::vector<int>& weights,
                    int cheapest = -1);

} // namespace kuranishi

#endif
