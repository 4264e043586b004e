#ifndef KURANISHI_NOVIKOV_HPP
#define KURANISHI_NOVIKOV_HPP

#include <map>
#include <optional>
#include <vector>

#include "kuranishi/cone.hpp"
#include "kuranishi/local_ring.hpp"

namespace kuranishi {

/// Finite combination of rational powers of the Novikov parameter q, exact
/// below a fixed valuation cutoff: terms with exponent >= cutoff are
/// truncated away. With the nonnegative flag the element is constrained to
/// the Novikov ring (exponents >= 0).
class NovikovElement {
  public:
    NovikovElement(Rational cutoff, bool nonnegative)
        : cutoff_(std::move(cutoff)), nonnegative_(nonnegative) {}

    static NovikovElement monomial(const Rational& exponent, Scalar coeff, Rational cutoff,
                                   bool nonnegative);

    const std::map<Rational, Scalar>& terms() const { return terms_; }
    const Rational& cutoff() const { return cutoff_; }
    bool nonnegative() const { return nonnegative_; }
    bool is_zero() const { return terms_.empty(); }

    /// Smallest exponent with nonzero coefficient; nullopt encodes +infinity.
    std::optional<Rational> valuation() const;

    NovikovElement operator-() const;
    friend NovikovElement operator+(const NovikovElement& a, const NovikovElement& b);
    friend NovikovElement operator-(const NovikovElement& a, const NovikovElement& b);
    friend NovikovElement operator*(const NovikovElement& a, const NovikovElement& b);
    friend bool operator==(const NovikovElement& a, const NovikovElement& b)
    {
        return a.terms_ == b.terms_;
    }

    std::string str() const;

  private:
    void insert(const Rational& e, const Scalar& c);

    std::map<Rational, Scalar> terms_;
    Rational cutoff_;
    bool nonnegative_;
};

/// Symplectic-area and B-field values on the monoid, one rational per
/// generator. Validated against the kernel lattice so the assignment is a
/// well-defined linear functional on the monoid (B up to integers).
struct LambdaPoint {
    std::vector<Rational> omega;
    std::vector<Rational> b_field; // taken mod 1
};

/// Specialization at the Lambda-point: the monomial with generator exponents
/// e maps to q^(sum e_j omega_j) times the phase of sum e_j B_j. Supported
/// phases are quarter-integers (images 1, i, -1, -i); anything else raises
/// IrrationalPhase. The effective cutoff is clamped to
/// (N+1) * min_j omega_j, below which the ring truncation cannot bite.
NovikovElement lambda_point_specialize(const SeriesElement& elem, const ConeCompletion& cc,
                                       const LambdaPoint& p, const Rational& cutoff);

/// Reduction modulo the toric maximal ideal: the constant term.
Scalar large_volume_specialize(const SeriesElement& elem);

/// Phase factor e^(2 pi i t) for quarter-integer t; IrrationalPhase otherwise.
Scalar quarter_phase(const Rational& t);

} // namespace kuranishi

#endif
