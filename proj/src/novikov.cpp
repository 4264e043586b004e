#include "kuranishi/novikov.hpp"

#include <algorithm>

namespace kuranishi {

NovikovElement NovikovElement::monomial(const Rational& exponent, Scalar coeff, Rational cutoff,
                                        bool nonnegative)
{
    NovikovElement e(std::move(cutoff), nonnegative);
    e.insert(exponent, coeff);
    return e;
}

void NovikovElement::insert(const Rational& e, const Scalar& c)
{
    if (c.is_zero() || e >= cutoff_)
        return;
    if (nonnegative_ && e < 0)
        fail("NegativeExponent", "element constrained to the Novikov ring");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        terms_.erase(it);
}

std::optional<Rational> NovikovElement::valuation() const
{
    if (terms_.empty())
        return std::nullopt;
    return terms_.begin()->first;
}

NovikovElement NovikovElement::operator-() const
{
    NovikovElement e = *this;
    for (auto& [exp, c] : e.terms_)
        c = -c;
    return e;
}

NovikovElement operator+(const NovikovElement& a, const NovikovElement& b)
{
    NovikovElement e(std::min(a.cutoff_, b.cutoff_), a.nonnegative_ && b.nonnegative_);
    for (const auto& [exp, c] : a.terms_)
        e.insert(exp, c);
    for (const auto& [exp, c] : b.terms_)
        e.insert(exp, c);
    return e;
}

NovikovElement operator-(const NovikovElement& a, const NovikovElement& b) { return a + (-b); }

NovikovElement operator*(const NovikovElement& a, const NovikovElement& b)
{
    NovikovElement e(std::min(a.cutoff_, b.cutoff_), a.nonnegative_ && b.nonnegative_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            e.insert(ea + eb, ca * cb);
    return e;
}

std::string NovikovElement::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
        std::string piece;
        std::string coeff = c.str();
        if (e == 0) {
            piece = coeff;
        } else {
            std::string mono = "q";
            if (!(e == 1)) {
                std::string ex = to_string(e);
                mono += ex.find('/') != std::string::npos ? "^(" + ex + ")" : "^" + ex;
            }
            if (coeff == "1")
                piece = mono;
            else if (coeff == "-1")
                piece = "-" + mono;
            else if (coeff.find('+') != std::string::npos || coeff.find('i') != std::string::npos)
                piece = "(" + coeff + ")*" + mono;
            else
                piece = coeff + "*" + mono;
        }
        if (s.empty())
            s = piece;
        else if (piece[0] == '-')
            s += " - " + piece.substr(1);
        else
            s += " + " + piece;
    }
    return s;
}

Scalar quarter_phase(const Rational& t)
{
    // reduce t mod 1
    mpz_class num = t.get_num(), den = t.get_den();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rational frac(r, den);
    frac.canonicalize();
    if (frac == 0)
        return Scalar(1);
    if (frac == rational(1, 4))
        return Scalar::i();
    if (frac == rational(1, 2))
        return Scalar(-1);
    if (frac == rational(3, 4))
        return -Scalar::i();
    fail("IrrationalPhase", "phase " + to_string(t) + " is not a quarter integer");
}

NovikovElement lambda_point_specialize(const SeriesElement& elem, const ConeCompletion& cc,
                                       const LambdaPoint& p, const Rational& cutoff)
{
    size_t k = cc.cone.generators.size();
    if (p.omega.size() != k || p.b_field.size() != k)
        fail("SchemaError", "Lambda-point needs one omega and B value per generator");
    if (elem.ring() != cc.ring && !elem.ring()->is_trivial())
        fail("RingMismatch", "element does not live over the cone completion");

    Rational min_omega;
    bool have_min = false;
    for (size_t j = 0; j < k; ++j) {
        bool zero_gen = true;
        for (long x : cc.cone.generators[j])
            if (x != 0)
                zero_gen = false;
        if (zero_gen)
            continue;
        if (!(p.omega[j] > 0))
            fail("NonPositiveArea",
                 "omega is not strictly positive on generator " + cc.cone.name_of(j));
        if (!have_min || p.omega[j] < min_omega) {
            min_omega = p.omega[j];
            have_min = true;
        }
    }
    // Linearity on the monoid: the values must kill the kernel lattice.
    for (const auto& u : cc.kernel) {
        Rational w(0), bt(0);
        for (size_t j = 0; j < k; ++j) {
            w += Rational(u[j]) * p.omega[j];
            bt += Rational(u[j]) * p.b_field[j];
        }
        if (!(w == 0))
            fail("NonLinearPoint", "omega does not descend to the monoid");
        if (!(bt.get_den() == 1))
            fail("NonLinearPoint", "B-field does not descend to the monoid mod 1");
    }

    Rational effective = cutoff;
    if (have_min) {
        Rational bound = Rational(elem.ring()->truncation_order() + 1) * min_omega;
        if (bound < effective)
            effective = bound;
    }

    NovikovElement out(effective, true);
    for (const auto& [m, c] : elem.terms()) {
        Rational area(0), phase(0);
        for (size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0)
                continue;
            area += Rational(long(m[j])) * p.omega[j];
            phase += Rational(long(m[j])) * p.b_field[j];
        }
        out = out + NovikovElement::monomial(area, c * quarter_phase(phase), effective, true);
    }
    return out;
}

Scalar large_volume_specialize(const SeriesElement& elem) { return elem.constant_term(); }

} // namespace kuranishi
