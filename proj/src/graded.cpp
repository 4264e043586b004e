#include "kuranishi/graded.hpp"

#include <algorithm>
#include <climits>

namespace kuranishi {

std::shared_ptr<const GradedBasis>
GradedBasis::make(std::vector<std::pair<std::string, int>> generators)
{
    for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (generators[i].first == generators[j].first)
                fail("DuplicateGenerator", "basis name '" + generators[i].first + "' repeats");
    auto b = std::shared_ptr<GradedBasis>(new GradedBasis());
    b->generators_ = std::move(generators);
    return b;
}

int GradedBasis::index(const std::string& name) const
{
    for (size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].first == name)
            return int(i);
    return -1;
}

std::vector<int> GradedBasis::indices_of_degree(int d) const
{
    std::vector<int> out;
    for (int i = 0; i < dimension(); ++i)
        if (degree(i) == d)
            out.push_back(i);
    return out;
}

Element Element::generator(BasisPtr basis, int index, RingPtr ring)
{
    Element e(std::move(basis), ring);
    e.set_coefficient(index, SeriesElement::constant(ring, Scalar(1)));
    return e;
}

const RingPtr& Element::ring() const { return ring_ ? ring_ : LocalRing::ground_field(); }

SeriesElement Element::coefficient(int index) const
{
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? SeriesElement::zero(ring()) : it->second;
}

void Element::set_coefficient(int index, SeriesElement c)
{
    if (!basis_ || index < 0 || index >= basis_->dimension())
        fail("SchemaError", "coefficient index out of range");
    if (c.is_zero())
        coeffs_.erase(index);
    else
        coeffs_[index] = std::move(c.promote(ring()));
}

std::optional<int> Element::degree() const
{
    std::optional<int> d;
    for (const auto& [i, c] : coeffs_) {
        int di = basis_->degree(i);
        if (d && *d != di)
            return std::nullopt;
        d = di;
    }
    return d;
}

bool Element::is_homogeneous_of_degree(int d) const
{
    for (const auto& [i, c] : coeffs_)
        if (basis_->degree(i) != d)
            return false;
    return true;
}

int Element::order() const
{
    int best = INT_MAX;
    for (const auto& [i, c] : coeffs_)
        best = std::min(best, c.order());
    return best;
}

Element Element::homogeneous_order_part(int k) const
{
    Element e(basis_, ring_);
    for (const auto& [i, c] : coeffs_) {
        SeriesElement part = c.homogeneous_part(k);
        if (!part.is_zero())
            e.coeffs_.emplace(i, std::move(part));
    }
    return e;
}

bool Element::coefficients_in_maximal_ideal() const
{
    for (const auto& [i, c] : coeffs_)
        if (!c.in_maximal_ideal())
            return false;
    return true;
}

Element Element::operator-() const
{
    Element e = *this;
    for (auto& [i, c] : e.coeffs_)
        c = -c;
    return e;
}

namespace {

RingPtr merge_rings(const RingPtr& a, const RingPtr& b)
{
    if (a == b)
        return a;
    if (a->is_trivial())
        return b;
    if (b->is_trivial())
        return a;
    fail("RingMismatch", "elements live over different rings");
}

} // namespace

Element Element::promote(const RingPtr& target) const
{
    if (ring() == target)
        return *this;
    Element e(basis_, target);
    for (const auto& [i, c] : coeffs_)
        e.coeffs_.emplace(i, c.promote(target));
    return e;
}

Element& Element::operator+=(const Element& o)
{
    if (o.is_zero())
        return *this;
    if (is_zero() && !basis_)
        return *this = o;
    if (basis_ != o.basis_)
        fail("BasisMismatch", "elements live over different bases");
    RingPtr r = merge_rings(ring(), o.ring());
    *this = promote(r);
    for (const auto& [i, c] : o.coeffs_) {
        SeriesElement sum = coefficient(i) + c;
        if (sum.is_zero())
            coeffs_.erase(i);
        else
            coeffs_[i] = std::move(sum);
    }
    return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element Element::scaled(const Scalar& c) const
{
    Element e(basis_, ring_);
    if (c.is_zero())
        return e;
    for (const auto& [i, x] : coeffs_) {
        SeriesElement y = x.scaled(c);
        if (!y.is_zero())
            e.coeffs_.emplace(i, std::move(y));
    }
    return e;
}

Element Element::scaled(const SeriesElement& c) const
{
    RingPtr r = merge_rings(ring(), c.ring());
    Element e(basis_, r);
    for (const auto& [i, x] : coeffs_) {
        SeriesElement y = x.promote(r) * c.promote(r);
        if (!y.is_zero())
            e.coeffs_.emplace(i, std::move(y));
    }
    return e;
}

bool operator==(const Element& a, const Element& b)
{
    if (a.is_zero() && b.is_zero())
        return true;
    if (a.basis_ != b.basis_)
        return false;
    RingPtr r = merge_rings(a.ring(), b.ring());
    return a.promote(r).coeffs_ == b.promote(r).coeffs_;
}

std::string Element::str() const
{
    if (is_zero())
        return "0";
    std::string s;
    for (const auto& [i, c] : coeffs_) {
        std::string cs = c.str();
        std::string piece;
        if (cs == "1")
            piece = basis_->name(i);
        else if (cs == "-1")
            piece = "-" + basis_->name(i);
        else if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos ||
                 cs.find('*') != std::string::npos)
            piece = "(" + cs + ")*" + basis_->name(i);
        else
            piece = cs + "*" + basis_->name(i);
        if (s.empty())
            s = piece;
        else if (piece[0] == '-')
            s += " - " + piece.substr(1);
        else
            s += " + " + piece;
    }
    return s;
}

int koszul_sign(const std::vector<int>& perm, const std::vector<int>& reduced_degrees)
{
    if (perm.size() != reduced_degrees.size())
        fail("LengthMismatch", "permutation and degree list differ in length");
    // Bubble perm into the identity; each adjacent swap of entries u, v
    // contributes (-1)^(deg u * deg v).
    std::vector<int> arr = perm;
    int sign = 1;
    for (size_t i = 0; i < arr.size(); ++i)
        for (size_t j = arr.size(); j-- > i + 1;)
            if (arr[j - 1] > arr[j]) {
                int du = reduced_degrees[size_t(arr[j - 1])];
                int dv = reduced_degrees[size_t(arr[j])];
                if ((du % 2 != 0) && (dv % 2 != 0))
                    sign = -sign;
                std::swap(arr[j - 1], arr[j]);
            }
    return sign;
}

std::vector<std::vector<int>> unshuffles(int j, int s)
{
    if (j < 0 || j > s)
        fail("LengthMismatch", "unshuffles needs 0 <= j <= s");
    std::vector<std::vector<int>> out;
    std::vector<int> pick(static_cast<size_t>(j));
    for (int i = 0; i < j; ++i)
        pick[size_t(i)] = i;
    while (true) {
        std::vector<int> perm = pick;
        std::vector<bool> used(size_t(s), false);
        for (int p : pick)
            used[size_t(p)] = true;
        for (int i = 0; i < s; ++i)
            if (!used[size_t(i)])
                perm.push_back(i);
        out.push_back(std::move(perm));
        // next lex j-subset of {0..s-1}
        int i = j - 1;
        while (i >= 0 && pick[size_t(i)] == s - j + i)
            --i;
        if (i < 0)
            break;
        ++pick[size_t(i)];
        for (int t = i + 1; t < j; ++t)
            pick[size_t(t)] = pick[size_t(t - 1)] + 1;
    }
    return out;
}

MultilinearOperation::MultilinearOperation(int arity, int degree, Symmetry sym, BasisPtr domain,
                                           BasisPtr codomain, RingPtr ring)
    : arity_(arity), degree_(degree), sym_(sym), domain_(std::move(domain)),
      codomain_(std::move(codomain)), ring_(std::move(ring))
{
    if (arity_ < 0)
        fail("ArityMismatch", "negative arity");
}

const RingPtr& MultilinearOperation::ring() const
{
    return ring_ ? ring_ : LocalRing::ground_field();
}

MultilinearOperation::Canonical
MultilinearOperation::canonicalize(const std::vector<int>& tuple) const
{
    Canonical c;
    c.tuple = tuple;
    if (sym_ != Symmetry::GradedSymmetricReduced)
        return c;
    // stable selection sort, tracking the permutation for the Koszul sign
    std::vector<int> degs;
    for (int i : tuple)
        degs.push_back(domain_->reduced_degree(i));
    std::vector<int> perm(tuple.size());
    for (size_t i = 0; i < perm.size(); ++i)
        perm[i] = int(i);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return tuple[size_t(a)] < tuple[size_t(b)]; });
    c.sign = koszul_sign(perm, degs);
    for (size_t i = 0; i < perm.size(); ++i)
        c.tuple[i] = tuple[size_t(perm[i])];
    for (size_t i = 0; i + 1 < c.tuple.size(); ++i)
        if (c.tuple[i] == c.tuple[i + 1] && domain_->reduced_degree(c.tuple[i]) % 2 != 0)
            c.forced_zero = true;
    return c;
}

Element MultilinearOperation::entry(const std::vector<int>& tuple) const
{
    if (int(tuple.size()) != arity_)
        fail("ArityMismatch", "tuple length differs from arity");
    Canonical c = canonicalize(tuple);
    if (c.forced_zero)
        return Element(codomain_, ring());
    auto it = entries_.find(c.tuple);
    if (it == entries_.end())
        return Element(codomain_, ring());
    return c.sign == 1 ? it->second : -it->second;
}

void MultilinearOperation::set_entry(const std::vector<int>& tuple, Element value)
{
    if (int(tuple.size()) != arity_)
        fail("ArityMismatch", "tuple length differs from arity");
    for (int i : tuple)
        if (i < 0 || i >= domain_->dimension())
            fail("SchemaError", "input index out of range");
    if (value.basis() && value.basis() != codomain_)
        fail("BasisMismatch", "entry value lives over the wrong basis");
    if (!value.is_zero()) {
        int want = degree_;
        for (int i : tuple)
            want += domain_->degree(i);
        if (!value.is_homogeneous_of_degree(want))
            fail("DegreeMismatch", "entry value violates the degree law");
    }
    Canonical c = canonicalize(tuple);
    if (c.forced_zero) {
        if (!value.is_zero())
            fail("SymmetryForcesZero",
                 "repeated odd-reduced input forces a zero entry in characteristic zero");
        return;
    }
    if (value.is_zero()) {
        entries_.erase(c.tuple);
        return;
    }
    value = value.promote(ring());
    entries_[c.tuple] = c.sign == 1 ? std::move(value) : -value;
}

void MultilinearOperation::add_entry(const std::vector<int>& tuple, const Element& value)
{
    Element cur = entry(tuple);
    cur += value;
    set_entry(tuple, std::move(cur));
}

Element MultilinearOperation::evaluate(const std::vector<Element>& args) const
{
    if (int(args.size()) != arity_)
        fail("ArityMismatch", "expected " + std::to_string(arity_) + " arguments");
    RingPtr r = ring();
    for (const auto& a : args) {
        if (a.basis() && a.basis() != domain_)
            fail("BasisMismatch", "argument lives over the wrong basis");
        r = merge_rings(r, a.ring());
    }
    Element out(codomain_, r);
    if (arity_ == 0) {
        auto it = entries_.find(std::vector<int>{});
        return it == entries_.end() ? out : it->second.promote(r);
    }
    for (const auto& a : args)
        if (a.is_zero())
            return out;

    std::vector<std::map<int, SeriesElement>::const_iterator> its, ends;
    for (const auto& a : args) {
        its.push_back(a.coefficients().begin());
        ends.push_back(a.coefficients().end());
    }
    while (true) {
        SeriesElement coeff = SeriesElement::constant(r, Scalar(1));
        std::vector<int> tuple;
        for (size_t t = 0; t < its.size(); ++t) {
            tuple.push_back(its[t]->first);
            coeff = coeff * its[t]->second.promote(r);
        }
        if (!coeff.is_zero()) {
            Element e = entry(tuple);
            if (!e.is_zero())
                out += e.promote(r).scaled(coeff);
        }
        size_t t = its.size();
        bool done = true;
        while (t-- > 0) {
            if (++its[t] != ends[t]) {
                done = false;
                break;
            }
            its[t] = args[t].coefficients().begin();
        }
        if (done)
            break;
    }
    return out;
}

MultilinearOperation MultilinearOperation::promote(const RingPtr& target) const
{
    MultilinearOperation op(arity_, degree_, sym_, domain_, codomain_, target);
    for (const auto& [k, v] : entries_)
        op.entries_.emplace(k, v.promote(target));
    return op;
}

std::vector<std::string> check_symmetry(const MultilinearOperation& op)
{
    std::vector<std::string> report;
    auto tuple_str = [&](const std::vector<int>& t) {
        std::string s = "(";
        for (size_t i = 0; i < t.size(); ++i)
            s += (i ? "," : "") + op.domain()->name(t[i]);
        return s + ")";
    };
    for (const auto& [tuple, value] : op.stored_entries()) {
        // degree law
        int want = op.degree();
        for (int i : tuple)
            want += op.domain()->degree(i);
        if (!value.is_homogeneous_of_degree(want))
            report.push_back("degree law fails at " + tuple_str(tuple));
        if (op.symmetry() == Symmetry::GradedSymmetricReduced) {
            auto c = op.canonicalize(tuple);
            if (c.tuple != tuple)
                report.push_back("non-canonical stored tuple " + tuple_str(tuple));
            if (c.forced_zero && !value.is_zero())
                report.push_back("forced-zero tuple stored nonzero at " + tuple_str(tuple));
            continue;
        }
        // raw table: every adjacent transposition must carry the Koszul sign
        for (size_t p = 0; p + 1 < tuple.size(); ++p) {
            std::vector<int> swapped = tuple;
            std::swap(swapped[p], swapped[p + 1]);
            int du = op.domain()->reduced_degree(tuple[p]);
            int dv = op.domain()->reduced_degree(tuple[p + 1]);
            int sign = (du % 2 != 0 && dv % 2 != 0) ? -1 : 1;
            auto it = op.stored_entries().find(swapped);
            Element other =
                it == op.stored_entries().end() ? Element(op.codomain(), op.ring()) : it->second;
            Element expect = sign == 1 ? value : -value;
            if (!(other == expect))
                report.push_back("symmetry fails between " + tuple_str(tuple) + " and " +
                                 tuple_str(swapped));
        }
    }
    return report;
}

} // namespace kuranishi
