#include "kuranishi/local_ring.hpp"

#include <algorithm>
#include <climits>

namespace kuranishi {

namespace {

int wdeg(const Monomial& m, const std::vector<int>& weights)
{
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i)
        d += int(m[i]) * weights[i];
    return d;
}

// Weighted graded order. Tie-break: lex (cheapest < 0), or reverse lex with
// variable `cheapest` last, which makes high powers of it as small as
// possible — the order used for toric saturation.
int mono_cmp(const Monomial& a, const Monomial& b, const std::vector<int>& weights, int cheapest)
{
    int da = wdeg(a, weights), db = wdeg(b, weights);
    if (da != db)
        return da < db ? -1 : 1;
    if (cheapest < 0) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    size_t c = size_t(cheapest);
    if (a[c] != b[c])
        return a[c] < b[c] ? 1 : -1;
    for (size_t i = a.size(); i-- > 0;) {
        if (i == c)
            continue;
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

const std::pair<const Monomial, Scalar>& leading(const TermMap& p, const std::vector<int>& w,
                                                 int cheapest)
{
    auto best = p.begin();
    for (auto it = std::next(p.begin()); it != p.end(); ++it)
        if (mono_cmp(it->first, best->first, w, cheapest) > 0)
            best = it;
    return *best;
}

bool divides(const Monomial& d, const Monomial& m)
{
    for (size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i])
            return false;
    return true;
}

Monomial quotient(const Monomial& m, const Monomial& d)
{
    Monomial q(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        q[i] = m[i] - d[i];
    return q;
}

Monomial lcm(const Monomial& a, const Monomial& b)
{
    Monomial l(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        l[i] = std::max(a[i], b[i]);
    return l;
}

Monomial mono_mul(const Monomial& a, const Monomial& b)
{
    Monomial m(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        m[i] = a[i] + b[i];
    return m;
}

void add_term(TermMap& p, const Monomial& m, const Scalar& c)
{
    auto it = p.find(m);
    if (it == p.end()) {
        if (!c.is_zero())
            p.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        p.erase(it);
}

// Monomials of weighted degree <= bound, in ascending graded-lex order.
void enumerate_monomials(std::vector<Monomial>& out, Monomial& cur, size_t var, int remaining,
                         const std::vector<int>& weights)
{
    if (var == cur.size()) {
        out.push_back(cur);
        return;
    }
    for (unsigned e = 0; int(e) * weights[var] <= remaining; ++e) {
        cur[var] = e;
        enumerate_monomials(out, cur, var + 1, remaining - int(e) * weights[var], weights);
    }
    cur[var] = 0;
}

} // namespace

TermMap reduce_full(TermMap p, const std::vector<TermMap>& basis, const std::vector<int>& weights,
                    int cheapest)
{
    TermMap out;
    while (!p.empty()) {
        auto [mono, coeff] = leading(p, weights, cheapest);
        p.erase(mono);
        const TermMap* reducer = nullptr;
        for (const auto& g : basis)
            if (divides(leading(g, weights, cheapest).first, mono)) {
                reducer = &g;
                break;
            }
        if (!reducer) {
            out.emplace(mono, coeff);
            continue;
        }
        const auto& [glm, glc] = leading(*reducer, weights, cheapest);
        Monomial q = quotient(mono, glm);
        Scalar factor = coeff / glc;
        for (const auto& [gm, gc] : *reducer) {
            if (gm == glm)
                continue;
            add_term(p, mono_mul(q, gm), Scalar(0) - factor * gc);
        }
    }
    return out;
}

std::vector<TermMap> groebner(std::vector<TermMap> generators, const std::vector<int>& weights,
                              int cheapest)
{
    std::vector<TermMap> basis;
    for (auto& g : generators) {
        for (auto it = g.begin(); it != g.end();)
            it = it->second.is_zero() ? g.erase(it) : std::next(it);
        if (!g.empty())
            basis.push_back(std::move(g));
    }

    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            pairs.emplace_back(i, j);

    auto pick = [&]() {
        size_t best = 0;
        Monomial best_lcm =
            lcm(leading(basis[pairs[0].first], weights, cheapest).first,
                leading(basis[pairs[0].second], weights, cheapest).first);
        for (size_t k = 1; k < pairs.size(); ++k) {
            Monomial l = lcm(leading(basis[pairs[k].first], weights, cheapest).first,
                             leading(basis[pairs[k].second], weights, cheapest).first);
            if (mono_cmp(l, best_lcm, weights, cheapest) < 0) {
                best = k;
                best_lcm = std::move(l);
            }
        }
        auto pr = pairs[best];
        pairs.erase(pairs.begin() + long(best));
        return pr;
    };

    while (!pairs.empty()) {
        auto [i, j] = pick();
        const auto& [lmi, lci] = leading(basis[i], weights, cheapest);
        const auto& [lmj, lcj] = leading(basis[j], weights, cheapest);
        Monomial l = lcm(lmi, lmj);
        if (l == mono_mul(lmi, lmj))
            continue; // coprime leading monomials
        TermMap s;
        Monomial qi = quotient(l, lmi), qj = quotient(l, lmj);
        for (const auto& [m, c] : basis[i])
            add_term(s, mono_mul(qi, m), c / lci);
        for (const auto& [m, c] : basis[j])
            add_term(s, mono_mul(qj, m), Scalar(0) - c / lcj);
        TermMap r = reduce_full(std::move(s), basis, weights, cheapest);
        if (r.empty())
            continue;
        for (size_t k = 0; k < basis.size(); ++k)
            pairs.emplace_back(k, basis.size());
        basis.push_back(std::move(r));
    }

    // Autoreduce to the unique reduced monic basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            TermMap g = basis[i];
            std::vector<TermMap> others;
            for (size_t k = 0; k < basis.size(); ++k)
                if (k != i)
                    others.push_back(basis[k]);
            TermMap r = reduce_full(std::move(g), others, weights, cheapest);
            if (r != basis[i]) {
                changed = true;
                if (r.empty()) {
                    basis.erase(basis.begin() + long(i));
                    --i;
                } else {
                    basis[i] = std::move(r);
                }
            }
        }
    }
    for (auto& g : basis) {
        Scalar lc = leading(g, weights, cheapest).second;
        if (!(lc == Scalar(1))) {
            Scalar inv = lc.inverse();
            for (auto& [m, c] : g)
                c *= inv;
        }
    }
    std::sort(basis.begin(), basis.end(), [&](const TermMap& a, const TermMap& b) {
        return mono_cmp(leading(a, weights, cheapest).first, leading(b, weights, cheapest).first,
                        weights, cheapest) < 0;
    });
    return basis;
}

RingPtr LocalRing::make(std::vector<Variable> variables, std::vector<TermMap> relations,
                        int truncation_order)
{
    if (truncation_order < 1)
        fail("BadTruncation", "truncation order must be >= 1");
    for (const auto& v : variables)
        if (v.weight < 1)
            fail("BadWeight", "variable '" + v.name + "' has non-positive weight");
    for (size_t i = 0; i < variables.size(); ++i)
        for (size_t j = i + 1; j < variables.size(); ++j)
            if (variables[i].name == variables[j].name)
                fail("DuplicateVariable", "variable '" + variables[i].name + "' declared twice");

    auto ring = std::shared_ptr<LocalRing>(new LocalRing());
    ring->variables_ = std::move(variables);
    ring->truncation_ = truncation_order;
    for (const auto& v : ring->variables_)
        ring->weights_.push_back(v.weight);

    size_t n = ring->variables_.size();
    Monomial unit(n, 0);
    for (auto& r : relations) {
        for (auto it = r.begin(); it != r.end();) {
            if (it->first.size() != n)
                fail("SchemaError", "relation monomial has wrong number of exponents");
            it = it->second.is_zero() ? r.erase(it) : std::next(it);
        }
        if (r.count(unit))
            fail("RelationHasUnit", "relation has nonzero constant term");
        if (!r.empty())
            ring->relations_.push_back(std::move(r));
    }

    // The truncated quotient is finite-dimensional, so the ideal's image in
    // it is computed exactly by spanning all monomial multiples of the
    // relations and echelonizing. Pivots are graded-lex leading monomials;
    // the reduced echelon rewrite system is the unique canonical one.
    if (!ring->relations_.empty()) {
        std::vector<std::pair<Monomial, TermMap>> rows; // (pivot, monic row)
        auto reduce_row = [&](TermMap p) {
            for (auto it = p.begin(); it != p.end();)
                it = wdeg(it->first, ring->weights_) > truncation_order ? p.erase(it)
                                                                        : std::next(it);
            bool again = true;
            while (again) {
                again = false;
                for (const auto& [pivot, row] : rows) {
                    auto hit = p.find(pivot);
                    if (hit == p.end())
                        continue;
                    Scalar c = hit->second;
                    p.erase(hit);
                    for (const auto& [m, rc] : row)
                        if (!(m == pivot))
                            add_term(p, m, Scalar(0) - c * rc);
                    again = true;
                }
            }
            return p;
        };
        for (const auto& rel : ring->relations_) {
            int ord = INT_MAX;
            for (const auto& [m, c] : rel)
                ord = std::min(ord, wdeg(m, ring->weights_));
            std::vector<Monomial> mults;
            Monomial scratch(n, 0);
            enumerate_monomials(mults, scratch, 0, truncation_order - ord, ring->weights_);
            for (const auto& mult : mults) {
                TermMap cand;
                for (const auto& [m, c] : rel) {
                    Monomial t = mono_mul(mult, m);
                    if (wdeg(t, ring->weights_) <= truncation_order)
                        add_term(cand, t, c);
                }
                cand = reduce_row(std::move(cand));
                if (cand.empty())
                    continue;
                const auto& [lm, lc] = leading(cand, ring->weights_, -1);
                Scalar inv = lc.inverse();
                for (auto& [m, c] : cand)
                    c *= inv;
                Monomial pivot = lm;
                // back-substitute into existing rows
                for (auto& [p2, row2] : rows) {
                    auto hit = row2.find(pivot);
                    if (hit == row2.end())
                        continue;
                    Scalar c = hit->second;
                    row2.erase(hit);
                    for (const auto& [m, rc] : cand)
                        if (!(m == pivot))
                            add_term(row2, m, Scalar(0) - c * rc);
                }
                rows.emplace_back(std::move(pivot), std::move(cand));
            }
        }
        std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
            return mono_cmp(a.first, b.first, ring->weights_, -1) < 0;
        });
        for (auto& [pivot, row] : rows) {
            ring->pivot_index_.emplace(pivot, ring->groebner_.size());
            ring->groebner_.push_back(std::move(row));
        }
    }
    return ring;
}

const RingPtr& LocalRing::ground_field()
{
    static RingPtr k = [] {
        auto ring = std::shared_ptr<LocalRing>(new LocalRing());
        ring->truncation_ = 0;
        return RingPtr(ring);
    }();
    return k;
}

int LocalRing::variable_index(const std::string& name) const
{
    for (size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name)
            return int(i);
    return -1;
}

int LocalRing::weighted_degree(const Monomial& m) const { return wdeg(m, weights_); }

TermMap LocalRing::normal_form(TermMap p) const
{
    for (auto it = p.begin(); it != p.end();) {
        if (it->second.is_zero() || weighted_degree(it->first) > truncation_)
            it = p.erase(it);
        else
            ++it;
    }
    if (groebner_.empty())
        return p;
    // Rewrite rows are fully reduced against one another, so one pass over a
    // snapshot of the pivot hits suffices.
    TermMap out;
    for (const auto& [m, c] : p) {
        auto hit = pivot_index_.find(m);
        if (hit == pivot_index_.end()) {
            add_term(out, m, c);
            continue;
        }
        for (const auto& [rm, rc] : groebner_[hit->second])
            if (!(rm == m))
                add_term(out, rm, Scalar(0) - c * rc);
    }
    return out;
}

SeriesElement SeriesElement::zero(RingPtr ring)
{
    SeriesElement e;
    e.ring_ = std::move(ring);
    return e;
}

SeriesElement SeriesElement::constant(RingPtr ring, Scalar value)
{
    SeriesElement e;
    e.ring_ = std::move(ring);
    if (!value.is_zero())
        e.terms_.emplace(Monomial(size_t(e.ring_->num_variables()), 0), std::move(value));
    return e;
}

SeriesElement SeriesElement::variable(RingPtr ring, int index)
{
    if (index < 0 || index >= ring->num_variables())
        fail("SchemaError", "variable index out of range");
    Monomial m(size_t(ring->num_variables()), 0);
    m[size_t(index)] = 1;
    return monomial(std::move(ring), std::move(m), Scalar(1));
}

SeriesElement SeriesElement::monomial(RingPtr ring, Monomial m, Scalar coeff)
{
    TermMap t;
    t.emplace(std::move(m), std::move(coeff));
    return from_terms(std::move(ring), std::move(t));
}

SeriesElement SeriesElement::from_terms(RingPtr ring, TermMap raw)
{
    for (const auto& [m, c] : raw)
        if (m.size() != size_t(ring->num_variables()))
            fail("SchemaError", "monomial has wrong number of exponents");
    SeriesElement e;
    e.terms_ = ring->normal_form(std::move(raw));
    e.ring_ = std::move(ring);
    return e;
}

const RingPtr& SeriesElement::ring() const
{
    return ring_ ? ring_ : LocalRing::ground_field();
}

Scalar SeriesElement::constant_term() const
{
    if (terms_.empty())
        return Scalar(0);
    auto it = terms_.find(Monomial(size_t(ring()->num_variables()), 0));
    return it == terms_.end() ? Scalar(0) : it->second;
}

int SeriesElement::order() const
{
    int best = INT_MAX;
    for (const auto& [m, c] : terms_)
        best = std::min(best, ring()->weighted_degree(m));
    return best;
}

SeriesElement SeriesElement::homogeneous_part(int weight) const
{
    SeriesElement e = zero(ring());
    for (const auto& [m, c] : terms_)
        if (ring()->weighted_degree(m) == weight)
            e.terms_.emplace(m, c);
    return e;
}

SeriesElement SeriesElement::truncate_to(int max_weight) const
{
    SeriesElement e = zero(ring());
    for (const auto& [m, c] : terms_)
        if (ring()->weighted_degree(m) <= max_weight)
            e.terms_.emplace(m, c);
    return e;
}

SeriesElement SeriesElement::operator-() const
{
    SeriesElement e = *this;
    for (auto& [m, c] : e.terms_)
        c = -c;
    return e;
}

RingPtr common_ring(const SeriesElement& a, const SeriesElement& b)
{
    const RingPtr& ra = a.ring();
    const RingPtr& rb = b.ring();
    if (ra == rb)
        return ra;
    if (ra->is_trivial())
        return rb;
    if (rb->is_trivial())
        return ra;
    fail("RingMismatch", "elements live in different rings");
}

SeriesElement SeriesElement::promote(const RingPtr& target) const
{
    if (ring() == target)
        return *this;
    if (!ring()->is_trivial())
        fail("RingMismatch", "can only promote ground-field constants");
    return constant(target, constant_term());
}

SeriesElement& SeriesElement::operator+=(const SeriesElement& o)
{
    RingPtr r = common_ring(*this, o);
    *this = promote(r);
    SeriesElement rhs = o.promote(r);
    for (const auto& [m, c] : rhs.terms_)
        add_term(terms_, m, c);
    return *this;
}

SeriesElement& SeriesElement::operator-=(const SeriesElement& o)
{
    RingPtr r = common_ring(*this, o);
    *this = promote(r);
    SeriesElement rhs = o.promote(r);
    for (const auto& [m, c] : rhs.terms_)
        add_term(terms_, m, Scalar(0) - c);
    return *this;
}

SeriesElement operator*(const SeriesElement& a, const SeriesElement& b)
{
    RingPtr r = common_ring(a, b);
    SeriesElement lhs = a.promote(r), rhs = b.promote(r);
    TermMap prod;
    for (const auto& [ma, ca] : lhs.terms())
        for (const auto& [mb, cb] : rhs.terms()) {
            Monomial m(ma.size());
            for (size_t i = 0; i < ma.size(); ++i)
                m[i] = ma[i] + mb[i];
            add_term(prod, m, ca * cb);
        }
    return SeriesElement::from_terms(r, std::move(prod));
}

SeriesElement SeriesElement::scaled(const Scalar& c) const
{
    SeriesElement e = zero(ring());
    if (c.is_zero())
        return e;
    for (const auto& [m, x] : terms_) {
        Scalar y = x * c;
        if (!y.is_zero())
            e.terms_.emplace(m, std::move(y));
    }
    return e;
}

SeriesElement SeriesElement::pow(unsigned e) const
{
    SeriesElement acc = constant(ring(), Scalar(1));
    for (unsigned k = 0; k < e; ++k)
        acc *= *this;
    return acc;
}

SeriesElement SeriesElement::invert() const
{
    Scalar c = constant_term();
    if (c.is_zero())
        fail("NotAUnit", "constant term is zero");
    // a = c(1 - w) with w in the maximal ideal, so 1/a = (1/c) sum of w^k.
    SeriesElement w = constant(ring(), Scalar(1)) - scaled(c.inverse());
    SeriesElement acc = constant(ring(), Scalar(1));
    SeriesElement p = w;
    for (int k = 1; k <= ring()->truncation_order() && !p.is_zero(); ++k) {
        acc += p;
        p *= w;
    }
    return acc.scaled(c.inverse());
}

bool operator==(const SeriesElement& a, const SeriesElement& b)
{
    const RingPtr& ra = a.ring();
    const RingPtr& rb = b.ring();
    if (ra == rb)
        return a.terms_ == b.terms_;
    if (ra->is_trivial() || rb->is_trivial()) {
        RingPtr r = ra->is_trivial() ? rb : ra;
        return a.promote(r).terms_ == b.promote(r).terms_;
    }
    return false;
}

std::string SeriesElement::str() const
{
    if (terms_.empty())
        return "0";
    std::vector<const std::pair<const Monomial, Scalar>*> ts;
    for (const auto& t : terms_)
        ts.push_back(&t);
    std::vector<int> w;
    for (const auto& v : ring()->variables())
        w.push_back(v.weight);
    std::sort(ts.begin(), ts.end(),
              [&](auto* x, auto* y) { return mono_cmp(x->first, y->first, w, -1) < 0; });
    std::string s;
    for (auto* t : ts) {
        std::string mono;
        for (size_t i = 0; i < t->first.size(); ++i) {
            if (t->first[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += ring()->variables()[i].name;
            if (t->first[i] > 1)
                mono += "^" + std::to_string(t->first[i]);
        }
        std::string coeff = t->second.str();
        std::string piece;
        if (mono.empty())
            piece = coeff;
        else if (coeff == "1")
            piece = mono;
        else if (coeff == "-1")
            piece = "-" + mono;
        else if (coeff.find('+') != std::string::npos || coeff.find('i') != std::string::npos)
            piece = "(" + coeff + ")*" + mono;
        else
            piece = coeff + "*" + mono;
        if (s.empty())
            s = piece;
        else if (piece[0] == '-')
            s += " - " + piece.substr(1);
        else
            s += " + " + piece;
    }
    return s;
}

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<SeriesElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (int(images_.size()) != source_->num_variables())
        fail("SchemaError", "ring map needs one image per source variable");
    if (target_->truncation_order() > source_->truncation_order() && !source_->is_trivial())
        fail("BadTruncation", "target truncation exceeds source knowledge");
    for (size_t i = 0; i < images_.size(); ++i) {
        SeriesElement img = images_[i].promote(target_);
        if (!img.in_maximal_ideal())
            fail("NonLocalMap", "image of a variable has nonzero constant term");
        if (!img.is_zero() && img.order() < source_->variables()[i].weight)
            fail("NonLocalMap", "image order is below the variable weight");
        images_[i] = std::move(img);
    }
    // Check against the raw relation polynomials: their normal forms in the
    // source are zero, so the images must vanish in the target too.
    for (const auto& rel : source_->relations()) {
        SeriesElement v = SeriesElement::zero(target_);
        for (const auto& [m, c] : rel) {
            SeriesElement t = SeriesElement::constant(target_, c);
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0)
                    t *= images_[i].pow(m[i]);
            v += t;
        }
        if (!v.is_zero())
            fail("RelationNotKilled", "ring map does not kill a source relation");
    }
}

RingMap RingMap::identity(RingPtr ring)
{
    std::vector<SeriesElement> im;
    for (int i = 0; i < ring->num_variables(); ++i)
        im.push_back(SeriesElement::variable(ring, i));
    return RingMap(ring, ring, std::move(im));
}

SeriesElement RingMap::apply(const SeriesElement& a) const
{
    if (a.ring() != source_ && !a.ring()->is_trivial())
        fail("RingMismatch", "ring map applied to element of a different ring");
    SeriesElement out = SeriesElement::zero(target_);
    for (const auto& [m, c] : a.terms()) {
        SeriesElement t = SeriesElement::constant(target_, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0)
                t *= images_[i].pow(m[i]);
        out += t;
    }
    return out;
}

} // namespace kuranishi
