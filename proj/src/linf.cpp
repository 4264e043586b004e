#include "kuranishi/linf.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace kuranishi {

namespace {

Scalar inv_factorial(unsigned s)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), s);
    Rational r(1, f);
    r.canonicalize();
    return Scalar(r);
}

// non-decreasing index tuples of length s over {0..dim-1}
void sorted_tuples(int dim, int s, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == s) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur.push_back(i);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

// partitions of {0..s-1}: blocks ascending, ordered by least element
void set_partitions(int s, std::vector<std::vector<std::vector<int>>>& out)
{
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == s) {
            out.push_back(cur);
            return;
        }
        // index loop: recursion pushes and pops blocks in `cur`
        size_t existing = cur.size();
        for (size_t b = 0; b < existing; ++b) {
            cur[b].push_back(i);
            rec(i + 1);
            cur[b].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
}

int flatten_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& reduced)
{
    std::vector<int> perm;
    for (const auto& b : blocks)
        for (int i : b)
            perm.push_back(i);
    return koszul_sign(perm, reduced);
}

std::vector<int> tuple_reduced_degrees(const BasisPtr& basis, const std::vector<int>& tuple)
{
    std::vector<int> out;
    for (int i : tuple)
        out.push_back(basis->reduced_degree(i));
    return out;
}

} // namespace

std::shared_ptr<const LInfinityAlgebra>
LInfinityAlgebra::make(BasisPtr basis, std::map<int, MultilinearOperation> operations,
                       int arity_cap)
{
    if (arity_cap < 1 || arity_cap > 8)
        fail("BadArityCap", "arity cap must be between 1 and 8");
    for (const auto& [s, op] : operations) {
        if (s < 1 || s > arity_cap)
            fail("ArityMismatch", "operation arity outside 1..cap");
        if (op.arity() != s)
            fail("ArityMismatch", "operation stored under the wrong arity");
        if (op.degree() != 2 - s)
            fail("DegreeMismatch", "l^" + std::to_string(s) + " must have degree 2-s");
        if (op.symmetry() != Symmetry::GradedSymmetricReduced)
            fail("SymmetryViolation", "brackets must be graded symmetric in reduced degrees");
        if (op.domain() != basis || op.codomain() != basis)
            fail("BasisMismatch", "bracket bases differ from the algebra basis");
        if (!op.ring()->is_trivial())
            fail("RingMismatch", "algebra structure constants live over the ground field");
        auto bad = check_symmetry(op);
        if (!bad.empty())
            fail("SymmetryViolation", bad.front());
    }
    auto g = std::shared_ptr<LInfinityAlgebra>(new LInfinityAlgebra());
    g->basis_ = std::move(basis);
    g->ops_ = std::move(operations);
    g->arity_cap_ = arity_cap;
    return g;
}

const MultilinearOperation* LInfinityAlgebra::op(int s) const
{
    auto it = ops_.find(s);
    return it == ops_.end() || it->second.is_zero() ? nullptr : &it->second;
}

bool LInfinityAlgebra::is_minimal() const { return op(1) == nullptr; }

Element LInfinityAlgebra::apply(int s, const std::vector<Element>& args) const
{
    const MultilinearOperation* o = op(s);
    if (!o) {
        RingPtr r = LocalRing::ground_field();
        for (const auto& a : args)
            if (!a.ring()->is_trivial())
                r = a.ring();
        return Element(basis_, r);
    }
    return o->evaluate(args);
}

RelationReport check_linf_relations(const LInfinityAlgebra& g, int arity_bound)
{
    RelationReport report;
    report.arity_bound = arity_bound;
    const BasisPtr& basis = g.basis();
    RingPtr k = LocalRing::ground_field();
    for (int s = 1; s <= arity_bound; ++s) {
        if (s > g.arity_cap()) {
            report.unchecked_arities.push_back(s);
            continue;
        }
        std::vector<std::vector<int>> tuples;
        sorted_tuples(basis->dimension(), s, tuples);
        for (const auto& tuple : tuples) {
            std::vector<int> reduced = tuple_reduced_degrees(basis, tuple);
            Element residual(basis, k);
            for (int j = 1; j <= s; ++j) {
                for (const auto& sigma : unshuffles(j, s)) {
                    int sign = koszul_sign(sigma, reduced);
                    std::vector<Element> inner;
                    for (int t = 0; t < j; ++t)
                        inner.push_back(Element::generator(basis, tuple[size_t(sigma[size_t(t)])], k));
                    Element core = g.apply(j, inner);
                    if (core.is_zero())
                        continue;
                    std::vector<Element> outer{core};
                    for (int t = j; t < s; ++t)
                        outer.push_back(Element::generator(basis, tuple[size_t(sigma[size_t(t)])], k));
                    Element term = g.apply(s - j + 1, outer);
                    if (term.is_zero())
                        continue;
                    residual += sign == 1 ? term : -term;
                }
            }
            if (!residual.is_zero())
                report.violations.push_back({s, tuple, residual});
        }
    }
    return report;
}

HarmonicSplitting::HarmonicSplitting(AlgebraPtr algebra) : algebra_(std::move(algebra))
{
    const BasisPtr& basis = algebra_->basis();
    RingPtr k = LocalRing::ground_field();
    int dim = basis->dimension();

    for (int i = 0; i < dim; ++i) {
        Element once = algebra_->apply(1, {Element::generator(basis, i, k)});
        if (!algebra_->apply(1, {once}).is_zero())
            fail("DifferentialNotSquareZero", "l^1 does not square to zero");
    }

    std::map<int, std::vector<int>> by_deg;
    for (int i = 0; i < dim; ++i)
        by_deg[basis->degree(i)].push_back(i);

    std::vector<std::pair<std::string, int>> hnames;
    std::map<int, std::vector<Element>> c_prev; // complement basis per degree

    auto col_of = [&](const Element& e, const std::vector<int>& rows) {
        std::vector<Scalar> v;
        for (int r : rows)
            v.push_back(e.coefficient(r).constant_term());
        return v;
    };

    for (auto& [d, idx] : by_deg) {
        DegreeData data;
        data.indices = idx;
        int n = int(idx.size());

        // differential matrix from degree d
        auto up_it = by_deg.find(d + 1);
        std::vector<int> rows = up_it == by_deg.end() ? std::vector<int>{} : up_it->second;
        Matrix L(int(rows.size()), n);
        std::vector<Element> images;
        for (int c = 0; c < n; ++c) {
            Element img = algebra_->apply(1, {Element::generator(basis, idx[size_t(c)], k)});
            images.push_back(img);
            auto col = col_of(img, rows);
            for (size_t r = 0; r < col.size(); ++r)
                L.at(int(r), c) = col[r];
        }
        auto ker = kernel_basis(L);

        // incoming image: differentials of the complement one degree down
        std::vector<Element> im_elts;
        auto prev = c_prev.find(d - 1);
        if (prev != c_prev.end())
            for (const auto& c : prev->second)
                im_elts.push_back(algebra_->apply(1, {c}));

        // greedy ranks against [im | ker | standard]
        Matrix probe(n, 0);
        auto extend = [&](const std::vector<Scalar>& v) {
            Matrix trial(n, probe.cols() + 1);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < probe.cols(); ++c)
                    trial.at(r, c) = probe.at(r, c);
                trial.at(r, probe.cols()) = v[size_t(r)];
            }
            if (rank(trial) > probe.cols()) {
                probe = std::move(trial);
                return true;
            }
            return false;
        };

        std::vector<std::vector<Scalar>> h_cols, im_cols, c_cols;
        for (const auto& e : im_elts) {
            auto v = col_of(e, idx);
            if (extend(v))
                im_cols.push_back(v);
        }
        data.im_count = int(im_cols.size());
        for (const auto& kv : ker)
            if (extend(kv))
                h_cols.push_back(kv);
        data.h_count = int(h_cols.size());
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> v(static_cast<size_t>(n));
            v[size_t(j)] = Scalar(1);
            if (extend(v)) {
                c_cols.push_back(v);
                Element ce(basis, k);
                ce.set_coefficient(idx[size_t(j)], SeriesElement::constant(k, Scalar(1)));
                c_prev[d].push_back(ce);
            }
        }

        // homotopy inverts l^1 from the complement below onto im
        prev = c_prev.find(d - 1);
        if (prev != c_prev.end()) {
            // keep only the complement vectors whose images were accepted
            // (they all are: images of a complement are independent)
            data.c_basis = prev->second;
        }
        if (int(data.c_basis.size()) != data.im_count)
            fail("Internal", "complement/image bookkeeping out of step");

        Matrix M(n, n);
        int col = 0;
        for (const auto& v : h_cols) {
            for (int r = 0; r < n; ++r)
                M.at(r, col) = v[size_t(r)];
            ++col;
        }
        for (const auto& v : im_cols) {
            for (int r = 0; r < n; ++r)
                M.at(r, col) = v[size_t(r)];
            ++col;
        }
        for (const auto& v : c_cols) {
            for (int r = 0; r < n; ++r)
                M.at(r, col) = v[size_t(r)];
            ++col;
        }
        auto inv = inverse(M);
        if (!inv)
            fail("Internal", "splitting change of basis is singular");
        data.inverse = std::move(*inv);

        for (const auto& v : h_cols) {
            data.h_slots.push_back(int(hnames.size()));
            Element rep(basis, k);
            for (int r = 0; r < n; ++r)
                if (!v[size_t(r)].is_zero())
                    rep.set_coefficient(idx[size_t(r)], SeriesElement::constant(k, v[size_t(r)]));
            reps_.push_back(rep);
            hnames.emplace_back("h" + std::to_string(hnames.size()), d);
        }
        by_degree_[d] = std::move(data);
    }
    hbasis_ = GradedBasis::make(std::move(hnames));
}

Element HarmonicSplitting::include(const Element& x) const
{
    if (x.basis() && x.basis() != hbasis_)
        fail("BasisMismatch", "expected harmonic coordinates");
    Element out(algebra_->basis(), x.ring());
    for (const auto& [i, c] : x.coefficients())
        out += reps_[size_t(i)].scaled(c);
    return out;
}

Element HarmonicSplitting::project(const Element& x) const
{
    if (x.basis() && x.basis() != algebra_->basis())
        fail("BasisMismatch", "expected an algebra element");
    Element out(hbasis_, x.ring());
    for (const auto& [d, data] : by_degree_) {
        int n = int(data.indices.size());
        bool touched = false;
        std::vector<SeriesElement> coords;
        for (int j = 0; j < n; ++j) {
            SeriesElement c = x.coefficient(data.indices[size_t(j)]);
            if (!c.is_zero())
                touched = true;
            coords.push_back(std::move(c));
        }
        if (!touched)
            continue;
        for (int slot = 0; slot < data.h_count; ++slot) {
            SeriesElement y = SeriesElement::zero(x.ring());
            for (int j = 0; j < n; ++j)
                y += coords[size_t(j)].scaled(data.inverse.at(slot, j));
            if (!y.is_zero()) {
                Element g(hbasis_, x.ring());
                g.set_coefficient(data.h_slots[size_t(slot)], y);
                out += g;
            }
        }
    }
    return out;
}

Element HarmonicSplitting::homotopy(const Element& x) const
{
    if (x.basis() && x.basis() != algebra_->basis())
        fail("BasisMismatch", "expected an algebra element");
    Element out(algebra_->basis(), x.ring());
    for (const auto& [d, data] : by_degree_) {
        int n = int(data.indices.size());
        bool touched = false;
        std::vector<SeriesElement> coords;
        for (int j = 0; j < n; ++j) {
            SeriesElement c = x.coefficient(data.indices[size_t(j)]);
            if (!c.is_zero())
                touched = true;
            coords.push_back(std::move(c));
        }
        if (!touched)
            continue;
        for (int slot = 0; slot < data.im_count; ++slot) {
            SeriesElement y = SeriesElement::zero(x.ring());
            for (int j = 0; j < n; ++j)
                y += coords[size_t(j)].scaled(data.inverse.at(data.h_count + slot, j));
            if (!y.is_zero())
                out += data.c_basis[size_t(slot)].scaled(y);
        }
    }
    return out;
}

Element HarmonicSplitting::differential(const Element& x) const
{
    // ring-linear extension of l^1 one coefficient at a time
    Element out(algebra_->basis(), x.ring());
    RingPtr k = LocalRing::ground_field();
    for (const auto& [i, c] : x.coefficients()) {
        Element img = algebra_->apply(1, {Element::generator(algebra_->basis(), i, k)});
        out += img.scaled(c);
    }
    return out;
}

CohomologyData cohomology(const AlgebraPtr& g)
{
    HarmonicSplitting s(g);
    CohomologyData out;
    const BasisPtr& hb = s.harmonic_basis();
    for (int i = 0; i < hb->dimension(); ++i) {
        out.dims[hb->degree(i)] += 1;
        out.representatives[hb->degree(i)].push_back(s.representative(i));
    }
    return out;
}

MaurerCartanElement MaurerCartanElement::make(AlgebraPtr algebra, RingPtr ring, Element value)
{
    if (value.basis() && value.basis() != algebra->basis())
        fail("BasisMismatch", "value lives over the wrong basis");
    if (!value.is_homogeneous_of_degree(1))
        fail("DegreeMismatch", "Maurer-Cartan elements have degree 1");
    Element v = value.is_zero() ? Element(algebra->basis(), ring) : value.promote(ring);
    if (!v.coefficients_in_maximal_ideal())
        fail("ConstantTermPresent", "coefficients must lie in the maximal ideal");
    return MaurerCartanElement{std::move(algebra), std::move(ring), std::move(v)};
}

Element mc_residual(const MaurerCartanElement& alpha)
{
    const auto& g = alpha.algebra;
    Element out(g->basis(), alpha.ring);
    if (alpha.value.is_zero())
        return out;
    int bound = std::min(g->arity_cap(), alpha.ring->truncation_order());
    std::vector<Element> args;
    for (int s = 1; s <= bound; ++s) {
        args.push_back(alpha.value);
        Element term = g->apply(s, args);
        if (!term.is_zero())
            out += term.scaled(inv_factorial(unsigned(s)));
    }
    return out;
}

GaugePath GaugePath::constant(AlgebraPtr algebra, RingPtr ring, Element value)
{
    if (!value.is_zero()) {
        if (value.basis() != algebra->basis())
            fail("BasisMismatch", "gauge coefficients live over the wrong basis");
        if (!value.is_homogeneous_of_degree(0))
            fail("DegreeMismatch", "gauge parameters have degree 0");
        if (!value.coefficients_in_maximal_ideal())
            fail("ConstantTermPresent", "gauge coefficients must lie in the maximal ideal");
    }
    return GaugePath{std::move(algebra), std::move(ring), {std::move(value)}};
}

namespace {

using TPoly = std::vector<Element>; // coefficient of t^k at index k

void tp_trim(TPoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

TPoly tp_add(TPoly a, const TPoly& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    tp_trim(a);
    return a;
}

TPoly tp_integrate(const TPoly& a, const BasisPtr& basis, const RingPtr& ring)
{
    TPoly out;
    out.push_back(Element(basis, ring));
    for (size_t k = 0; k < a.size(); ++k)
        out.push_back(a[k].scaled(Scalar(rational(1, long(k) + 1))));
    tp_trim(out);
    return out;
}

// multilinear extension of l^s to t-polynomials
TPoly tp_apply(const LInfinityAlgebra& g, int s, const std::vector<TPoly>& args,
               const BasisPtr& basis, const RingPtr& ring)
{
    TPoly out;
    if (!g.op(s))
        return out;
    std::vector<size_t> pick(args.size(), 0);
    for (const auto& a : args)
        if (a.empty())
            return out;
    while (true) {
        size_t tdeg = 0;
        std::vector<Element> slice;
        bool zero = false;
        for (size_t i = 0; i < args.size(); ++i) {
            tdeg += pick[i];
            if (args[i][pick[i]].is_zero()) {
                zero = true;
                break;
            }
            slice.push_back(args[i][pick[i]]);
        }
        if (!zero) {
            Element v = g.apply(s, slice);
            if (!v.is_zero()) {
                if (out.size() <= tdeg)
                    out.resize(tdeg + 1, Element(basis, ring));
                out[tdeg] += v;
            }
        }
        size_t i = args.size();
        bool done = true;
        while (i-- > 0) {
            if (++pick[i] < args[i].size()) {
                done = false;
                break;
            }
            pick[i] = 0;
        }
        if (done)
            break;
    }
    tp_trim(out);
    return out;
}

} // namespace

MaurerCartanElement gauge_flow(const GaugePath& gamma, const MaurerCartanElement& alpha)
{
    const auto& g = alpha.algebra;
    if (gamma.algebra != g)
        fail("BasisMismatch", "gauge path and element live in different algebras");
    const RingPtr& R = alpha.ring;
    const BasisPtr& basis = g->basis();
    int N = R->truncation_order();

    TPoly gam;
    for (const auto& c : gamma.coefficients)
        gam.push_back(c.is_zero() ? Element(basis, R) : c.promote(R));
    tp_trim(gam);
    if (gam.empty())
        return alpha;

    TPoly cur{alpha.value};
    tp_trim(cur);
    for (int iter = 0; iter <= N + 1; ++iter) {
        // vector field v(gamma, x)(t) = sum_i l^{1+i}(gamma, x, ..., x)/i!
        TPoly field;
        for (int i = 0; 1 + i <= g->arity_cap() && i <= N; ++i) {
            std::vector<TPoly> args{gam};
            for (int t = 0; t < i; ++t)
                args.push_back(cur);
            TPoly term = tp_apply(*g, 1 + i, args, basis, R);
            for (auto& e : term)
                e = e.scaled(inv_factorial(unsigned(i)));
            field = tp_add(std::move(field), term);
        }
        TPoly nxt = tp_add(TPoly{alpha.value}, tp_integrate(field, basis, R));
        if (nxt == cur)
            break;
        cur = std::move(nxt);
        if (iter == N + 1)
            fail("Internal", "gauge flow failed to stabilize");
    }
    Element at_one(basis, R);
    for (const auto& c : cur)
        at_one += c;
    return MaurerCartanElement::make(g, R, std::move(at_one));
}

GaugeResult gauge_equivalent(const MaurerCartanElement& alpha, const MaurerCartanElement& beta)
{
    const auto& g = alpha.algebra;
    if (beta.algebra != g)
        fail("BasisMismatch", "elements live in different algebras");
    if (alpha.ring != beta.ring)
        fail("RingMismatch", "elements live over different rings");
    GaugeResult res;
    if (alpha.value == beta.value) {
        res.equivalent = true;
        return res;
    }
    const RingPtr& R = alpha.ring;
    int N = R->truncation_order();
    HarmonicSplitting split(g);
    Element c(g->basis(), R); // constant gauge parameter, accumulated

    for (int guard = 0; guard <= N + 1; ++guard) {
        MaurerCartanElement cur =
            c.is_zero() ? alpha : gauge_flow(GaugePath::constant(g, R, c), alpha);
        Element delta = beta.value - cur.value;
        if (delta.is_zero()) {
            res.equivalent = true;
            if (!c.is_zero())
                res.paths.push_back(GaugePath::constant(g, R, c));
            return res;
        }
        int k = delta.order();
        Element dk = delta.homogeneous_order_part(k);
        if (!split.differential(dk).is_zero())
            fail("NotMaurerCartan", "discrepancy fails to be closed; inputs are not both MC");
        Element cls = split.project(dk);
        if (!cls.is_zero()) {
            res.equivalent = false;
            res.obstruction_order = k;
            res.obstruction_class = cls;
            return res;
        }
        c += split.homotopy(dk);
    }
    fail("Internal", "gauge search failed to terminate");
}

LInfinityMorphism::LInfinityMorphism(AlgebraPtr source, AlgebraPtr target,
                                     std::map<int, MultilinearOperation> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components))
{
    for (const auto& [s, comp] : comps_) {
        if (s < 1)
            fail("ArityMismatch", "morphism components start at arity 1");
        if (comp.arity() != s)
            fail("ArityMismatch", "component stored under the wrong arity");
        if (comp.degree() != 1 - s)
            fail("DegreeMismatch", "f^" + std::to_string(s) + " must have degree 1-s");
        if (comp.domain() != source_->basis() || comp.codomain() != target_->basis())
            fail("BasisMismatch", "component bases do not match the algebras");
        if (comp.symmetry() != Symmetry::GradedSymmetricReduced)
            fail("SymmetryViolation", "components must be graded symmetric in reduced degrees");
    }
}

LInfinityMorphism LInfinityMorphism::identity(AlgebraPtr g)
{
    RingPtr k = LocalRing::ground_field();
    MultilinearOperation f1(1, 0, Symmetry::GradedSymmetricReduced, g->basis(), g->basis(), k);
    for (int i = 0; i < g->basis()->dimension(); ++i)
        f1.set_entry({i}, Element::generator(g->basis(), i, k));
    std::map<int, MultilinearOperation> comps;
    comps.emplace(1, std::move(f1));
    AlgebraPtr copy = g;
    return LInfinityMorphism(std::move(copy), std::move(g), std::move(comps));
}

const MultilinearOperation* LInfinityMorphism::component(int s) const
{
    auto it = comps_.find(s);
    return it == comps_.end() || it->second.is_zero() ? nullptr : &it->second;
}

int LInfinityMorphism::max_component() const
{
    int m = 0;
    for (const auto& [s, c] : comps_)
        if (!c.is_zero())
            m = s;
    return m;
}

Element LInfinityMorphism::apply(int s, const std::vector<Element>& args) const
{
    const MultilinearOperation* c = component(s);
    if (!c) {
        RingPtr r = LocalRing::ground_field();
        for (const auto& a : args)
            if (!a.ring()->is_trivial())
                r = a.ring();
        return Element(target_->basis(), r);
    }
    return c->evaluate(args);
}

RelationReport check_linf_morphism(const LInfinityMorphism& f, int arity_bound)
{
    RelationReport report;
    report.arity_bound = arity_bound;
    const BasisPtr& sb = f.source()->basis();
    RingPtr k = LocalRing::ground_field();
    for (int s = 1; s <= arity_bound; ++s) {
        if (s > f.source()->arity_cap() || s > f.target()->arity_cap()) {
            report.unchecked_arities.push_back(s);
            continue;
        }
        std::vector<std::vector<std::vector<int>>> partitions;
        set_partitions(s, partitions);
        std::vector<std::vector<int>> tuples;
        sorted_tuples(sb->dimension(), s, tuples);
        for (const auto& tuple : tuples) {
            std::vector<int> reduced = tuple_reduced_degrees(sb, tuple);
            auto gen = [&](int pos) { return Element::generator(sb, tuple[size_t(pos)], k); };

            Element lhs(f.target()->basis(), k);
            for (int j = 1; j <= s; ++j)
                for (const auto& sigma : unshuffles(j, s)) {
                    int sign = koszul_sign(sigma, reduced);
                    std::vector<Element> inner;
                    for (int t = 0; t < j; ++t)
                        inner.push_back(gen(sigma[size_t(t)]));
                    Element core = f.source()->apply(j, inner);
                    if (core.is_zero())
                        continue;
                    std::vector<Element> outer{core};
                    for (int t = j; t < s; ++t)
                        outer.push_back(gen(sigma[size_t(t)]));
                    Element term = f.apply(s - j + 1, outer);
                    if (term.is_zero())
                        continue;
                    lhs += sign == 1 ? term : -term;
                }

            Element rhs(f.target()->basis(), k);
            for (const auto& blocks : partitions) {
                int sign = flatten_sign(blocks, reduced);
                std::vector<Element> pieces;
                bool zero = false;
                for (const auto& b : blocks) {
                    std::vector<Element> ins;
                    for (int pos : b)
                        ins.push_back(gen(pos));
                    Element piece = f.apply(int(b.size()), ins);
                    if (piece.is_zero()) {
                        zero = true;
                        break;
                    }
                    pieces.push_back(std::move(piece));
                }
                if (zero)
                    continue;
                Element term = f.target()->apply(int(blocks.size()), pieces);
                if (term.is_zero())
                    continue;
                rhs += sign == 1 ? term : -term;
            }

            if (!(lhs == rhs))
                report.violations.push_back({s, tuple, lhs - rhs});
        }
    }
    return report;
}

MaurerCartanElement push_forward_mc(const LInfinityMorphism& f, const MaurerCartanElement& alpha)
{
    if (alpha.algebra != f.source())
        fail("BasisMismatch", "element is not defined in the morphism source");
    Element out(f.target()->basis(), alpha.ring);
    int bound = std::min(f.max_component(), alpha.ring->truncation_order());
    std::vector<Element> args;
    for (int s = 1; s <= bound; ++s) {
        args.push_back(alpha.value);
        Element term = f.apply(s, args);
        if (!term.is_zero())
            out += term.scaled(inv_factorial(unsigned(s)));
    }
    return MaurerCartanElement::make(f.target(), alpha.ring, std::move(out));
}

MinimalModel minimal_model(const AlgebraPtr& g, int arity_cap)
{
    if (g->is_minimal())
        return MinimalModel{g, LInfinityMorphism::identity(g), nullptr};

    auto split_ptr = std::make_shared<HarmonicSplitting>(g);
    const HarmonicSplitting& split = *split_ptr;
    BasisPtr hb = split.harmonic_basis();
    BasisPtr gb = g->basis();
    RingPtr k = LocalRing::ground_field();

    std::map<int, MultilinearOperation> hops;
    std::map<int, MultilinearOperation> fcomps;

    MultilinearOperation f1(1, 0, Symmetry::GradedSymmetricReduced, hb, gb, k);
    for (int i = 0; i < hb->dimension(); ++i)
        f1.set_entry({i}, split.representative(i));
    fcomps.emplace(1, std::move(f1));

    auto happly = [&](int s, const std::vector<Element>& args) -> Element {
        auto it = hops.find(s);
        if (it == hops.end() || it->second.is_zero())
            return Element(hb, k);
        return it->second.evaluate(args);
    };
    auto fapply = [&](int s, const std::vector<Element>& args) -> Element {
        auto it = fcomps.find(s);
        if (it == fcomps.end() || it->second.is_zero())
            return Element(gb, k);
        return it->second.evaluate(args);
    };

    for (int s = 2; s <= arity_cap; ++s) {
        MultilinearOperation ls(s, 2 - s, Symmetry::GradedSymmetricReduced, hb, hb, k);
        MultilinearOperation fs(s, 1 - s, Symmetry::GradedSymmetricReduced, hb, gb, k);
        std::vector<std::vector<std::vector<int>>> partitions;
        set_partitions(s, partitions);
        std::vector<std::vector<int>> tuples;
        sorted_tuples(hb->dimension(), s, tuples);
        for (const auto& tuple : tuples) {
            if (ls.canonicalize(tuple).forced_zero)
                continue;
            std::vector<int> reduced = tuple_reduced_degrees(hb, tuple);
            auto gen = [&](int pos) { return Element::generator(hb, tuple[size_t(pos)], k); };

            // source side without the unknown j = s term (and l'^1 = 0)
            Element a_part(gb, k);
            for (int j = 2; j <= s - 1; ++j)
                for (const auto& sigma : unshuffles(j, s)) {
                    int sign = koszul_sign(sigma, reduced);
                    std::vector<Element> inner;
                    for (int t = 0; t < j; ++t)
                        inner.push_back(gen(sigma[size_t(t)]));
                    Element core = happly(j, inner);
                    if (core.is_zero())
                        continue;
                    std::vector<Element> outer{core};
                    for (int t = j; t < s; ++t)
                        outer.push_back(gen(sigma[size_t(t)]));
                    Element term = fapply(s - j + 1, outer);
                    if (!term.is_zero())
                        a_part += sign == 1 ? term : -term;
                }

            // target side without the unknown single-block term
            Element b_part(gb, k);
            for (const auto& blocks : partitions) {
                if (blocks.size() == 1)
                    continue;
                int sign = flatten_sign(blocks, reduced);
                std::vector<Element> pieces;
                bool zero = false;
                for (const auto& b : blocks) {
                    std::vector<Element> ins;
                    for (int pos : b)
                        ins.push_back(gen(pos));
                    Element piece = fapply(int(b.size()), ins);
                    if (piece.is_zero()) {
                        zero = true;
                        break;
                    }
                    pieces.push_back(std::move(piece));
                }
                if (zero)
                    continue;
                Element term = g->apply(int(blocks.size()), pieces);
                if (!term.is_zero())
                    b_part += sign == 1 ? term : -term;
            }

            Element defect = b_part - a_part;
            if (defect.is_zero())
                continue;
            if (!split.differential(defect).is_zero())
                fail("Internal", "transfer defect is not closed; sign conventions broken");
            Element cls = split.project(defect);
            if (!cls.is_zero())
                ls.set_entry(tuple, cls);
            Element htp = split.homotopy(defect);
            if (!htp.is_zero())
                fs.set_entry(tuple, -htp);
        }
        if (!ls.is_zero())
            hops.emplace(s, std::move(ls));
        if (!fs.is_zero())
            fcomps.emplace(s, std::move(fs));
    }

    AlgebraPtr h = LInfinityAlgebra::make(hb, std::move(hops), arity_cap);
    return MinimalModel{h, LInfinityMorphism(h, g, std::move(fcomps)), split_ptr};
}

VersalPresentation versal_presentation(const AlgebraPtr& minimal, int truncation_order)
{
    if (!minimal->is_minimal())
        fail("NotMinimal", "versal presentations require l^1 = 0");
    const BasisPtr& basis = minimal->basis();
    std::vector<int> h1 = basis->indices_of_degree(1);
    std::vector<int> h2 = basis->indices_of_degree(2);

    std::vector<LocalRing::Variable> vars;
    for (size_t i = 0; i < h1.size(); ++i)
        vars.push_back({"x" + std::to_string(i + 1), 1});
    RingPtr free_ring = LocalRing::make(vars, {}, truncation_order);

    Element alpha(basis, free_ring);
    for (size_t i = 0; i < h1.size(); ++i)
        alpha.set_coefficient(h1[i], SeriesElement::variable(free_ring, int(i)));

    MaurerCartanElement af = MaurerCartanElement::make(minimal, free_ring, alpha);
    Element residual = mc_residual(af);
    if (!residual.is_homogeneous_of_degree(2))
        fail("Internal", "Maurer-Cartan sum of the tautological element is not degree 2");

    std::vector<std::pair<int, SeriesElement>> polys; // (h2 position, P_j)
    for (size_t j = 0; j < h2.size(); ++j) {
        SeriesElement pj = residual.coefficient(h2[j]);
        if (!pj.is_zero())
            polys.emplace_back(int(j), pj);
    }
    // canonical emission order: graded-lex leading monomial, then index
    std::vector<int> weights(h1.size(), 1);
    auto lead = [&](const SeriesElement& p) {
        Monomial best;
        bool have = false;
        for (const auto& [m, c] : p.terms()) {
            if (!have) {
                best = m;
                have = true;
                continue;
            }
            int dm = free_ring->weighted_degree(m), db = free_ring->weighted_degree(best);
            if (dm > db || (dm == db && m > best))
                best = m;
        }
        return best;
    };
    std::stable_sort(polys.begin(), polys.end(), [&](const auto& a, const auto& b) {
        Monomial la = lead(a.second), lb = lead(b.second);
        int da = free_ring->weighted_degree(la), db = free_ring->weighted_degree(lb);
        if (da != db)
            return da < db;
        return la < lb;
    });

    std::vector<TermMap> relations;
    std::vector<SeriesElement> plist;
    for (const auto& [j, p] : polys) {
        relations.push_back(p.terms());
        plist.push_back(p);
    }
    RingPtr rv = LocalRing::make(vars, relations, truncation_order);

    Element alpha_v(basis, rv);
    for (size_t i = 0; i < h1.size(); ++i)
        alpha_v.set_coefficient(h1[i], SeriesElement::variable(rv, int(i)));
    MaurerCartanElement taut = MaurerCartanElement::make(minimal, rv, alpha_v);
    if (!mc_residual(taut).is_zero())
        fail("Internal", "tautological element fails Maurer-Cartan over the cut base");

    return VersalPresentation{minimal, free_ring, rv, std::move(plist), std::move(h1),
                              std::move(h2), std::move(taut)};
}

Matrix kodaira_spencer(const MaurerCartanElement& alpha)
{
    const auto& g = alpha.algebra;
    HarmonicSplitting split(g);
    // the m/m^2 part: terms whose monomial is a single variable
    Element lin(g->basis(), alpha.ring);
    for (const auto& [i, c] : alpha.value.coefficients()) {
        TermMap kept;
        for (const auto& [m, sc] : c.terms()) {
            unsigned total = 0;
            for (unsigned e : m)
                total += e;
            if (total == 1)
                kept.emplace(m, sc);
        }
        if (!kept.empty())
            lin.set_coefficient(i, SeriesElement::from_terms(alpha.ring, kept));
    }
    if (!split.differential(lin).is_zero())
        fail("OrderOnePartNotClosed", "the order-1 part of the element is not l^1-closed");

    const BasisPtr& hb = split.harmonic_basis();
    std::vector<int> h1;
    for (int i = 0; i < hb->dimension(); ++i)
        if (hb->degree(i) == 1)
            h1.push_back(i);

    int nvars = alpha.ring->num_variables();
    Matrix ks(nvars, int(h1.size()));
    Element cls = split.project(lin); // harmonic coords with weight-1 series coefficients
    for (size_t col = 0; col < h1.size(); ++col) {
        SeriesElement c = cls.coefficient(h1[col]);
        for (const auto& [m, sc] : c.terms()) {
            for (size_t v = 0; v < m.size(); ++v)
                if (m[v] == 1)
                    ks.at(int(v), int(col)) = sc;
        }
    }
    return ks;
}

ClassifyResult classify_mc(const MaurerCartanElement& beta, const VersalPresentation& vp,
                           const MinimalModel* transport)
{
    if (!mc_residual(beta).is_zero())
        fail("ObstructionMismatch", "input fails the Maurer-Cartan equation");
    const RingPtr& R = beta.ring;

    if (beta.algebra == vp.algebra) {
        std::vector<SeriesElement> images;
        for (int idx : vp.h1_indices)
            images.push_back(beta.value.coefficient(idx));
        RingMap psi(vp.ring, R, std::move(images));
        return ClassifyResult{std::move(psi), {}, beta};
    }

    if (!transport || transport->minimal != vp.algebra ||
        transport->inclusion.target() != beta.algebra || !transport->splitting)
        fail("BasisMismatch",
             "classifying in a non-minimal algebra needs its minimal model for the presentation");
    const HarmonicSplitting& split = *transport->splitting;
    int N = R->truncation_order();

    Element x(vp.algebra->basis(), R);
    Element c(beta.algebra->basis(), R);
    const auto& g = beta.algebra;
    std::vector<GaugePath> paths;
    for (int guard = 0; guard <= N + 1; ++guard) {
        MaurerCartanElement fx =
            push_forward_mc(transport->inclusion, MaurerCartanElement::make(vp.algebra, R, x));
        MaurerCartanElement cur = c.is_zero() ? fx : gauge_flow(GaugePath::constant(g, R, c), fx);
        Element delta = beta.value - cur.value;
        if (delta.is_zero())
            break;
        int k = delta.order();
        Element dk = delta.homogeneous_order_part(k);
        if (!split.differential(dk).is_zero())
            fail("Internal", "classification discrepancy is not closed");
        x += split.project(dk);
        c += split.homotopy(dk);
        if (guard == N + 1)
            fail("Internal", "classification failed to stabilize");
    }
    MaurerCartanElement xmc = MaurerCartanElement::make(vp.algebra, R, x);
    if (!mc_residual(xmc).is_zero())
        fail("Internal", "transported element fails Maurer-Cartan");
    if (!c.is_zero())
        paths.push_back(GaugePath::constant(g, R, c));

    std::vector<SeriesElement> images;
    for (int idx : vp.h1_indices)
        images.push_back(x.coefficient(idx));
    RingMap psi(vp.ring, R, std::move(images));
    return ClassifyResult{std::move(psi), std::move(paths), std::move(xmc)};
}

VersalityVerdict versality_verdict(const MaurerCartanElement& beta)
{
    if (beta.ring->has_relations())
        fail("RingHasRelations", "the criterion requires a power series base");
    VersalityVerdict out;
    out.ks = kodaira_spencer(beta);
    out.rank = rank(out.ks);
    out.source_dim = out.ks.rows();
    out.target_dim = out.ks.cols();
    bool injective = out.rank == out.source_dim;
    bool surjective = out.rank == out.target_dim;
    if (injective && surjective)
        out.verdict = Versality::Versal;
    else if (surjective)
        out.verdict = Versality::Complete;
    else
        out.verdict = Versality::Inconclusive;
    return out;
}

} // namespace kuranishi
