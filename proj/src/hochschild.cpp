#include "kuranishi/hochschild.hpp"

#include <algorithm>
#include <climits>
#include <functional>

namespace kuranishi {

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

int prefix_parity_sign(const std::vector<int>& degrees, int prefix_len)
{
    int z = prefix_len;
    for (int t = 0; t < prefix_len; ++t)
        z += degrees[size_t(t)];
    return z % 2 == 0 ? 1 : -1;
}

std::string tuple_names(const CategoryPtr& cat, const std::vector<int>& tuple)
{
    std::string s = "(";
    for (size_t i = 0; i < tuple.size(); ++i)
        s += (i ? "," : "") + cat->basis()->name(tuple[i]);
    return s + ")";
}

} // namespace

HochschildCochain::HochschildCochain(CategoryPtr category, RingPtr ring, int degree,
                                     int length_cap)
    : cat_(std::move(category)), ring_(std::move(ring)), degree_(degree), length_cap_(length_cap)
{
    if (length_cap_ < 0)
        fail("BadLengthCap", "length cap must be nonnegative");
}

HochschildCochain::HochschildCochain(CategoryPtr category, RingPtr ring, int degree,
                                     int length_cap,
                                     std::map<int, MultilinearOperation> components)
    : HochschildCochain(std::move(category), std::move(ring), degree, length_cap)
{
    for (auto& [s, op] : components) {
        if (s < 0 || s > length_cap_)
            fail("BadLengthCap", "component length outside 0..cap");
        if (op.arity() != s)
            fail("ArityMismatch", "component stored under the wrong length");
        if (op.degree() != degree_ - s)
            fail("DegreeMismatch", "phi^s must be a map of degree d-s");
        if (op.domain() != cat_->basis() || op.codomain() != cat_->basis())
            fail("BasisMismatch", "component bases differ from the category basis");
        comps_.emplace(s, std::move(op));
    }
}

const MultilinearOperation* HochschildCochain::component(int s) const
{
    auto it = comps_.find(s);
    return it == comps_.end() || it->second.is_zero() ? nullptr : &it->second;
}

void HochschildCochain::set_component(int s, MultilinearOperation op)
{
    if (s < 0 || s > length_cap_)
        fail("BadLengthCap", "component length outside 0..cap");
    if (op.is_zero())
        comps_.erase(s);
    else
        comps_[s] = std::move(op);
}

Element HochschildCochain::apply(int s, const std::vector<Element>& args) const
{
    const MultilinearOperation* c = component(s);
    if (!c) {
        RingPtr r = ring_;
        for (const auto& a : args)
            r = merge_rings(r, a.ring());
        return Element(cat_->basis(), r);
    }
    return c->evaluate(args);
}

Element HochschildCochain::value_at(int object) const
{
    Element total = apply(0, {});
    Element out(cat_->basis(), total.ring());
    for (const auto& [i, c] : total.coefficients())
        if (cat_->hom_source(i) == object)
            out.set_coefficient(i, c);
    return out;
}

bool HochschildCochain::is_zero() const
{
    for (const auto& [s, c] : comps_)
        if (!c.is_zero())
            return false;
    return true;
}

HochschildCochain HochschildCochain::operator-() const { return scaled(Scalar(-1)); }

HochschildCochain& HochschildCochain::operator+=(const HochschildCochain& o)
{
    if (cat_->basis() != o.cat_->basis())
        fail("BasisMismatch", "cochains live on different categories");
    if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
        fail("DegreeMismatch", "cochains of different degrees");
    RingPtr r = merge_rings(ring_, o.ring_);
    ring_ = r;
    length_cap_ = std::min(length_cap_, o.length_cap_);
    for (const auto& [s, op] : o.comps_) {
        if (s > length_cap_)
            continue;
        auto it = comps_.find(s);
        if (it == comps_.end()) {
            comps_.emplace(s, op.promote(r));
            continue;
        }
        MultilinearOperation merged = it->second.promote(r);
        for (const auto& [tuple, value] : op.stored_entries())
            merged.add_entry(tuple, value.promote(r));
        if (merged.is_zero())
            comps_.erase(it);
        else
            it->second = std::move(merged);
    }
    for (auto it = comps_.begin(); it != comps_.end();)
        it = it->first > length_cap_ ? comps_.erase(it) : std::next(it);
    return *this;
}

HochschildCochain HochschildCochain::scaled(const Scalar& c) const
{
    HochschildCochain out(cat_, ring_, degree_, length_cap_);
    if (c.is_zero())
        return out;
    for (const auto& [s, op] : comps_) {
        MultilinearOperation sc(op.arity(), op.degree(), Symmetry::None, op.domain(),
                                op.codomain(), op.ring());
        for (const auto& [tuple, value] : op.stored_entries())
            sc.set_entry(tuple, value.scaled(c));
        if (!sc.is_zero())
            out.comps_.emplace(s, std::move(sc));
    }
    return out;
}

HochschildCochain HochschildCochain::scaled(const SeriesElement& c) const
{
    RingPtr r = merge_rings(ring_, c.ring());
    HochschildCochain out(cat_, r, degree_, length_cap_);
    if (c.is_zero())
        return out;
    for (const auto& [s, op] : comps_) {
        MultilinearOperation sc(op.arity(), op.degree(), Symmetry::None, op.domain(),
                                op.codomain(), r);
        for (const auto& [tuple, value] : op.stored_entries())
            sc.set_entry(tuple, value.scaled(c));
        if (!sc.is_zero())
            out.comps_.emplace(s, std::move(sc));
    }
    return out;
}

bool operator==(const HochschildCochain& a, const HochschildCochain& b)
{
    HochschildCochain diff = a;
    diff += -b;
    return diff.is_zero();
}

HochschildCochain brace_compose(const HochschildCochain& phi, const HochschildCochain& psi)
{
    const CategoryPtr& cat = phi.category();
    if (cat->basis() != psi.category()->basis())
        fail("BasisMismatch", "cochains live on different categories");
    RingPtr r = merge_rings(phi.ring(), psi.ring());
    int cap = std::min(phi.length_cap(), psi.length_cap());
    int out_degree = phi.degree() + psi.degree() - 1;
    bool psi_odd = psi.reduced_degree() % 2 != 0;
    HochschildCochain out(cat, r, out_degree, cap);

    for (int s = 0; s <= cap; ++s) {
        MultilinearOperation comp(s, out_degree - s, Symmetry::None, cat->basis(), cat->basis(),
                                  r);
        auto tuples = s == 0 ? std::vector<std::vector<int>>{{}} : cat->composable_tuples(s);
        for (const auto& tuple : tuples) {
            std::vector<std::vector<int>> chains;
            if (s == 0) {
                for (int L = 0; L < int(cat->objects().size()); ++L)
                    chains.push_back({L});
            } else {
                std::vector<int> chain{cat->hom_source(tuple[0])};
                for (int g : tuple)
                    chain.push_back(cat->hom_target(g));
                chains.push_back(chain);
            }
            for (const auto& ch : chains) {
                std::vector<int> degs;
                for (int g : tuple)
                    degs.push_back(cat->basis()->degree(g));
                Element total(cat->basis(), r);
                for (int j = 0; j <= s; ++j) {
                    if (phi.component(s + 1 - j) == nullptr)
                        continue;
                    for (int i = 0; i + j <= s; ++i) {
                        Element inner;
                        if (j == 0)
                            inner = psi.value_at(ch[size_t(i)]);
                        else {
                            std::vector<Element> ins;
                            for (int t = i; t < i + j; ++t)
                                ins.push_back(Element::generator(cat->basis(), tuple[size_t(t)], r));
                            inner = psi.apply(j, ins);
                        }
                        if (inner.is_zero())
                            continue;
                        std::vector<Element> outer;
                        for (int t = 0; t < i; ++t)
                            outer.push_back(Element::generator(cat->basis(), tuple[size_t(t)], r));
                        outer.push_back(inner);
                        for (int t = i + j; t < s; ++t)
                            outer.push_back(Element::generator(cat->basis(), tuple[size_t(t)], r));
                        Element term = phi.apply(s + 1 - j, outer);
                        if (term.is_zero())
                            continue;
                        int sign = psi_odd ? prefix_parity_sign(degs, i) : 1;
                        total += sign == 1 ? term : -term;
                    }
                }
                if (total.is_zero())
                    continue;
                if (s == 0)
                    comp.add_entry({}, total);
                else
                    comp.add_entry(tuple, total);
            }
        }
        if (!comp.is_zero())
            out.set_component(s, std::move(comp));
    }
    return out;
}

HochschildCochain gerstenhaber_bracket(const HochschildCochain& phi, const HochschildCochain& psi)
{
    HochschildCochain left = brace_compose(phi, psi);
    HochschildCochain right = brace_compose(psi, phi);
    int sign = (phi.reduced_degree() % 2 != 0) && (psi.reduced_degree() % 2 != 0) ? -1 : 1;
    return sign == 1 ? left - right : left + right;
}

namespace {

HochschildCochain structure_as_cochain(const CategoryPtr& cat, const RingPtr& r)
{
    HochschildCochain mu(cat, r, 2, cat->arity_cap());
    for (const auto& [s, op] : cat->structure_maps())
        mu.set_component(s, op.promote(merge_rings(op.ring(), r)));
    return mu;
}

} // namespace

HochschildCochain hochschild_differential(const HochschildCochain& phi)
{
    HochschildCochain mu = structure_as_cochain(phi.category(), phi.ring());
    return gerstenhaber_bracket(mu, phi);
}

CochainBasis cochain_basis(const CategoryPtr& a0, int degree, int length_cap)
{
    CochainBasis out;
    for (int s = 0; s <= length_cap; ++s) {
        if (s == 0) {
            for (int L = 0; L < int(a0->objects().size()); ++L)
                for (int g = 0; g < a0->basis()->dimension(); ++g)
                    if (a0->hom_source(g) == L && a0->hom_target(g) == L &&
                        a0->basis()->degree(g) == degree)
                        out.slots.push_back({0, {L}, g});
            continue;
        }
        for (const auto& tuple : a0->composable_tuples(s)) {
            int src = a0->hom_source(tuple.front());
            int dst = a0->hom_target(tuple.back());
            int want = degree - s;
            for (int g : tuple)
                want += a0->basis()->degree(g);
            for (int g = 0; g < a0->basis()->dimension(); ++g)
                if (a0->hom_source(g) == src && a0->hom_target(g) == dst &&
                    a0->basis()->degree(g) == want)
                    out.slots.push_back({s, tuple, g});
        }
    }
    return out;
}

std::vector<SeriesElement> cochain_coordinates(const HochschildCochain& phi,
                                               const CochainBasis& basis)
{
    std::vector<SeriesElement> out;
    for (const auto& slot : basis.slots) {
        Element v = slot.length == 0 ? phi.value_at(slot.tuple[0])
                                     : (phi.component(slot.length)
                                            ? phi.component(slot.length)->entry(slot.tuple)
                                            : Element(phi.category()->basis(), phi.ring()));
        out.push_back(v.coefficient(slot.target));
    }
    return out;
}

HochschildCochain cochain_from_coordinates(const CategoryPtr& a0, const RingPtr& ring, int degree,
                                           int length_cap, const CochainBasis& basis,
                                           const std::vector<SeriesElement>& coords)
{
    HochschildCochain out(a0, ring, degree, length_cap);
    std::map<int, MultilinearOperation> comps;
    for (size_t i = 0; i < basis.slots.size(); ++i) {
        if (coords[i].is_zero())
            continue;
        const auto& slot = basis.slots[i];
        auto it = comps.find(slot.length);
        if (it == comps.end())
            it = comps
                     .emplace(slot.length,
                              MultilinearOperation(slot.length, degree - slot.length,
                                                   Symmetry::None, a0->basis(), a0->basis(), ring))
                     .first;
        Element v(a0->basis(), ring);
        v.set_coefficient(slot.target, coords[i]);
        it->second.add_entry(slot.length == 0 ? std::vector<int>{} : slot.tuple, v);
    }
    for (auto& [s, op] : comps)
        out.set_component(s, std::move(op));
    return out;
}

HHResult hh_cohomology(const CategoryPtr& a0, int degree, int length_cap)
{
    if (!a0->ring()->is_trivial() || a0->is_curved())
        fail("RingMismatch", "Hochschild cohomology is taken over the ground field");
    if (length_cap + 1 > a0->arity_cap())
        fail("BadLengthCap",
             "length cap + 1 exceeds the arity cap; the differential would be unknown");

    RingPtr k = LocalRing::ground_field();
    CochainBasis bd = cochain_basis(a0, degree, length_cap);
    CochainBasis bup = cochain_basis(a0, degree + 1, length_cap);
    CochainBasis bdn = cochain_basis(a0, degree - 1, length_cap);

    auto dmat = [&](const CochainBasis& from, const CochainBasis& to, int deg) {
        Matrix m(int(to.slots.size()), int(from.slots.size()));
        for (size_t c = 0; c < from.slots.size(); ++c) {
            std::vector<SeriesElement> unit(from.slots.size(), SeriesElement::zero(k));
            unit[c] = SeriesElement::constant(k, Scalar(1));
            HochschildCochain phi =
                cochain_from_coordinates(a0, k, deg, length_cap, from, unit);
            auto img = cochain_coordinates(hochschild_differential(phi), to);
            for (size_t r = 0; r < to.slots.size(); ++r)
                m.at(int(r), int(c)) = img[r].constant_term();
        }
        return m;
    };

    Matrix d_out = dmat(bd, bup, degree);
    Matrix d_in = dmat(bdn, bd, degree - 1);

    HHResult out;
    out.degree = degree;
    out.length_cap = length_cap;
    int n = int(bd.slots.size());
    auto ker = kernel_basis(d_out);
    out.dimension = int(ker.size()) - rank(d_in);

    // representatives: kernel vectors independent modulo the image
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
    for (int c = 0; c < d_in.cols(); ++c) {
        std::vector<Scalar> col;
        for (int r = 0; r < n; ++r)
            col.push_back(d_in.at(r, c));
        extend(col);
    }
    for (const auto& kv : ker)
        if (extend(kv)) {
            std::vector<SeriesElement> coords;
            for (const auto& x : kv)
                coords.push_back(SeriesElement::constant(k, x));
            out.representatives.push_back(
                cochain_from_coordinates(a0, k, degree, length_cap, bd, coords));
        }
    return out;
}

DeformationFamily make_deformation(CategoryPtr a0, CategoryPtr total)
{
    if (a0->basis() != total->basis() || a0->hom_tags() != total->hom_tags())
        fail("ReductionMismatch", "family and base share bases and hom tags");
    if (!a0->ring()->is_trivial() || a0->is_curved())
        fail("ReductionMismatch", "the base category is uncurved over the ground field");
    CategoryPtr red = reduce_mod_max_ideal(total);
    for (int s = 1; s <= total->arity_cap(); ++s) {
        const auto* rop = red->structure_map(s);
        const auto* aop = a0->structure_map(s);
        if ((rop == nullptr) != (aop == nullptr))
            fail("ReductionMismatch", "reduction differs from the declared base at arity " +
                                          std::to_string(s));
        if (!rop)
            continue;
        for (const auto& [tuple, value] : rop->stored_entries())
            if (!(aop->entry(tuple) == value))
                fail("ReductionMismatch", "reduction differs at " + tuple_names(a0, tuple));
        for (const auto& [tuple, value] : aop->stored_entries())
            if (!(rop->entry(tuple) == value))
                fail("ReductionMismatch", "reduction differs at " + tuple_names(a0, tuple));
    }
    auto rel = check_ainf(*total, total->arity_cap());
    if (!rel.pass())
        fail("NotMaurerCartan", "family fails the A-infinity relations at " +
                                    tuple_names(total, rel.violations.front().tuple));
    return DeformationFamily{std::move(a0), std::move(total)};
}

HochschildCochain deformation_to_mc(const DeformationFamily& d)
{
    const RingPtr& r = d.total->ring();
    HochschildCochain alpha(d.base, r, 2, d.total->arity_cap());
    for (int s = 0; s <= d.total->arity_cap(); ++s) {
        const auto* top = d.total->structure_map(s);
        const auto* bop = d.base->structure_map(s);
        if (!top && !bop)
            continue;
        MultilinearOperation diff(s, 2 - s, Symmetry::None, d.base->basis(), d.base->basis(), r);
        std::vector<std::vector<int>> keys;
        if (top)
            for (const auto& [tuple, value] : top->stored_entries())
                keys.push_back(tuple);
        if (bop)
            for (const auto& [tuple, value] : bop->stored_entries())
                if (std::find(keys.begin(), keys.end(), tuple) == keys.end())
                    keys.push_back(tuple);
        for (const auto& tuple : keys) {
            Element v(d.base->basis(), r);
            if (top)
                v += top->entry(tuple).promote(r);
            if (bop)
                v -= bop->entry(tuple).promote(r);
            if (!v.is_zero()) {
                if (!v.coefficients_in_maximal_ideal())
                    fail("ReductionMismatch", "deformation cochain escapes the maximal ideal");
                diff.add_entry(tuple, v);
            }
        }
        if (!diff.is_zero())
            alpha.set_component(s, std::move(diff));
    }
    return alpha;
}

DeformationFamily mc_to_deformation(const HochschildCochain& alpha)
{
    const CategoryPtr& a0 = alpha.category();
    const RingPtr& r = alpha.ring();
    std::map<int, MultilinearOperation> maps;
    for (int s = 0; s <= a0->arity_cap(); ++s) {
        const auto* aop = alpha.component(s);
        const auto* bop = a0->structure_map(s);
        if (!aop && !bop)
            continue;
        MultilinearOperation tot(s, 2 - s, Symmetry::None, a0->basis(), a0->basis(), r);
        if (bop)
            for (const auto& [tuple, value] : bop->stored_entries())
                tot.add_entry(tuple, value.promote(r));
        if (aop)
            for (const auto& [tuple, value] : aop->stored_entries())
                tot.add_entry(tuple, value.promote(r));
        if (!tot.is_zero())
            maps.emplace(s, std::move(tot));
    }
    CategoryPtr total = CurvedCategory::make(r, a0->objects(), a0->basis(), a0->hom_tags(),
                                             std::move(maps), a0->arity_cap());
    auto rel = check_ainf(*total, total->arity_cap());
    if (!rel.pass())
        fail("NotMaurerCartan", "cochain fails Maurer-Cartan at " +
                                    tuple_names(total, rel.violations.front().tuple));
    return DeformationFamily{a0, total};
}

namespace {

// order-1 slice of a family cochain in the direction of one base variable
HochschildCochain linear_slice(const HochschildCochain& alpha, int variable, int length_cap)
{
    const CategoryPtr& a0 = alpha.category();
    RingPtr k = LocalRing::ground_field();
    HochschildCochain out(a0, k, 2, length_cap);
    size_t nv = size_t(alpha.ring()->num_variables());
    for (const auto& [s, op] : alpha.components()) {
        if (s > length_cap)
            continue;
        MultilinearOperation sl(s, 2 - s, Symmetry::None, a0->basis(), a0->basis(), k);
        for (const auto& [tuple, value] : op.stored_entries()) {
            Element v(a0->basis(), k);
            for (const auto& [i, c] : value.coefficients()) {
                Monomial want(nv, 0);
                want[size_t(variable)] = 1;
                auto hit = c.terms().find(want);
                if (hit != c.terms().end())
                    v.set_coefficient(i, SeriesElement::constant(k, hit->second));
            }
            if (!v.is_zero())
                sl.add_entry(tuple, v);
        }
        if (!sl.is_zero())
            out.set_component(s, std::move(sl));
    }
    return out;
}

} // namespace

FamilyKS family_ks_map(const DeformationFamily& d, int length_cap)
{
    HochschildCochain alpha = deformation_to_mc(d);
    FamilyKS out;
    out.hh2 = hh_cohomology(d.base, 2, length_cap);
    int nvars = d.total->ring()->num_variables();
    out.matrix = Matrix(nvars, out.hh2.dimension);

    CochainBasis b2 = cochain_basis(d.base, 2, length_cap);
    CochainBasis b1 = cochain_basis(d.base, 1, length_cap);
    RingPtr k = LocalRing::ground_field();

    // columns: HH^2 representatives then the image of d
    int reps = out.hh2.dimension;
    Matrix span(int(b2.slots.size()), reps + int(b1.slots.size()));
    for (int j = 0; j < reps; ++j) {
        auto coords = cochain_coordinates(out.hh2.representatives[size_t(j)], b2);
        for (size_t r = 0; r < b2.slots.size(); ++r)
            span.at(int(r), j) = coords[r].constant_term();
    }
    for (size_t c = 0; c < b1.slots.size(); ++c) {
        std::vector<SeriesElement> unit(b1.slots.size(), SeriesElement::zero(k));
        unit[c] = SeriesElement::constant(k, Scalar(1));
        HochschildCochain psi = cochain_from_coordinates(d.base, k, 1, length_cap, b1, unit);
        auto img = cochain_coordinates(hochschild_differential(psi), b2);
        for (size_t r = 0; r < b2.slots.size(); ++r)
            span.at(int(r), reps + int(c)) = img[r].constant_term();
    }

    for (int v = 0; v < nvars; ++v) {
        HochschildCochain phi = linear_slice(alpha, v, length_cap);
        HochschildCochain dphi = hochschild_differential(phi);
        if (!dphi.is_zero())
            fail("OrderOnePartNotClosed", "order-1 part of the family is not a cocycle");
        auto coords = cochain_coordinates(phi, b2);
        std::vector<Scalar> rhs;
        for (const auto& c : coords)
            rhs.push_back(c.constant_term());
        auto sol = solve(span, rhs);
        if (!sol)
            fail("Internal", "closed cochain escapes the cohomology span");
        for (int j = 0; j < reps; ++j)
            out.matrix.at(v, j) = (*sol)[size_t(j)];
    }
    out.rank = rank(out.matrix);
    out.surjective = out.rank == out.hh2.dimension;
    out.injective = out.rank == nvars;
    return out;
}

CategoryPtr pullback_category(const CategoryPtr& total, const RingMap& psi)
{
    const RingPtr& s = psi.target();
    std::map<int, MultilinearOperation> maps;
    for (const auto& [arity, op] : total->structure_maps()) {
        MultilinearOperation pulled(arity, op.degree(), Symmetry::None, total->basis(),
                                    total->basis(), s);
        for (const auto& [tuple, value] : op.stored_entries()) {
            Element v(total->basis(), s);
            for (const auto& [i, c] : value.coefficients())
                v.set_coefficient(i, psi.apply(c));
            if (!v.is_zero())
                pulled.set_entry(tuple, v);
        }
        if (!pulled.is_zero())
            maps.emplace(arity, std::move(pulled));
    }
    return CurvedCategory::make(s, total->objects(), total->basis(), total->hom_tags(),
                                std::move(maps), total->arity_cap());
}

namespace {

// residual of the functor equation as coordinates over the degree-2 cochain
// basis: entry (slot) -> series coefficient
std::vector<SeriesElement> functor_residual_coords(const CurvedFunctor& f,
                                                   const CochainBasis& b2, int length_cap)
{
    RelationReport rep = check_functor(f, length_cap);
    RingPtr s = f.target()->ring();
    std::vector<SeriesElement> coords(b2.slots.size(), SeriesElement::zero(s));
    for (const auto& v : rep.violations) {
        for (size_t i = 0; i < b2.slots.size(); ++i) {
            const auto& slot = b2.slots[i];
            if (slot.length != v.arity)
                continue;
            if (v.arity == 0) {
                if (slot.tuple != v.tuple)
                    continue;
            } else if (slot.tuple != v.tuple) {
                continue;
            }
            coords[i] += v.residual.coefficient(slot.target);
        }
    }
    return coords;
}

std::vector<Monomial> monomials_of_order(const RingPtr& ring, int order)
{
    std::vector<Monomial> out;
    int n = ring->num_variables();
    Monomial cur(size_t(n), 0);
    std::function<void(int, int)> rec = [&](int var, int deg) {
        if (var == n) {
            if (deg == order && !SeriesElement::monomial(ring, cur, Scalar(1)).is_zero())
                out.push_back(cur);
            return;
        }
        int w = ring->variables()[size_t(var)].weight;
        for (unsigned e = 0; deg + int(e) * w <= order; ++e) {
            cur[size_t(var)] = e;
            rec(var + 1, deg + int(e) * w);
        }
        cur[size_t(var)] = 0;
    };
    rec(0, 0);
    return out;
}

} // namespace

VersalExtensionResult versal_extension(const DeformationFamily& b, const CategoryPtr& a_total,
                                       const CurvedFunctor* iso, int length_cap)
{
    const RingPtr& R = b.total->ring();
    const RingPtr& S = a_total->ring();
    if (R->has_relations())
        fail("RingHasRelations", "the family base must be a power series ring");

    FamilyKS ks = family_ks_map(b, length_cap);
    if (!ks.surjective)
        fail("KSNotSurjective", "the family Kodaira-Spencer map does not cover HH^2");

    // Put A on the bases of B0, transporting along the given isomorphism.
    CategoryPtr a_work = a_total;
    std::optional<CurvedFunctor> back; // transported -> original A
    if (iso) {
        if (iso->source()->basis() != a_total->basis() ||
            iso->target()->basis() != b.base->basis())
            fail("BasisMismatch", "the isomorphism must map A0 onto B0");
        // promote the ground iso to S coefficients on the B0 skeleton
        CategoryPtr shell = CurvedCategory::make(S, b.base->objects(), b.base->basis(),
                                                 b.base->hom_tags(), {}, a_total->arity_cap());
        std::map<int, MultilinearOperation> comps;
        for (const auto& [s, comp] : iso->components()) {
            MultilinearOperation up(s, comp.degree(), Symmetry::None, a_total->basis(),
                                    b.base->basis(), S);
            for (const auto& [tuple, value] : comp.stored_entries())
                up.set_entry(tuple, value.promote(S));
            comps.emplace(s, std::move(up));
        }
        CurvedFunctor to_shell(a_total, shell, iso->object_map(), std::move(comps));
        TransportResult tr = transport_structure(a_total, to_shell);
        a_work = tr.category;
        back.emplace(invert_iso(tr.functor));
    } else {
        if (a_total->basis() != b.base->basis())
            fail("BasisMismatch", "A0 and B0 must coincide when no isomorphism is given");
    }
    // the reduction of a_work must be B0 on the nose
    make_deformation(b.base, a_work);

    CochainBasis b2 = cochain_basis(b.base, 2, length_cap);
    CochainBasis b1 = cochain_basis(b.base, 1, length_cap);
    int nvars = R->num_variables();
    int N = S->truncation_order();

    std::vector<SeriesElement> psi_images(size_t(nvars), SeriesElement::zero(S));
    // functor components, starting from the identity
    std::map<int, MultilinearOperation> fcomps;
    {
        MultilinearOperation f1(1, 0, Symmetry::None, b.base->basis(), b.base->basis(), S);
        for (int i = 0; i < b.base->basis()->dimension(); ++i)
            f1.set_entry({i}, Element::generator(b.base->basis(), i, S));
        fcomps.emplace(1, std::move(f1));
    }
    std::vector<int> idmap;
    for (size_t i = 0; i < b.base->objects().size(); ++i)
        idmap.push_back(int(i));

    auto residual_of = [&](const std::vector<SeriesElement>& images,
                           const std::map<int, MultilinearOperation>& comps) {
        RingMap psi(R, S, images);
        CategoryPtr pulled = pullback_category(b.total, psi);
        CurvedFunctor f(pulled, a_work, idmap, comps);
        return functor_residual_coords(f, b2, length_cap);
    };

    auto coords_order = [&](const std::vector<SeriesElement>& coords) {
        int best = INT_MAX;
        for (const auto& c : coords)
            best = std::min(best, c.order());
        return best;
    };

    std::vector<SeriesElement> resid = residual_of(psi_images, fcomps);
    for (int guard = 0; guard <= N + 1 && coords_order(resid) != INT_MAX; ++guard) {
        if (guard == N + 1)
            fail("Internal", "versal extension failed to stabilize");
        int k = coords_order(resid);
        auto monos = monomials_of_order(S, k);
        if (monos.empty())
            fail("Internal", "residual order has no monomials");
        SeriesElement probe_mono = SeriesElement::monomial(S, monos[0], Scalar(1));

        // effect columns at order k: one probe per correction direction
        int ncols = nvars + int(b1.slots.size());
        Matrix M(int(b2.slots.size()), ncols);
        for (int v = 0; v < nvars; ++v) {
            auto images = psi_images;
            images[size_t(v)] += probe_mono;
            auto shifted = residual_of(images, fcomps);
            for (size_t r = 0; r < b2.slots.size(); ++r) {
                SeriesElement delta = shifted[r] - resid[r];
                auto hit = delta.terms().find(monos[0]);
                if (hit != delta.terms().end())
                    M.at(int(r), v) = hit->second;
            }
        }
        for (size_t j = 0; j < b1.slots.size(); ++j) {
            auto comps = fcomps;
            const auto& slot = b1.slots[j];
            auto it = comps.find(slot.length);
            if (it == comps.end())
                it = comps
                         .emplace(slot.length,
                                  MultilinearOperation(slot.length, 1 - slot.length,
                                                       Symmetry::None, b.base->basis(),
                                                       b.base->basis(), S))
                         .first;
            Element v(b.base->basis(), S);
            v.set_coefficient(slot.target, probe_mono);
            it->second.add_entry(slot.length == 0 ? std::vector<int>{} : slot.tuple, v);
            auto shifted = residual_of(psi_images, comps);
            for (size_t r = 0; r < b2.slots.size(); ++r) {
                SeriesElement delta = shifted[r] - resid[r];
                auto hit = delta.terms().find(monos[0]);
                if (hit != delta.terms().end())
                    M.at(int(r), nvars + int(j)) = hit->second;
            }
        }

        for (const auto& mono : monos) {
            std::vector<Scalar> rhs;
            bool any = false;
            for (const auto& c : resid) {
                auto hit = c.terms().find(mono);
                rhs.push_back(hit == c.terms().end() ? Scalar(0) : -hit->second);
                if (!rhs.back().is_zero())
                    any = true;
            }
            if (!any)
                continue;
            auto sol = solve(M, rhs);
            if (!sol)
                fail("ObstructionEscapes",
                     "a discrepancy class at order " + std::to_string(k) +
                         " lies outside the image of the Kodaira-Spencer map; "
                         "caps may be too low or the input invalid");
            SeriesElement mono_elt = SeriesElement::monomial(S, mono, Scalar(1));
            for (int v = 0; v < nvars; ++v)
                if (!(*sol)[size_t(v)].is_zero())
                    psi_images[size_t(v)] += mono_elt.scaled((*sol)[size_t(v)]);
            for (size_t j = 0; j < b1.slots.size(); ++j) {
                Scalar c = (*sol)[size_t(nvars) + j];
                if (c.is_zero())
                    continue;
                const auto& slot = b1.slots[j];
                auto it = fcomps.find(slot.length);
                if (it == fcomps.end())
                    it = fcomps
                             .emplace(slot.length,
                                      MultilinearOperation(slot.length, 1 - slot.length,
                                                           Symmetry::None, b.base->basis(),
                                                           b.base->basis(), S))
                             .first;
                Element v(b.base->basis(), S);
                v.set_coefficient(slot.target, mono_elt.scaled(c));
                it->second.add_entry(slot.length == 0 ? std::vector<int>{} : slot.tuple, v);
            }
        }
        resid = residual_of(psi_images, fcomps);
    }

    RingMap psi(R, S, psi_images);
    CategoryPtr pulled = pullback_category(b.total, psi);
    CurvedFunctor inner(pulled, a_work, idmap, fcomps);
    CurvedFunctor final_f = back ? compose_functors(*back, inner) : inner;

    VersalExtensionResult out{std::move(psi),
                              pulled,
                              final_f,
                              check_functor(final_f, length_cap),
                              reduced_functor_is_quasi_iso_on_homs(reduce_functor(final_f)),
                              length_cap,
                              {}};
    out.notes.push_back("length cap " + std::to_string(length_cap));
    out.notes.push_back("truncation order " + std::to_string(N));
    out.notes.push_back("arity cap " + std::to_string(b.total->arity_cap()));
    return out;
}

} // namespace kuranishi
