#ifndef KURANISHI_TEST_FIXTURES_HPP
#define KURANISHI_TEST_FIXTURES_HPP

#include "kuranishi/linf.hpp"

namespace kuranishi::fixtures {

inline RingPtr power_series(std::vector<std::string> names, int order)
{
    std::vector<LocalRing::Variable> vars;
    for (auto& n : names)
        vars.push_back({n, 1});
    return LocalRing::make(vars, {}, order);
}

inline Element gen(const BasisPtr& b, int i)
{
    return Element::generator(b, i, LocalRing::ground_field());
}

/// All brackets zero; degrees as given.
inline AlgebraPtr abelian_algebra(std::vector<int> degrees, int cap = 6)
{
    std::vector<std::pair<std::string, int>> names;
    for (size_t i = 0; i < degrees.size(); ++i)
        names.emplace_back("e" + std::to_string(i + 1), degrees[i]);
    return LInfinityAlgebra::make(GradedBasis::make(std::move(names)), {}, cap);
}

/// sl2 in degree 0: [e,f] = h, [h,e] = 2e, [h,f] = -2f.
inline AlgebraPtr sl2_algebra(int cap = 6)
{
    auto basis = GradedBasis::make({{"e", 0}, {"h", 0}, {"f", 0}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({0, 2}, gen(basis, 1));                // [e,f] = h
    l2.set_entry({1, 0}, gen(basis, 0).scaled(Scalar(2)));  // [h,e] = 2e
    l2.set_entry({1, 2}, gen(basis, 2).scaled(Scalar(-2))); // [h,f] = -2f
    std::map<int, MultilinearOperation> ops;
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// e in degree 1, f in degree 2, {e,e} = f. Versal base k[[x]]/(x^2/2).
inline AlgebraPtr obstruction_algebra(int cap = 6)
{
    auto basis = GradedBasis::make({{"e", 1}, {"f", 2}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({0, 0}, gen(basis, 1));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// e1, e2 in degree 1, f in degree 2, {e1,e2} = f. Versal base k[[x1,x2]]/(x1 x2).
inline AlgebraPtr two_var_algebra(int cap = 6)
{
    auto basis = GradedBasis::make({{"e1", 1}, {"e2", 1}, {"f", 2}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({0, 1}, gen(basis, 2));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// Two-step acyclic complex: a in degree 1 maps to b in degree 2.
inline AlgebraPtr acyclic_pair(int cap = 6)
{
    auto basis = GradedBasis::make({{"a", 1}, {"b", 2}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l1(1, 1, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l1.set_entry({0}, gen(basis, 1));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(1, std::move(l1));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// DGLA with a rank-1 differential and a bracket hitting an exact cocycle:
/// e, u in degree 1; v, f in degree 2; l1(u) = v, {e,e} = v, {e,u} = f.
/// Homotopy transfer produces a nonzero induced l^3 on H (a Massey product).
inline AlgebraPtr massey_dgla(int cap = 6)
{
    auto basis = GradedBasis::make({{"e", 1}, {"u", 1}, {"v", 2}, {"f", 2}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l1(1, 1, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l1.set_entry({1}, gen(basis, 2));
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({0, 0}, gen(basis, 2));
    l2.set_entry({0, 1}, gen(basis, 3));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(1, std::move(l1));
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// Gauge playground: a in degree 0, b in degree 1 with l1(a) = b, plus the
/// obstruction pair e (1), f (2) with {e,e} = f.
inline AlgebraPtr gauge_algebra(int cap = 6)
{
    auto basis = GradedBasis::make({{"a", 0}, {"b", 1}, {"e", 1}, {"f", 2}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l1(1, 1, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l1.set_entry({0}, gen(basis, 1));
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({2, 2}, gen(basis, 3));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(1, std::move(l1));
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

/// sl2 with one structure-constant sign flipped; Jacobi fails at arity 3.
inline AlgebraPtr sl2_broken(int cap = 6)
{
    auto basis = GradedBasis::make({{"e", 0}, {"h", 0}, {"f", 0}});
    auto k = LocalRing::ground_field();
    MultilinearOperation l2(2, 0, Symmetry::GradedSymmetricReduced, basis, basis, k);
    l2.set_entry({0, 2}, gen(basis, 1));
    l2.set_entry({1, 0}, gen(basis, 0).scaled(Scalar(-2))); // wrong sign
    l2.set_entry({1, 2}, gen(basis, 2).scaled(Scalar(-2)));
    std::map<int, MultilinearOperation> ops;
    ops.emplace(2, std::move(l2));
    return LInfinityAlgebra::make(basis, std::move(ops), cap);
}

} // namespace kuranishi::fixtures

#include "kuranishi/ainf.hpp"

namespace kuranishi::fixtures {

/// One object, hom = k.1 in degree 0, mu^2(1,1) = 1.
inline CategoryPtr point_category(int cap = 6)
{
    auto k = LocalRing::ground_field();
    auto basis = GradedBasis::make({{"1", 0}});
    MultilinearOperation mu2(2, 0, Symmetry::None, basis, basis, k);
    mu2.set_entry({0, 0}, Element::generator(basis, 0, k));
    std::map<int, MultilinearOperation> mu;
    mu.emplace(2, std::move(mu2));
    return CurvedCategory::make(k, {"pt"}, basis, {{0, 0}}, std::move(mu), cap);
}

/// Dual numbers k[eps]/eps^2 in degree 0 over the given ring, with
/// mu^2(eps,eps) = defect (zero for the plain algebra, t for the universal
/// one-parameter deformation).
inline CategoryPtr dual_numbers(RingPtr r, SeriesElement defect, int cap = 6)
{
    auto basis = GradedBasis::make({{"1", 0}, {"eps", 0}});
    MultilinearOperation mu2(2, 0, Symmetry::None, basis, basis, r);
    Element one = Element::generator(basis, 0, r);
    Element eps = Element::generator(basis, 1, r);
    mu2.set_entry({0, 0}, one);
    mu2.set_entry({0, 1}, eps);
    mu2.set_entry({1, 0}, eps);
    if (!defect.is_zero())
        mu2.set_entry({1, 1}, one.scaled(defect));
    std::map<int, MultilinearOperation> mu;
    mu.emplace(2, std::move(mu2));
    return CurvedCategory::make(r, {"pt"}, basis, {{0, 0}, {0, 0}}, std::move(mu), cap);
}

inline CategoryPtr dual_numbers_plain(int cap = 6)
{
    auto k = LocalRing::ground_field();
    return dual_numbers(k, SeriesElement::zero(k), cap);
}

/// One object with hom generated by x (degree 1) and y (degree 2),
/// mu^1(x) = y; curvature t*y when curved. The bounding cochain is -t*x.
inline CategoryPtr curved_line(RingPtr r, bool curved, bool with_mu1, int cap = 6)
{
    auto basis = GradedBasis::make({{"x", 1}, {"y", 2}});
    std::map<int, MultilinearOperation> mu;
    if (with_mu1) {
        MultilinearOperation mu1(1, 1, Symmetry::None, basis, basis, r);
        mu1.set_entry({0}, Element::generator(basis, 1, r));
        mu.emplace(1, std::move(mu1));
    }
    if (curved) {
        MultilinearOperation mu0(0, 2, Symmetry::None, basis, basis, r);
        mu0.set_entry({}, Element::generator(basis, 1, r)
                              .scaled(SeriesElement::variable(r, 0)));
        mu.emplace(0, std::move(mu0));
    }
    return CurvedCategory::make(r, {"L"}, basis, {{0, 0}, {0, 0}}, std::move(mu), cap);
}

/// Two objects P, Q with endomorphism complexes x -> y at each, a connecting
/// hom(P,Q) = <m (0), n (1)>, insertion products xP*m = n and m*xQ = n, and
/// curvature t*yP + t^2*yQ. Both objects are unobstructed.
inline CategoryPtr two_object_curved(RingPtr r, bool curved, int cap = 6)
{
    auto basis = GradedBasis::make({{"xP", 1}, {"yP", 2}, {"xQ", 1}, {"yQ", 2},
                                    {"m", 0}, {"n", 1}});
    std::vector<std::pair<int, int>> tags{{0, 0}, {0, 0}, {1, 1}, {1, 1}, {0, 1}, {0, 1}};
    std::map<int, MultilinearOperation> mu;
    MultilinearOperation mu1(1, 1, Symmetry::None, basis, basis, r);
    mu1.set_entry({0}, Element::generator(basis, 1, r));
    mu1.set_entry({2}, Element::generator(basis, 3, r));
    mu.emplace(1, std::move(mu1));
    MultilinearOperation mu2(2, 0, Symmetry::None, basis, basis, r);
    mu2.set_entry({0, 4}, Element::generator(basis, 5, r)); // xP * m = n
    mu2.set_entry({4, 2}, Element::generator(basis, 5, r)); // m * xQ = n
    mu.emplace(2, std::move(mu2));
    if (curved) {
        MultilinearOperation mu0(0, 2, Symmetry::None, basis, basis, r);
        auto t = SeriesElement::variable(r, 0);
        Element c = Element::generator(basis, 1, r).scaled(t);
        c += Element::generator(basis, 3, r).scaled(t * t);
        mu0.set_entry({}, c);
        mu.emplace(0, std::move(mu0));
    }
    return CurvedCategory::make(r, {"P", "Q"}, basis, tags, std::move(mu), cap);
}

/// Two disjoint dual-numbers objects (no cross homs); defects deform
/// epsP^2 and epsQ^2 independently.
inline CategoryPtr two_dual_numbers(RingPtr r, SeriesElement defectP, SeriesElement defectQ,
                                    int cap = 6)
{
    auto basis =
        GradedBasis::make({{"oneP", 0}, {"epsP", 0}, {"oneQ", 0}, {"epsQ", 0}});
    std::vector<std::pair<int, int>> tags{{0, 0}, {0, 0}, {1, 1}, {1, 1}};
    MultilinearOperation mu2(2, 0, Symmetry::None, basis, basis, r);
    auto set_block = [&](int one, int eps, const SeriesElement& defect) {
        mu2.set_entry({one, one}, Element::generator(basis, one, r));
        mu2.set_entry({one, eps}, Element::generator(basis, eps, r));
        mu2.set_entry({eps, one}, Element::generator(basis, eps, r));
        if (!defect.is_zero())
            mu2.set_entry({eps, eps}, Element::generator(basis, one, r).scaled(defect));
    };
    set_block(0, 1, defectP);
    set_block(2, 3, defectQ);
    std::map<int, MultilinearOperation> mu;
    mu.emplace(2, std::move(mu2));
    return CurvedCategory::make(r, {"P", "Q"}, basis, tags, std::move(mu), cap);
}

} // namespace kuranishi::fixtures

#endif
