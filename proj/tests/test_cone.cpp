#include "doctest.h"

#include "kuranishi/cone.hpp"
#include "kuranishi/novikov.hpp"

#include <random>
#include <set>
#include <functional>

using namespace kuranishi;

namespace {

ConeMonoid make_cone(int rank, std::vector<std::vector<long>> gens,
                     std::vector<std::string> names = {})
{
    ConeMonoid c;
    c.ambient_rank = rank;
    c.generators = std::move(gens);
    c.generator_names = std::move(names);
    return c;
}

// Independent oracle: the cone contains a line iff the generators admit a
// nontrivial nonnegative integer dependency touching a nonzero generator.
// Exhaustive search over small coefficients; valid for the small random
// instances below by a Cramer bound on circuit coefficients.
bool oracle_contains_line(const ConeMonoid& c, long max_coeff)
{
    size_t k = c.generators.size();
    std::vector<long> lambda(k, 0);
    while (true) {
        size_t pos = 0;
        while (pos < k) {
            if (++lambda[pos] <= max_coeff)
                break;
            lambda[pos] = 0;
            ++pos;
        }
        if (pos == k)
            return false;
        std::vector<long> sum(size_t(c.ambient_rank), 0);
        bool touches_nonzero = false;
        for (size_t j = 0; j < k; ++j) {
            if (lambda[j] == 0)
                continue;
            bool zero_gen = true;
            for (size_t i = 0; i < sum.size(); ++i) {
                sum[i] += lambda[j] * c.generators[j][i];
                if (c.generators[j][i] != 0)
                    zero_gen = false;
            }
            if (!zero_gen)
                touches_nonzero = true;
        }
        bool zero = true;
        for (long s : sum)
            if (s != 0)
                zero = false;
        if (zero && touches_nonzero)
            return true;
    }
}

// Monoid elements reachable with at most n generator applications. A valid
// count of the truncated quotient basis only when every element has all its
// factorizations of equal length (e.g. all generators share first coordinate
// 1), since truncation kills an element iff its longest factorization
// exceeds n.
size_t monoid_count(const ConeMonoid& c, int n)
{
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> frontier{std::vector<long>(size_t(c.ambient_rank), 0)};
    seen.insert(frontier[0]);
    for (int step = 0; step < n; ++step) {
        std::vector<std::vector<long>> next;
        for (const auto& v : frontier)
            for (const auto& g : c.generators) {
                std::vector<long> w = v;
                for (size_t i = 0; i < w.size(); ++i)
                    w[i] += g[i];
                if (seen.insert(w).second)
                    next.push_back(w);
            }
        frontier = std::move(next);
    }
    return seen.size();
}

size_t quotient_dimension(const RingPtr& ring)
{
    // standard monomials = all monomials of weight <= N minus pivots
    int n = ring->num_variables();
    int N = ring->truncation_order();
    size_t total = 0;
    std::vector<unsigned> cur(size_t(n), 0);
    // count monomials with sum <= N (all weights are 1 for cone completions)
    std::function<void(int, int)> rec = [&](int var, int left) {
        if (var == n) {
            ++total;
            return;
        }
        for (int e = 0; e <= left; ++e)
            rec(var + 1, left - e);
    };
    rec(0, N);
    return total - ring->groebner_basis().size();
}

} // namespace

TEST_CASE("strong convexity verdicts")
{
    CHECK(is_strongly_convex(make_cone(2, {{1, 0}, {0, 1}})));
    CHECK(!is_strongly_convex(make_cone(2, {{1, 0}, {-1, 0}})));
    CHECK(is_strongly_convex(make_cone(2, {{1, 0}, {1, 1}, {1, 2}})));
    // zero generators add nothing to the cone
    CHECK(is_strongly_convex(make_cone(2, {{0, 0}, {1, 0}})));
    CHECK(is_strongly_convex(make_cone(1, {})));
}

TEST_CASE("strong convexity matches brute-force line search on random cones")
{
    std::mt19937 rng(2026);
    std::uniform_int_distribution<long> entry(-2, 2);
    std::uniform_int_distribution<int> rank_d(1, 3), count_d(2, 4);
    int lines_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        int rank = rank_d(rng);
        int count = count_d(rng);
        std::vector<std::vector<long>> gens;
        for (int j = 0; j < count; ++j) {
            std::vector<long> g(static_cast<size_t>(rank), 0L);
            for (auto& x : g)
                x = entry(rng);
            gens.push_back(std::move(g));
        }
        ConeMonoid c = make_cone(rank, gens);
        bool line = oracle_contains_line(c, 45);
        if (line)
            ++lines_seen;
        CHECK(is_strongly_convex(c) == !line);
    }
    CHECK(lines_seen > 0); // the sample actually exercises both verdicts
}

TEST_CASE("cone completions: free monoids have no relations")
{
    auto one = cone_completion(make_cone(1, {{1}}, {"r"}), 8);
    CHECK(one.ring->num_variables() == 1);
    CHECK(!one.ring->has_relations());

    auto two = cone_completion(make_cone(2, {{1, 0}, {0, 1}}, {"r1", "r2"}), 6);
    CHECK(!two.ring->has_relations());
}

TEST_CASE("toric ideal of a quadric cone")
{
    auto cc = cone_completion(make_cone(2, {{1, 0}, {1, 1}, {1, 2}}, {"a", "b", "c"}), 6);
    REQUIRE(cc.toric_relations.size() == 1);
    // a*c - b^2, monic with graded-lex leading monomial a*c
    TermMap expect{{Monomial{1, 0, 1}, Scalar(1)}, {Monomial{0, 2, 0}, Scalar(-1)}};
    CHECK(cc.toric_relations[0] == expect);
    // oracle: the quotient dimension equals the number of monoid elements
    CHECK(quotient_dimension(cc.ring) == monoid_count(cc.cone, 6));
}

TEST_CASE("toric relations vanish under the monomial map")
{
    auto check_kills = [](const ConeCompletion& cc) {
        for (const auto& rel : cc.toric_relations) {
            // map r^e to the ambient lattice point sum_j e_j g_j; the binomial
            // must pair equal lattice points with cancelling coefficients
            std::map<std::vector<long>, Scalar> image;
            for (const auto& [m, c] : rel) {
                std::vector<long> pt(size_t(cc.cone.ambient_rank), 0);
                for (size_t j = 0; j < m.size(); ++j)
                    for (size_t i = 0; i < pt.size(); ++i)
                        pt[i] += long(m[j]) * cc.cone.generators[j][i];
                image[pt] += c;
                if (image[pt].is_zero())
                    image.erase(pt);
            }
            CHECK(image.empty());
        }
    };
    check_kills(cone_completion(make_cone(2, {{1, 0}, {1, 1}, {1, 2}}, {"a", "b", "c"}), 6));
    check_kills(cone_completion(make_cone(1, {{2}, {3}}, {"u", "v"}), 8));
    check_kills(
        cone_completion(make_cone(2, {{1, 0}, {1, 1}, {1, 2}, {1, 3}}, {"x", "y", "z", "w"}), 5));
}

TEST_CASE("numerical semigroup <2,3>")
{
    auto cc = cone_completion(make_cone(1, {{2}, {3}}, {"u", "v"}), 8);
    REQUIRE(cc.toric_relations.size() == 1);
    TermMap expect{{Monomial{3, 0}, Scalar(1)}, {Monomial{0, 2}, Scalar(-1)}};
    CHECK(cc.toric_relations[0] == expect);
    // oracle: elements of <2,3> survive truncation iff their longest
    // factorization has at most 8 steps; brute-force both quantities
    std::set<long> surviving;
    for (long t = 0; t <= 100; ++t) {
        long longest = -1;
        for (long a = 0; 2 * a <= t; ++a)
            if ((t - 2 * a) % 3 == 0)
                longest = std::max(longest, a + (t - 2 * a) / 3);
        // a counts u=2 steps; also try trades favouring u as the short step
        for (long b = 0; 3 * b <= t; ++b)
            if ((t - 3 * b) % 2 == 0)
                longest = std::max(longest, b + (t - 3 * b) / 2);
        if (longest >= 0 && longest <= 8)
            surviving.insert(t);
    }
    CHECK(quotient_dimension(cc.ring) == surviving.size());
}

TEST_CASE("twisted cubic needs saturation")
{
    // lattice-basis binomials generate a strictly smaller ideal here; the
    // saturated toric ideal has the three quadrics
    auto cc =
        cone_completion(make_cone(2, {{1, 0}, {1, 1}, {1, 2}, {1, 3}}, {"x", "y", "z", "w"}), 5);
    CHECK(cc.toric_relations.size() == 3);
    for (const auto& rel : cc.toric_relations)
        CHECK(rel.size() == 2);
    CHECK(quotient_dimension(cc.ring) == monoid_count(cc.cone, 5));
}

TEST_CASE("completion rejects bad cones")
{
    CHECK_THROWS_WITH_AS(cone_completion(make_cone(1, {{1}, {-1}}, {"p", "m"}), 4),
                         doctest::Contains("NotStronglyConvex"), Error);
    CHECK_THROWS_WITH_AS(cone_completion(make_cone(2, {{0, 0}}, {"z"}), 4),
                         doctest::Contains("NotStronglyConvex"), Error);
}

TEST_CASE("inequality presentation is checked against generators")
{
    ConeMonoid c = make_cone(2, {{1, 0}, {1, 2}});
    c.inequalities = {{0, 1}};
    CHECK(inequality_violations(c).empty());
    c.inequalities = {{0, -1}};
    CHECK(inequality_violations(c) == std::vector<size_t>{1});
}

TEST_CASE("lambda-point specialization basics")
{
    auto cc = cone_completion(make_cone(1, {{1}}, {"u"}), 8);
    auto ru = SeriesElement::variable(cc.ring, 0);

    LambdaPoint p3{{rational(3)}, {rational(0)}};
    auto q3 = lambda_point_specialize(ru, cc, p3, rational(10));
    CHECK(q3 == NovikovElement::monomial(rational(3), Scalar(1), q3.cutoff(), true));
    CHECK(q3.valuation() == rational(3));

    LambdaPoint phalf{{rational(1)}, {rational(1, 2)}};
    auto mq = lambda_point_specialize(ru, cc, phalf, rational(10));
    REQUIRE(mq.terms().size() == 1);
    CHECK(mq.terms().begin()->second == Scalar(-1));
    CHECK(mq.terms().begin()->first == rational(1));

    LambdaPoint pi4{{rational(1)}, {rational(1, 4)}};
    auto iq = lambda_point_specialize(ru, cc, pi4, rational(10));
    CHECK(iq.terms().begin()->second == Scalar::i());

    LambdaPoint bad_phase{{rational(1)}, {rational(1, 3)}};
    CHECK_THROWS_WITH_AS(lambda_point_specialize(ru, cc, bad_phase, rational(10)),
                         doctest::Contains("IrrationalPhase"), Error);
    LambdaPoint bad_area{{rational(0)}, {rational(0)}};
    CHECK_THROWS_WITH_AS(lambda_point_specialize(ru, cc, bad_area, rational(10)),
                         doctest::Contains("NonPositiveArea"), Error);
}

TEST_CASE("specialization expands squares correctly")
{
    auto cc = cone_completion(make_cone(2, {{1, 0}, {0, 1}}, {"u", "v"}), 8);
    auto ru = SeriesElement::variable(cc.ring, 0);
    auto rv = SeriesElement::variable(cc.ring, 1);
    LambdaPoint p{{rational(1), rational(3, 2)}, {rational(0), rational(0)}};
    auto sq = lambda_point_specialize((ru + rv) * (ru + rv), cc, p, rational(10));
    NovikovElement expect(sq.cutoff(), true);
    expect = expect + NovikovElement::monomial(rational(2), Scalar(1), sq.cutoff(), true);
    expect = expect + NovikovElement::monomial(rational(5, 2), Scalar(2), sq.cutoff(), true);
    expect = expect + NovikovElement::monomial(rational(3), Scalar(1), sq.cutoff(), true);
    CHECK(sq == expect);
}

TEST_CASE("specialization must descend to the monoid")
{
    // duplicate generators force omega(u) = omega(v)
    auto cc = cone_completion(make_cone(1, {{1}, {1}}, {"u", "v"}), 6);
    auto ru = SeriesElement::variable(cc.ring, 0);
    LambdaPoint bad{{rational(1), rational(2)}, {rational(0), rational(0)}};
    CHECK_THROWS_WITH_AS(lambda_point_specialize(ru, cc, bad, rational(10)),
                         doctest::Contains("NonLinearPoint"), Error);
    LambdaPoint good{{rational(1), rational(1)}, {rational(1, 2), rational(1, 2)}};
    auto v = lambda_point_specialize(ru, cc, good, rational(10));
    CHECK(v.terms().begin()->second == Scalar(-1));
}

TEST_CASE("specialization is a ring homomorphism on seeded pairs")
{
    auto cc = cone_completion(make_cone(2, {{1, 0}, {1, 1}, {1, 2}}, {"a", "b", "c"}), 6);
    LambdaPoint p{{rational(1), rational(2), rational(3)}, {rational(0), rational(1, 2), rational(0)}};
    // kernel (1,-2,1): omega: 1 - 4 + 3 = 0, B: 0 - 1 + 0 integral: descends
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> d(-2, 2);
    Rational cutoff = rational(7); // (N+1)*min omega = 7
    auto rnd = [&]() {
        TermMap t;
        for (unsigned i = 0; i <= 1; ++i)
            for (unsigned j = 0; j <= 1; ++j)
                for (unsigned k = 0; k <= 1; ++k)
                    t[Monomial{i, j, k}] = Scalar(d(rng));
        return SeriesElement::from_terms(cc.ring, t);
    };
    for (int trial = 0; trial < 100; ++trial) {
        SeriesElement a = rnd(), b = rnd();
        auto lhs = lambda_point_specialize(a * b, cc, p, cutoff);
        auto rhs = lambda_point_specialize(a, cc, p, cutoff) *
                   lambda_point_specialize(b, cc, p, cutoff);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("large volume specialization")
{
    auto cc = cone_completion(make_cone(2, {{1, 0}, {0, 1}}, {"u", "v"}), 6);
    auto u = SeriesElement::variable(cc.ring, 0);
    auto v = SeriesElement::variable(cc.ring, 1);
    auto five = SeriesElement::constant(cc.ring, Scalar(5));
    CHECK(large_volume_specialize(five + u + u) == Scalar(5));
    CHECK(large_volume_specialize(u * v) == Scalar(0));
    auto one = SeriesElement::constant(cc.ring, Scalar(1));
    CHECK(large_volume_specialize((one + u).pow(3)) == Scalar(1));
    // ring homomorphism killing the maximal ideal exactly
    std::mt19937 rng(9);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        TermMap ta, tb;
        for (unsigned i = 0; i <= 2; ++i)
            for (unsigned j = 0; j <= 1; ++j) {
                ta[Monomial{i, j}] = Scalar(d(rng));
                tb[Monomial{i, j}] = Scalar(d(rng));
            }
        auto a = SeriesElement::from_terms(cc.ring, ta);
        auto b = SeriesElement::from_terms(cc.ring, tb);
        CHECK(large_volume_specialize(a * b) ==
              large_volume_specialize(a) * large_volume_specialize(b));
        CHECK(large_volume_specialize(a + b) ==
              large_volume_specialize(a) + large_volume_specialize(b));
    }
}

TEST_CASE("novikov valuation")
{
    Rational cut = rational(100);
    auto q = [&](const Rational& e, long c) {
        return NovikovElement::monomial(e, Scalar(c), cut, true);
    };
    auto x = q(rational(3), 1) - q(rational(5), 2);
    CHECK(x.valuation() == rational(3));
    NovikovElement zero(cut, true);
    CHECK(!zero.valuation().has_value());
    auto y = (q(rational(1), 1) + q(rational(2), 1)) *
             NovikovElement::monomial(rational(1, 2), Scalar(1), cut, true);
    CHECK(y.valuation() == rational(3, 2));

    // valuation additivity below the cutoff on seeded pairs
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> num(1, 9), den(1, 4), coeff(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        NovikovElement a(cut, true), b(cut, true);
        for (int t = 0; t < 3; ++t) {
            a = a + q(rational(num(rng), den(rng)), coeff(rng));
            b = b + q(rational(num(rng), den(rng)), coeff(rng));
        }
        if (a.is_zero() || b.is_zero())
            continue;
        auto prod = a * b;
        REQUIRE(prod.valuation().has_value());
        CHECK(*prod.valuation() == *a.valuation() + *b.valuation());
    }
}
