#include "kuranishi/cone.hpp"

#include <algorithm>
#include <climits>

namespace kuranishi {

namespace {

bool is_zero_vec(const std::vector<long>& v)
{
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

// One inequality coeff . phi >= bound.
struct Ineq {
    std::vector<Rational> coeff;
    Rational bound;
};

// Eliminates variable `var` by positive-combination of lower/upper pairs.
// Returns nullopt if a contradiction 0 >= positive shows up.
std::optional<std::vector<Ineq>> fm_eliminate(const std::vector<Ineq>& system, size_t var)
{
    std::vector<Ineq> lower, upper, out;
    auto keep = [&](Ineq q) -> bool {
        bool all_zero = true;
        for (size_t i = 0; i < var; ++i)
            if (q.coeff[i] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero)
            return !(q.bound > 0);
        q.coeff.resize(var);
        out.push_back(std::move(q));
        return true;
    };
    for (const auto& q : system) {
        if (q.coeff[var] > 0)
            lower.push_back(q);
        else if (q.coeff[var] < 0)
            upper.push_back(q);
        else if (!keep(q))
            return std::nullopt;
    }
    for (const auto& lo : lower)
        for (const auto& up : upper) {
            // a*(up row) + (-f)*(lo row) with a = lo.coeff[var] > 0,
            // f = up.coeff[var] < 0 cancels the variable exactly.
            Rational a = lo.coeff[var], f = up.coeff[var];
            Ineq q;
            q.coeff.assign(var + 1, Rational(0));
            for (size_t i = 0; i < var; ++i)
                q.coeff[i] = a * up.coeff[i] - f * lo.coeff[i];
            q.bound = a * up.bound - f * lo.bound;
            if (!keep(std::move(q)))
                return std::nullopt;
        }
    return out;
}

} // namespace

std::optional<std::vector<Rational>> positive_functional(const ConeMonoid& cone)
{
    size_t n = size_t(cone.ambient_rank);
    std::vector<Ineq> system;
    for (const auto& g : cone.generators) {
        if (is_zero_vec(g))
            continue;
        Ineq q;
        for (size_t i = 0; i < n; ++i)
            q.coeff.push_back(Rational(g[i]));
        q.bound = Rational(1);
        system.push_back(std::move(q));
    }
    if (system.empty())
        return std::vector<Rational>(n, Rational(0));

    std::vector<std::vector<Ineq>> stages(n + 1);
    stages[n] = std::move(system);
    for (size_t var = n; var-- > 0;) {
        auto next = fm_eliminate(stages[var + 1], var);
        if (!next)
            return std::nullopt;
        stages[var] = std::move(*next);
    }

    std::vector<Rational> phi(n, Rational(0));
    for (size_t var = 0; var < n; ++var) {
        std::optional<Rational> lo, hi;
        for (const auto& q : stages[var + 1]) {
            if (q.coeff[var] == 0)
                continue;
            Rational rest = q.bound;
            for (size_t i = 0; i < var; ++i)
                rest -= q.coeff[i] * phi[i];
            Rational b = rest / q.coeff[var];
            if (q.coeff[var] > 0) {
                if (!lo || b > *lo)
                    lo = b;
            } else {
                if (!hi || b < *hi)
                    hi = b;
            }
        }
        if (lo && hi) {
            if (*lo > *hi)
                return std::nullopt; // cannot happen after exact FM
            phi[var] = (*lo + *hi) / 2;
        } else if (lo) {
            phi[var] = *lo;
        } else if (hi) {
            phi[var] = *hi;
        }
    }
    return phi;
}

bool is_strongly_convex(const ConeMonoid& cone)
{
    return positive_functional(cone).has_value();
}

std::vector<size_t> inequality_violations(const ConeMonoid& cone)
{
    std::vector<size_t> bad;
    for (size_t j = 0; j < cone.generators.size(); ++j)
        for (const auto& f : cone.inequalities) {
            long dot = 0;
            for (size_t i = 0; i < f.size() && i < size_t(cone.ambient_rank); ++i)
                dot += f[i] * cone.generators[j][i];
            if (dot < 0) {
                bad.push_back(j);
                break;
            }
        }
    return bad;
}

std::vector<std::vector<long>> lattice_kernel(const std::vector<std::vector<long>>& generators,
                                              int ambient_rank)
{
    // Row-reduce [G | I] over the integers, where row j of G is generator j.
    // Rows whose G-part vanishes hold a basis of the full kernel lattice.
    size_t k = generators.size();
    size_t n = size_t(ambient_rank);
    std::vector<std::vector<mpz_class>> m(k, std::vector<mpz_class>(n + k, 0));
    for (size_t j = 0; j < k; ++j) {
        for (size_t i = 0; i < n; ++i)
            m[j][i] = generators[j][i];
        m[j][n + j] = 1;
    }
    size_t row = 0;
    for (size_t col = 0; col < n && row < k; ++col) {
        while (true) {
            size_t best = row;
            bool found = false;
            for (size_t r = row; r < k; ++r)
                if (m[r][col] != 0 && (!found || cmp(abs(m[r][col]), abs(m[best][col])) < 0)) {
                    best = r;
                    found = true;
                }
            if (!found)
                break;
            std::swap(m[row], m[best]);
            bool done = true;
            for (size_t r = row + 1; r < k; ++r) {
                if (m[r][col] == 0)
                    continue;
                mpz_class q = m[r][col] / m[row][col];
                for (size_t c = 0; c < n + k; ++c)
                    m[r][c] -= q * m[row][c];
                if (m[r][col] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (row < k && m[row][col] != 0)
            ++row;
    }
    std::vector<std::vector<long>> kernel;
    for (size_t r = row; r < k; ++r) {
        std::vector<long> v(k);
        for (size_t j = 0; j < k; ++j) {
            if (!m[r][n + j].fits_slong_p())
                fail("Overflow", "kernel basis entry exceeds machine range");
            v[j] = m[r][n + j].get_si();
        }
        if (!is_zero_vec(v))
            kernel.push_back(std::move(v));
    }
    return kernel;
}

ConeCompletion cone_completion(const ConeMonoid& cone, int truncation_order)
{
    auto phi = positive_functional(cone);
    if (!phi)
        fail("NotStronglyConvex", "the cone spanned by the generators contains a line");
    for (const auto& g : cone.generators)
        if (is_zero_vec(g))
            fail("NotStronglyConvex",
                 "zero generator: the ideal of nonzero monoid elements is not maximal");

    size_t k = cone.generators.size();

    // Grading for the saturation runs: weight of variable j is phi . g_j,
    // scaled to integers. Every kernel binomial is homogeneous for it.
    mpz_class denom_lcm = 1;
    for (const auto& c : *phi)
        denom_lcm = lcm(denom_lcm, c.get_den());
    std::vector<int> sat_weights;
    for (size_t j = 0; j < k; ++j) {
        Rational w(0);
        for (size_t i = 0; i < size_t(cone.ambient_rank); ++i)
            w += phi->at(i) * Rational(cone.generators[j][i]);
        w *= Rational(denom_lcm);
        sat_weights.push_back(int(w.get_num().get_si()));
    }

    auto kernel = lattice_kernel(cone.generators, cone.ambient_rank);
    std::vector<TermMap> ideal;
    for (const auto& u : kernel) {
        Monomial pos(k, 0), neg(k, 0);
        for (size_t j = 0; j < k; ++j) {
            if (u[j] > 0)
                pos[j] = unsigned(u[j]);
            else if (u[j] < 0)
                neg[j] = unsigned(-u[j]);
        }
        TermMap b;
        b.emplace(std::move(pos), Scalar(1));
        b.emplace(std::move(neg), Scalar(-1));
        ideal.push_back(std::move(b));
    }

    // Saturate at each variable in turn: with x_c cheapest (graded revlex,
    // x_c last), dividing each basis element by its x_c content computes the
    // quotient by x_c^infinity for a homogeneous ideal.
    for (size_t c = 0; c < k; ++c) {
        ideal = groebner(std::move(ideal), sat_weights, int(c));
        for (auto& g : ideal) {
            unsigned content = UINT_MAX;
            for (const auto& [m, cf] : g)
                content = std::min(content, m[c]);
            if (content == 0 || content == UINT_MAX)
                continue;
            TermMap divided;
            for (const auto& [m, cf] : g) {
                Monomial q = m;
                q[c] -= content;
                divided.emplace(std::move(q), cf);
            }
            g = std::move(divided);
        }
    }
    // Canonical presentation: reduced graded-lex basis of the toric ideal.
    std::vector<int> unit_weights(k, 1);
    ideal = groebner(std::move(ideal), unit_weights, -1);

    std::vector<LocalRing::Variable> vars;
    for (size_t j = 0; j < k; ++j)
        vars.push_back({cone.name_of(j), 1});

    ConeCompletion out;
    out.cone = cone;
    out.toric_relations = ideal;
    out.kernel = std::move(kernel);
    out.ring = LocalRing::make(std::move(vars), std::move(ideal), truncation_order);
    return out;
}

} // namespace kuranishi
