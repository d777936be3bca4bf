#pragma once

// Exact differential (super)polynomial algebras: polynomials with rational
// coefficients in jet variables g^(n) of a fixed set of even/odd generators,
// together with the total derivation d (d g^(n) = g^(n+1)), partial and
// variational derivatives, and the integration-by-parts machinery.

#include "wpva/rational.hh"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpva {

enum class Parity : uint8_t { Even = 0, Odd = 1 };

struct GeneratorInfo
{
    std::string name;
    Parity parity = Parity::Even;
    // Parameters (symbolic constants like k, c, alpha) are central even
    // generators of jet order 0 annihilated by the total derivation.
    bool is_param = false;
};

class AlgebraData
{
  public:
    explicit AlgebraData(std::vector<GeneratorInfo> gens) : gens_(std::move(gens))
    {
        for (size_t i = 0; i < gens_.size(); ++i)
        {
            if (!index_.emplace(gens_[i].name, i).second)
                throw std::invalid_argument("duplicate generator name: " + gens_[i].name);
        }
    }

    size_t size() const { return gens_.size(); }
    const GeneratorInfo& gen(size_t i) const { return gens_.at(i); }
    const std::vector<GeneratorInfo>& gens() const { return gens_; }

    std::optional<size_t> find(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    size_t index_of(const std::string& name) const
    {
        auto i = find(name);
        if (!i)
            throw std::invalid_argument("unknown generator: " + name);
        return *i;
    }

  private:
    std::vector<GeneratorInfo> gens_;
    std::map<std::string, size_t> index_;
};

using Algebra = std::shared_ptr<const AlgebraData>;

inline Algebra make_algebra(std::vector<GeneratorInfo> gens)
{
    return std::make_shared<const AlgebraData>(std::move(gens));
}

// A jet variable g^(n), encoded so that integer order on the key is the
// canonical monomial order (generator sort-key, then jet order).
struct Jet
{
    uint32_t gen = 0;
    uint32_t order = 0;

    friend auto operator<=>(const Jet&, const Jet&) = default;
};

// A monomial: sorted factor list of (jet, exponent).  Odd jets carry
// exponent 1 (their square is zero); the Koszul sign of any reordering is
// absorbed into the coefficient by the construction routines below.
struct Monomial
{
    std::vector<std::pair<Jet, uint32_t>> factors; // sorted by Jet, exps > 0

    uint32_t degree() const
    {
        uint32_t d = 0;
        for (auto& [j, e] : factors)
            d += e;
        return d;
    }

    bool empty() const { return factors.empty(); }

    friend bool operator==(const Monomial&, const Monomial&) = default;

    // Degree-graded lexicographic order; any fixed total order works, this
    // one keeps printed output stable.
    friend bool operator<(const Monomial& a, const Monomial& b)
    {
        uint32_t da = a.degree(), db = b.degree();
        if (da != db)
            return da < db;
        return a.factors < b.factors;
    }
};

class DiffPoly
{
  public:
    DiffPoly() = default;
    explicit DiffPoly(Algebra alg) : alg_(std::move(alg)) {}

    static DiffPoly constant(Algebra alg, const Rational& c)
    {
        DiffPoly p(std::move(alg));
        if (c != 0)
            p.terms_[Monomial{}] = c;
        return p;
    }

    static DiffPoly jet(Algebra alg, size_t gen, uint32_t order, const Rational& c = 1)
    {
        if (gen >= alg->size())
            throw std::invalid_argument("jet: bad generator index");
        if (alg->gen(gen).is_param && order > 0)
            throw std::invalid_argument("jet: parameters have no derivatives");
        DiffPoly p(std::move(alg));
        if (c != 0)
            p.terms_[Monomial{{{Jet{(uint32_t)gen, order}, 1}}}] = c;
        return p;
    }

    static DiffPoly gen(Algebra alg, const std::string& name, const Rational& c = 1)
    {
        size_t i = alg->index_of(name);
        return jet(std::move(alg), i, 0, c);
    }

    const Algebra& algebra() const { return alg_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }

    Rational constant_term() const
    {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Jet-free part (constants and parameter-only monomials).
    DiffPoly param_part() const
    {
        DiffPoly r(alg_);
        for (auto& [m, c] : terms_)
        {
            bool pure = true;
            for (auto& [j, e] : m.factors)
                if (!alg_->gen(j.gen).is_param)
                {
                    pure = false;
                    break;
                }
            if (pure)
                r.terms_[m] = c;
        }
        return r;
    }

    // Parity of a homogeneous polynomial; throws on mixed parity.
    Parity parity() const
    {
        std::optional<Parity> p;
        for (auto& [m, c] : terms_)
        {
            Parity mp = monomial_parity(m);
            if (p && *p != mp)
                throw std::logic_error("parity of non-homogeneous polynomial");
            p = mp;
        }
        return p.value_or(Parity::Even);
    }

    Parity monomial_parity(const Monomial& m) const
    {
        uint32_t odd = 0;
        for (auto& [j, e] : m.factors)
            if (alg_->gen(j.gen).parity == Parity::Odd)
                odd += e;
        return (odd % 2) ? Parity::Odd : Parity::Even;
    }

    friend bool operator==(const DiffPoly& a, const DiffPoly& b)
    {
        return a.terms_ == b.terms_;
    }

    DiffPoly& operator+=(const DiffPoly& o)
    {
        check_same(o);
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    DiffPoly& operator-=(const DiffPoly& o)
    {
        check_same(o);
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }

    DiffPoly operator-() const { return *this * Rational(-1); }

    DiffPoly operator*(const Rational& c) const
    {
        DiffPoly r(alg_);
        if (c == 0)
            return r;
        for (auto& [m, k] : terms_)
            r.terms_[m] = k * c;
        return r;
    }

    friend DiffPoly operator*(const Rational& c, const DiffPoly& p) { return p * c; }

    // Supercommutative product with Koszul signs; odd jets square to zero.
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
    {
        a.check_same(b);
        DiffPoly r(a.alg_ ? a.alg_ : b.alg_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_)
            {
                int sign = 0;
                Monomial m = r.merge(ma, mb, sign);
                if (sign == 0)
                    continue;
                r.add_term(m, ca * cb * sign);
            }
        return r;
    }

    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }

    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0)
            return;
        auto it = terms_.find(m);
        if (it == terms_.end())
            terms_.emplace(m, c);
        else
        {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    // Total derivation: raises each jet order by one, Leibniz-extended.
    // Parameters are annihilated.
    DiffPoly total_derivative() const
    {
        DiffPoly r(alg_);
        for (auto& [m, c] : terms_)
        {
            for (size_t i = 0; i < m.factors.size(); ++i)
            {
                auto [j, e] = m.factors[i];
                if (alg_->gen(j.gen).is_param)
                    continue;
                Monomial rest = m;
                if (e == 1)
                    rest.factors.erase(rest.factors.begin() + i);
                else
                    rest.factors[i].second = e - 1;
                // d is even: no Koszul sign from the Leibniz rule itself,
                // only from re-sorting the raised jet into place.
                int sign = 0;
                Monomial single{{{Jet{j.gen, j.order + 1}, 1}}};
                Monomial nm = merge(rest, single, sign);
                if (sign != 0)
                    r.add_term(nm, c * Rational(e) * sign);
            }
        }
        return r;
    }

    // Signed partial derivative with respect to one jet (left derivative
    // for odd jets).
    DiffPoly partial_derivative(Jet v) const
    {
        bool odd = alg_->gen(v.gen).parity == Parity::Odd;
        DiffPoly r(alg_);
        for (auto& [m, c] : terms_)
        {
            for (size_t i = 0; i < m.factors.size(); ++i)
            {
                auto [j, e] = m.factors[i];
                if (j != v)
                    continue;
                Monomial rest = m;
                if (e == 1)
                    rest.factors.erase(rest.factors.begin() + i);
                else
                    rest.factors[i].second = e - 1;
                if (!odd)
                {
                    r.add_term(rest, c * Rational(e));
                }
                else
                {
                    // Move the odd jet to the front before stripping it.
                    uint32_t swaps = 0;
                    for (size_t l = 0; l < i; ++l)
                        if (alg_->gen(m.factors[l].first.gen).parity == Parity::Odd)
                            swaps += m.factors[l].second;
                    r.add_term(rest, (swaps % 2) ? -c : c);
                }
                break;
            }
        }
        return r;
    }

    // Highest jet order among non-parameter factors, or nullopt for
    // jet-free polynomials.
    std::optional<uint32_t> total_derivative_order() const
    {
        std::optional<uint32_t> n;
        for (auto& [m, c] : terms_)
            for (auto& [j, e] : m.factors)
                if (!alg_->gen(j.gen).is_param)
                    n = std::max(n.value_or(0), j.order);
        return n;
    }

    uint32_t max_jet_order_of(size_t gen) const
    {
        uint32_t n = 0;
        for (auto& [m, c] : terms_)
            for (auto& [j, e] : m.factors)
                if (j.gen == gen)
                    n = std::max(n, j.order);
        return n;
    }

    bool depends_on(size_t gen) const
    {
        for (auto& [m, c] : terms_)
            for (auto& [j, e] : m.factors)
                if (j.gen == gen)
                    return true;
        return false;
    }

    // Variational derivative sum_n (-d)^n partial/partial g^(n).
    DiffPoly variational_derivative(size_t gen) const
    {
        DiffPoly r(alg_);
        uint32_t top = max_jet_order_of(gen);
        if (!depends_on(gen))
            return r;
        for (uint32_t n = 0; n <= top; ++n)
        {
            DiffPoly p = partial_derivative(Jet{(uint32_t)gen, n});
            for (uint32_t s = 0; s < n; ++s)
                p = -p.total_derivative();
            r += p;
        }
        return r;
    }

    // Replace a generator by an arbitrary polynomial; jets map to total
    // derivatives of the replacement.
    DiffPoly substitute_generator(size_t gen, const DiffPoly& value) const
    {
        std::vector<DiffPoly> derivs{value};
        auto deriv = [&](uint32_t n) -> const DiffPoly& {
            while (derivs.size() <= n)
                derivs.push_back(derivs.back().total_derivative());
            return derivs[n];
        };
        DiffPoly r(alg_);
        for (auto& [m, c] : terms_)
        {
            DiffPoly t = DiffPoly::constant(alg_, c);
            // Odd generators: substitution of an odd value for an odd
            // generator keeps the factor order, so multiply in monomial
            // order to preserve signs.
            for (auto& [j, e] : m.factors)
            {
                if (j.gen == (uint32_t)gen)
                {
                    for (uint32_t s = 0; s < e; ++s)
                        t = t * deriv(j.order);
                }
                else
                {
                    t = t * DiffPoly::jet(alg_, j.gen, j.order, 1) .pow_into(e);
                }
            }
            r += t;
        }
        return r;
    }

    // Evolutionary derivation determined by gen -> rhs: applies
    // sum_{g,n} (d^n rhs_g) partial/partial g^(n).
    DiffPoly evolve(const std::map<size_t, DiffPoly>& rhs) const
    {
        DiffPoly r(alg_);
        for (auto& [g, F] : rhs)
        {
            std::vector<DiffPoly> derivs{F};
            uint32_t top = max_jet_order_of(g);
            for (uint32_t n = 0; n <= top; ++n)
            {
                if (n > 0)
                    derivs.push_back(derivs.back().total_derivative());
                DiffPoly pd = partial_derivative(Jet{(uint32_t)g, n});
                if (!pd.is_zero())
                    r += pd * derivs[n];
            }
        }
        return r;
    }

    DiffPoly pow_into(uint32_t e) const
    {
        DiffPoly r = DiffPoly::constant(alg_, 1);
        for (uint32_t i = 0; i < e; ++i)
            r = r * (*this);
        return r;
    }

    // Canonical merge of two sorted factor lists.  sign is set to the Koszul
    // sign (+1/-1), or 0 when an odd jet repeats.
    Monomial merge(const Monomial& a, const Monomial& b, int& sign) const
    {
        sign = 1;
        Monomial m;
        m.factors.reserve(a.factors.size() + b.factors.size());
        size_t ia = 0, ib = 0;
        uint32_t odd_tail_a = 0; // odd factors of a not yet emitted
        uint32_t odd_total_a = 0;
        for (auto& [j, e] : a.factors)
            if (alg_->gen(j.gen).parity == Parity::Odd)
                odd_total_a += e;
        uint32_t odd_seen_a = 0;
        auto odd_of = [&](const Jet& j) { return alg_->gen(j.gen).parity == Parity::Odd; };
        while (ia < a.factors.size() || ib < b.factors.size())
        {
            bool take_a;
            if (ia == a.factors.size())
                take_a = false;
            else if (ib == b.factors.size())
                take_a = true;
            else
                take_a = a.factors[ia].first <= b.factors[ib].first;
            if (take_a)
            {
                auto [j, e] = a.factors[ia++];
                if (odd_of(j))
                    odd_seen_a += e;
                if (!m.factors.empty() && m.factors.back().first == j)
                {
                    if (odd_of(j))
                    {
                        sign = 0;
                        return {};
                    }
                    m.factors.back().second += e;
                }
                else
                    m.factors.emplace_back(j, e);
            }
            else
            {
                auto [j, e] = b.factors[ib++];
                if (odd_of(j))
                {
                    // This odd factor of b jumps over the odd factors of a
                    // that have not been emitted yet.
                    odd_tail_a = odd_total_a - odd_seen_a;
                    if ((uint64_t)e * odd_tail_a % 2)
                        sign = -sign;
                }
                if (!m.factors.empty() && m.factors.back().first == j)
                {
                    if (odd_of(j))
                    {
                        sign = 0;
                        return {};
                    }
                    m.factors.back().second += e;
                }
                else
                    m.factors.emplace_back(j, e);
            }
        }
        return m;
    }

  private:
    void check_same(const DiffPoly& o) const
    {
        if (alg_ && o.alg_ && alg_ != o.alg_)
            throw std::invalid_argument("operands from different algebras");
    }

    Algebra alg_;
    std::map<Monomial, Rational> terms_;
};

inline DiffPoly total_derivative(const DiffPoly& p) { return p.total_derivative(); }

// Membership in d(A).  A polynomial is a total derivative iff all
// variational derivatives vanish and the jet-free part is zero; the witness
// is reconstructed order-by-order through the top-jet potential.
struct TotalDerivativeResult
{
    bool is_exact = false;
    DiffPoly witness; // d(witness) == p when is_exact
};

inline TotalDerivativeResult is_total_derivative(const DiffPoly& p)
{
    const Algebra& alg = p.algebra();
    TotalDerivativeResult res;
    res.witness = DiffPoly(alg);
    if (p.is_zero())
    {
        res.is_exact = true;
        return res;
    }
    if (!p.param_part().is_zero())
        return res;
    for (size_t g = 0; g < alg->size(); ++g)
    {
        if (alg->gen(g).is_param)
            continue;
        if (!p.variational_derivative(g).is_zero())
            return res;
    }

    // Jet-order descent: strip the linear top-order layer with a radial
    // potential in the order-(n-1) variables.
    DiffPoly rem = p;
    DiffPoly witness(alg);
    while (true)
    {
        auto top = rem.total_derivative_order();
        if (!top || *top == 0)
        {
            if (!rem.is_zero())
                return res; // not exact after all
            break;
        }
        uint32_t n = *top;
        DiffPoly q(alg);
        for (size_t g = 0; g < alg->size(); ++g)
        {
            if (alg->gen(g).is_param)
                continue;
            DiffPoly a = rem.partial_derivative(Jet{(uint32_t)g, n});
            if (a.is_zero())
                continue;
            if (a.total_derivative_order().value_or(0) >= n)
                return res; // nonlinear in top jets: not exact
            // Radial potential over the order-(n-1) layer: each monomial
            // c*M of a contributes c/(deg_{n-1}(M)+1) * g^(n-1) * M.
            for (auto& [m, c] : a.terms())
            {
                uint32_t deg = 0;
                for (auto& [j, e] : m.factors)
                    if (j.order == n - 1 && !alg->gen(j.gen).is_param)
                        deg += e;
                DiffPoly mono(alg);
                mono.add_term(m, c / Rational(deg + 1));
                q += DiffPoly::jet(alg, g, n - 1) * mono;
            }
        }
        DiffPoly dq = q.total_derivative();
        rem -= dq;
        witness += q;
        if (rem.total_derivative_order().value_or(0) >= n)
            return res; // descent failed: closedness violated
    }
    res.is_exact = true;
    res.witness = witness;
    return res;
}

// Homotopy reconstruction of a density from its variational gradient:
// scales the dynamic generators and integrates.  The caller must verify the
// result (variational_derivative of it reproduces the gradient) since not
// every vector of polynomials is a gradient.
inline DiffPoly homotopy_density(const std::map<size_t, DiffPoly>& gradient, Algebra alg)
{
    DiffPoly h(alg);
    for (auto& [g, grad] : gradient)
    {
        for (auto& [m, c] : grad.terms())
        {
            uint32_t deg = 0;
            for (auto& [j, e] : m.factors)
                if (!alg->gen(j.gen).is_param)
                    deg += e;
            DiffPoly mono(alg);
            mono.add_term(m, c / Rational(deg + 1));
            h += DiffPoly::gen(alg, alg->gen(g).name) * mono;
        }
    }
    return h;
}

} // namespace wpva
