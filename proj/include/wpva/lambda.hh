#pragma once

// Polynomials in the formal variable lambda (and a second variable mu for
// Jacobi residuals) with DiffPoly coefficients.

#include "wpva/diffalg.hh"

#include <map>

namespace wpva {

class LambdaPoly
{
  public:
    LambdaPoly() = default;
    explicit LambdaPoly(Algebra alg) : alg_(std::move(alg)) {}

    static LambdaPoly from(const DiffPoly& p, int lambda_deg = 0)
    {
        LambdaPoly r(p.algebra());
        if (!p.is_zero())
            r.coeffs_[lambda_deg] = p;
        return r;
    }

    const Algebra& algebra() const { return alg_; }
    const std::map<int, DiffPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    DiffPoly coeff(int n) const
    {
        auto it = coeffs_.find(n);
        return it == coeffs_.end() ? DiffPoly(alg_) : it->second;
    }

    DiffPoly at_lambda_zero() const { return coeff(0); }

    int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    void set(int n, DiffPoly p)
    {
        if (p.is_zero())
            coeffs_.erase(n);
        else
            coeffs_[n] = std::move(p);
    }

    void add(int n, const DiffPoly& p)
    {
        if (p.is_zero())
            return;
        auto it = coeffs_.find(n);
        if (it == coeffs_.end())
            coeffs_.emplace(n, p);
        else
        {
            it->second += p;
            if (it->second.is_zero())
                coeffs_.erase(it);
        }
    }

    LambdaPoly& operator+=(const LambdaPoly& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [n, p] : o.coeffs_)
            add(n, p);
        return *this;
    }

    LambdaPoly& operator-=(const LambdaPoly& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [n, p] : o.coeffs_)
            add(n, -p);
        return *this;
    }

    friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
    friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
    LambdaPoly operator-() const { return *this * Rational(-1); }

    LambdaPoly operator*(const Rational& c) const
    {
        LambdaPoly r(alg_);
        if (c == 0)
            return r;
        for (auto& [n, p] : coeffs_)
            r.coeffs_[n] = p * c;
        return r;
    }

    // Left multiplication of every coefficient by a polynomial.
    friend LambdaPoly operator*(const DiffPoly& f, const LambdaPoly& L)
    {
        LambdaPoly r(L.alg_ ? L.alg_ : f.algebra());
        for (auto& [n, p] : L.coeffs_)
            r.add(n, f * p);
        return r;
    }

    friend LambdaPoly operator*(const LambdaPoly& L, const DiffPoly& f)
    {
        LambdaPoly r(L.alg_ ? L.alg_ : f.algebra());
        for (auto& [n, p] : L.coeffs_)
            r.add(n, p * f);
        return r;
    }

    friend bool operator==(const LambdaPoly& a, const LambdaPoly& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

    // The arrow action: sum_n c_n (lambda+d)^n applied to g, coefficients
    // multiplying from the left.
    LambdaPoly arrow_apply(const DiffPoly& g) const
    {
        LambdaPoly r(alg_ ? alg_ : g.algebra());
        for (auto& [n, c] : coeffs_)
        {
            DiffPoly dg = g;
            // (lambda+d)^n g = sum_k C(n,k) lambda^k d^{n-k} g; iterate d
            // from the top power down.
            std::vector<DiffPoly> ds(n + 1, DiffPoly(r.alg_));
            ds[0] = g;
            for (int k = 1; k <= n; ++k)
                ds[k] = ds[k - 1].total_derivative();
            for (int k = 0; k <= n; ++k)
            {
                Rational b(binomial(n, k));
                r.add(k, c * ds[n - k] * b);
            }
        }
        return r;
    }

    // Substitution lambda -> -lambda - d with d acting on the coefficient:
    // sum_n lambda^n p_n  |->  sum_n (-lambda-d)^n p_n.
    LambdaPoly substitute_minus_lambda_minus_d() const
    {
        LambdaPoly r(alg_);
        for (auto& [n, p] : coeffs_)
        {
            std::vector<DiffPoly> ds(n + 1, DiffPoly(alg_));
            ds[0] = p;
            for (int k = 1; k <= n; ++k)
                ds[k] = ds[k - 1].total_derivative();
            // (-lambda-d)^n p = sum_k C(n,k) (-lambda)^k (-d)^{n-k} p
            for (int k = 0; k <= n; ++k)
            {
                Rational c(binomial(n, k));
                if ((n - k) % 2)
                    c = -c;
                if (k % 2)
                    c = -c;
                r.add(k, ds[n - k] * c);
            }
        }
        return r;
    }

    // (lambda + d) L, with d acting on coefficients.
    LambdaPoly lambda_plus_d() const
    {
        LambdaPoly r(alg_);
        for (auto& [n, p] : coeffs_)
        {
            r.add(n + 1, p);
            r.add(n, p.total_derivative());
        }
        return r;
    }

    LambdaPoly shift_lambda(int s) const
    {
        LambdaPoly r(alg_);
        for (auto& [n, p] : coeffs_)
            r.coeffs_[n + s] = p;
        return r;
    }

  private:
    Algebra alg_;
    std::map<int, DiffPoly> coeffs_;
};

// Two formal variables (lambda, mu); used for Jacobi residuals.
class LambdaMuPoly
{
  public:
    LambdaMuPoly() = default;
    explicit LambdaMuPoly(Algebra alg) : alg_(std::move(alg)) {}

    const std::map<std::pair<int, int>, DiffPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void add(int i, int j, const DiffPoly& p)
    {
        if (p.is_zero())
            return;
        auto key = std::make_pair(i, j);
        auto it = coeffs_.find(key);
        if (it == coeffs_.end())
            coeffs_.emplace(key, p);
        else
        {
            it->second += p;
            if (it->second.is_zero())
                coeffs_.erase(it);
        }
    }

    LambdaMuPoly& operator-=(const LambdaMuPoly& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [k, p] : o.coeffs_)
            add(k.first, k.second, -p);
        return *this;
    }

    LambdaMuPoly& operator+=(const LambdaMuPoly& o)
    {
        if (!alg_)
            alg_ = o.alg_;
        for (auto& [k, p] : o.coeffs_)
            add(k.first, k.second, p);
        return *this;
    }

  private:
    Algebra alg_;
    std::map<std::pair<int, int>, DiffPoly> coeffs_;
};

} // namespace wpva
