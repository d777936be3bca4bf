#pragma once

// Plain-text expression grammar for differential polynomials and
// lambda-polynomials.
//
//   expr     := ['+'|'-'] term { ('+'|'-') term }
//   term     := factor { '*' factor }
//   factor   := rational | jet | 'L' | '(' expr ')' , optionally '^' int
//   jet      := ident primes | ident '^(' int ')'
//   rational := int [ '/' int ]
//
// Derivatives print as primes up to order 3 and as u^(n) beyond; `L` is the
// formal variable lambda.  parse(print(p)) == p.

#include "wpva/lambda.hh"

#include <cctype>
#include <sstream>

namespace wpva {

inline std::string print_monomial(const Algebra& alg, const Monomial& m, const Rational& c)
{
    std::ostringstream os;
    bool lead = true;
    Rational ac = c < 0 ? Rational(-c) : c;
    if (ac != 1 || m.empty())
    {
        os << rat_to_string(ac);
        lead = false;
    }
    for (auto& [j, e] : m.factors)
    {
        if (!lead)
            os << "*";
        lead = false;
        os << alg->gen(j.gen).name;
        if (j.order > 0 && j.order <= 3)
            for (uint32_t i = 0; i < j.order; ++i)
                os << "'";
        else if (j.order > 3)
            os << "^(" << j.order << ")";
        if (e > 1)
            os << "^" << e;
    }
    return os.str();
}

inline std::string print(const DiffPoly& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : p.terms())
    {
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        os << print_monomial(p.algebra(), m, c);
    }
    return os.str();
}

inline std::string print(const LambdaPoly& L)
{
    if (L.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [n, p] : L.coeffs())
    {
        std::string body = print(p);
        if (!first)
            os << " + ";
        first = false;
        if (n == 0)
        {
            os << body;
            continue;
        }
        if (p.term_count() == 1 && body[0] != '-')
            os << body << "*";
        else
            os << "(" << body << ")*";
        os << "L";
        if (n > 1)
            os << "^" << n;
    }
    return os.str();
}

namespace detail {

struct Lexer
{
    std::string src;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < src.size() && std::isspace((unsigned char)src[pos]))
            ++pos;
    }

    char peek()
    {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool eat(char c)
    {
        if (peek() == c)
        {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!eat(c))
            throw std::invalid_argument("parse error: expected '" + std::string(1, c) +
                                        "' at offset " + std::to_string(pos) + " in \"" + src +
                                        "\"");
    }

    bool ident_start() { return std::isalpha((unsigned char)peek()) || peek() == '_'; }

    std::string ident()
    {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
            ++pos;
        if (start == pos)
            throw std::invalid_argument("parse error: identifier expected in \"" + src + "\"");
        return src.substr(start, pos - start);
    }

    Integer integer()
    {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
            ++pos;
        if (start == pos)
            throw std::invalid_argument("parse error: integer expected in \"" + src + "\"");
        return Integer(src.substr(start, pos - start));
    }
};

class ExprParser
{
  public:
    ExprParser(Algebra alg, std::string s, bool allow_lambda)
        : alg_(std::move(alg)), lex_{std::move(s)}, allow_lambda_(allow_lambda)
    {
    }

    LambdaPoly parse()
    {
        LambdaPoly r = expr();
        lex_.skip_ws();
        if (lex_.pos != lex_.src.size())
            throw std::invalid_argument("parse error: trailing input in \"" + lex_.src + "\"");
        return r;
    }

  private:
    LambdaPoly expr()
    {
        LambdaPoly r(alg_);
        int sign = 1;
        if (lex_.eat('-'))
            sign = -1;
        else
            lex_.eat('+');
        r += term() * Rational(sign);
        while (true)
        {
            if (lex_.eat('+'))
                r += term();
            else if (lex_.eat('-'))
                r -= term();
            else
                break;
        }
        return r;
    }

    LambdaPoly term()
    {
        LambdaPoly r = factor();
        while (lex_.eat('*'))
        {
            LambdaPoly f = factor();
            r = mul(r, f);
        }
        return r;
    }

    static LambdaPoly mul(const LambdaPoly& a, const LambdaPoly& b)
    {
        LambdaPoly r(a.algebra() ? a.algebra() : b.algebra());
        for (auto& [n, p] : a.coeffs())
            for (auto& [m, q] : b.coeffs())
                r.add(n + m, p * q);
        return r;
    }

    LambdaPoly factor()
    {
        LambdaPoly base(alg_);
        char c = lex_.peek();
        if (c == '(')
        {
            lex_.expect('(');
            base = expr();
            lex_.expect(')');
        }
        else if (std::isdigit((unsigned char)c))
        {
            Integer num = lex_.integer();
            Rational q(num);
            if (lex_.eat('/'))
                q /= Rational(lex_.integer());
            base = LambdaPoly::from(DiffPoly::constant(alg_, q));
        }
        else if (lex_.ident_start())
        {
            std::string name = lex_.ident();
            if (allow_lambda_ && name == "L")
            {
                base = LambdaPoly::from(DiffPoly::constant(alg_, 1), 1);
            }
            else
            {
                uint32_t order = 0;
                while (lex_.pos < lex_.src.size() && lex_.src[lex_.pos] == '\'')
                {
                    ++order;
                    ++lex_.pos;
                }
                if (order == 0 && lex_.pos + 1 < lex_.src.size() && lex_.src[lex_.pos] == '^' &&
                    lex_.src[lex_.pos + 1] == '(')
                {
                    lex_.pos += 2;
                    order = (uint32_t)lex_.integer().convert_to<unsigned long>();
                    lex_.expect(')');
                }
                auto gi = alg_->find(name);
                if (!gi)
                    throw std::invalid_argument("unknown generator '" + name + "'");
                base = LambdaPoly::from(DiffPoly::jet(alg_, *gi, order));
            }
        }
        else
        {
            throw std::invalid_argument("parse error near offset " + std::to_string(lex_.pos) +
                                        " in \"" + lex_.src + "\"");
        }

        // power (not followed by '(' which would be a derivative marker)
        lex_.skip_ws();
        if (lex_.pos < lex_.src.size() && lex_.src[lex_.pos] == '^' &&
            !(lex_.pos + 1 < lex_.src.size() && lex_.src[lex_.pos + 1] == '('))
        {
            ++lex_.pos;
            unsigned long e = lex_.integer().convert_to<unsigned long>();
            LambdaPoly r = LambdaPoly::from(DiffPoly::constant(alg_, 1));
            for (unsigned long i = 0; i < e; ++i)
                r = mul(r, base);
            return r;
        }
        return base;
    }

    Algebra alg_;
    Lexer lex_;
    bool allow_lambda_;
};

} // namespace detail

inline DiffPoly parse_poly(const Algebra& alg, const std::string& s)
{
    detail::ExprParser p(alg, s, false);
    LambdaPoly L = p.parse();
    if (L.degree() > 0)
        throw std::invalid_argument("lambda not allowed here: " + s);
    return L.coeff(0);
}

inline LambdaPoly parse_lambda(const Algebra& alg, const std::string& s)
{
    detail::ExprParser p(alg, s, true);
    return p.parse();
}

} // namespace wpva
