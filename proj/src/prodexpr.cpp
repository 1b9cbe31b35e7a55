#include "qsid/prodexpr.hpp"

#include <cctype>
#include <limits>

namespace qsid {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ProductExpr parse()
    {
        ProductExpr e;
        skip();
        if (peek() == '1') {
            ++pos_;
        } else {
            e.numerator = product();
        }
        skip();
        if (peek() == '/') {
            ++pos_;
            e.denominator = product();
        }
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    std::vector<PochFactor> product()
    {
        std::vector<PochFactor> out;
        skip();
        if (peek() != '(') fail("expected '('");
        while (peek() == '(') {
            out.push_back(factor());
            skip();
        }
        return out;
    }

    PochFactor factor()
    {
        PochFactor f;
        expect('(');
        f.args.push_back(monomial());
        skip();
        while (peek() == ',') {
            ++pos_;
            f.args.push_back(monomial());
            skip();
        }
        expect(';');
        f.base = monomial();
        if (f.base.exp <= 0) fail("base exponent must be positive");
        expect(')');
        expect('_');
        skip();
        if (s_.substr(pos_, 3) == "inf") {
            pos_ += 3;
        } else {
            f.length = uint_value();
        }
        return f;
    }

    QMonomial monomial()
    {
        QMonomial m;
        skip();
        if (peek() == '-') {
            m.sign = -1;
            ++pos_;
            skip();
        }
        if (peek() != 'q') fail("expected 'q'");
        ++pos_;
        skip();
        if (peek() != '^') {
            m.exp = 1;
            return m;
        }
        ++pos_;
        skip();
        if (peek() == '(') {
            ++pos_;
            skip();
            int sign = 1;
            if (peek() == '-') {
                sign = -1;
                ++pos_;
            }
            std::int64_t num = uint_value();
            std::int64_t den = 1;
            skip();
            if (peek() == '/') {
                ++pos_;
                den = uint_value();
                if (den == 0) fail("zero denominator");
            }
            expect(')');
            m.exp = Rational(sign * num, den);
        } else {
            m.exp = uint_value();
        }
        return m;
    }

    std::int64_t uint_value()
    {
        skip();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer");
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) fail("integer too large");
            v = v * 10 + (s_[pos_++] - '0');
        }
        return v;
    }

    void expect(char c)
    {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string render_factors(const std::vector<PochFactor>& fs)
{
    std::string out;
    for (const auto& f : fs) {
        if (!out.empty()) out += ' ';
        out += '(';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
            if (i) out += ',';
            out += render(f.args[i]);
        }
        out += ';' + render(f.base) + ")_" + (f.length ? std::to_string(*f.length) : "inf");
    }
    return out;
}

// (a; -w)_n = (a; w^2)_ceil(n/2) (-a w; w^2)_floor(n/2)
void expand_factor(const PochFactor& f, int denom, std::vector<PochTerm>& out)
{
    for (const auto& a : f.args) {
        if (f.base.sign == 1) {
            out.push_back(make_poch_term(a, f.base.exp, f.length, denom));
            continue;
        }
        Rational w2 = 2 * f.base.exp;
        std::optional<std::int64_t> even, odd;
        if (f.length) {
            even = (*f.length + 1) / 2;
            odd = *f.length / 2;
        }
        out.push_back(make_poch_term(a, w2, even, denom));
        out.push_back(make_poch_term({-a.sign, a.exp + f.base.exp}, w2, odd, denom));
    }
}

} // namespace

ProductExpr parse_product(std::string_view text) { return Parser(text).parse(); }

std::string render(const QMonomial& m)
{
    std::string out = m.sign < 0 ? "-q" : "q";
    if (m.exp == 1) return out;
    if (m.exp.denominator() == 1 && m.exp >= 0) return out + "^" + std::to_string(m.exp.numerator());
    return out + "^(" + to_string(m.exp) + ")";
}

std::string render(const ProductExpr& expr)
{
    std::string out = expr.numerator.empty() ? "1" : render_factors(expr.numerator);
    if (!expr.denominator.empty()) out += " / " + render_factors(expr.denominator);
    return out;
}

int natural_denom(const ProductExpr& expr)
{
    std::int64_t d = 1;
    for (const auto* side : {&expr.numerator, &expr.denominator})
        for (const auto& f : *side) {
            d = lcm_denominator(d, f.base.exp);
            for (const auto& a : f.args) d = lcm_denominator(d, a.exp);
        }
    return static_cast<int>(d);
}

QSeries eval_product(const ProductExpr& expr, int denom, std::int64_t t_order)
{
    std::vector<PochTerm> num, den;
    for (const auto& f : expr.numerator) expand_factor(f, denom, num);
    for (const auto& f : expr.denominator) expand_factor(f, denom, den);

    std::int64_t offset = 0;
    BigInt scale = 1;
    for (const auto& t : num) {
        LeadingPart lp = leading_part(t);
        offset += lp.t_exp;
        scale *= lp.scale;
    }
    for (const auto& t : den) {
        LeadingPart lp = leading_part(t);
        if (lp.scale != 1 && lp.scale != -1)
            throw NotInvertibleError("denominator has a non-unit constant factor " + lp.scale.get_str());
        offset -= lp.t_exp;
        scale *= lp.scale;
    }
    if (offset > t_order) return QSeries::zero(denom, t_order, t_order);

    QSeries s = QSeries::monomial(scale, 0, denom, t_order - offset);
    for (const auto& t : num) apply_normalized(s, t, false);
    for (const auto& t : den) apply_normalized(s, t, true);
    return s.shifted(offset);
}

} // namespace qsid
