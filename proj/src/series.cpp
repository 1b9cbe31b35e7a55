#include "qsid/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qsid/kernels.hpp"

namespace qsid {

namespace {

void require_same_denom(const QSeries& a, const QSeries& b)
{
    if (a.denom() != b.denom())
        throw SubstrateError("series on different substrates: D=" + std::to_string(a.denom()) + " and D=" +
                             std::to_string(b.denom()));
}

bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

} // namespace

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Rational(v);
        }
        std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        std::int64_t n = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        std::int64_t d = std::stoll(b, &used);
        if (used != b.size() || d == 0) throw std::invalid_argument(text);
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw Error("not a rational number: '" + text + "'");
    }
}

std::int64_t to_t_units(const Rational& r, int denom)
{
    Rational t = r * Rational(denom);
    if (t.denominator() != 1)
        throw SubstrateError("exponent " + to_string(r) + " is not a multiple of 1/" + std::to_string(denom));
    return t.numerator();
}

QSeries::QSeries(int denom, std::int64_t offset, std::size_t size)
    : denom_(denom), offset_(offset), size_(size), small_(size, 0)
{
    if (denom < 1) throw SubstrateError("substrate denominator must be positive");
}

QSeries QSeries::zero(int denom, std::int64_t offset, std::int64_t order)
{
    if (order < offset) throw TruncationError("series order below its offset");
    return QSeries(denom, offset, static_cast<std::size_t>(order - offset + 1));
}

QSeries QSeries::one(int denom, std::int64_t order) { return monomial(1, 0, denom, order); }

QSeries QSeries::monomial(const BigInt& c, std::int64_t t_exp, int denom, std::int64_t order)
{
    if (t_exp > order)
        throw TruncationError("monomial t^" + std::to_string(t_exp) + " lies above order " + std::to_string(order));
    QSeries s = zero(denom, std::min<std::int64_t>(t_exp, 0), order);
    const std::size_t i = static_cast<std::size_t>(t_exp - s.offset_);
    if (fits_int64(c)) {
        s.small_[i] = c.get_si();
    } else {
        s.widen();
        s.big_[i] = c;
    }
    return s;
}

QSeries QSeries::from_coefficients(int denom, std::int64_t offset, const std::vector<BigInt>& coeffs)
{
    if (coeffs.empty()) throw TruncationError("empty coefficient list");
    QSeries s(denom, offset, coeffs.size());
    s.widen();
    s.big_ = coeffs;
    s.narrow_if_fits();
    return s;
}

void QSeries::widen()
{
    if (wide_) return;
    big_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) big_[i] = static_cast<long>(small_[i]);
    small_.clear();
    small_.shrink_to_fit();
    wide_ = true;
}

void QSeries::narrow_if_fits()
{
    if (!wide_) return;
    if (!std::all_of(big_.begin(), big_.end(), fits_int64)) return;
    small_.resize(size_);
    for (std::size_t i = 0; i < size_; ++i) small_[i] = big_[i].get_si();
    big_.clear();
    big_.shrink_to_fit();
    wide_ = false;
}

BigInt QSeries::coeff_at(std::int64_t t_exp) const
{
    if (t_exp > order())
        throw TruncationError("coefficient of t^" + std::to_string(t_exp) + " requested beyond order " +
                              std::to_string(order()));
    if (t_exp < offset_) return 0;
    return get(static_cast<std::size_t>(t_exp - offset_));
}

std::vector<BigInt> QSeries::coefficients() const
{
    std::vector<BigInt> out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = get(i);
    return out;
}

bool QSeries::is_zero() const
{
    if (wide_) return std::all_of(big_.begin(), big_.end(), [](const BigInt& v) { return v == 0; });
    return std::all_of(small_.begin(), small_.end(), [](std::int64_t v) { return v == 0; });
}

QSeries QSeries::operator-() const
{
    QSeries r = *this;
    r.scale_in_place(-1);
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b)
{
    require_same_denom(a, b);
    std::int64_t off = std::min(a.offset(), b.offset());
    std::int64_t ord = std::min(a.order(), b.order());
    QSeries r = QSeries::zero(a.denom(), off, ord);
    if (a.offset() <= ord) r.add_in_place(a.truncated(ord), 1);
    if (b.offset() <= ord) r.add_in_place(b.truncated(ord), 1);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b)
{
    require_same_denom(a, b);
    std::int64_t off = a.offset() + b.offset();
    std::int64_t ord = std::min(a.order() + b.offset(), b.order() + a.offset());
    QSeries r = QSeries::zero(a.denom(), off, ord);
    std::size_t n = r.size();
    std::size_t na = std::min(a.size(), n), nb = std::min(b.size(), n);

    if (!a.wide() && !b.wide()) {
        bool ok = true;
        for (std::size_t i = 0; i < na && ok; ++i) {
            std::int64_t ai = a.small_[i];
            if (ai == 0) continue;
            std::size_t lim = std::min(nb, n - i);
            for (std::size_t j = 0; j < lim; ++j) {
                std::int64_t p;
                if (__builtin_mul_overflow(ai, b.small_[j], &p) ||
                    __builtin_add_overflow(r.small_[i + j], p, &r.small_[i + j])) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return r;
        r = QSeries::zero(a.denom(), off, ord);
    }

    r.widen();
    std::vector<BigInt> bb(nb);
    for (std::size_t j = 0; j < nb; ++j) bb[j] = b.get(j);
    for (std::size_t i = 0; i < na; ++i) {
        BigInt ai = a.get(i);
        if (ai == 0) continue;
        std::size_t lim = std::min(nb, n - i);
        for (std::size_t j = 0; j < lim; ++j) r.big_[i + j] += ai * bb[j];
    }
    r.narrow_if_fits();
    return r;
}

bool operator==(const QSeries& a, const QSeries& b)
{
    if (a.denom() != b.denom() || a.offset() != b.offset() || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.get(i) != b.get(i)) return false;
    return true;
}

QSeries QSeries::scaled(const BigInt& c) const
{
    QSeries r = *this;
    r.scale_in_place(c);
    return r;
}

void QSeries::scale_in_place(const BigInt& c)
{
    if (!wide_ && fits_int64(c)) {
        std::int64_t k = c.get_si();
        bool ok = true;
        std::vector<std::int64_t> out(size_);
        for (std::size_t i = 0; i < size_ && ok; ++i) ok = !__builtin_mul_overflow(small_[i], k, &out[i]);
        if (ok) {
            small_ = std::move(out);
            return;
        }
    }
    widen();
    for (auto& v : big_) v *= c;
    narrow_if_fits();
}

QSeries QSeries::truncated(std::int64_t ord) const
{
    if (ord > order())
        throw TruncationError("cannot extend a series from order " + std::to_string(order()) + " to " +
                              std::to_string(ord));
    if (ord < offset_) return zero(denom_, ord, ord);
    QSeries r = *this;
    r.size_ = static_cast<std::size_t>(ord - offset_ + 1);
    if (wide_)
        r.big_.resize(r.size_);
    else
        r.small_.resize(r.size_);
    return r;
}

QSeries QSeries::extended(std::int64_t ord) const
{
    if (ord <= order()) return truncated(ord);
    QSeries r = *this;
    r.size_ = static_cast<std::size_t>(ord - offset_ + 1);
    if (wide_)
        r.big_.resize(r.size_);
    else
        r.small_.resize(r.size_, 0);
    return r;
}

QSeries QSeries::shifted(std::int64_t k) const
{
    QSeries r = *this;
    r.offset_ += k;
    return r;
}

QSeries QSeries::refined(int new_denom) const
{
    if (new_denom < 1 || new_denom % denom_ != 0)
        throw SubstrateError("cannot refine D=" + std::to_string(denom_) + " to D=" + std::to_string(new_denom));
    std::int64_t f = new_denom / denom_;
    if (f == 1) return *this;
    QSeries r = zero(new_denom, offset_ * f, (order() + 1) * f - 1);
    if (wide_) r.widen();
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t j = i * static_cast<std::size_t>(f);
        if (wide_)
            r.big_[j] = big_[i];
        else
            r.small_[j] = small_[i];
    }
    r.narrow_if_fits();
    return r;
}

QSeries QSeries::substituted(std::int64_t k) const
{
    if (k < 1) throw SubstrateError("substitution q -> q^k needs k >= 1");
    std::int64_t g = std::gcd<std::int64_t>(denom_, k);
    int nd = static_cast<int>(denom_ / g);
    std::int64_t m = k / g;
    QSeries r = zero(nd, offset_ * m, (order() + 1) * m - 1);
    if (wide_) r.widen();
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t j = i * static_cast<std::size_t>(m);
        if (wide_)
            r.big_[j] = big_[i];
        else
            r.small_[j] = small_[i];
    }
    r.narrow_if_fits();
    return r;
}

void QSeries::mul_binomial_in_place(std::int64_t e, int sign)
{
    if (e < 1) throw Error("binomial exponent must be positive");
    std::size_t ue = static_cast<std::size_t>(e);
    if (ue >= size_) return;
    std::size_t k = size_;
    if (!wide_) {
        k = kernels::active().mul_binomial(small_.data(), size_, ue, sign);
        if (k <= ue) return;
        widen();
    }
    for (std::size_t i = k; i > ue; --i) {
        if (sign > 0)
            big_[i - 1] -= big_[i - 1 - ue];
        else
            big_[i - 1] += big_[i - 1 - ue];
    }
    narrow_if_fits();
}

void QSeries::div_binomial_in_place(std::int64_t e, int sign)
{
    if (e < 1) throw Error("binomial exponent must be positive");
    std::size_t ue = static_cast<std::size_t>(e);
    if (ue >= size_) return;
    std::size_t k = 0;
    if (!wide_) {
        k = kernels::active().div_binomial(small_.data(), size_, ue, sign);
        if (k == size_) return;
        widen();
    }
    for (std::size_t i = std::max(k, ue); i < size_; ++i) {
        if (sign > 0)
            big_[i] += big_[i - ue];
        else
            big_[i] -= big_[i - ue];
    }
}

void QSeries::add_in_place(const QSeries& other, int sign)
{
    require_same_denom(*this, other);
    if (other.offset_ < offset_)
        throw TruncationError("added series starts below the accumulator offset");
    if (other.offset_ > order()) return;
    if (other.order() < order())
        throw TruncationError("added series is not known through the accumulator order");
    std::size_t d0 = static_cast<std::size_t>(other.offset_ - offset_);
    std::size_t count = size_ - d0;
    std::size_t k = 0;
    if (!wide_ && !other.wide_) {
        k = kernels::active().add_signed(small_.data() + d0, other.small_.data(), count, sign);
        if (k == count) return;
    }
    widen();
    for (std::size_t i = k; i < count; ++i) {
        if (sign > 0)
            big_[d0 + i] += other.get(i);
        else
            big_[d0 + i] -= other.get(i);
    }
    narrow_if_fits();
}

QSeries invert(const QSeries& a)
{
    BigInt lead = a.get(0);
    if (lead != 1 && lead != -1)
        throw NotInvertibleError("lead coefficient " + lead.get_str() + " is not a unit");
    std::int64_t len = a.order() - a.offset();
    QSeries r = QSeries::zero(a.denom(), -a.offset(), -a.offset() + len);
    std::size_t n = r.size();

    if (!a.wide()) {
        std::int64_t l = lead.get_si();
        bool ok = true;
        r.small_[0] = l;
        for (std::size_t k = 1; k < n && ok; ++k) {
            std::int64_t acc = 0;
            for (std::size_t i = 1; i <= k; ++i) {
                std::int64_t ai = a.small_[i];
                if (ai == 0) continue;
                std::int64_t p;
                if (__builtin_mul_overflow(ai, r.small_[k - i], &p) || __builtin_add_overflow(acc, p, &acc)) {
                    ok = false;
                    break;
                }
            }
            if (ok && __builtin_mul_overflow(-l, acc, &r.small_[k])) ok = false;
        }
        if (ok) return r;
        r = QSeries::zero(a.denom(), -a.offset(), -a.offset() + len);
    }

    r.widen();
    std::vector<BigInt> aa = a.coefficients();
    r.big_[0] = lead;
    for (std::size_t k = 1; k < n; ++k) {
        BigInt acc = 0;
        for (std::size_t i = 1; i <= k; ++i)
            if (aa[i] != 0) acc += aa[i] * r.big_[k - i];
        r.big_[k] = -lead * acc;
    }
    r.narrow_if_fits();
    return r;
}

std::optional<std::int64_t> first_mismatch(const QSeries& a, const QSeries& b)
{
    require_same_denom(a, b);
    std::int64_t lo = std::min(a.offset(), b.offset());
    std::int64_t hi = std::min(a.order(), b.order());
    for (std::int64_t t = lo; t <= hi; ++t)
        if (a.coeff_at(t) != b.coeff_at(t)) return t;
    return std::nullopt;
}

std::string coefficient_csv(const QSeries& s)
{
    std::ostringstream out;
    out << "t_exponent,q_exponent,coefficient\n";
    for (std::int64_t t = s.offset(); t <= s.order(); ++t)
        out << t << ',' << to_string(Rational(t, s.denom())) << ',' << s.coeff_at(t).get_str() << '\n';
    return out.str();
}

} // namespace qsid
