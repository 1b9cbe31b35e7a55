#include "qsid/fermionic.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace qsid {

std::string FermionicFormSpec::var_name(std::size_t i) const
{
    if (i < static_cast<std::size_t>(chain_len)) return "N" + std::to_string(i + 1);
    return extra_vars.at(i - static_cast<std::size_t>(chain_len)).name;
}

std::vector<Rational> FermionicFormSpec::effective_lin() const
{
    std::vector<Rational> out = lin;
    for (int j = std::max(tail_start, 1); j <= chain_len; ++j) out[static_cast<std::size_t>(j - 1)] += 1;
    return out;
}

Rational FermionicFormSpec::exponent(const std::vector<std::int64_t>& x) const
{
    std::vector<Rational> l = effective_lin();
    Rational e = constant;
    for (std::size_t i = 0; i < num_vars(); ++i) {
        e += l[i] * x[i];
        for (std::size_t j = 0; j < num_vars(); ++j) e += quad[i][j] * x[i] * x[j];
    }
    return e;
}

namespace {

Rational eval_affine(const AffineForm& a, const std::vector<std::int64_t>& x)
{
    Rational v = a.constant;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i] != 0) v += a.coeffs[i] * x[i];
    return v;
}

std::string affine_text(const AffineForm& a, const FermionicFormSpec& f)
{
    std::string out;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        const Rational& c = a.coeffs[i];
        if (c == 0) continue;
        if (!out.empty() || c < 0) out += c < 0 ? "-" : "+";
        Rational m = c < 0 ? -c : c;
        if (m != 1) out += to_string(m) + "*";
        out += f.var_name(i);
    }
    if (a.constant != 0 || out.empty()) {
        if (!out.empty() && a.constant > 0) out += "+";
        out += to_string(a.constant);
    }
    return out;
}

std::string parity_name(Parity p)
{
    switch (p) {
    case Parity::any: return "any";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    }
    return "any";
}

std::string mono_text(const QMonomial& m)
{
    std::string out = m.sign < 0 ? "-q" : "q";
    if (m.exp == 1) return out;
    if (m.exp.denominator() == 1 && m.exp >= 0) return out + "^" + std::to_string(m.exp.numerator());
    return out + "^(" + to_string(m.exp) + ")";
}

constexpr double kEps = 1e-7;

// Evaluation plan: enumeration order, scaled exact coefficients and bound data.
class Evaluator {
public:
    Evaluator(const FermionicFormSpec& f, int denom, std::int64_t t_order, int scale)
        : f_(f), D_(denom), T_(t_order), n_(f.num_vars())
    {
        if (f.quad.size() != n_ || f.lin.size() != n_) throw EvaluationError("form dimensions are inconsistent");
        for (std::size_t i = f.chain_len; i < n_; ++i) order_.push_back(i);
        for (int j = 0; j < f.chain_len; ++j) order_.push_back(static_cast<std::size_t>(j));
        depth_of_.assign(n_, 0);
        for (std::size_t d = 0; d < n_; ++d) depth_of_[order_[d]] = d;

        std::vector<Rational> lin = f.effective_lin();
        K_ = f.constant.denominator();
        for (std::size_t i = 0; i < n_; ++i) {
            K_ = lcm_denominator(K_, lin[i]);
            for (std::size_t j = 0; j < n_; ++j) K_ = lcm_denominator(K_, f.quad[i][j]);
        }
        auto scaled = [&](const Rational& r) { return r.numerator() * (K_ / r.denominator()); };
        Qk_.assign(n_, std::vector<std::int64_t>(n_));
        Q_.assign(n_, std::vector<double>(n_));
        Lk_.resize(n_);
        L_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Lk_[i] = scaled(lin[i]);
            L_[i] = to_double(lin[i]);
            for (std::size_t j = 0; j < n_; ++j) {
                if (f.quad[i][j] != f.quad[j][i]) throw EvaluationError("quadratic form must be symmetric");
                Qk_[i][j] = scaled(f.quad[i][j]);
                Q_[i][j] = to_double(f.quad[i][j]);
            }
        }
        Ck_ = scaled(f.constant);
        C_ = to_double(f.constant);

        // Diagonal left after splitting negative couplings among the still-free variables.
        qprime_.assign(n_ + 1, std::vector<double>(n_, 0));
        for (std::size_t d = 0; d <= n_; ++d) {
            for (std::size_t a = d; a < n_; ++a) {
                std::size_t r = order_[a];
                double v = Q_[r][r];
                for (std::size_t b = d; b < n_; ++b)
                    if (b != a && Q_[r][order_[b]] < 0) v += Q_[r][order_[b]];
                if (v <= 0)
                    throw PruningError("exponent is not bounded below in variable " + f.var_name(r) +
                                       " of form " + f.family);
                qprime_[d][r] = v;
            }
        }

        denoms_at_.assign(n_, {});
        for (std::size_t k = 0; k < f.denom_factors.size(); ++k) {
            const auto& df = f.denom_factors[k];
            if (df.arg.exp <= 0) throw EvaluationError("denominator argument exponent must be positive");
            std::size_t last = 0;
            bool any = false;
            for (std::size_t i = 0; i < n_; ++i)
                if (df.index.coeffs.at(i) != 0) {
                    last = std::max(last, depth_of_[i]);
                    any = true;
                }
            if (!any) throw EvaluationError("denominator index does not depend on any variable");
            denoms_at_[last].push_back(k);
        }
        if (f.gaussian_factor) {
            const auto& gf = *f.gaussian_factor;
            for (std::size_t i = 0; i < n_; ++i)
                if (gf.top.coeffs.at(i) != 0 && depth_of_[i] >= depth_of_[gf.bottom])
                    throw EvaluationError("Gaussian top must depend only on variables enumerated before its bottom");
        }

        threshold_ = static_cast<double>(T_) / D_ * scale + (scale - 1);
        x_.assign(n_, 0);
    }

    QSeries run()
    {
        std::vector<double> beta = L_;
        double lb = C_ + bound_rest(0, beta);
        std::int64_t lo = static_cast<std::int64_t>(std::floor(lb * D_ + kEps));
        if (lo > T_) return QSeries::zero(D_, T_, T_);
        acc_ = QSeries::zero(D_, lo, T_);
        QSeries s = QSeries::one(D_, window(lb));
        descend(0, C_, beta, s);
        return acc_;
    }

private:
    static double min_term(double beta, double qp) { return beta >= 0 ? 0.0 : -beta * beta / (4 * qp); }

    // Lower bound of the part of the exponent that depends on order_[d..].
    double bound_rest(std::size_t d, const std::vector<double>& beta) const
    {
        double s = 0;
        for (std::size_t a = d; a < n_; ++a) s += min_term(beta[order_[a]], qprime_[d][order_[a]]);
        return s;
    }

    // Highest relative t-exponent a subtree with this lower bound can need.
    std::int64_t window(double lb) const
    {
        return static_cast<std::int64_t>(std::floor(static_cast<double>(T_) - lb * D_ + kEps));
    }

    void descend(std::size_t d, double e_fixed, const std::vector<double>& beta, const QSeries& s)
    {
        if (d == n_) {
            leaf(s);
            return;
        }
        const std::size_t v = order_[d];
        const Parity par = v >= static_cast<std::size_t>(f_.chain_len)
                               ? f_.extra_vars[v - static_cast<std::size_t>(f_.chain_len)].parity
                               : Parity::any;
        std::int64_t start = par == Parity::odd ? 1 : 0;
        std::int64_t step = par == Parity::any ? 1 : 2;

        std::optional<std::int64_t> upper;
        if (v > 0 && v < static_cast<std::size_t>(f_.chain_len)) upper = x_[v - 1];
        if (f_.gaussian_factor && f_.gaussian_factor->bottom == v) {
            Rational top = eval_affine(f_.gaussian_factor->top, x_);
            if (top.denominator() != 1) throw EvaluationError("Gaussian top is not an integer");
            upper = upper ? std::min(*upper, top.numerator()) : top.numerator();
        }

        // Convex minorant psi(x) = a x^2 + b x + c of the child bound, valid for all x >= 0.
        double a = Q_[v][v], b = beta[v], c = e_fixed;
        for (std::size_t k = d + 1; k < n_; ++k) {
            std::size_t r = order_[k];
            double qp = qprime_[d + 1][r];
            double bm = std::max(0.0, -beta[r]);
            double qm = std::max(0.0, -Q_[r][v]);
            a -= qm * qm / qp;
            b -= bm * qm / qp;
            c -= bm * bm / (4 * qp);
        }
        if (!upper && a <= 0)
            throw PruningError("cannot bound the range of " + f_.var_name(v) + " in form " + f_.family);
        const double vertex = a > 0 ? -b / (2 * a) : 0;

        std::vector<double> child_beta(n_);
        for (std::int64_t xv = start;; xv += step) {
            if (upper && xv > *upper) break;
            const double xd = static_cast<double>(xv);
            if (!upper && xd > vertex && a * xd * xd + b * xd + c > threshold_ + kEps) break;

            double e = e_fixed + Q_[v][v] * xd * xd + beta[v] * xd;
            for (std::size_t k = d + 1; k < n_; ++k) {
                std::size_t r = order_[k];
                child_beta[r] = beta[r] + 2 * Q_[r][v] * xd;
            }
            double lb = e + bound_rest(d + 1, child_beta);
            if (lb > threshold_ + kEps) continue;

            x_[v] = xv;
            // A negative window only occurs under relaxed bounds; keep one slot so leaves still get checked.
            std::int64_t w = std::max<std::int64_t>(window(lb), 0);
            QSeries cs = s.order() > w ? s.truncated(w) : s;
            for (std::size_t k : denoms_at_[d]) apply_denominator(cs, f_.denom_factors[k]);
            descend(d + 1, e, child_beta, cs);
        }
        x_[v] = 0;
    }

    void apply_denominator(QSeries& s, const DenomFactor& df) const
    {
        Rational idx = eval_affine(df.index, x_);
        if (idx.denominator() != 1) throw EvaluationError("denominator index is not an integer");
        if (idx < 0) throw EvaluationError("denominator index is negative");
        PochTerm t = make_poch_term(df.arg, df.base_exp, idx.numerator(), D_);
        apply_normalized(s, t, true);
    }

    void leaf(const QSeries& s)
    {
        __int128 ek = Ck_;
        for (std::size_t i = 0; i < n_; ++i) {
            if (x_[i] == 0) continue;
            ek += static_cast<__int128>(Lk_[i]) * x_[i];
            for (std::size_t j = 0; j < n_; ++j) ek += static_cast<__int128>(Qk_[i][j]) * x_[i] * x_[j];
        }
        __int128 num = ek * D_;
        if (num % K_ != 0) {
            throw SubstrateError("term exponent " + to_string(f_.exponent(x_)) + " of form " + f_.family +
                                 " is not a multiple of 1/" + std::to_string(D_));
        }
        std::int64_t e = static_cast<std::int64_t>(num / K_);
        if (e > T_) return;
        if (T_ - e > s.order()) throw PruningError("lower bound exceeded an actual term in form " + f_.family);

        QSeries term = s.truncated(T_ - e);
        if (f_.gaussian_factor) {
            Rational top = eval_affine(f_.gaussian_factor->top, x_);
            std::int64_t bottom = x_[f_.gaussian_factor->bottom];
            const QSeries& g = gaussian_on(top.numerator(), bottom);
            if (g.is_zero()) return;
            term = term * g.extended(std::max(g.order(), term.order())).truncated(term.order());
        }
        if (e < acc_.offset()) {
            QSeries wider = QSeries::zero(D_, e, T_);
            wider.add_in_place(acc_);
            acc_ = std::move(wider);
        }
        acc_.add_in_place(term.shifted(e));
    }

    const QSeries& gaussian_on(std::int64_t P, std::int64_t N)
    {
        auto key = std::make_pair(P, N);
        auto it = gauss_.find(key);
        if (it != gauss_.end()) return it->second;
        return gauss_.emplace(key, gaussian(P, N).refined(D_)).first->second;
    }

    const FermionicFormSpec& f_;
    int D_;
    std::int64_t T_;
    std::size_t n_;
    std::vector<std::size_t> order_, depth_of_;
    std::int64_t K_ = 1;
    std::vector<std::vector<std::int64_t>> Qk_;
    std::vector<std::int64_t> Lk_;
    std::int64_t Ck_ = 0;
    std::vector<std::vector<double>> Q_;
    std::vector<double> L_;
    double C_ = 0;
    std::vector<std::vector<double>> qprime_;
    std::vector<std::vector<std::size_t>> denoms_at_;
    double threshold_ = 0;
    std::vector<std::int64_t> x_;
    QSeries acc_;
    std::map<std::pair<std::int64_t, std::int64_t>, QSeries> gauss_;
};

} // namespace

QSeries eval_form(const FermionicFormSpec& spec, int denom, std::int64_t t_order, const EvalOptions& opt)
{
    QSeries out = Evaluator(spec, denom, t_order, opt.budget_scale).run();
    if (opt.certify) {
        EvalOptions relaxed = opt;
        relaxed.certify = false;
        relaxed.budget_scale = 2 * opt.budget_scale;
        QSeries check = Evaluator(spec, denom, t_order, relaxed.budget_scale).run();
        if (first_mismatch(out, check) || out.order() != check.order())
            throw PruningError("pruning certificate failed for form " + spec.family);
    }
    return out;
}

FermionicFormSpec to_free_coordinates(const FermionicFormSpec& spec)
{
    const std::size_t n = spec.num_vars();
    const std::size_t c = static_cast<std::size_t>(spec.chain_len);
    if (spec.gaussian_factor && spec.gaussian_factor->bottom < c)
        throw EvaluationError("Gaussian bottom on a chain variable is not supported");
    // x_old = T x_new; N_j = n_j + ... + n_c.
    auto T = [&](std::size_t i, std::size_t k) -> std::int64_t {
        if (i < c && k < c) return k >= i ? 1 : 0;
        return i == k ? 1 : 0;
    };
    auto pull = [&](const std::vector<Rational>& v) {
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (T(i, k)) out[k] += v[i];
        return out;
    };

    FermionicFormSpec out;
    out.family = spec.family;
    out.chain_len = 0;
    for (std::size_t j = 0; j < c; ++j) out.extra_vars.push_back({"n" + std::to_string(j + 1), Parity::any});
    for (const auto& v : spec.extra_vars) out.extra_vars.push_back(v);
    out.quad.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            Rational acc = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (!T(i, k)) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (T(j, l)) acc += spec.quad[i][j];
            }
            out.quad[k][l] = acc;
        }
    out.lin = pull(spec.effective_lin());
    out.constant = spec.constant;
    out.tail_start = 1;
    for (const auto& df : spec.denom_factors) {
        DenomFactor d = df;
        d.index.coeffs = pull(df.index.coeffs);
        out.denom_factors.push_back(d);
    }
    if (spec.gaussian_factor) {
        GaussianFactor g = *spec.gaussian_factor;
        g.top.coeffs = pull(g.top.coeffs);
        out.gaussian_factor = g;
    }
    return out;
}

Matrix bmatrix(int g)
{
    int c = std::max(g - 1, 0);
    Matrix B(c, std::vector<Rational>(c, Rational(0)));
    for (int j = 0; j < c; ++j)
        for (int l = 0; l < c; ++l) B[j][l] = std::min(j, l) + 1;
    return B;
}

bool bmatrix_check(int g, const Matrix& B, std::uint64_t seed, int samples)
{
    int c = std::max(g - 1, 0);
    if (static_cast<int>(B.size()) != c) return false;
    for (const auto& row : B)
        if (static_cast<int>(row.size()) != c) return false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, 30);
    for (int t = 0; t < samples; ++t) {
        std::vector<std::int64_t> nv(c);
        for (auto& v : nv) v = dist(rng);
        Rational lhs = 0, rhs = 0;
        for (int j = 0; j < c; ++j) {
            std::int64_t N = 0;
            for (int i = j; i < c; ++i) N += nv[i];
            lhs += N * N;
        }
        for (int j = 0; j < c; ++j)
            for (int l = 0; l < c; ++l) rhs += B[j][l] * nv[j] * nv[l];
        if (lhs != rhs) return false;
    }
    return true;
}

bool bmatrix_check(int g, std::uint64_t seed, int samples) { return bmatrix_check(g, bmatrix(g), seed, samples); }

nlohmann::ordered_json to_json(const FermionicFormSpec& f)
{
    using ojson = nlohmann::ordered_json;
    ojson j;
    j["chain_len"] = f.chain_len;
    ojson extras = ojson::array();
    for (const auto& v : f.extra_vars) extras.push_back({{"name", v.name}, {"parity", parity_name(v.parity)}});
    j["extra_vars"] = extras;
    ojson quad = ojson::array();
    for (const auto& row : f.quad) {
        ojson r = ojson::array();
        for (const auto& c : row) r.push_back(to_string(c));
        quad.push_back(r);
    }
    j["quad"] = quad;
    ojson lin = ojson::array();
    for (const auto& c : f.lin) lin.push_back(to_string(c));
    j["lin"] = lin;
    j["const"] = to_string(f.constant);
    j["tail_start"] = f.tail_start;
    ojson dens = ojson::array();
    for (const auto& d : f.denom_factors) {
        std::string idx = affine_text(d.index, f);
        dens.push_back({{"arg", mono_text(d.arg)},
                        {"base", mono_text({1, d.base_exp})},
                        {"index", idx},
                        {"text", "(" + mono_text(d.arg) + ";" + mono_text({1, d.base_exp}) + ")_{" + idx + "}"}});
    }
    j["denom_factors"] = dens;
    if (f.gaussian_factor) {
        j["gaussian_factor"] = {{"top", affine_text(f.gaussian_factor->top, f)},
                                {"bottom", f.var_name(f.gaussian_factor->bottom)}};
    } else {
        j["gaussian_factor"] = nullptr;
    }
    return j;
}

} // namespace qsid
