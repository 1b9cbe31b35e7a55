#pragma once

// Fermionic multi-sums: a quadratic exponent in non-negative integer variables
// over a product of q-Pochhammer denominators, optionally times one Gaussian
// polynomial.
//
// Variables 0 .. chain_len-1 are chain variables N_1 >= ... >= N_c >= 0; the
// rest are free, each with a parity restriction.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsid/qfunctions.hpp"

namespace qsid {

enum class Parity { any, even, odd };

struct Variable {
    std::string name;
    Parity parity = Parity::any;
};

struct AffineForm {
    std::vector<Rational> coeffs; // one per variable
    Rational constant{0};
};

// (arg; q^base_exp)_{index(x)}
struct DenomFactor {
    QMonomial arg{1, 1};
    Rational base_exp{1};
    AffineForm index;
};

struct GaussianFactor {
    AffineForm top;
    std::size_t bottom = 0; // variable index
};

using Matrix = std::vector<std::vector<Rational>>;

struct FermionicFormSpec {
    std::string family;
    int chain_len = 0;
    std::vector<Variable> extra_vars;
    // Exponent sum_{i,j} quad[i][j] x_i x_j + lin.x + constant (+ tail).
    Matrix quad;
    std::vector<Rational> lin;
    Rational constant{0};
    // Adds N_tail_start + ... + N_chain_len (1-based); none when > chain_len.
    int tail_start = 1;
    std::vector<DenomFactor> denom_factors;
    std::optional<GaussianFactor> gaussian_factor;

    std::size_t num_vars() const { return static_cast<std::size_t>(chain_len) + extra_vars.size(); }
    std::string var_name(std::size_t i) const;
    // lin with the tail folded in.
    std::vector<Rational> effective_lin() const;
    Rational exponent(const std::vector<std::int64_t>& x) const;
};

using Params = std::map<std::string, std::int64_t>;

// Families with a builder. Parameter names: ag {k,i}; thm_2_1, thm_2_3, thm_2_5,
// thm_2_7 {g,s}; thm_2_2, thm_2_4 {h}; thm_2_6, thm_2_8 {g}; m37 {k}; asw {k}
// (k = 5 is the second form for k = 4); lemma families take the parameters of
// the matching theorem; special families take none.
enum class FormFamily {
    ag,
    thm_2_1, thm_2_2, thm_2_3, thm_2_4, thm_2_5, thm_2_6, thm_2_7, thm_2_8,
    m37,
    asw,
    lemma_3_1a, lemma_3_1b, lemma_3_2, lemma_3_3a, lemma_3_3b, lemma_3_4,
    lemma_3_5a, lemma_3_5b, lemma_3_6a, lemma_3_6b, lemma_3_7a, lemma_3_7b, lemma_3_8a, lemma_3_8b,
    euler_1, euler_2,
    rogers_1, rogers_2, rogers_3, rogers_4a, rogers_4b,
    selberg_1, selberg_2, selberg_3,
};

const std::vector<FormFamily>& all_families();
std::string family_name(FormFamily f);
std::optional<FormFamily> family_from_name(const std::string& name);
// Representative parameters for a family (used by dump-form defaults and tests).
Params sample_params(FormFamily f);

// Throws DomainError for parameters outside the family's domain.
FermionicFormSpec build_form(FormFamily family, const Params& params);

// Rewrites chain variables N_j as n_j + ... + n_c with free n_j >= 0.
FermionicFormSpec to_free_coordinates(const FermionicFormSpec& spec);

struct EvalOptions {
    // Re-run with every pruning bound doubled and require identical output.
    bool certify = false;
    // Internal: multiplier applied to the pruning budget.
    int budget_scale = 1;
};

// Sum through t^t_order on D = denom. Every term's exponent must be a multiple of 1/denom.
QSeries eval_form(const FermionicFormSpec& spec, int denom, std::int64_t t_order, const EvalOptions& opt = {});

// sum_j N_j^2 == n^T B n for random n, with B_{jl} = min(j, l).
bool bmatrix_check(int g, std::uint64_t seed = 1, int samples = 50);
bool bmatrix_check(int g, const Matrix& B, std::uint64_t seed = 1, int samples = 50);
Matrix bmatrix(int g);

nlohmann::ordered_json to_json(const FermionicFormSpec& spec);

} // namespace qsid
