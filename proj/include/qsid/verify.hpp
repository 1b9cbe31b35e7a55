#pragma once

// Identity catalog and the two-sided verification engine.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsid/characters.hpp"
#include "qsid/fermionic.hpp"

namespace qsid {

// Perturbs one quadratic entry of every form built for a family (negative control).
struct Mutation {
    FormFamily family;
    std::size_t i = 0;
    std::size_t j = 0;
    Rational delta{1};
};

// Hands out fermionic forms to record builders, applying an optional mutation.
class BuildContext {
public:
    BuildContext() = default;
    explicit BuildContext(Mutation m) : mutation_(m) {}

    FermionicFormSpec form(FormFamily family, const Params& params) const;
    const std::optional<Mutation>& mutation() const { return mutation_; }

private:
    std::optional<Mutation> mutation_;
};

// Suite caps by parameter name: g, h, k, P, pq (p*p'), pp (p').
using Caps = std::map<std::string, std::int64_t>;
Caps default_caps();

using SeriesSide = std::function<QSeries(const Params&, int denom, std::int64_t t_order, const BuildContext&)>;
using ScalarSide = std::function<Rational(const Params&, const BuildContext&)>;

struct IdentityRecord {
    std::string id;
    std::string kind;
    std::vector<std::string> param_names;
    std::string domain;      // human-readable domain
    std::string provenance;  // what the identity states
    bool conjectural = false;
    std::vector<FormFamily> families; // fermionic builders the record uses

    std::function<void(const Params&)> check;          // throws DomainError
    std::function<int(const Params&)> substrate;       // D
    std::function<std::vector<Params>(const Caps&)> instances;

    // Exactly one of the pairs is set.
    SeriesSide lhs, rhs;
    ScalarSide scalar_lhs, scalar_rhs;

    bool is_scalar() const { return static_cast<bool>(scalar_lhs); }
};

const std::vector<IdentityRecord>& catalog();
const IdentityRecord* find_record(const std::string& id);

enum class Status { verified, discrepancy, error };
std::string status_name(Status s);

struct Discrepancy {
    std::int64_t t_exp = 0;
    std::string lhs;
    std::string rhs;
};

struct VerificationReport {
    std::string id;
    Params params;
    int D = 1;
    std::int64_t order_q = 0;
    std::int64_t equal_through_t = -1;
    Status status = Status::error;
    bool conjectural = false;
    std::optional<Discrepancy> first_discrepancy;
    double wall_time_ms = 0;
    std::string message; // error text; not part of the JSON payload
};

// DomainError for unknown ids, bad parameters or order_q < 1. Evaluation failures
// become reports with status error.
VerificationReport verify(const std::string& id, const Params& params, std::int64_t order_q,
                          const BuildContext& ctx = {});

// Every record over its capped domain, in catalog order. threads = 0 picks the hardware count.
std::vector<VerificationReport> run_suite(std::int64_t order_q, const Caps& caps, const BuildContext& ctx = {},
                                          unsigned threads = 0,
                                          const std::function<bool(const IdentityRecord&)>& filter = {});

nlohmann::ordered_json to_json(const VerificationReport& r);
std::string params_text(const Params& p);

} // namespace qsid
