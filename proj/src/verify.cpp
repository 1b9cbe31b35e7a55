#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <thread>

#include "qsid/verify.hpp"

namespace qsid {

std::string status_name(Status s)
{
    switch (s) {
    case Status::verified: return "verified";
    case Status::discrepancy: return "discrepancy";
    case Status::error: return "error";
    }
    return "error";
}

std::string params_text(const Params& p)
{
    std::string out;
    for (const auto& [k, v] : p) out += (out.empty() ? "" : ",") + k + "=" + std::to_string(v);
    return out;
}

namespace {

void compare_series(const QSeries& lhs, const QSeries& rhs, std::int64_t T, VerificationReport& rep)
{
    if (lhs.denom() != rhs.denom() || lhs.denom() != rep.D)
        throw SubstrateError(fmt::format("sides on D={} and D={}, record needs D={}", lhs.denom(), rhs.denom(), rep.D));
    std::int64_t through = std::min(lhs.order(), rhs.order());
    if (through < T) throw TruncationError(fmt::format("sides only known through t^{}, need t^{}", through, T));
    auto m = first_mismatch(lhs, rhs);
    if (m) {
        rep.status = Status::discrepancy;
        rep.equal_through_t = *m - 1;
        rep.first_discrepancy = Discrepancy{*m, lhs.coeff_at(*m).get_str(), rhs.coeff_at(*m).get_str()};
    } else {
        rep.status = Status::verified;
        rep.equal_through_t = through;
    }
}

VerificationReport run_record(const IdentityRecord& rec, const Params& params, std::int64_t order_q,
                              const BuildContext& ctx)
{
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.id = rec.id;
    rep.params = params;
    rep.order_q = order_q;
    rep.conjectural = rec.conjectural;
    try {
        rep.D = rec.substrate(params);
        const std::int64_t T = order_q * rep.D;
        if (rec.is_scalar()) {
            Rational a = rec.scalar_lhs(params, ctx), b = rec.scalar_rhs(params, ctx);
            if (a == b) {
                rep.status = Status::verified;
                rep.equal_through_t = T;
            } else {
                rep.status = Status::discrepancy;
                rep.first_discrepancy = Discrepancy{0, to_string(a), to_string(b)};
            }
        } else {
            compare_series(rec.lhs(params, rep.D, T, ctx), rec.rhs(params, rep.D, T, ctx), T, rep);
        }
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        rep.status = Status::error;
        rep.equal_through_t = -1;
        rep.first_discrepancy.reset();
        rep.message = e.what();
    }
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace

VerificationReport verify(const std::string& id, const Params& params, std::int64_t order_q, const BuildContext& ctx)
{
    const IdentityRecord* rec = find_record(id);
    if (!rec) throw DomainError("unknown identity '" + id + "'");
    if (order_q < 1) throw DomainError("order must be at least 1");
    try {
        rec->check(params);
    } catch (const DomainError& e) {
        throw DomainError(id + ": " + e.what());
    }
    return run_record(*rec, params, order_q, ctx);
}

std::vector<VerificationReport> run_suite(std::int64_t order_q, const Caps& caps, const BuildContext& ctx,
                                          unsigned threads, const std::function<bool(const IdentityRecord&)>& filter)
{
    if (order_q < 1) throw DomainError("order must be at least 1");
    for (const auto& [k, v] : caps) {
        if (!default_caps().count(k)) throw DomainError("unknown cap '" + k + "'");
        if (v < 0) throw DomainError("cap '" + k + "' must be non-negative");
    }
    std::vector<std::pair<const IdentityRecord*, Params>> jobs;
    for (const auto& rec : catalog()) {
        if (filter && !filter(rec)) continue;
        for (auto& p : rec.instances(caps)) jobs.emplace_back(&rec, std::move(p));
    }

    std::vector<VerificationReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
            out[i] = run_record(*jobs[i].first, jobs[i].second, order_q, ctx);
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return out;
}

nlohmann::ordered_json to_json(const VerificationReport& r)
{
    nlohmann::ordered_json j;
    j["id"] = r.id;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["D"] = r.D;
    j["order_q"] = r.order_q;
    j["equal_through_t"] = r.equal_through_t;
    j["status"] = status_name(r.status);
    j["conjectural"] = r.conjectural;
    if (r.first_discrepancy)
        j["first_discrepancy"] = {{"t_exp", r.first_discrepancy->t_exp},
                                  {"lhs", r.first_discrepancy->lhs},
                                  {"rhs", r.first_discrepancy->rhs}};
    else
        j["first_discrepancy"] = nullptr;
    j["wall_time_ms"] = r.wall_time_ms;
    return j;
}

} // namespace qsid
