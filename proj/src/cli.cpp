#include "qsid/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>

#include "qsid/verify.hpp"

namespace qsid::cli {

namespace {

// "k=v" pairs with integer values.
std::map<std::string, std::int64_t> parse_pairs(const std::vector<std::string>& items, const char* what)
{
    std::map<std::string, std::int64_t> out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw CLI::ValidationError(what, "expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (val.empty() || used != val.size())
            throw CLI::ValidationError(what, "value of '" + key + "' is not an integer");
        if (out.count(key)) throw CLI::ValidationError(what, "'" + key + "' given twice");
        out[key] = v;
    }
    return out;
}

std::string report_line(const VerificationReport& r)
{
    std::string head = fmt::format("{:<22} {:<28} D={} q^{}", r.id, params_text(r.params), r.D, r.order_q);
    std::string tail;
    switch (r.status) {
    case Status::verified: tail = fmt::format("verified through t^{}", r.equal_through_t); break;
    case Status::discrepancy:
        tail = fmt::format("DISCREPANCY at t^{}: lhs {} rhs {}", r.first_discrepancy->t_exp, r.first_discrepancy->lhs,
                           r.first_discrepancy->rhs);
        break;
    case Status::error: tail = "ERROR: " + r.message; break;
    }
    return fmt::format("{}  {}{} ({:.1f} ms)", head, tail, r.conjectural ? " [conjectural]" : "", r.wall_time_ms);
}

int exit_for(const std::vector<VerificationReport>& reps)
{
    bool disc = false, error = false;
    for (const auto& r : reps) {
        disc = disc || r.status == Status::discrepancy;
        error = error || r.status == Status::error;
    }
    return error ? internal : disc ? discrepancy : ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"qsid: finite-order verification of q-series identities", "qsid"};
    app.require_subcommand(1, 1);

    auto* list = app.add_subcommand("list", "List catalog records");

    std::string id;
    std::vector<std::string> params;
    std::int64_t order = 40;
    bool json = false;
    auto* verify_cmd = app.add_subcommand("verify", "Verify one identity instance");
    verify_cmd->add_option("--id", id, "Record id")->required();
    verify_cmd->add_option("--param", params, "Parameter key=value");
    verify_cmd->add_option("--order", order, "Order in q")->required();
    verify_cmd->add_flag("--json", json, "JSON report");

    std::vector<std::string> caps;
    unsigned threads = 0;
    auto* suite = app.add_subcommand("suite", "Verify every record over capped domains");
    suite->add_option("--order", order, "Order in q (default 40)");
    suite->add_option("--cap", caps, "Cap key=value (g, h, k, P, pq, pp)");
    suite->add_option("--threads", threads, "Worker threads (0: hardware count)");
    suite->add_flag("--json", json, "JSON array of reports");

    std::string expr;
    bool csv = false;
    auto* series = app.add_subcommand("series", "Expand a product expression");
    series->add_option("--expr", expr, "Product of q-Pochhammer symbols")->required();
    series->add_option("--order", order, "Order in q")->required();
    series->add_flag("--csv", csv, "CSV coefficient dump");

    auto* dump = app.add_subcommand("dump-form", "Print a fermionic form as JSON");
    dump->add_option("--id", id, "Form family")->required();
    dump->add_option("--param", params, "Parameter key=value");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (list->parsed()) {
            for (const auto& r : catalog()) {
                std::string names;
                for (const auto& n : r.param_names) names += (names.empty() ? "" : ",") + n;
                out << fmt::format("{:<22} {:<14} {}{}\n", r.id, names.empty() ? "-" : names, r.provenance,
                                   r.conjectural ? " [conjectural]" : "");
            }
            return ok;
        }
        if (verify_cmd->parsed()) {
            auto p = parse_pairs(params, "--param");
            VerificationReport r = verify(id, p, order);
            if (json)
                out << to_json(r).dump() << "\n";
            else
                out << report_line(r) << "\n";
            if (r.status == Status::error && !json) err << r.message << "\n";
            return exit_for({r});
        }
        if (suite->parsed()) {
            Caps c = default_caps();
            for (const auto& [k, v] : parse_pairs(caps, "--cap")) c[k] = v;
            auto reps = run_suite(order, c, {}, threads);
            if (json) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& r : reps) arr.push_back(to_json(r));
                out << arr.dump() << "\n";
            } else {
                std::size_t v = 0, d = 0, e = 0;
                for (const auto& r : reps) {
                    out << report_line(r) << "\n";
                    (r.status == Status::verified ? v : r.status == Status::discrepancy ? d : e)++;
                }
                out << fmt::format("{} records: {} verified, {} discrepancies, {} errors\n", reps.size(), v, d, e);
            }
            return exit_for(reps);
        }
        if (series->parsed()) {
            if (order < 0) throw DomainError("order must be non-negative");
            ProductExpr e = parse_product(expr);
            int D = natural_denom(e);
            QSeries s = eval_product(e, D, order * D);
            if (csv) {
                out << coefficient_csv(s);
            } else {
                out << fmt::format("{}  (D={}, through q^{})\n", render(e), D, order);
                std::string terms;
                for (std::int64_t t = s.offset(); t <= s.order(); ++t) {
                    BigInt c = s.coeff_at(t);
                    if (c == 0) continue;
                    std::string mono = t == 0 ? "" : render(QMonomial{1, Rational(t, D)});
                    std::string coef = c.get_str();
                    if (!mono.empty()) coef = (c == 1 ? "" : c == -1 ? "-" : coef + "*") + mono;
                    terms += (terms.empty() ? "" : " + ") + coef;
                }
                out << (terms.empty() ? "0" : terms) << " + O(q^" << order + 1 << ")\n";
            }
            return ok;
        }
        if (dump->parsed()) {
            auto fam = family_from_name(id);
            if (!fam) throw DomainError("unknown form family '" + id + "'");
            out << to_json(build_form(*fam, parse_pairs(params, "--param"))).dump(2) << "\n";
            return ok;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return usage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}

} // namespace qsid::cli
