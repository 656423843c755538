#include "floorform/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "floorform/coset.hpp"
#include "floorform/form.hpp"
#include "floorform/padic.hpp"
#include "floorform/planner.hpp"
#include "floorform/report.hpp"
#include "floorform/theta.hpp"
#include "floorform/version.hpp"

namespace floorform::cli {

namespace {

using report::Json;
using Clock = std::chrono::steady_clock;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

FloorForm parse_form(const std::string& text)
{
    static const std::regex pattern(R"(([0-9]+),([0-9]+),([0-9]+))");
    std::smatch m;
    if (!std::regex_match(text, m, pattern)) {
        throw std::invalid_argument("--form expects three comma-separated positive integers, got '" + text + "'");
    }
    std::array<Int, 3> d{};
    for (std::size_t i = 0; i < 3; ++i) {
        try {
            d[i] = std::stoll(m[i + 1].str());
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("--form entry out of range: " + m[i + 1].str());
        }
        if (d[i] < 1) throw std::invalid_argument("--form entries must be positive");
    }
    return FloorForm(d[0], d[1], d[2]);
}

Int scan_cap()
{
    const char* env = std::getenv(kMaxNEnv);
    if (env == nullptr || *env == '\0') return kDefaultScanCap;
    std::size_t used = 0;
    Int cap = 0;
    try {
        cap = std::stoll(env, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(env).size() || cap < 0) {
        throw std::invalid_argument(std::string(kMaxNEnv) + " must be a non-negative integer");
    }
    return cap;
}

Int elapsed_since(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

template <class Seq>
std::string join(const Seq& values, const char* sep = " ")
{
    std::ostringstream s;
    bool first = true;
    for (const auto& v : values) {
        if (!first) s << sep;
        s << v;
        first = false;
    }
    return s.str();
}

std::optional<ScanReport> load_cached_scan(const std::string& path, const FloorForm& form, Int lo, Int hi)
{
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        const Json doc = Json::parse(in);
        if (doc.value("schema_version", "") != report::kSchemaVersion || doc.value("command", "") != "scan") {
            return std::nullopt;
        }
        ScanReport cached = report::scan_report_from_json(doc.at("result"));
        if (cached.form == form && cached.n_lo == lo && cached.n_hi == hi && cached.tool_version == kToolVersion) {
            return cached;
        }
    } catch (const std::exception&) {
        // unreadable cache: recompute
    }
    return std::nullopt;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

struct Emitter {
    std::ostream& out;
    bool quiet = false;

    void emit(const std::string& command, Json parameters, Json result, Clock::time_point start,
              const std::string& quiet_text) const
    {
        if (quiet) {
            out << quiet_text << '\n';
            return;
        }
        out << report::dump(report::envelope(command, std::move(parameters), std::move(result), elapsed_since(start)));
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verification and exploration engine for floor forms floor(x^2/a)+floor(y^2/b)+floor(z^2/c)",
                 "floorform"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    bool quiet = false;
    std::string form_text;
    Int n = 0, lo = 0, hi = 0, alpha = 0, beta = 0, gamma = 0, max = 0;
    bool all = false;
    unsigned jobs = 1;
    std::string out_path;
    std::optional<Int> prime;
    std::string lattice = "half";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--form", form_text, "Denominators a,b,c")->required();
        sub->add_flag("--quiet", quiet, "Print only the terse result");
    };
    auto add_residues = [&](CLI::App* sub) {
        sub->add_option("--alpha", alpha, "Residue for x")->required();
        sub->add_option("--beta", beta, "Residue for y")->required();
        sub->add_option("--gamma", gamma, "Residue for z")->required();
    };

    CLI::App* represent = app.add_subcommand("represent", "Find a representation of n");
    add_common(represent);
    represent->add_option("--n", n, "Target integer")->required();
    represent->add_flag("--all", all, "Also count all signed representations");

    CLI::App* scan = app.add_subcommand("scan", "List non-represented n in a range");
    add_common(scan);
    scan->add_option("--from", lo, "Lower end of the range")->required();
    scan->add_option("--to", hi, "Upper end of the range")->required();
    scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    scan->add_option("--out", out_path, "Cache file for the report");

    CLI::App* plan = app.add_subcommand("plan", "Choose residues for n and verify the local conditions");
    add_common(plan);
    plan->add_option("--n", n, "Target integer")->required();

    CLI::App* local = app.add_subcommand("local", "Local solvability for given residues");
    add_common(local);
    local->add_option("--n", n, "Target integer")->required();
    add_residues(local);
    local->add_option("--prime", prime, "Single prime to check (default: every p | 2abc)");

    CLI::App* theta_cmd = app.add_subcommand("theta", "Coset theta coefficients");
    add_common(theta_cmd);
    add_residues(theta_cmd);
    theta_cmd->add_option("--max", max, "Largest exponent")->required();
    theta_cmd->add_option("--lattice", lattice, "Coset scale")->check(CLI::IsMember({"delta", "half"}));

    CLI::App* obstruct = app.add_subcommand("obstruct", "Obstruction sets over a range");
    add_common(obstruct);
    obstruct->add_option("--from", lo, "Lower end of the range")->required();
    obstruct->add_option("--to", hi, "Upper end of the range")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kFound : kUsage;
    }

    const auto start = Clock::now();
    const Emitter emitter{out, quiet};
    try {
        const FloorForm form = parse_form(form_text);

        if (represent->parsed()) {
            const auto witness = form::search_representation(form, n);
            Json result{{"found", witness.has_value()}, {"witness", witness ? report::to_json(*witness) : Json(nullptr)}};
            if (all) result["count"] = report::integer(form::representation_count(form, n));
            Json params{{"form", form_text}, {"n", report::integer(n)}, {"all", all}};
            const std::string terse = witness ? join(std::array{witness->x, witness->y, witness->z}) : "none";
            emitter.emit("represent", std::move(params), std::move(result), start, terse);
            return witness ? kFound : kNotFound;
        }

        if (scan->parsed()) {
            const Int cap = scan_cap();
            if (lo < 0 || lo > hi) throw std::invalid_argument("scan requires 0 <= --from <= --to");
            if (hi > cap) {
                throw std::invalid_argument("--to " + std::to_string(hi) + " exceeds the scan cap " +
                                            std::to_string(cap) + " (set " + kMaxNEnv + " to raise it)");
            }
            std::optional<ScanReport> result;
            if (!out_path.empty()) result = load_cached_scan(out_path, form, lo, hi);
            const bool cached = result.has_value();
            if (!cached) result = form::scan_range(form, lo, hi, ScanOptions{jobs, cap, ScanOptions{}.chunk});

            Json params{{"form", form_text}, {"from", report::integer(lo)}, {"to", report::integer(hi)}, {"jobs", jobs}};
            if (!out_path.empty()) params["out"] = out_path;
            const Json env = report::envelope("scan", params, report::to_json(*result), elapsed_since(start));
            if (!out_path.empty() && !cached) write_file(out_path, report::dump(env));
            if (quiet) {
                out << join(result->exceptions) << '\n';
            } else {
                out << report::dump(env);
            }
            return kFound;
        }

        if (plan->parsed()) {
            const ResiduePlan p = planner::plan(form, n);
            const PlanVerification v = planner::verify_plan(p);
            Json result{{"plan", report::to_json(p)}, {"verification", report::to_json(v)}};
            Json params{{"form", form_text}, {"n", report::integer(n)}};
            emitter.emit("plan", std::move(params), std::move(result), start, to_string(v.verdict));
            return kFound;
        }

        if (local->parsed()) {
            const ResidueTriple residues = coset::make_residues(form, alpha, beta, gamma);
            const Int l = coset::l_value(form, n, residues);
            std::vector<Int> primes;
            if (prime) {
                if (!arith::is_prime(*prime)) throw std::invalid_argument("--prime must be prime");
                primes.push_back(*prime);
            } else {
                primes = planner::local_primes(form);
            }
            Json result = Json::array();
            std::ostringstream terse;
            for (const Int p : primes) {
                const auto status = padic::shifted_quadratic_solvable(planner::localize(form, residues, l, p));
                result.push_back(report::to_json(status));
                terse << (terse.tellp() > 0 ? "\n" : "") << p << ' ' << (status.solvable ? "solvable" : "unsolvable");
            }
            Json params{{"form", form_text}, {"n", report::integer(n)},       {"alpha", report::integer(alpha)},
                        {"beta", report::integer(beta)}, {"gamma", report::integer(gamma)}};
            params["prime"] = prime ? report::integer(*prime) : Json(nullptr);
            emitter.emit("local", std::move(params), std::move(result), start, terse.str());
            return kFound;
        }

        if (theta_cmd->parsed()) {
            const ResidueTriple residues = coset::make_residues(form, alpha, beta, gamma);
            const CosetScale scale = lattice == "delta" ? CosetScale::delta : CosetScale::half_integral;
            const CosetDescriptor coset = coset::build_coset(form, residues, scale);
            const ThetaSeries series = theta::coset_theta_coefficients(coset, max);
            Json result = report::to_json(series);
            result["coset"] = report::to_json(coset);
            Json params{{"form", form_text},
                        {"alpha", report::integer(alpha)},
                        {"beta", report::integer(beta)},
                        {"gamma", report::integer(gamma)},
                        {"max", report::integer(max)},
                        {"lattice", lattice}};
            emitter.emit("theta", std::move(params), std::move(result), start, join(series.coefficients));
            return kFound;
        }

        if (obstruct->parsed()) {
            const PlannerMode mode = form.is_uniform() ? PlannerMode::m_form : PlannerMode::abc_form;
            const ObstructionReport r = theta::obstruction_scan(form, lo, hi, mode);
            std::vector<Int> ns;
            for (const auto& e : r.entries) ns.push_back(e.n);
            Json params{{"form", form_text}, {"from", report::integer(lo)}, {"to", report::integer(hi)}};
            emitter.emit("obstruct", std::move(params), report::to_json(r), start, join(ns));
            return kFound;
        }
    } catch (const IoError& e) {
        err << "floorform: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "floorform: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace floorform::cli
