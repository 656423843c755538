#include "floorform/report.hpp"

#include <stdexcept>

#include "floorform/version.hpp"

namespace floorform::report {

namespace {

constexpr Int kExactJsonLimit = Int{1} << 53;

Int read_integer(const Json& j)
{
    if (j.is_number_integer()) return j.get<Int>();
    if (j.is_string()) return std::stoll(j.get<std::string>());
    throw std::invalid_argument("expected an integer");
}

template <class Seq>
Json integers(const Seq& values)
{
    Json out = Json::array();
    for (const Int v : values) out.push_back(integer(v));
    return out;
}

template <class T>
Json optional_json(const std::optional<T>& v)
{
    return v ? to_json(*v) : Json(nullptr);
}

Json rational(const Rational& r)
{
    return Json{{"num", integer(r.num)}, {"den", integer(r.den)}};
}

}  // namespace

Json integer(Int v)
{
    if (v > kExactJsonLimit || v < -kExactJsonLimit) return std::to_string(v);
    return v;
}

Json to_json(const FloorForm& form) { return integers(form.denominators()); }

Json to_json(const Representation& r) { return Json::array({integer(r.x), integer(r.y), integer(r.z)}); }

Json to_json(const ResidueTriple& r)
{
    return Json{{"alpha", integer(r.alpha)}, {"beta", integer(r.beta)}, {"gamma", integer(r.gamma)},
                {"a0", integer(r.a0)},       {"b0", integer(r.b0)},     {"c0", integer(r.c0)}};
}

Json to_json(const CosetDescriptor& c)
{
    Json shift = Json::array();
    for (const auto& s : c.shift) shift.push_back(rational(s));
    return Json{{"delta", c.delta},
                {"convention", to_string(c.convention)},
                {"scale", to_string(c.scale)},
                {"gram_diagonal", integers(c.gram_diagonal)},
                {"shift", shift},
                {"N", integer(c.N)},
                {"A", integers(c.A)},
                {"h", integers(c.h)}};
}

Json to_json(const ScanReport& r)
{
    return Json{{"form", to_json(r.form)},
                {"n_lo", integer(r.n_lo)},
                {"n_hi", integer(r.n_hi)},
                {"exceptions", integers(r.exceptions)},
                {"wall_time_ms", integer(r.wall_time_ms)},
                {"tool_version", r.tool_version}};
}

Json to_json(const padic::LocalStatus& s)
{
    Json out{{"prime", integer(s.prime)},
             {"solvable", s.solvable},
             {"method", padic::to_string(s.method)},
             {"precision_used", s.precision_used}};
    if (s.witness) out["witness"] = integers(*s.witness);
    return out;
}

Json to_json(const ResiduePlan& p)
{
    return Json{{"form", to_json(p.form)},
                {"plan_form", to_json(p.plan_form)},
                {"permutation", Json::array({p.permutation[0], p.permutation[1], p.permutation[2]})},
                {"reduction_root", integer(p.reduction_root)},
                {"convention", to_string(p.convention)},
                {"n", integer(p.n)},
                {"residues", to_json(p.residues)},
                {"case_label", p.case_label},
                {"l", integer(p.l)},
                {"claimed_congruence", Json{{"modulus", integer(p.claimed.modulus)}, {"classes", integers(p.claimed.classes)}}},
                {"escape", p.escape},
                {"mu", p.mu ? Json(*p.mu) : Json(nullptr)},
                {"k_aux", p.k_aux ? integer(*p.k_aux) : Json(nullptr)},
                {"universality_fallback", p.universality_fallback},
                {"coprime_exempt_primes", integers(p.coprime_exempt_primes)}};
}

Json to_json(const PlanVerification& v)
{
    Json locals = Json::array();
    for (const auto& s : v.local_statuses) locals.push_back(to_json(s));
    Json aniso = Json::array();
    for (const auto& a : v.anisotropic) {
        aniso.push_back(Json{{"prime", integer(a.prime)}, {"ord_l", a.ord_l}, {"warning", a.warning}});
    }
    return Json{{"congruence_ok", v.congruence_ok},
                {"local_statuses", locals},
                {"control_primes", integers(v.control_primes)},
                {"coprime_to_odd_divisors", v.coprime_to_odd_divisors},
                {"obstruction_ts", integers(v.obstruction_ts)},
                {"anisotropic", aniso},
                {"escape_witness", optional_json(v.escape_witness)},
                {"fallback_witness", optional_json(v.fallback_witness)},
                {"verdict", to_string(v.verdict)},
                {"notes", v.notes}};
}

Json to_json(const ThetaSeries& t)
{
    return Json{{"n_max", integer(t.n_max)}, {"coefficients", integers(t.coefficients)}};
}

Json to_json(const ObstructionReport& r)
{
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        entries.push_back(Json{{"n", integer(e.n)},
                               {"l", integer(e.l)},
                               {"case_label", e.case_label},
                               {"ts", integers(e.ts)},
                               {"escape", e.escape}});
    }
    return Json{{"form", to_json(r.form)},
                {"n_lo", integer(r.n_lo)},
                {"n_hi", integer(r.n_hi)},
                {"mode", to_string(r.mode)},
                {"entries", entries},
                {"unresolved", integer(r.unresolved)}};
}

ScanReport scan_report_from_json(const Json& j)
{
    try {
        const auto& f = j.at("form");
        if (!f.is_array() || f.size() != 3) throw std::invalid_argument("form must have three entries");
        ScanReport r{FloorForm(read_integer(f[0]), read_integer(f[1]), read_integer(f[2])),
                     read_integer(j.at("n_lo")),
                     read_integer(j.at("n_hi")),
                     {},
                     read_integer(j.at("wall_time_ms")),
                     j.at("tool_version").get<std::string>()};
        for (const auto& e : j.at("exceptions")) r.exceptions.push_back(read_integer(e));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed scan report: ") + e.what());
    }
}

Json envelope(const std::string& command, Json parameters, Json result, Int elapsed_ms)
{
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"parameters", std::move(parameters)},
                {"result", std::move(result)},
                {"elapsed_ms", integer(elapsed_ms)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace floorform::report
