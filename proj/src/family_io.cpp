#include "idealdens/family_io.hpp"

#include <fstream>
#include <sstream>

namespace idealdens {

namespace {

std::uint64_t positive(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
        throw FamilyFormatError(std::string(what) + " must be a positive integer");
    return v.get<std::uint64_t>();
}

Ideal parse_member(const NumberField& k, const nlohmann::json& m) {
    if (m.is_number_integer()) return Ideal::principal(k, positive(m, "member"));
    if (!m.is_array()) throw FamilyFormatError("member must be an integer or a list of [p, conjugate_index, exponent]");
    std::vector<IdealFactor> factors;
    for (const auto& t : m) {
        if (!t.is_array() || t.size() != 3) throw FamilyFormatError("factor must be [p, conjugate_index, exponent]");
        const auto p = positive(t[0], "p");
        if (!t[1].is_number_integer()) throw FamilyFormatError("conjugate_index must be 0 or 1");
        const auto e = positive(t[2], "exponent");
        factors.push_back({prime_by_label(k, p, t[1].get<int>()), static_cast<int>(e)});
    }
    return Ideal(k, std::move(factors));
}

}  // namespace

PrimeIdeal prime_by_label(const NumberField& k, std::uint64_t p, int conjugate_index) {
    for (const auto& [prime, e] : split_prime(k, p))
        if (prime.conjugate_index == conjugate_index) return prime;
    throw FamilyFormatError("no prime above " + std::to_string(p) + " with conjugate index " +
                            std::to_string(conjugate_index) + " in " + k.name());
}

AFamily parse_family(const nlohmann::json& doc, const std::optional<NumberField>& expected) {
    if (!doc.is_object()) throw FamilyFormatError("family document must be a JSON object");
    if (!doc.contains("field") || !doc["field"].is_string()) throw FamilyFormatError("missing string key 'field'");
    const auto k = parse_field(doc["field"].get<std::string>());
    if (expected && !(*expected == k))
        throw FieldMismatch("family is over " + k.name() + " but the run uses " + expected->name());
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw FamilyFormatError("missing string key 'kind'");
    const auto kind = doc["kind"].get<std::string>();

    if (kind == "explicit") {
        if (!doc.contains("members") || !doc["members"].is_array())
            throw FamilyFormatError("explicit family needs a 'members' list");
        std::vector<Ideal> members;
        for (const auto& m : doc["members"]) members.push_back(parse_member(k, m));
        return AFamily::explicit_members(k, std::move(members));
    }
    if (kind == "prime_powers") {
        if (!doc.contains("l")) throw FamilyFormatError("prime_powers family needs 'l'");
        const auto l = positive(doc["l"], "l");
        if (l < 2) throw FamilyFormatError("prime_powers needs l >= 2");
        return AFamily::prime_powers(k, static_cast<int>(l));
    }
    if (kind == "norm_intervals") {
        if (!doc.contains("intervals") || !doc["intervals"].is_array())
            throw FamilyFormatError("norm_intervals family needs an 'intervals' list");
        std::vector<NormInterval> intervals;
        for (const auto& iv : doc["intervals"]) {
            if (!iv.is_array() || iv.size() != 2) throw FamilyFormatError("interval must be [lo, hi]");
            intervals.push_back({positive(iv[0], "lo"), positive(iv[1], "hi")});
            if (intervals.back().lo > intervals.back().hi) throw FamilyFormatError("interval needs lo <= hi");
        }
        return AFamily::norm_intervals(k, std::move(intervals));
    }
    throw FamilyFormatError("unknown family kind '" + kind + "'");
}

AFamily load_family_file(const std::string& path, const std::optional<NumberField>& expected) {
    std::ifstream in(path);
    if (!in) throw FamilyFormatError("cannot open family file " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FamilyFormatError("family file " + path + " is not valid JSON: " + e.what());
    }
    return parse_family(doc, expected);
}

nlohmann::ordered_json family_to_json(const AFamily& family) {
    nlohmann::ordered_json j;
    j["field"] = family.field().name();
    if (const auto* e = std::get_if<AFamily::Explicit>(&family.source())) {
        j["kind"] = "explicit";
        auto& members = j["members"] = nlohmann::ordered_json::array();
        for (const auto& m : e->members) {
            auto f = nlohmann::ordered_json::array();
            for (const auto& fac : m.factors())
                f.push_back({fac.prime.p, fac.prime.conjugate_index, fac.exponent});
            members.push_back(f);
        }
    } else if (const auto* p = std::get_if<AFamily::PrimePowers>(&family.source())) {
        j["kind"] = "prime_powers";
        j["l"] = p->l;
    } else {
        j["kind"] = "norm_intervals";
        auto& ivs = j["intervals"] = nlohmann::ordered_json::array();
        for (const auto& iv : std::get<AFamily::NormIntervals>(family.source()).intervals) ivs.push_back({iv.lo, iv.hi});
    }
    return j;
}

}  // namespace idealdens
