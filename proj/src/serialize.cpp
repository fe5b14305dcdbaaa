#include "arithdyn/serialize.hpp"

#include <limits>
#include <stdexcept>

#include "arithdyn/rotation.hpp"

namespace arithdyn {

Json to_json(const DigitSeq& s)
{
    Json j;
    const auto& bounds = s.alphabet_max();
    if (bounds.size() == 1)
        j["alphabet_max"] = bounds[0];
    else
        j["alphabet_max"] = bounds;
    switch (s.kind()) {
    case DigitSeq::Kind::finite:
        j["preperiod"] = s.preperiod();
        j["period"] = nullptr;
        break;
    case DigitSeq::Kind::periodic:
        j["preperiod"] = s.preperiod();
        j["period"] = s.period();
        break;
    case DigitSeq::Kind::prefix:
        j["preperiod"] = s.preperiod();
        j["period"] = nullptr;
        j["truncated"] = true;
        break;
    case DigitSeq::Kind::generated:
        throw std::invalid_argument("generated sequences have no JSON form");
    }
    if (s.numeric_unverified())
        j["numeric_unverified"] = true;
    return j;
}

DigitSeq digit_seq_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("preperiod"))
        throw std::invalid_argument("digit sequence needs a preperiod field");
    std::vector<int> pre = j.at("preperiod").get<std::vector<int>>();
    std::vector<int> bounds;
    if (!j.contains("alphabet_max"))
        bounds = {1};
    else if (j.at("alphabet_max").is_array())
        bounds = j.at("alphabet_max").get<std::vector<int>>();
    else
        bounds = {j.at("alphabet_max").get<int>()};
    if (bounds.empty())
        throw std::invalid_argument("alphabet_max is empty");
    DigitSeq s;
    bool truncated = j.value("truncated", false);
    if (j.contains("period") && !j.at("period").is_null()) {
        std::vector<int> per = j.at("period").get<std::vector<int>>();
        if (per.empty())
            throw std::invalid_argument("period must be non-empty or null");
        s = DigitSeq::periodic(pre, per, bounds[0]);
    } else if (truncated) {
        s = DigitSeq::prefix(pre, bounds[0]);
    } else {
        s = DigitSeq::finite(pre, bounds[0]);
    }
    if (bounds.size() > 1)
        s.set_alphabet_max(bounds);
    return s;
}

Json to_json(const Approx& a, int digits)
{
    Json j;
    j["value"] = format_real(a.value, digits);
    j["error_bound"] = format_real(a.error_bound, 3);
    return j;
}

Json to_json(const Integer& n)
{
    if (n.fits_slong_p())
        return Json(n.get_si());
    return Json(n.get_str());
}

Json field_to_json(const Field& f)
{
    Json j;
    Json coeffs = Json::array();
    for (const auto& c : f->coefficients())
        coeffs.push_back(c.get_str());
    j["polynomial"] = coeffs;
    j["root_interval"] = {f->lo().get_str(), f->hi().get_str()};
    j["root"] = format_real(f->root_value(), print_digits);
    return j;
}

Json to_json(const MarkovCompactum& c)
{
    Json j;
    j["sizes"] = c.sizes();
    j["incidence"] = c.incidence();
    j["order"] = c.order();
    return j;
}

MarkovCompactum compactum_from_json(const Json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("compactum must be a JSON object");
    if (j.contains("family")) {
        std::string fam = j.at("family").get<std::string>();
        if (fam == "odometer")
            return MarkovCompactum::full_odometer(j.at("radices").get<std::vector<int>>());
        std::size_t depth = j.at("depth").get<std::size_t>();
        if (depth == 0 || depth > 100000)
            throw std::invalid_argument("depth must be in 1..100000");
        if (fam == "golden")
            return MarkovCompactum::golden(depth);
        if (fam == "rotation") {
            ContinuedFraction cf = ContinuedFraction::parse(j.at("alpha").get<std::string>());
            int model = j.value("model", 2);
            if (model == 1)
                return rot_compactum1(cf, depth);
            if (model == 2)
                return rot_compactum2(cf, depth);
            throw std::invalid_argument("model must be 1 or 2");
        }
        throw std::invalid_argument("unknown compactum family '" + fam + "'");
    }
    return MarkovCompactum(j.at("sizes").get<std::vector<int>>(), j.at("incidence").get<std::vector<Incidence>>(),
                           j.at("order").get<std::vector<std::vector<int>>>());
}

} // namespace arithdyn
