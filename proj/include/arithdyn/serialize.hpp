// JSON forms of the core value types.
#ifndef ARITHDYN_SERIALIZE_HPP
#define ARITHDYN_SERIALIZE_HPP

#include <json.hpp>

#include "arithdyn/adic.hpp"
#include "arithdyn/beta_core.hpp"

namespace arithdyn {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// {"alphabet_max": k or [k1, ...], "preperiod": [...], "period": [...] or null}
Json to_json(const DigitSeq& s);
DigitSeq digit_seq_from_json(const Json& j);

// {"value": "...", "error_bound": "..."}; values printed with `digits` significant digits.
Json to_json(const Approx& a, int digits = print_digits);
Json to_json(const Integer& n);   // a number when it fits in 64 bits, else a decimal string
Json field_to_json(const Field& f);

// Either the explicit fields {"sizes", "incidence", "order"} or a named family:
// {"family": "odometer", "radices": [...]}, {"family": "golden", "depth": n},
// {"family": "rotation", "model": 1|2, "alpha": "<spec>", "depth": n}.
Json to_json(const MarkovCompactum& c);
MarkovCompactum compactum_from_json(const Json& j);

} // namespace arithdyn

#endif
