#include "markov/report.hpp"

namespace markov {

json to_json(const ExactInterval& a) { return json{{"lo", a.lo().str()}, {"hi", a.hi().str()}}; }

json to_json(const FloatInterval& a) { return json{{"lo", format_double(a.lo())}, {"hi", format_double(a.hi())}}; }

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
    return v ? to_json(*v) : json(nullptr);
}

json interval_or_null(const std::optional<ExactInterval>& exact, const std::optional<FloatInterval>& approx) {
    if (exact) return to_json(*exact);
    return optional_json(approx);
}

json number_or_null(const std::optional<double>& v) { return v ? json(format_double(*v)) : json(nullptr); }

}  // namespace

json to_json(const ScalarDerivative& d) {
    json out;
    out["verdict"] = to_string(d.verdict);
    out["value"] = d.exact ? json(d.exact->str()) : number_or_null(d.value);
    out["rational_limit"] = number_or_null(d.rational_limit);
    out["irrational_limit"] = number_or_null(d.irrational_limit);
    out["note"] = d.note;
    return out;
}

json to_json(const OneSidedDerivatives& d) {
    return json{{"f_minus", to_json(d.f_minus)},
                {"f_plus", to_json(d.f_plus)},
                {"g_minus", to_json(d.g_minus)},
                {"g_plus", to_json(d.g_plus)}};
}

json to_json(const DerivativeResult& r) {
    json out;
    out["verdict"] = to_string(r.verdict);
    out["value"] = interval_or_null(r.exact_value, r.value);
    out["exact"] = r.exact_value.has_value();
    out["left"] = optional_json(r.left);
    out["right"] = optional_json(r.right);
    out["one_sided"] = r.one_sided ? to_json(*r.one_sided) : json(nullptr);
    json ladders = json::array();
    for (const auto& ladder : r.ladders) {
        json trace = json::array();
        for (const auto& p : ladder.points) {
            const json q = p.exact ? to_json(*p.exact) : to_json(p.quotient);
            trace.push_back(json{{"t", p.t.str()}, {"lo", q["lo"]}, {"hi", q["hi"]}});
        }
        ladders.push_back(json{{"side", to_string(ladder.side)},
                               {"flavor", to_string(ladder.flavor)},
                               {"status", to_string(ladder.status)},
                               {"limit", interval_or_null(ladder.exact_limit, ladder.limit)},
                               {"trace", std::move(trace)}});
    }
    out["ladders"] = std::move(ladders);
    out["notes"] = r.notes;
    return out;
}

json to_json(const ClassificationReport& r) {
    json out;
    out["case"] = to_string(r.kind);
    out["markov"] = to_json(r.markov);
    out["one_sided"] = to_json(r.one_sided);
    out["dpm_holds"] = r.dpm_holds ? json(*r.dpm_holds) : json(nullptr);
    out["ufa_checked"] = r.ufa_checked ? json(*r.ufa_checked) : json(nullptr);
    out["evidence"] = r.evidence;
    return out;
}

}  // namespace markov
