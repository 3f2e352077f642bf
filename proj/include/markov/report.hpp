#pragma once

#include <json.hpp>

#include "markov/classifier.hpp"
#include "markov/derivative.hpp"
#include "markov/interval.hpp"

namespace markov {

using json = nlohmann::ordered_json;

// {"lo": "...", "hi": "..."}; exact scalars use the a+b*sqrt2 text form.
json to_json(const ExactInterval& a);
json to_json(const FloatInterval& a);

json to_json(const ScalarDerivative& d);
json to_json(const OneSidedDerivatives& d);
json to_json(const DerivativeResult& r);
json to_json(const ClassificationReport& r);

}  // namespace markov
