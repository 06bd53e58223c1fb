#pragma once

#include <json.hpp>

#include "qapprox/pipeline.hpp"

namespace qapprox {

using json = nlohmann::json;

/// Form description: {"n": <int>, "gram": [[...], ...]} with integer
/// entries (numbers or decimal strings); symmetry checked on load.
QuadraticForm form_from_json(const json& j);
json form_to_json(const QuadraticForm& form);
QuadraticForm load_form(const std::string& path);

/// General symmetric integral form: {"m": <int>, "coeffs": [[...], ...]}.
/// Also accepts the QuadraticForm schema (treated as its own matrix).
IntegralForm integral_form_from_json(const json& j);
IntegralForm load_integral_form(const std::string& path);

json enclosure_to_json(const Enclosure& e);
Enclosure enclosure_from_json(const json& j);

json certificate_to_json(const ApproximationCertificate& cert);
ApproximationCertificate certificate_from_json(const json& j);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace qapprox
