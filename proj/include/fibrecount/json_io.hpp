#pragma once

#include <json.hpp>

#include "fibrecount/fibre_product.hpp"

namespace fibrecount {

// ADL serializers so nlohmann::json(report) and j.get<SystemReport>() work.
void to_json(nlohmann::json& j, const SubsetReport& r);
void from_json(const nlohmann::json& j, SubsetReport& r);

void to_json(nlohmann::json& j, const RationalInfinity& r);
void from_json(const nlohmann::json& j, RationalInfinity& r);

void to_json(nlohmann::json& j, const SystemReport& r);
void from_json(const nlohmann::json& j, SystemReport& r);

void to_json(nlohmann::json& j, const IsogenyCheck& c);
void to_json(nlohmann::json& j, const IsogenyReport& r);

} // namespace fibrecount
