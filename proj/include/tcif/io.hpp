#pragma once

#include <json.hpp>
#include <string>

#include "tcif/poset.hpp"
#include "tcif/tci.hpp"

namespace tcif {

using json = nlohmann::json;

json read_json_file(const std::string& path);  // malformed_input on unreadable or invalid JSON

RawTCI raw_tci_from_json(const json& j);
TCI tci_from_json(const json& j);
json tci_to_json(const TCI& t);

json structure_to_json(const Structure& m);
Structure structure_from_json(const json& j, const Signature& sig);

json condition_to_json(const Condition& c);
json classes_to_json(const QuantClasses& c);

Poset poset_from_json(const json& j);
json poset_to_json(const Poset& P);

}  // namespace tcif
