#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "afcsim/afc_server.hpp"
#include "afcsim/engine.hpp"

// JSON encodings of the coordination protocol and its data files.
//
// Field names are fixed by the wire contract. Decoders throw ParseError with
// the offending field path; they never return partially filled values.
namespace afcsim::wire {

using Json = nlohmann::ordered_json;

// Rounds to two decimals, the wire precision for dBm values.
double round_dbm(double v);

Json to_json(const afc::SpectrumInquiryRequest& req);
Json to_json(const afc::SpectrumInquiryResponse& resp);
Json to_json(const afc::ChannelGrant& grant);
Json to_json(const afc::IncumbentDatabase& db);
Json to_json(const afc::ServerPolicy& policy);
Json to_json(const afc::DivergenceReport& report);
Json to_json(const geo::GeoPoint& p);

afc::SpectrumInquiryRequest request_from_json(const Json& j);
afc::SpectrumInquiryResponse response_from_json(const Json& j);
afc::IncumbentDatabase database_from_json(const Json& j);
afc::ServerPolicy policy_from_json(const Json& j);
propagation::FsLink fs_link_from_json(const Json& j, const std::string& path = "fsLinks[]");
propagation::PropagationConfig propagation_config_from_json(const Json& j);
propagation::ProtectionConfig protection_config_from_json(const Json& j);
geo::GeoPoint geo_point_from_json(const Json& j, const std::string& path);
geo::Geofence geofence_from_json(const Json& j, const std::string& path);

// Parses text, mapping syntax errors to ParseError with a line number.
Json parse_document(std::string_view text);

// Reads and parses a file. Throws ParseError if it cannot be read.
Json load_document(const std::string& path);

}  // namespace afcsim::wire
