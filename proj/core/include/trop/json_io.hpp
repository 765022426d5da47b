#pragma once

#include "trop/invariants.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace trop {

using nlohmann::json;

json to_json(const QLaurent& p);
QLaurent qlaurent_from_json(const json& j);

json to_json(const YLaurent& p);
YLaurent ylaurent_from_json(const json& j);

json to_json(const Degree& deg);
Degree degree_from_json(const json& j);

json to_json(const Config& cfg);
Config config_from_json(const json& j);

json to_json(const CombType& comb);
json to_json(const PlacedCurve& curve);

json to_json(const InvariantResult& res);

// FNV-1a 64-bit, hex encoded; used for input hashes in run manifests.
std::string fnv1a_hex(const std::string& bytes);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> flags;
    std::vector<std::uint64_t> seeds;
    std::string engine_version;
    std::map<std::string, std::string> input_hashes;
    std::int64_t duration_ms = 0;
};

json to_json(const RunManifest& m);

} // namespace trop
