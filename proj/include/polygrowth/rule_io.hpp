#pragma once

#include <string>

#include <json.hpp>

#include "polygrowth/errors.hpp"
#include "polygrowth/rule.hpp"

namespace polygrowth {

/// Rule document:
///   neighborhood: [[dx,dy],...] | {"box": r} | {"diamond": r} | "moore" | "von_neumann"
///   kind: "threshold" | "antichain" | "probtable"
///   theta: int                          (threshold)
///   minimal_sets: [[[dx,dy],...],...]   (antichain)
///   prob_entries: [{"set": [[dx,dy],...], "p": x},...]   (probtable)
/// Schema problems raise ConfigError naming the field path.
MonotoneRule rule_from_json(const nlohmann::json& doc, const std::string& path = "rule");
nlohmann::json rule_to_json(const MonotoneRule& rule);
MonotoneRule load_rule(const std::string& file);

Neighborhood neighborhood_from_json(const nlohmann::json& doc, const std::string& path);
nlohmann::json offsets_to_json(std::span<const Vec2i> offsets);

}  // namespace polygrowth
