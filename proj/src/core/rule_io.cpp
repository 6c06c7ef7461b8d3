#include "polygrowth/rule_io.hpp"

#include <fstream>

namespace polygrowth {

using nlohmann::json;

namespace {

Vec2i offset_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw ConfigError(path, "expected an integer pair [dx, dy]");
  return {j[0].get<int>(), j[1].get<int>()};
}

std::vector<Vec2i> offsets_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected a list of [dx, dy] pairs");
  std::vector<Vec2i> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(offset_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

int int_field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
  if (!j[key].is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
  return j[key].get<int>();
}

}  // namespace

Neighborhood neighborhood_from_json(const json& j, const std::string& path) {
  try {
    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "moore") return Neighborhood::moore();
      if (s == "von_neumann") return Neighborhood::von_neumann();
      throw ConfigError(path, "unknown neighborhood name '" + s + "'");
    }
    if (j.is_object()) {
      if (j.contains("box")) return Neighborhood::box(int_field(j, "box", path));
      if (j.contains("diamond")) return Neighborhood::diamond(int_field(j, "diamond", path));
      throw ConfigError(path, "expected {\"box\": r} or {\"diamond\": r}");
    }
    return Neighborhood(offsets_from_json(j, path));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

json offsets_to_json(std::span<const Vec2i> offsets) {
  json a = json::array();
  for (Vec2i v : offsets) a.push_back({v.x, v.y});
  return a;
}

MonotoneRule rule_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  if (!doc.contains("neighborhood")) throw ConfigError(path + ".neighborhood", "missing");
  Neighborhood n = neighborhood_from_json(doc["neighborhood"], path + ".neighborhood");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw ConfigError(path + ".kind", "expected one of threshold, antichain, probtable");
  const auto kind = doc["kind"].get<std::string>();
  try {
    if (kind == "threshold") return MonotoneRule(std::move(n), Threshold{int_field(doc, "theta", path)});
    if (kind == "antichain") {
      const std::string p = path + ".minimal_sets";
      if (!doc.contains("minimal_sets") || !doc["minimal_sets"].is_array()) throw ConfigError(p, "expected a list of sets");
      Antichain a;
      for (std::size_t i = 0; i < doc["minimal_sets"].size(); ++i)
        a.minimal_sets.push_back(offsets_from_json(doc["minimal_sets"][i], p + "[" + std::to_string(i) + "]"));
      return MonotoneRule(std::move(n), std::move(a));
    }
    if (kind == "probtable") {
      const std::string p = path + ".prob_entries";
      if (!doc.contains("prob_entries") || !doc["prob_entries"].is_array()) throw ConfigError(p, "expected a list of entries");
      ProbTable t;
      for (std::size_t i = 0; i < doc["prob_entries"].size(); ++i) {
        const auto& e = doc["prob_entries"][i];
        const std::string ep = p + "[" + std::to_string(i) + "]";
        if (!e.is_object() || !e.contains("set") || !e.contains("p") || !e["p"].is_number())
          throw ConfigError(ep, "expected {\"set\": [...], \"p\": number}");
        t.entries.push_back({offsets_from_json(e["set"], ep + ".set"), e["p"].get<double>()});
      }
      return MonotoneRule(std::move(n), std::move(t));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(path + ".kind", "unknown kind '" + kind + "'");
}

json rule_to_json(const MonotoneRule& rule) {
  json j;
  j["neighborhood"] = offsets_to_json(rule.neighborhood().offsets());
  if (auto* t = std::get_if<Threshold>(&rule.kind())) {
    j["kind"] = "threshold";
    j["theta"] = t->theta;
  } else if (auto* a = std::get_if<Antichain>(&rule.kind())) {
    j["kind"] = "antichain";
    j["minimal_sets"] = json::array();
    for (const auto& s : a->minimal_sets) j["minimal_sets"].push_back(offsets_to_json(s));
  } else {
    j["kind"] = "probtable";
    j["prob_entries"] = json::array();
    for (const auto& e : std::get<ProbTable>(rule.kind()).entries)
      j["prob_entries"].push_back({{"set", offsets_to_json(e.set)}, {"p", e.probability}});
  }
  return j;
}

MonotoneRule load_rule(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file, "cannot open rule file");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(file, std::string("JSON parse error: ") + e.what());
  }
  return rule_from_json(doc);
}

}  // namespace polygrowth
