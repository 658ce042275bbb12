#include "wft/error.hpp"
#include "wft/systems.hpp"

namespace wft::systems {

namespace {

double number(const nlohmann::json& spec, const char* key, double fallback) {
  if (!spec.contains(key)) return fallback;
  if (!spec.at(key).is_number()) throw Error(ErrorCode::BadConfig, std::string("pair parameter '") + key + "' must be a number");
  return spec.at(key).get<double>();
}

} // namespace

SystemPair make_pair(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("pair") || !spec.at("pair").is_string())
    throw Error(ErrorCode::BadConfig, "pair spec needs a string field 'pair'");
  const std::string id = spec.at("pair").get<std::string>();
  if (id == "burgers") return burgers_pair(number(spec, "m", 1.0), number(spec, "m_tilde", 2.0));
  if (id == "psystem") return psystem_pair({number(spec, "k", 1.0), number(spec, "gamma", 2.0)});
  if (id == "euler") return euler_pair(number(spec, "gamma", 2.0));
  if (id == "traffic") return traffic_pair(number(spec, "q", 1.0), number(spec, "q_tilde", 2.0));
  throw Error(ErrorCode::BadConfig, "unknown pair id '" + id + "'");
}

SystemPair make_pair(const std::string& id_or_json) {
  if (!id_or_json.empty() && id_or_json.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(id_or_json);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadConfig, std::string("pair spec: ") + e.what());
    }
    return make_pair(j);
  }
  return make_pair(nlohmann::json{{"pair", id_or_json}});
}

IsentropicEmbedding make_embedding(const nlohmann::json& spec) {
  return isentropic_embed(number(spec, "gamma", 2.0), number(spec, "s_bar", 0.0));
}

} // namespace wft::systems
