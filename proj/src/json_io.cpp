#include "rwcre/json_io.hpp"

#include <cmath>
#include <string>

#include "rwcre/error.hpp"

namespace rwcre {

namespace {

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(ErrorKind::InvalidArgument, std::string("rule field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

AlphaSpec alpha_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
    throw Error(ErrorKind::InvalidArgument, "alpha must be an object with an 'atoms' array");
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw Error(ErrorKind::InvalidArgument, "each atom must be [value, weight]");
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return AlphaSpec(std::move(atoms));
}

nlohmann::json to_json(const AlphaSpec& alpha) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : alpha.atoms()) atoms.push_back({a.value, a.weight});
  return {{"atoms", atoms}};
}

CoolingRule rule_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw Error(ErrorKind::InvalidArgument, "rule must be an object with a string 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "linear") return CoolingRule::linear(number(j, "A"));
  if (kind == "polynomial") return CoolingRule::polynomial(number(j, "B"), number(j, "beta"));
  if (kind == "exponential") return CoolingRule::exponential(number(j, "C"));
  if (kind == "double_exponential") return CoolingRule::double_exponential();
  if (kind == "explicit") {
    if (!j.contains("times") || !j.at("times").is_array())
      throw Error(ErrorKind::InvalidArgument, "explicit rule needs a 'times' array");
    std::vector<std::int64_t> times;
    for (const auto& t : j.at("times")) {
      if (!t.is_number_integer()) throw Error(ErrorKind::InvalidArgument, "explicit times must be integers");
      times.push_back(t.get<std::int64_t>());
    }
    return CoolingRule::explicit_times(std::move(times));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown rule kind '" + kind + "'");
}

nlohmann::json to_json(const CoolingRule& rule) {
  switch (rule.kind()) {
    case CoolingKind::Linear: return {{"kind", "linear"}, {"A", rule.param_a()}};
    case CoolingKind::Polynomial: return {{"kind", "polynomial"}, {"B", rule.param_a()}, {"beta", rule.param_beta()}};
    case CoolingKind::Exponential: return {{"kind", "exponential"}, {"C", rule.param_a()}};
    case CoolingKind::DoubleExponential: return {{"kind", "double_exponential"}};
    case CoolingKind::Explicit: {
      const auto list = rule.explicit_list();
      return {{"kind", "explicit"}, {"times", std::vector<std::int64_t>(list.begin(), list.end())}};
    }
  }
  return {};
}

nlohmann::json to_json(const RegimeClassification& c) {
  nlohmann::json out = {{"kind", std::string(to_string(c.kind))}, {"speed", c.speed}, {"sigma2_mu", c.sigma2_mu}};
  if (!c.s_exponent)
    out["s"] = nullptr;
  else if (std::isinf(*c.s_exponent))
    out["s"] = "inf";
  else
    out["s"] = *c.s_exponent;
  return out;
}

}  // namespace rwcre
