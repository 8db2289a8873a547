#include "casimir/catalog_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "casimir/error.hpp"

namespace casimir::materials {

using nlohmann::json;

namespace {

double number(const json& obj, const char* key, const std::string& name) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw InvalidModel("material '" + name + "': missing numeric field '" + key + "'");
  return obj.at(key).get<double>();
}

LorentzModel model_from_json(const json& obj, const std::string& name) {
  if (!obj.is_object()) throw InvalidModel("material '" + name + "' must be an object");
  if (!obj.contains("form") || !obj.at("form").is_string())
    throw InvalidModel("material '" + name + "': missing 'form'");
  LorentzModel m;
  m.form = form_from_string(obj.at("form").get<std::string>());
  m.eps_inf = obj.value("eps_inf", 1.0);
  m.gamma = number(obj, "gamma", name);
  switch (m.form) {
    case DielectricForm::PhononPair:
      m.omega_T = number(obj, "omega_T", name);
      m.omega_L = number(obj, "omega_L", name);
      break;
    case DielectricForm::SingleOscillator:
      m.omega_T = number(obj, "omega_T", name);
      m.B = number(obj, "B", name);
      break;
    case DielectricForm::Drude:
      m.omega_p = number(obj, "omega_p", name);
      break;
  }
  m.validate();
  return m;
}

}  // namespace

MaterialCatalog parse_catalog(const std::string& json_text, MaterialCatalog base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidModel(std::string("material catalog is not valid JSON: ") + e.what());
  }
  if (!doc.contains("material") || !doc.at("material").is_object())
    throw InvalidModel("material catalog needs a top-level 'material' object");
  for (const auto& [name, entry] : doc.at("material").items()) base.add(name, model_from_json(entry, name));
  return base;
}

MaterialCatalog load_catalog(const std::filesystem::path& path, MaterialCatalog base) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open material catalog '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), std::move(base));
}

std::string dump_catalog(const MaterialCatalog& catalog) {
  json materials = json::object();
  for (const auto& [name, m] : catalog.entries()) {
    json e;
    e["form"] = to_string(m.form);
    e["eps_inf"] = m.eps_inf;
    e["gamma"] = m.gamma;
    switch (m.form) {
      case DielectricForm::PhononPair:
        e["omega_T"] = m.omega_T;
        e["omega_L"] = m.omega_L;
        break;
      case DielectricForm::SingleOscillator:
        e["omega_T"] = m.omega_T;
        e["B"] = m.B;
        break;
      case DielectricForm::Drude:
        e["omega_p"] = m.omega_p;
        break;
    }
    materials[name] = e;
  }
  json doc;
  doc["units"] = "SI; angular frequencies and damping in rad/s, B in s^-2";
  doc["material"] = materials;
  return doc.dump(2) + "\n";
}

}  // namespace casimir::materials
