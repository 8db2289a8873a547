#include "config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/pipeline.hpp"

namespace casimir::cli {

using nlohmann::json;
using constants::hz;

namespace {

double need(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key) || !obj.at(key).is_number())
    throw DomainError(std::string(where) + ": missing numeric field '" + key + "'");
  return obj.at(key).get<double>();
}

dynamics::CantileverParams cantilever(const json& j, const char* where) {
  if (!j.is_object()) throw DomainError(std::string("system file: '") + where + "' must be an object");
  return dynamics::CantileverParams::make(need(j, "m_kg", where), hz(need(j, "f0_hz", where)),
                                          hz(need(j, "gamma_hz", where)));
}

}  // namespace

SystemFile load_system(const std::filesystem::path& path, const materials::MaterialCatalog& catalog) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open system file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("system file '" + path.string() + "': " + e.what());
  }

  const auto c1 = cantilever(j.value("cantilever1", json::object()), "cantilever1");
  const auto c2 = cantilever(j.value("cantilever2", json::object()), "cantilever2");

  const json coupling = j.value("coupling", json::object());
  double J = 0.0;
  if (coupling.contains("J_N_per_m")) {
    J = need(coupling, "J_N_per_m", "coupling");
  } else if (coupling.contains("separation_m")) {
    J = experiment::gold_coupling(need(coupling, "separation_m", "coupling"), need(coupling, "radius_m", "coupling"),
                                  coupling.value("temperature_K", 300.0), catalog);
  } else {
    throw DomainError("coupling: give either J_N_per_m or separation_m + radius_m");
  }

  SystemFile out;
  out.system = dynamics::shifted_frequencies(c1, c2, -J);
  if (j.contains("pid")) {
    const json& p = j.at("pid");
    out.pid.D = p.value("D", 0.0);
    out.pid.P = p.value("P", 0.0);
    out.pid.target = p.value("target", 2);
    out.pid.validate();
  }
  if (j.contains("drive")) {
    const json& d = j.at("drive");
    out.drive = dynamics::DriveConfig{need(d, "F0_N", "drive"), hz(need(d, "freq_hz", "drive"))};
    out.drive->validate();
  }
  if (j.contains("run")) {
    const json& r = j.at("run");
    experiment::SimulationRun run;
    run.dt = need(r, "dt_s", "run");
    run.duration = need(r, "duration_s", "run");
    run.noise_temperature = r.value("noise_temperature_K", 0.0);
    run.record_from = r.value("record_from_s", 0.0);
    run.record_every = r.value("record_every", std::size_t{1});
    run.seed = r.value("seed", std::uint64_t{1});
    out.run = run;
  }
  return out;
}

}  // namespace casimir::cli
