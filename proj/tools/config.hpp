#pragma once

// JSON system files for the `dynamics` and `experiment` subcommands.
//
//   {
//     "cantilever1": {"m_kg": 1.9e-10, "f0_hz": 4564.7, "gamma_hz": 3.7},
//     "cantilever2": {"m_kg": 1.2e-10, "f0_hz": 4548.9, "gamma_hz": 6.7},
//     "coupling": {"J_N_per_m": 4.886e-4}
//              or {"separation_m": 154e-9, "radius_m": 35e-6, "temperature_K": 300},
//     "pid": {"D": -8e-6, "P": -0.00725},
//     "drive": {"F0_N": 1e-12, "freq_hz": 4521},
//     "run": {"dt_s": 4e-6, "duration_s": 1.0, "noise_temperature_K": 0}
//   }
//
// Frequencies are cyclic (Hz) in the file and rad/s in memory.

#include <filesystem>
#include <optional>

#include "casimir/dynamics.hpp"
#include "casimir/materials.hpp"
#include "casimir/simulator.hpp"

namespace casimir::cli {

struct SystemFile {
  dynamics::CoupledSystem system;
  experiment::PidConfig pid;
  std::optional<dynamics::DriveConfig> drive;
  std::optional<experiment::SimulationRun> run;
};

SystemFile load_system(const std::filesystem::path& path, const materials::MaterialCatalog& catalog);

}  // namespace casimir::cli
