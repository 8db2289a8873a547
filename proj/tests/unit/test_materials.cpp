#include <gtest/gtest.h>

#include <cmath>

#include "casimir/catalog_io.hpp"
#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/materials.hpp"

using namespace casimir;
using namespace casimir::materials;
using constants::hz;

TEST(Materials, PhononPairMatchesFactoredForm) {
  const auto m = LorentzModel::phonon_pair(6.7, 1.8e14, 1.5e14, 8.9e11);
  for (double w : {1e12, 1.2e14, 1.6e14, 1.75e14, 3e14}) {
    const complex d(1.5e14 * 1.5e14 - w * w, -8.9e11 * w);
    const complex expected = 6.7 * (1.0 + (1.8e14 * 1.8e14 - 1.5e14 * 1.5e14) / d);
    EXPECT_NEAR(std::abs(epsilon_real_axis(m, w) - expected), 0.0, 1e-12 * std::abs(expected));
  }
}

TEST(Materials, NegativeFrequencyIsConjugate) {
  const auto m = MaterialCatalog::builtin().at("BST");
  const double w = 9e9;
  EXPECT_EQ(epsilon_real_axis(m, -w), std::conj(epsilon_real_axis(m, w)));
}

TEST(Materials, ImaginaryAxisIsRealAndDecreasing) {
  const auto m = MaterialCatalog::builtin().at("SiC");
  EXPECT_NEAR(epsilon_imag_axis(m, 0.0), 6.7 * 1.8e14 * 1.8e14 / (1.5e14 * 1.5e14), 1e-9);
  double prev = epsilon_imag_axis(m, 0.0);
  for (double xi : {1e12, 1e13, 1e14, 1e15, 1e16}) {
    const double e = epsilon_imag_axis(m, xi);
    EXPECT_LT(e, prev);
    EXPECT_GE(e, 6.7);
    prev = e;
  }
}

TEST(Materials, DrudeXi2EpsilonFiniteAtZero) {
  const auto gold = MaterialCatalog::builtin().at("Gold");
  EXPECT_EQ(xi2_epsilon_imag_axis(gold, 0.0), 0.0);
  const double xi = 1e14;
  const double expected = xi * xi + 1.37e16 * 1.37e16 * xi / (xi + 5.3e13);
  EXPECT_NEAR(xi2_epsilon_imag_axis(gold, xi) / expected, 1.0, 1e-12);
}

TEST(Materials, UndampedSurfaceResonanceClosedForms) {
  // Re eps = -1 solved by hand with a vanishing damping rate.
  const double g = 1e-6;
  const auto pair = LorentzModel::phonon_pair(6.7, 1.8e14, 1.5e14, g * 1.5e14);
  const double ws_pair = std::sqrt((6.7 * 1.8e14 * 1.8e14 + 1.5e14 * 1.5e14) / 7.7);
  EXPECT_NEAR(surface_resonance(pair) / ws_pair, 1.0, 1e-8);

  const auto osc = LorentzModel::single_oscillator(1.0, 5e9, hz(5000.0), g * hz(5000.0));
  const double ws_osc = std::sqrt(hz(5000.0) * hz(5000.0) + 5e9 / 2.0);
  EXPECT_NEAR(surface_resonance(osc) / ws_osc, 1.0, 1e-8);

  const auto drude = LorentzModel::drude(1e16, 1e8);
  EXPECT_NEAR(surface_resonance(drude) / (1e16 / std::sqrt(2.0)), 1.0, 1e-6);
}

TEST(Materials, UnitEpsInfMetamaterialStaticPermittivity) {
  const auto m = LorentzModel::single_oscillator(1.0, 5e9, hz(5000.0), hz(100.0));
  EXPECT_NEAR(epsilon_imag_axis(m, 0.0), 1.0 + 5e9 / (hz(5000.0) * hz(5000.0)), 1e-12);
  EXPECT_NEAR(epsilon_imag_axis(m, 0.0), 6.07, 0.01);
}

TEST(Materials, CriticalVelocityDefinition) {
  const auto m = MaterialCatalog::builtin().at("BST");
  const double ws = surface_resonance(m);
  const double d = 100e-9;
  EXPECT_DOUBLE_EQ(critical_velocity(m, d), 2.0 * ws * d / std::log(std::abs(reflection_p_nearfield(m, ws))));
  EXPECT_NEAR(critical_velocity(m, 2 * d) / critical_velocity(m, d), 2.0, 1e-12);
  EXPECT_THROW(critical_velocity(m, 0.0), DomainError);
}

TEST(Materials, WeakOscillatorHasNoSurfaceMode) {
  const auto weak = LorentzModel::single_oscillator(1.0, 1e6, 1e5, 1e3);
  EXPECT_THROW(surface_resonance(weak), NoSurfaceMode);
}

TEST(Materials, ImRpOverOmegaSmoothThroughZero) {
  const auto m = MaterialCatalog::builtin().at("Metamaterial");
  const double small = im_reflection_over_omega(m, 1e-3);
  const double tiny = im_reflection_over_omega(m, 1e-9);
  EXPECT_GT(small, 0.0);
  EXPECT_NEAR(small / tiny, 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(im_reflection_over_omega(m, -3e4), im_reflection_over_omega(m, 3e4));
  EXPECT_NEAR(im_reflection_over_omega(m, 3e4), reflection_p_nearfield(m, 3e4).imag() / 3e4, 1e-15);
}

TEST(Materials, RetardedReducesToNearFieldAtLargeQ) {
  const auto m = MaterialCatalog::builtin().at("SiC");
  const double w = 1.7e14;
  const complex rp = reflection_retarded(m, w, 1e9, Polarization::P);
  EXPECT_NEAR(std::abs(rp - reflection_p_nearfield(m, w)), 0.0, 1e-6);
  EXPECT_LT(std::abs(reflection_retarded(m, w, 1e9, Polarization::S)), 1e-3);
}

TEST(Materials, ValidationRejectsBadModels) {
  EXPECT_THROW(LorentzModel::phonon_pair(0.5, 2.0, 1.0, 0.1).validate(), InvalidModel);
  EXPECT_THROW(LorentzModel::phonon_pair(1.0, 1.0, 2.0, 0.1).validate(), InvalidModel);
  EXPECT_THROW(LorentzModel::single_oscillator(1.0, 1.0, 1.0, 0.0).validate(), InvalidModel);
  LorentzModel d = LorentzModel::drude(1e16, 1e13);
  d.omega_T = 1.0;
  EXPECT_THROW(d.validate(), InvalidModel);
}

TEST(Catalog, CaseInsensitiveLookupAndReplace) {
  auto cat = MaterialCatalog::builtin();
  EXPECT_EQ(cat.at("sic"), cat.at("SiC"));
  cat.add("SIC", LorentzModel::phonon_pair(2.0, 3.0, 1.0, 0.1));
  EXPECT_EQ(cat.entries().size(), 4u);
  EXPECT_EQ(cat.at("sic").eps_inf, 2.0);
  EXPECT_THROW(cat.at("unobtainium"), DomainError);
}

TEST(Catalog, JsonRoundTrip) {
  const auto cat = MaterialCatalog::builtin();
  const auto again = parse_catalog(dump_catalog(cat), MaterialCatalog{});
  ASSERT_EQ(again.entries().size(), cat.entries().size());
  for (const auto& [name, m] : cat.entries()) EXPECT_EQ(again.at(name), m) << name;
}

TEST(Catalog, OverlayAndErrors) {
  const auto cat = parse_catalog(R"({"material": {"Toy": {"form": "drude", "omega_p": 1e15, "gamma": 1e12}}})");
  EXPECT_TRUE(cat.contains("SiC"));
  EXPECT_EQ(cat.at("toy").omega_p, 1e15);
  EXPECT_THROW(parse_catalog("{"), InvalidModel);
  EXPECT_THROW(parse_catalog(R"({"material": {"Bad": {"form": "drude"}}})"), InvalidModel);
  EXPECT_THROW(parse_catalog(R"({"material": {"Bad": {"form": "plasma", "gamma": 1}}})"), InvalidModel);
  EXPECT_THROW(load_catalog("/nonexistent/catalog.json"), DomainError);
}
