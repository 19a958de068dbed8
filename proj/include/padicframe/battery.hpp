#pragma once

// Randomized runs of the frame theorem checks. Instance 0 comes from the
// configured wavelet family when it applies; the rest are seeded random
// frames built from functions of a test space of dimension at most 32.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "padicframe/frame.hpp"
#include "padicframe/test_space.hpp"

namespace padicframe {

enum class Theorem { Erasure, Perturbation, Image, BoundedBelow, DualPair, TightDual, Injectivity, Decomposition };

std::optional<Theorem> parseTheorem(std::string_view name);
std::string theoremName(Theorem t);
const std::vector<Theorem>& allTheorems();

struct BatteryConfig {
  Tolerances tolerances;
  std::uint64_t seed = 0;
  int trials = 50;
  /// Coordinates of the configured family in its test space (may be empty).
  MatrixXcd configured;
};

/// The space random instances live in: the configured space shrunk until its
/// dimension is at most 32 (but at least p).
TestSpace batterySpace(const TestSpace& configured);

/// JSON report with one record per instance and a summary; "satisfied" is
/// false when any instance violates the theorem.
nlohmann::ordered_json runBattery(Theorem theorem, const TestSpace& space, const BatteryConfig& config);

}  // namespace padicframe
