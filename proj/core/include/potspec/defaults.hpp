#pragma once

// Pinned recipe settings. Bump kDefaultsVersion whenever a value changes so
// reports stay attributable to the settings that produced them.

#include <array>
#include <cstdint>

namespace potspec::defaults {

inline constexpr int kDefaultsVersion = 1;

/// Seed for the random challengers (convex polygons, random triangles).
inline constexpr std::uint64_t kSeed = 20110517;

/// Two-level comparison meshes for area-pi 2D domains and volume-4pi/3 3D domains.
inline constexpr std::array<double, 2> kLevels2D{0.1, 0.05};
inline constexpr std::array<double, 2> kLevels3D{0.2, 0.14142135623730950};

/// Three-level geometric sequences for the convergence study (ratio sqrt 2).
inline constexpr std::array<double, 3> kConvergence2D{0.1, 0.070710678118654752, 0.05};
inline constexpr std::array<double, 3> kConvergence3D{0.2, 0.14142135623730950, 0.1};

/// Coarse levels for quick runs and end-to-end tests.
inline constexpr std::array<double, 2> kQuickLevels2D{0.25, 0.18};
inline constexpr std::array<double, 2> kQuickLevels3D{0.4, 0.3};

/// Relative tolerance of the equal-measure precondition.
inline constexpr double kMeasureTolerance = 1e-10;
/// Eigenvalues below -kNegativeTolerance * |lambda_1| count as negative.
inline constexpr double kNegativeTolerance = 1e-10;
/// Relative tolerance of the trace and Frobenius identities.
inline constexpr double kIdentityTolerance = 1e-9;

inline constexpr double kKacDelta = 1e-3;
inline constexpr double kKacTolerance = 0.05;

/// Acceptance bounds of the convergence study.
inline constexpr double kExtrapolationTolerance = 5e-3;
inline constexpr double kMinimumOrder = 0.9;

}  // namespace potspec::defaults
