#pragma once

// Frozen regression fixture: a gain-ratio table over eleven genres and
// nine features, together with hand-checked column statistics. Used to
// pin the Max/Avg/Threshold arithmetic and the selection order.

#include <array>
#include <string>

#include "genregauge/training.hpp"

namespace reference {

inline constexpr int kClassCount = 11;
inline constexpr int kFeatureCount = 9;

inline constexpr std::array<const char*, kClassCount> kClasses = {
    "Blues", "Classical", "Chamber", "Orchestral", "Jazz",      "Pop",
    "HipHop", "Techno",   "Rock",    "Hard Rock",  "Soft Rock",
};

inline constexpr std::array<const char*, kFeatureCount> kFeatures = {
    "temporal_length_s", "rms_energy", "low_energy_rate",
    "tempo_bpm",         "zcr_per_s",  "rolloff_hz",
    "spectral_irregularity", "pitch_hz", "inharmonicity",
};

inline constexpr double kRatios[kClassCount][kFeatureCount] = {
    {0.5236, 0.3077, 0.5368, 0.0982, 0.3244, 0.7073, 0.0876, 0.2258, 0.2437},
    {0.3012, 0.2367, 0.3508, 0.4343, 0.3997, 0.1092, 0.1379, 0.2097, 0.1413},
    {0.3044, 0.2347, 0.5459, 0.3045, 0.3797, 0.3567, 0.0876, 0.3567, 0.2437},
    {0.3897, 0.2652, 0.2157, 0.1614, 0.2897, 0.3168, 0.1414, 0.1092, 0.4223},
    {0.4654, 0.4039, 0.4375, 0.4999, 0.2876, 0.3189, 0.3428, 0.5324, 0.1530},
    {0.1317, 0.4849, 0.3101, 0.4462, 0.5698, 0.2024, 0.3543, 0.0505, 0.4126},
    {0.4106, 0.1605, 0.1543, 0.5591, 0.3543, 0.0905, 0.2252, 0.4460, 0.1543},
    {0.5146, 0.3242, 0.5146, 0.1127, 0.3620, 0.3972, 0.3927, 0.2252, 0.2076},
    {0.3508, 0.2437, 0.1400, 0.2432, 0.3242, 0.2098, 0.1123, 0.4265, 0.3598},
    {0.3620, 0.1127, 0.2933, 0.5519, 0.4276, 0.1054, 0.1123, 0.0984, 0.3466},
    {0.3925, 0.3492, 0.2863, 0.3762, 0.3429, 0.3268, 0.0801, 0.1011, 0.2660},
};

// Column statistics as independently verified by hand, rounded to four
// decimals. Tests check against these to within 5e-4.
inline constexpr std::array<double, kFeatureCount> kExpectedMax = {
    0.5236, 0.4849, 0.5459, 0.5591, 0.5698, 0.7073, 0.3927, 0.5324, 0.4223,
};

inline constexpr std::array<double, kFeatureCount> kExpectedAvg = {
    0.3770, 0.2839, 0.3441, 0.3443, 0.3693, 0.2855, 0.1886, 0.2529, 0.2683,
};

inline constexpr std::array<double, kFeatureCount> kExpectedThreshold = {
    0.4503, 0.3844, 0.4450, 0.4517, 0.4695, 0.4964, 0.2906, 0.3926, 0.3453,
};

// Text-variant threshold for rolloff_hz: mean of max and avg plus a
// quarter of their spread.
inline constexpr double kExpectedRolloffTextThreshold = 0.6019;

inline genregauge::GainRatioMatrix build_matrix() {
    genregauge::GainRatioMatrix matrix;
    for (const char* cls : kClasses) matrix.class_order.emplace_back(cls);
    for (const char* feature : kFeatures) matrix.feature_order.emplace_back(feature);
    for (int c = 0; c < kClassCount; ++c)
        for (int f = 0; f < kFeatureCount; ++f)
            matrix.entries[kClasses[c]][kFeatures[f]] = kRatios[c][f];
    return matrix;
}

} // namespace reference
