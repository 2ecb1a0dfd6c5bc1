#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "genregauge/dsp.hpp"
#include "genregauge/wav.hpp"

namespace genregauge {

// Canonical feature order. Ordering is part of the contract: it fixes CSV
// columns and breaks ties during feature selection.
enum class FeatureId {
    SamplingRate = 0,
    TemporalLength,
    RmsEnergy,
    LowEnergyRate,
    TempoBpm,
    PulseClarity,
    ZcrPerSecond,
    RolloffHz,
    SpectralIrregularity,
    PitchHz,
    Inharmonicity,
};

inline constexpr int kFeatureCount = 11;

inline constexpr std::array<FeatureId, kFeatureCount> kAllFeatures = {
    FeatureId::SamplingRate,       FeatureId::TemporalLength, FeatureId::RmsEnergy,
    FeatureId::LowEnergyRate,      FeatureId::TempoBpm,       FeatureId::PulseClarity,
    FeatureId::ZcrPerSecond,       FeatureId::RolloffHz,      FeatureId::SpectralIrregularity,
    FeatureId::PitchHz,            FeatureId::Inharmonicity,
};

std::string_view feature_name(FeatureId id);
std::optional<FeatureId> feature_from_name(std::string_view name);

// Rank used for tie-breaks: canonical features by their order above,
// unknown names after them in lexicographic order.
int feature_rank(std::string_view name);

struct FeatureVector {
    double sampling_rate_hz = 0.0;
    double temporal_length_s = 0.0;
    double rms_energy = 0.0;
    double low_energy_rate = 0.0;
    double tempo_bpm = 0.0;
    double pulse_clarity = 0.0;
    double zcr_per_s = 0.0;
    double rolloff_hz = 0.0;
    double spectral_irregularity = 0.0;
    double pitch_hz = 0.0;
    double inharmonicity = 0.0;

    double get(FeatureId id) const;
    void set(FeatureId id, double value);
};

// A feature vector plus per-field validity. Failed extractors leave the
// sentinel 0.0 behind with the flag cleared.
struct FeatureObservation {
    FeatureVector values;
    std::array<bool, kFeatureCount> valid{};

    bool is_valid(FeatureId id) const { return valid[static_cast<std::size_t>(id)]; }
    void set_valid(FeatureId id, bool v) { valid[static_cast<std::size_t>(id)] = v; }
};

struct AllSilent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unvoiced : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPulse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Framed features use 50 ms frames with 50% hop.
FrameSpec default_frame_spec(int sample_rate_hz);

// Spectral features use 2048-sample frames with hop 1024.
FrameSpec spectral_frame_spec();

// The onset curve uses 50 ms frames with 10 ms hop. The deep overlap keeps
// an attack's flux mass nearly independent of where it falls on the hop
// grid, so beat-period autocorrelation peaks do not wobble with alignment.
// The tempo search additionally upsamples the curve so beat periods falling
// between hops keep their full peak height.
FrameSpec onset_frame_spec(int sample_rate_hz);

inline constexpr double kRolloffThreshold = 0.85;
inline constexpr double kPeakFloorRatio = 0.01;
inline constexpr double kPitchMinHz = 75.0;
inline constexpr double kPitchMaxHz = 2400.0;
inline constexpr double kVoicingThreshold = 0.3;
inline constexpr double kTempoMinBpm = 40.0;
inline constexpr double kTempoMaxBpm = 200.0;

double temporal_length(const AudioBuffer& buf);
double rms_energy(const AudioBuffer& buf);

// RMS of each raw (unwindowed) frame.
std::vector<double> framed_rms(const AudioBuffer& buf, FrameSpec spec);

// Fraction of frames strictly below the mean frame RMS. All-equal input
// (including silence) yields 0.
double low_energy_rate(std::span<const double> frame_rms);

// Sign changes (strictly negative products; exact zeros do not count)
// divided by the signal length in seconds.
double zcr_per_second(const AudioBuffer& buf);

// Mean over non-silent frames of the lowest bin-center frequency whose
// cumulative squared magnitude reaches threshold * total.
double rolloff(const AudioBuffer& buf, double threshold = kRolloffThreshold);

// Jensen irregularity of spectral peaks, averaged over frames that carry
// at least one peak. Peaks are local maxima at or above 1% of the frame
// maximum; the term list is closed with a zero amplitude.
double spectral_irregularity(const AudioBuffer& buf);

// Median frame pitch over voiced frames. Each frame takes its strongest
// local autocorrelation peak in the 75-2400 Hz lag band (parabolic
// refinement); the lag-0 shoulder never qualifies. Frames whose peak
// stays below 0.3 count as unvoiced.
double pitch_autocor(const AudioBuffer& buf);

// Magnitude-weighted distance to the nearest multiple of f0, normalized
// by f0/2, over mean-spectrum bins at or above f0/2.
double inharmonicity(const AudioBuffer& buf, double f0_hz);

// Tempo from the strongest local peak of the mean-removed, upsampled
// onset autocorrelation in the 40-200 bpm lag band (parabolic
// refinement). The normalization decays with lag, so the beat period
// outweighs its whole multiples. Clamped to the band.
double tempo_autocor(const AudioBuffer& buf);

// Maximum of the same autocorrelation over the same lag band, clamped to
// [0, 1]. A pulseless onset curve yields 0.
double pulse_clarity(const AudioBuffer& buf);

// Runs every extractor. Per-feature failures clear the validity flag and
// leave 0.0; AllSilent is raised only when the whole buffer is silent.
FeatureObservation extract_all(const AudioBuffer& buf);

} // namespace genregauge
