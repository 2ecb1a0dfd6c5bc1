#pragma once

#include <span>
#include <vector>

#include "genregauge/wav.hpp"

namespace genregauge {

// Analysis framing: frames start every hop_samples; a trailing partial
// frame is dropped. hop_samples must not exceed frame_len_samples.
struct FrameSpec {
    int frame_len_samples = 0;
    int hop_samples = 0;
};

// One-sided magnitude spectrum. magnitudes has fft_size/2 + 1 entries and
// bin k is centered at k * bin_width_hz.
struct Spectrum {
    std::vector<double> magnitudes;
    double bin_width_hz = 0.0;
};

// values[l] = sum(x[n] * x[n+l]) / sum(x[n]^2) for l = 0..max_lag.
// all_zero_input marks the undefined case; values are then all zero.
struct Autocorrelation {
    std::vector<double> values;
    bool all_zero_input = false;
};

// Splits the signal into frames. A signal shorter than one frame yields a
// single zero-padded frame.
std::vector<std::vector<double>> frame_signal(const AudioBuffer& buf, FrameSpec spec);

// Applies a periodic Hann window, zero-pads to the next power of two and
// returns the one-sided magnitude spectrum.
Spectrum magnitude_spectrum(std::span<const double> frame, int sample_rate_hz);

// Normalized autocorrelation; max_lag must be positive and below the
// signal length. values[0] == 1 unless the input is all zero.
Autocorrelation autocorrelation_normalized(std::span<const double> x, int max_lag);

// Half-wave rectified spectral flux per frame. The first frame has no
// predecessor and reports 0.
std::vector<double> onset_strength(const AudioBuffer& buf, FrameSpec spec);

} // namespace genregauge
