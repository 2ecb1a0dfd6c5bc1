#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "genregauge/wav.hpp"

namespace genregauge {

enum class SignalKind { Sine, HarmonicStack, ClickTrain, WhiteNoise, Mix };

// Deterministic generator: splitmix64. Same seed, same stream.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double next_bipolar() { return 2.0 * next_unit() - 1.0; }
};

struct SynthSpec {
    SignalKind kind = SignalKind::Sine;
    double duration_s = 1.0;
    double amplitude = 1.0; // peak bound; samples stay in [-amplitude, amplitude]
    int sample_rate_hz = 44100;

    double frequency_hz = 440.0;  // sine, harmonic stack, mix
    int harmonics = 1;            // harmonic stack, mix
    double tilt = 1.0;            // harmonic h scaled by h^-tilt
    double bpm = 120.0;           // click train, mix
    double noise_level = 0.0;     // mix: noise gain relative to the tonal part
    double am_depth = 0.0;        // mix: slow amplitude modulation depth in [0, 1)
    double am_rate_hz = 0.5;
    std::uint64_t seed = 0;       // noise
};

struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooManyClasses : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AudioBuffer synthesize(const SynthSpec& spec);

struct CorpusFile {
    std::string file_id;
    std::string class_label;
};

inline constexpr int kMaxCorpusClasses = 8;

// Writes files_per_class 16-bit PCM WAVs at 44100 Hz per class plus a
// labels.csv (header file_id,class_label) into out_dir. Each class draws
// from its own parameter bands (tempo, register, brightness, noise, level)
// so class feature ranges separate; within a class every parameter moves
// together along one stratified latent so a class's files sweep its bands
// evenly. Deterministic per seed.
std::vector<CorpusFile> generate_corpus(int n_classes, int files_per_class, std::uint64_t seed,
                                        const std::filesystem::path& out_dir);

} // namespace genregauge
