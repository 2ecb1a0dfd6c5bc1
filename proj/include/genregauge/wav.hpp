#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace genregauge {

// Decoded audio: mono samples normalized to [-1, 1], never resampled.
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate_hz = 0;
};

struct MalformedHeader : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedEncoding : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decodes a RIFF/WAVE byte stream. Accepts integer PCM at 16/24/32 bits
// (format code 1) and 32-bit IEEE float (format code 3); anything else
// raises UnsupportedEncoding. Unknown chunks are skipped. Multi-channel
// input is downmixed via downmix_to_mono.
AudioBuffer parse_wav(std::span<const std::uint8_t> bytes);

// Reads a file and decodes it with parse_wav.
AudioBuffer load_wav(const std::filesystem::path& path);

// Per-index mean across channels. All channels must share one length.
std::vector<double> downmix_to_mono(const std::vector<std::vector<double>>& channels);

// Encodes mono samples as a 16-bit PCM WAV byte stream. Samples are
// clamped to [-1, 1]; a decode of the result stays within 1/32768 of
// the input.
std::vector<std::uint8_t> encode_wav_pcm16(std::span<const double> samples, int sample_rate_hz);

void write_wav_pcm16(const std::filesystem::path& path, std::span<const double> samples,
                     int sample_rate_hz);

} // namespace genregauge
