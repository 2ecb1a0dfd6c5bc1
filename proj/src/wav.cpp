#include "genregauge/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

namespace genregauge {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint16_t>(b[off] | (b[off + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t off) {
    return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
           (static_cast<std::uint32_t>(b[off + 2]) << 16) |
           (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t off, const char* tag) {
    return std::memcmp(b.data() + off, tag, 4) == 0;
}

struct FmtChunk {
    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits_per_sample = 0;
};

double decode_sample(std::span<const std::uint8_t> b, std::size_t off, const FmtChunk& fmt) {
    if (fmt.format == kFormatIeeeFloat) {
        float v = std::bit_cast<float>(read_u32(b, off));
        if (!std::isfinite(v)) return 0.0;
        return std::clamp(static_cast<double>(v), -1.0, 1.0);
    }
    switch (fmt.bits_per_sample) {
    case 16: {
        auto v = static_cast<std::int16_t>(read_u16(b, off));
        return v / 32768.0;
    }
    case 24: {
        std::int32_t v = b[off] | (b[off + 1] << 8) | (b[off + 2] << 16);
        if (v & 0x800000) v |= ~0xFFFFFF; // sign-extend
        return v / 8388608.0;
    }
    default: { // 32
        auto v = static_cast<std::int32_t>(read_u32(b, off));
        return v / 2147483648.0;
    }
    }
}

} // namespace

AudioBuffer parse_wav(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE"))
        throw MalformedHeader("not a RIFF/WAVE stream");

    FmtChunk fmt;
    bool have_fmt = false;
    std::size_t data_off = 0;
    std::size_t data_size = 0;
    bool have_data = false;

    std::size_t off = 12;
    while (off + 8 <= bytes.size()) {
        const std::size_t chunk_size = read_u32(bytes, off + 4);
        const std::size_t body = off + 8;
        if (body + chunk_size > bytes.size())
            throw MalformedHeader("chunk extends past end of stream");
        if (tag_is(bytes, off, "fmt ")) {
            if (chunk_size < 16) throw MalformedHeader("fmt chunk too small");
            fmt.format = read_u16(bytes, body);
            fmt.channels = read_u16(bytes, body + 2);
            fmt.sample_rate = read_u32(bytes, body + 4);
            fmt.block_align = read_u16(bytes, body + 12);
            fmt.bits_per_sample = read_u16(bytes, body + 14);
            have_fmt = true;
        } else if (tag_is(bytes, off, "data")) {
            data_off = body;
            data_size = chunk_size;
            have_data = true;
        }
        off = body + chunk_size + (chunk_size & 1); // chunks are word-aligned
    }
    if (!have_fmt) throw MalformedHeader("missing fmt chunk");
    if (!have_data) throw MalformedHeader("missing data chunk");

    if (fmt.format == kFormatPcm) {
        if (fmt.bits_per_sample != 16 && fmt.bits_per_sample != 24 && fmt.bits_per_sample != 32)
            throw UnsupportedEncoding("unsupported PCM bit depth " +
                                      std::to_string(fmt.bits_per_sample));
    } else if (fmt.format == kFormatIeeeFloat) {
        if (fmt.bits_per_sample != 32)
            throw UnsupportedEncoding("unsupported float bit depth " +
                                      std::to_string(fmt.bits_per_sample));
    } else {
        throw UnsupportedEncoding("unsupported format code " + std::to_string(fmt.format));
    }
    if (fmt.channels == 0 || fmt.sample_rate == 0)
        throw MalformedHeader("invalid channel count or sample rate");
    const std::size_t bytes_per_sample = fmt.bits_per_sample / 8;
    if (fmt.block_align != fmt.channels * bytes_per_sample)
        throw MalformedHeader("block alignment inconsistent with format");

    const std::size_t frames = data_size / fmt.block_align; // trailing partial frame dropped
    if (frames == 0) throw EmptyData("data chunk holds no complete frame");

    std::vector<std::vector<double>> channels(fmt.channels);
    for (auto& ch : channels) ch.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        std::size_t frame_off = data_off + i * fmt.block_align;
        for (std::uint16_t c = 0; c < fmt.channels; ++c)
            channels[c][i] = decode_sample(bytes, frame_off + c * bytes_per_sample, fmt);
    }

    AudioBuffer buf;
    buf.sample_rate_hz = static_cast<int>(fmt.sample_rate);
    buf.samples = (fmt.channels == 1) ? std::move(channels[0]) : downmix_to_mono(channels);
    return buf;
}

AudioBuffer load_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedHeader("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_wav(bytes);
}

std::vector<double> downmix_to_mono(const std::vector<std::vector<double>>& channels) {
    if (channels.empty()) throw LengthMismatch("no channels to downmix");
    const std::size_t n = channels.front().size();
    for (const auto& ch : channels)
        if (ch.size() != n) throw LengthMismatch("channel lengths differ");
    std::vector<double> mono(n, 0.0);
    for (const auto& ch : channels)
        for (std::size_t i = 0; i < n; ++i) mono[i] += ch[i];
    const double scale = 1.0 / static_cast<double>(channels.size());
    for (double& s : mono) s *= scale;
    return mono;
}

std::vector<std::uint8_t> encode_wav_pcm16(std::span<const double> samples, int sample_rate_hz) {
    const std::uint32_t data_size = static_cast<std::uint32_t>(samples.size() * 2);
    std::vector<std::uint8_t> out;
    out.reserve(44 + data_size);

    auto push_tag = [&](const char* t) { out.insert(out.end(), t, t + 4); };
    auto push_u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    auto push_u16 = [&](std::uint16_t v) {
        out.push_back(static_cast<std::uint8_t>(v));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
    };

    push_tag("RIFF");
    push_u32(36 + data_size);
    push_tag("WAVE");
    push_tag("fmt ");
    push_u32(16);
    push_u16(kFormatPcm);
    push_u16(1); // mono
    push_u32(static_cast<std::uint32_t>(sample_rate_hz));
    push_u32(static_cast<std::uint32_t>(sample_rate_hz) * 2);
    push_u16(2); // block align
    push_u16(16);
    push_tag("data");
    push_u32(data_size);
    for (double s : samples) {
        double scaled = std::round(std::clamp(s, -1.0, 1.0) * 32768.0);
        auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
        push_u16(static_cast<std::uint16_t>(v));
    }
    return out;
}

void write_wav_pcm16(const std::filesystem::path& path, std::span<const double> samples,
                     int sample_rate_hz) {
    auto bytes = encode_wav_pcm16(samples, sample_rate_hz);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

} // namespace genregauge
