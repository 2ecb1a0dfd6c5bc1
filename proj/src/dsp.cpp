#include "genregauge/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace genregauge {

namespace {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place iterative radix-2 transform. a.size() must be a power of two.
void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1 : -1);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& c : a) c *= scale;
    }
}

void validate_spec(FrameSpec spec) {
    if (spec.frame_len_samples < 2) throw std::invalid_argument("frame length must be >= 2");
    if (spec.hop_samples < 1 || spec.hop_samples > spec.frame_len_samples)
        throw std::invalid_argument("hop must be in [1, frame length]");
}

} // namespace

std::vector<std::vector<double>> frame_signal(const AudioBuffer& buf, FrameSpec spec) {
    validate_spec(spec);
    const auto& x = buf.samples;
    const auto frame_len = static_cast<std::size_t>(spec.frame_len_samples);
    const auto hop = static_cast<std::size_t>(spec.hop_samples);

    std::vector<std::vector<double>> frames;
    if (x.size() < frame_len) {
        std::vector<double> padded(frame_len, 0.0);
        std::copy(x.begin(), x.end(), padded.begin());
        frames.push_back(std::move(padded));
        return frames;
    }
    for (std::size_t start = 0; start + frame_len <= x.size(); start += hop)
        frames.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(start),
                            x.begin() + static_cast<std::ptrdiff_t>(start + frame_len));
    return frames;
}

Spectrum magnitude_spectrum(std::span<const double> frame, int sample_rate_hz) {
    if (frame.size() < 2) throw std::invalid_argument("frame must hold at least 2 samples");
    if (sample_rate_hz <= 0) throw std::invalid_argument("sample rate must be positive");

    const std::size_t n = frame.size();
    const std::size_t fft_size = next_pow2(n);
    std::vector<std::complex<double>> buf(fft_size, 0.0);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 * (1.0 - std::cos(step * static_cast<double>(i)));
        buf[i] = frame[i] * w;
    }
    fft(buf, false);

    Spectrum spec;
    spec.bin_width_hz = static_cast<double>(sample_rate_hz) / static_cast<double>(fft_size);
    spec.magnitudes.resize(fft_size / 2 + 1);
    for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) spec.magnitudes[k] = std::abs(buf[k]);
    return spec;
}

Autocorrelation autocorrelation_normalized(std::span<const double> x, int max_lag) {
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= x.size())
        throw std::invalid_argument("max_lag must be in [1, length)");

    Autocorrelation result;
    result.values.assign(static_cast<std::size_t>(max_lag) + 1, 0.0);

    const double energy = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    if (energy == 0.0) {
        result.all_zero_input = true;
        return result;
    }

    // Lag products via the power spectrum; padding past max_lag keeps the
    // circular wrap-around out of the lags we report.
    const std::size_t fft_size = next_pow2(x.size() + static_cast<std::size_t>(max_lag) + 1);
    std::vector<std::complex<double>> buf(fft_size, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
    fft(buf, false);
    for (auto& c : buf) c = c * std::conj(c);
    fft(buf, true);

    const double norm = buf[0].real();
    for (std::size_t l = 0; l < result.values.size(); ++l) result.values[l] = buf[l].real() / norm;
    return result;
}

std::vector<double> onset_strength(const AudioBuffer& buf, FrameSpec spec) {
    const auto frames = frame_signal(buf, spec);
    std::vector<double> flux(frames.size(), 0.0);
    std::vector<double> prev;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        auto spectrum = magnitude_spectrum(frames[i], buf.sample_rate_hz);
        if (i > 0) {
            double sum = 0.0;
            for (std::size_t k = 0; k < spectrum.magnitudes.size(); ++k)
                sum += std::max(0.0, spectrum.magnitudes[k] - prev[k]);
            flux[i] = sum;
        }
        prev = std::move(spectrum.magnitudes);
    }
    return flux;
}

} // namespace genregauge
