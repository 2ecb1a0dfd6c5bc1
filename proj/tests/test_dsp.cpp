#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "genregauge/dsp.hpp"

using namespace genregauge;

namespace {

AudioBuffer make_buffer(std::vector<double> samples, int rate = 44100) {
    return AudioBuffer{std::move(samples), rate};
}

std::vector<double> sine(double freq, double seconds, int rate, double amp = 1.0) {
    const auto n = static_cast<std::size_t>(seconds * rate);
    std::vector<double> x(n);
    const double w = 2.0 * std::numbers::pi * freq / rate;
    for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::sin(w * static_cast<double>(i));
    return x;
}

} // namespace

TEST_CASE("frame_signal drops the trailing partial frame") {
    const auto buf = make_buffer(std::vector<double>(10, 1.0));
    const auto frames = frame_signal(buf, {4, 2});
    CHECK(frames.size() == 4); // starts 0, 2, 4, 6
    for (const auto& f : frames) CHECK(f.size() == 4);
}

TEST_CASE("short signals yield a single zero-padded frame") {
    const auto buf = make_buffer({1.0, 2.0, 3.0});
    const auto frames = frame_signal(buf, {8, 4});
    REQUIRE(frames.size() == 1);
    REQUIRE(frames[0].size() == 8);
    CHECK(frames[0][0] == 1.0);
    CHECK(frames[0][2] == 3.0);
    CHECK(frames[0][3] == 0.0);
    CHECK(frames[0][7] == 0.0);
}

TEST_CASE("frame_signal rejects bad specs") {
    const auto buf = make_buffer(std::vector<double>(16, 0.0));
    CHECK_THROWS_AS(frame_signal(buf, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(frame_signal(buf, {4, 5}), std::invalid_argument);
    CHECK_THROWS_AS(frame_signal(buf, {4, 0}), std::invalid_argument);
}

TEST_CASE("bin-centered sine concentrates in one spectral neighborhood") {
    // 20 cycles in 2048 samples puts the tone exactly on bin 20.
    const int n = 2048;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i)
        x[i] = std::sin(2.0 * std::numbers::pi * 20.0 * i / n);
    const auto spec = magnitude_spectrum(x, 44100);
    CHECK(spec.magnitudes.size() == 1025);
    CHECK(spec.bin_width_hz == doctest::Approx(44100.0 / 2048.0));

    const double peak = spec.magnitudes[20];
    for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
        if (k >= 19 && k <= 21) continue;
        CHECK(spec.magnitudes[k] <= 0.01 * peak);
    }
}

TEST_CASE("all-zero frame yields an all-zero spectrum") {
    const auto spec = magnitude_spectrum(std::vector<double>(512, 0.0), 8000);
    for (double m : spec.magnitudes) CHECK(m == 0.0);
}

TEST_CASE("windowed energy matches the spectrum's scaled energy") {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t n = 300 + static_cast<std::size_t>(trial) * 217;
        std::vector<double> x(n);
        for (double& v : x) v = dist(gen);

        // Time-domain side: energy of the windowed, zero-padded frame.
        std::size_t fft_size = 1;
        while (fft_size < n) fft_size <<= 1;
        double time_energy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w =
                0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n)));
            time_energy += (x[i] * w) * (x[i] * w);
        }

        const auto spec = magnitude_spectrum(x, 44100);
        double spec_energy = spec.magnitudes[0] * spec.magnitudes[0];
        spec_energy += spec.magnitudes.back() * spec.magnitudes.back();
        for (std::size_t k = 1; k + 1 < spec.magnitudes.size(); ++k)
            spec_energy += 2.0 * spec.magnitudes[k] * spec.magnitudes[k];
        spec_energy /= static_cast<double>(fft_size);

        CHECK(spec_energy == doctest::Approx(time_energy).epsilon(1e-6));
    }
}

TEST_CASE("autocorrelation of a constant signal follows the overlap ratio") {
    const std::size_t n = 64;
    std::vector<double> x(n, 3.5);
    const auto ac = autocorrelation_normalized(x, 20);
    REQUIRE(ac.values.size() == 21);
    CHECK_FALSE(ac.all_zero_input);
    for (int l = 0; l <= 20; ++l)
        CHECK(ac.values[static_cast<std::size_t>(l)] ==
              doctest::Approx(static_cast<double>(n - static_cast<std::size_t>(l)) /
                              static_cast<double>(n))
                  .epsilon(1e-9));
}

TEST_CASE("autocorrelation matches the direct lag sums") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 50 + static_cast<std::size_t>(trial) * 31;
        std::vector<double> x(n);
        for (double& v : x) v = dist(gen);
        const int max_lag = static_cast<int>(n) / 2;

        const auto ac = autocorrelation_normalized(x, max_lag);
        double energy = 0.0;
        for (double v : x) energy += v * v;
        for (int l = 0; l <= max_lag; ++l) {
            double sum = 0.0;
            for (std::size_t i = 0; i + static_cast<std::size_t>(l) < n; ++i)
                sum += x[i] * x[i + static_cast<std::size_t>(l)];
            CHECK(ac.values[static_cast<std::size_t>(l)] ==
                  doctest::Approx(sum / energy).epsilon(1e-10));
        }
    }
}

TEST_CASE("autocorrelation values stay in [-1, 1] and peak at the period") {
    auto x = sine(100.0, 0.1, 8000); // period = 80 samples
    const auto ac = autocorrelation_normalized(x, 200);
    CHECK(ac.values[0] == doctest::Approx(1.0));
    for (double v : ac.values) {
        CHECK(v <= 1.0 + 1e-9);
        CHECK(v >= -1.0 - 1e-9);
    }
    // The lag-80 value carries the full overlap mass: (n - lag) / n.
    CHECK(ac.values[80] == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(ac.values[80] > ac.values[40]);
    CHECK(ac.values[80] > ac.values[79]);
    CHECK(ac.values[80] > ac.values[81]);
}

TEST_CASE("all-zero input sets the autocorrelation flag") {
    const auto ac = autocorrelation_normalized(std::vector<double>(100, 0.0), 10);
    CHECK(ac.all_zero_input);
    for (double v : ac.values) CHECK(v == 0.0);
}

TEST_CASE("autocorrelation rejects out-of-range lags") {
    std::vector<double> x(10, 1.0);
    CHECK_THROWS_AS(autocorrelation_normalized(x, 0), std::invalid_argument);
    CHECK_THROWS_AS(autocorrelation_normalized(x, 10), std::invalid_argument);
}

TEST_CASE("onset strength spikes at the attack and stays flat after it") {
    // Half a second of silence, then a steady tone.
    std::vector<double> x(22050, 0.0);
    const auto tone = sine(441.0, 1.0, 44100);
    x.insert(x.end(), tone.begin(), tone.end());

    const auto flux = onset_strength(make_buffer(std::move(x)), {2048, 1024});
    REQUIRE(flux.size() >= 20);
    CHECK(flux[0] == 0.0);

    const std::size_t attack_at = static_cast<std::size_t>(
        std::max_element(flux.begin(), flux.end()) - flux.begin());
    const double attack = flux[attack_at];
    REQUIRE(attack > 0.0);
    // The tone enters around frame 21 (sample 22050 / hop 1024).
    CHECK(attack_at >= 20);
    CHECK(attack_at <= 23);
    // Steady-state frames carry only window-phase wobble.
    for (std::size_t i = attack_at + 2; i < flux.size(); ++i) CHECK(flux[i] < 0.05 * attack);
}

TEST_CASE("onset strength of silence is zero") {
    const auto buf = make_buffer(std::vector<double>(44100, 0.0));
    const auto flux = onset_strength(buf, {2048, 1024});
    for (double v : flux) CHECK(v == 0.0);
}

TEST_CASE("click train produces evenly spaced flux peaks") {
    const int rate = 44100;
    std::vector<double> x(static_cast<std::size_t>(rate) * 3, 0.0);
    for (std::size_t p = 0; p < x.size(); p += static_cast<std::size_t>(rate) / 2) x[p] = 1.0;

    const FrameSpec spec{1102, 441}; // 25 ms / 10 ms at 44100
    const auto flux = onset_strength(make_buffer(x, rate), spec);

    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < flux.size(); ++i)
        if (flux[i] > flux[i - 1] && flux[i] >= flux[i + 1] &&
            flux[i] > 0.5 * *std::max_element(flux.begin(), flux.end()))
            peaks.push_back(i);
    REQUIRE(peaks.size() >= 4);
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        const double spacing_s = static_cast<double>(peaks[i] - peaks[i - 1]) *
                                 static_cast<double>(spec.hop_samples) / rate;
        CHECK(spacing_s == doctest::Approx(0.5).epsilon(0.05));
    }
}
