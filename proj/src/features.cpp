#include "genregauge/features.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace genregauge {

namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "sampling_rate_hz", "temporal_length_s",     "rms_energy", "low_energy_rate",
    "tempo_bpm",        "pulse_clarity",         "zcr_per_s",  "rolloff_hz",
    "spectral_irregularity", "pitch_hz",         "inharmonicity",
};

double parabolic_offset(double ym1, double y0, double yp1) {
    const double denom = ym1 - 2.0 * y0 + yp1;
    if (denom == 0.0) return 0.0;
    return std::clamp(0.5 * (ym1 - yp1) / denom, -0.5, 0.5);
}

bool is_silent(const AudioBuffer& buf) {
    return std::all_of(buf.samples.begin(), buf.samples.end(), [](double s) { return s == 0.0; });
}

std::vector<Spectrum> spectral_frames(const AudioBuffer& buf) {
    const auto frames = frame_signal(buf, spectral_frame_spec());
    std::vector<Spectrum> spectra;
    spectra.reserve(frames.size());
    for (const auto& frame : frames) spectra.push_back(magnitude_spectrum(frame, buf.sample_rate_hz));
    return spectra;
}

struct OnsetAutocorr {
    std::vector<double> r;
    int lag_min = 0;
    int lag_max = 0;
    double hop_s = 0.0;
    bool pulseless = false;
};

// Lag resolution multiplier for the onset autocorrelation. Without it, a
// beat period that is not a whole number of hops loses peak height to lag
// quantization, and a whole multiple that happens to land on the hop grid
// can overtake the beat itself.
constexpr int kOnsetUpsample = 8;

std::vector<double> upsample_linear(const std::vector<double>& x, int factor) {
    if (x.size() < 2 || factor == 1) return x;
    std::vector<double> out((x.size() - 1) * static_cast<std::size_t>(factor) + 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        for (int j = 0; j < factor; ++j) {
            const double frac = static_cast<double>(j) / factor;
            out[i * static_cast<std::size_t>(factor) + static_cast<std::size_t>(j)] =
                x[i] + frac * (x[i + 1] - x[i]);
        }
    out.back() = x.back();
    return out;
}

// Autocorrelation of the mean-removed, upsampled onset curve. Removing
// the positive flux baseline leaves only the periodic part in the lag
// peaks; a curve that is all zero or constant carries no pulse.
OnsetAutocorr onset_autocorr(const AudioBuffer& buf) {
    const FrameSpec spec = onset_frame_spec(buf.sample_rate_hz);
    std::vector<double> onsets = onset_strength(buf, spec);

    OnsetAutocorr out;
    out.hop_s = spec.hop_samples / static_cast<double>(buf.sample_rate_hz);
    if (std::all_of(onsets.begin(), onsets.end(), [](double v) { return v == 0.0; })) {
        out.pulseless = true;
        return out;
    }

    onsets = upsample_linear(onsets, kOnsetUpsample);
    out.hop_s /= kOnsetUpsample;
    const double mean = std::accumulate(onsets.begin(), onsets.end(), 0.0) /
                        static_cast<double>(onsets.size());
    for (double& v : onsets) v -= mean;

    out.lag_min = std::max(1, static_cast<int>(std::ceil(60.0 / (kTempoMaxBpm * out.hop_s))));
    out.lag_max = static_cast<int>(std::floor(60.0 / (kTempoMinBpm * out.hop_s)));
    out.lag_max = std::min(out.lag_max, static_cast<int>(onsets.size()) - 1);
    if (out.lag_min > out.lag_max)
        throw std::invalid_argument("signal too short for the tempo lag band");

    auto ac = autocorrelation_normalized(onsets, out.lag_max);
    if (ac.all_zero_input) {
        out.pulseless = true;
        return out;
    }
    out.r = std::move(ac.values);
    return out;
}

struct LagPeak {
    double lag = 0.0;   // refined, fractional
    double value = 0.0; // refined peak height
};

// Local maxima over [lag_min, lag_max] with parabolic refinement. The
// plain band maximum never qualifies when it sits on the lag-0 shoulder,
// which is what makes the search robust for short lags.
std::vector<LagPeak> band_peaks(const std::vector<double>& r, int lag_min, int lag_max) {
    std::vector<LagPeak> peaks;
    for (int l = lag_min; l <= lag_max; ++l) {
        const double y0 = r[static_cast<std::size_t>(l)];
        const double ym1 = r[static_cast<std::size_t>(l - 1)];
        if (y0 < ym1) continue;
        if (l < lag_max) {
            const double yp1 = r[static_cast<std::size_t>(l + 1)];
            if (y0 < yp1) continue;
            const double d = parabolic_offset(ym1, y0, yp1);
            peaks.push_back({static_cast<double>(l) + d, y0 - 0.25 * (ym1 - yp1) * d});
        } else {
            peaks.push_back({static_cast<double>(l), y0});
        }
    }
    return peaks;
}

} // namespace

std::string_view feature_name(FeatureId id) {
    return kFeatureNames[static_cast<std::size_t>(id)];
}

std::optional<FeatureId> feature_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        if (kFeatureNames[i] == name) return static_cast<FeatureId>(i);
    return std::nullopt;
}

int feature_rank(std::string_view name) {
    if (auto id = feature_from_name(name)) return static_cast<int>(*id);
    return kFeatureCount;
}

double FeatureVector::get(FeatureId id) const {
    switch (id) {
    case FeatureId::SamplingRate: return sampling_rate_hz;
    case FeatureId::TemporalLength: return temporal_length_s;
    case FeatureId::RmsEnergy: return rms_energy;
    case FeatureId::LowEnergyRate: return low_energy_rate;
    case FeatureId::TempoBpm: return tempo_bpm;
    case FeatureId::PulseClarity: return pulse_clarity;
    case FeatureId::ZcrPerSecond: return zcr_per_s;
    case FeatureId::RolloffHz: return rolloff_hz;
    case FeatureId::SpectralIrregularity: return spectral_irregularity;
    case FeatureId::PitchHz: return pitch_hz;
    case FeatureId::Inharmonicity: return inharmonicity;
    }
    return 0.0;
}

void FeatureVector::set(FeatureId id, double value) {
    switch (id) {
    case FeatureId::SamplingRate: sampling_rate_hz = value; break;
    case FeatureId::TemporalLength: temporal_length_s = value; break;
    case FeatureId::RmsEnergy: rms_energy = value; break;
    case FeatureId::LowEnergyRate: low_energy_rate = value; break;
    case FeatureId::TempoBpm: tempo_bpm = value; break;
    case FeatureId::PulseClarity: pulse_clarity = value; break;
    case FeatureId::ZcrPerSecond: zcr_per_s = value; break;
    case FeatureId::RolloffHz: rolloff_hz = value; break;
    case FeatureId::SpectralIrregularity: spectral_irregularity = value; break;
    case FeatureId::PitchHz: pitch_hz = value; break;
    case FeatureId::Inharmonicity: inharmonicity = value; break;
    }
}

FrameSpec default_frame_spec(int sample_rate_hz) {
    const int frame = std::max(2, static_cast<int>(std::lround(0.050 * sample_rate_hz)));
    return {frame, std::max(1, frame / 2)};
}

FrameSpec spectral_frame_spec() { return {2048, 1024}; }

FrameSpec onset_frame_spec(int sample_rate_hz) {
    const int frame = std::max(2, static_cast<int>(std::lround(0.050 * sample_rate_hz)));
    const int hop = std::clamp(static_cast<int>(std::lround(0.010 * sample_rate_hz)), 1, frame);
    return {frame, hop};
}

double temporal_length(const AudioBuffer& buf) {
    if (buf.sample_rate_hz <= 0) throw std::invalid_argument("sample rate must be positive");
    return static_cast<double>(buf.samples.size()) / buf.sample_rate_hz;
}

double rms_energy(const AudioBuffer& buf) {
    if (buf.samples.empty()) throw std::invalid_argument("buffer is empty");
    const double sum_sq =
        std::inner_product(buf.samples.begin(), buf.samples.end(), buf.samples.begin(), 0.0);
    return std::sqrt(sum_sq / static_cast<double>(buf.samples.size()));
}

std::vector<double> framed_rms(const AudioBuffer& buf, FrameSpec spec) {
    const auto frames = frame_signal(buf, spec);
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& frame : frames) {
        const double sum_sq = std::inner_product(frame.begin(), frame.end(), frame.begin(), 0.0);
        out.push_back(std::sqrt(sum_sq / static_cast<double>(frame.size())));
    }
    return out;
}

double low_energy_rate(std::span<const double> frame_rms) {
    if (frame_rms.empty()) throw std::invalid_argument("no frames");
    const double mean = std::accumulate(frame_rms.begin(), frame_rms.end(), 0.0) /
                        static_cast<double>(frame_rms.size());
    std::size_t below = 0;
    for (double v : frame_rms)
        if (v < mean) ++below;
    return static_cast<double>(below) / static_cast<double>(frame_rms.size());
}

double zcr_per_second(const AudioBuffer& buf) {
    if (buf.samples.empty()) throw std::invalid_argument("buffer is empty");
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < buf.samples.size(); ++i)
        if (buf.samples[i - 1] * buf.samples[i] < 0.0) ++crossings;
    return static_cast<double>(crossings) / temporal_length(buf);
}

double rolloff(const AudioBuffer& buf, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw std::invalid_argument("threshold must be in (0, 1]");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& spectrum : spectral_frames(buf)) {
        double total = 0.0;
        for (double m : spectrum.magnitudes) total += m * m;
        if (total == 0.0) continue;
        const double target = threshold * total;
        double cum = 0.0;
        for (std::size_t k = 0; k < spectrum.magnitudes.size(); ++k) {
            cum += spectrum.magnitudes[k] * spectrum.magnitudes[k];
            if (cum >= target) {
                sum += static_cast<double>(k) * spectrum.bin_width_hz;
                break;
            }
        }
        ++count;
    }
    if (count == 0) throw AllSilent("every frame has zero energy");
    return sum / static_cast<double>(count);
}

double spectral_irregularity(const AudioBuffer& buf) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& spectrum : spectral_frames(buf)) {
        const auto& m = spectrum.magnitudes;
        const double peak_max = *std::max_element(m.begin(), m.end());
        if (peak_max == 0.0) continue;
        const double floor = kPeakFloorRatio * peak_max;
        std::vector<double> partials;
        for (std::size_t k = 1; k + 1 < m.size(); ++k)
            if (m[k] > m[k - 1] && m[k] > m[k + 1] && m[k] >= floor) partials.push_back(m[k]);
        if (partials.empty()) continue;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < partials.size(); ++i) {
            const double next = (i + 1 < partials.size()) ? partials[i + 1] : 0.0;
            num += (partials[i] - next) * (partials[i] - next);
            den += partials[i] * partials[i];
        }
        sum += num / den;
        ++count;
    }
    if (count == 0) throw AllSilent("no frame carries a spectral peak");
    return sum / static_cast<double>(count);
}

double pitch_autocor(const AudioBuffer& buf) {
    const int sr = buf.sample_rate_hz;
    const FrameSpec spec = default_frame_spec(sr);
    const int lag_min = std::max(2, static_cast<int>(std::ceil(sr / kPitchMaxHz)));
    const int lag_max =
        std::min(spec.frame_len_samples - 1, static_cast<int>(std::floor(sr / kPitchMinHz)));
    if (lag_min > lag_max) throw std::invalid_argument("pitch lag band is empty at this rate");

    std::vector<double> voiced;
    for (const auto& frame : frame_signal(buf, spec)) {
        auto ac = autocorrelation_normalized(frame, lag_max);
        if (ac.all_zero_input) continue;
        const LagPeak* best = nullptr;
        const auto peaks = band_peaks(ac.values, lag_min, lag_max);
        for (const auto& peak : peaks)
            if (best == nullptr || peak.value > best->value) best = &peak;
        if (best == nullptr || best->value < kVoicingThreshold) continue;
        const double hz = static_cast<double>(sr) / best->lag;
        voiced.push_back(std::clamp(hz, kPitchMinHz, kPitchMaxHz));
    }
    if (voiced.empty()) throw Unvoiced("no voiced frames");

    std::sort(voiced.begin(), voiced.end());
    const std::size_t n = voiced.size();
    return (n % 2 == 1) ? voiced[n / 2] : 0.5 * (voiced[n / 2 - 1] + voiced[n / 2]);
}

double inharmonicity(const AudioBuffer& buf, double f0_hz) {
    if (f0_hz <= 0.0) throw std::invalid_argument("f0 must be positive");
    const auto spectra = spectral_frames(buf);
    std::vector<double> mean_mag(spectra.front().magnitudes.size(), 0.0);
    for (const auto& spectrum : spectra)
        for (std::size_t k = 0; k < mean_mag.size(); ++k) mean_mag[k] += spectrum.magnitudes[k];
    for (double& m : mean_mag) m /= static_cast<double>(spectra.size());

    const double bin_width = spectra.front().bin_width_hz;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < mean_mag.size(); ++k) {
        const double f = static_cast<double>(k) * bin_width;
        if (f < f0_hz / 2.0) continue;
        const double j = std::max(1.0, std::round(f / f0_hz));
        const double dist = std::abs(f - j * f0_hz) / (f0_hz / 2.0);
        num += mean_mag[k] * dist;
        den += mean_mag[k];
    }
    if (den == 0.0) throw AllSilent("spectrum carries no energy above f0/2");
    return num / den;
}

double tempo_autocor(const AudioBuffer& buf) {
    const auto oc = onset_autocorr(buf);
    if (oc.pulseless) throw NoPulse("onset curve carries no pulse");
    const auto peaks = band_peaks(oc.r, oc.lag_min, oc.lag_max);
    if (peaks.empty()) throw NoPulse("onset autocorrelation has no peak in the tempo band");
    const LagPeak* best = &peaks.front();
    for (const auto& peak : peaks)
        if (peak.value > best->value) best = &peak;
    return std::clamp(60.0 / (best->lag * oc.hop_s), kTempoMinBpm, kTempoMaxBpm);
}

double pulse_clarity(const AudioBuffer& buf) {
    const auto oc = onset_autocorr(buf);
    if (oc.pulseless) return 0.0;
    double best = 0.0;
    for (int l = oc.lag_min; l <= oc.lag_max; ++l)
        best = std::max(best, oc.r[static_cast<std::size_t>(l)]);
    return std::clamp(best, 0.0, 1.0);
}

FeatureObservation extract_all(const AudioBuffer& buf) {
    if (buf.samples.empty()) throw std::invalid_argument("buffer is empty");
    if (buf.sample_rate_hz <= 0) throw std::invalid_argument("sample rate must be positive");
    if (is_silent(buf)) throw AllSilent("buffer is silent");

    FeatureObservation obs;
    auto assign = [&obs](FeatureId id, double value) {
        obs.values.set(id, value);
        obs.set_valid(id, true);
    };

    assign(FeatureId::SamplingRate, static_cast<double>(buf.sample_rate_hz));
    assign(FeatureId::TemporalLength, temporal_length(buf));
    assign(FeatureId::RmsEnergy, rms_energy(buf));
    const auto rms_frames = framed_rms(buf, default_frame_spec(buf.sample_rate_hz));
    assign(FeatureId::LowEnergyRate, low_energy_rate(rms_frames));
    assign(FeatureId::ZcrPerSecond, zcr_per_second(buf));

    auto attempt = [&](FeatureId id, auto&& compute) {
        try {
            assign(id, compute());
        } catch (const std::exception&) {
            obs.values.set(id, 0.0);
            obs.set_valid(id, false);
        }
    };

    attempt(FeatureId::RolloffHz, [&] { return rolloff(buf); });
    attempt(FeatureId::SpectralIrregularity, [&] { return spectral_irregularity(buf); });
    attempt(FeatureId::PitchHz, [&] { return pitch_autocor(buf); });
    if (obs.is_valid(FeatureId::PitchHz))
        attempt(FeatureId::Inharmonicity,
                [&] { return inharmonicity(buf, obs.values.pitch_hz); });
    attempt(FeatureId::TempoBpm, [&] { return tempo_autocor(buf); });
    attempt(FeatureId::PulseClarity, [&] { return pulse_clarity(buf); });
    return obs;
}

} // namespace genregauge
