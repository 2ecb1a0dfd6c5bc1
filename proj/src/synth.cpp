#include "genregauge/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace genregauge {

namespace {

constexpr double kClickDecaySamples = 8.0;
constexpr int kClickLenSamples = 64;
constexpr double kMixToneWeight = 0.6;
constexpr double kMixClickWeight = 0.3;

void validate(const SynthSpec& spec) {
    if (spec.sample_rate_hz <= 0) throw InvalidSpec("sample rate must be positive");
    if (!(spec.amplitude > 0.0 && spec.amplitude <= 1.0))
        throw InvalidSpec("amplitude must be in (0, 1]");
    if (std::llround(spec.duration_s * spec.sample_rate_hz) < 2)
        throw InvalidSpec("duration must cover at least 2 samples");
    const bool tonal = spec.kind == SignalKind::Sine || spec.kind == SignalKind::HarmonicStack ||
                       spec.kind == SignalKind::Mix;
    if (tonal && !(spec.frequency_hz > 0.0 && spec.frequency_hz < spec.sample_rate_hz / 2.0))
        throw InvalidSpec("frequency must be in (0, Nyquist)");
    if (tonal && spec.harmonics < 1) throw InvalidSpec("harmonics must be >= 1");
    const bool pulsed = spec.kind == SignalKind::ClickTrain || spec.kind == SignalKind::Mix;
    if (pulsed && spec.bpm <= 0.0) throw InvalidSpec("bpm must be positive");
    if (spec.kind == SignalKind::Mix) {
        if (spec.noise_level < 0.0) throw InvalidSpec("noise level must be non-negative");
        if (spec.am_depth < 0.0 || spec.am_depth >= 1.0)
            throw InvalidSpec("am depth must be in [0, 1)");
        if (spec.am_depth > 0.0 && spec.am_rate_hz <= 0.0)
            throw InvalidSpec("am rate must be positive");
    }
}

// Harmonic stack with h^-tilt amplitudes, scaled so the sample peak is
// bounded by 1. Harmonics at or above Nyquist are dropped.
std::vector<double> tone(std::size_t n, const SynthSpec& spec) {
    std::vector<double> x(n, 0.0);
    const double sr = spec.sample_rate_hz;
    double amp_sum = 0.0;
    for (int h = 1; h <= spec.harmonics; ++h) {
        const double f = h * spec.frequency_hz;
        if (f >= sr / 2.0) break;
        const double a = std::pow(static_cast<double>(h), -spec.tilt);
        const double w = 2.0 * std::numbers::pi * f / sr;
        for (std::size_t i = 0; i < n; ++i) x[i] += a * std::sin(w * static_cast<double>(i));
        amp_sum += a;
    }
    if (amp_sum > 0.0)
        for (double& v : x) v /= amp_sum;
    return x;
}

// Decaying impulses on the beat grid, peak 1.
std::vector<double> clicks(std::size_t n, const SynthSpec& spec) {
    std::vector<double> x(n, 0.0);
    const double period = 60.0 / spec.bpm * spec.sample_rate_hz;
    for (std::size_t beat = 0;; ++beat) {
        const auto start = static_cast<std::size_t>(std::llround(period * static_cast<double>(beat)));
        if (start >= n) break;
        for (int j = 0; j < kClickLenSamples && start + static_cast<std::size_t>(j) < n; ++j)
            x[start + static_cast<std::size_t>(j)] += std::exp(-j / kClickDecaySamples);
    }
    for (double& v : x) v = std::min(v, 1.0);
    return x;
}

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::vector<double> x(n);
    SplitMix64 rng(seed);
    for (double& v : x) v = rng.next_bipolar();
    return x;
}

} // namespace

AudioBuffer synthesize(const SynthSpec& spec) {
    validate(spec);
    const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz));
    const double sr = spec.sample_rate_hz;

    AudioBuffer buf;
    buf.sample_rate_hz = spec.sample_rate_hz;

    switch (spec.kind) {
    case SignalKind::Sine: {
        buf.samples.resize(n);
        const double w = 2.0 * std::numbers::pi * spec.frequency_hz / sr;
        for (std::size_t i = 0; i < n; ++i)
            buf.samples[i] = spec.amplitude * std::sin(w * static_cast<double>(i));
        break;
    }
    case SignalKind::HarmonicStack: {
        buf.samples = tone(n, spec);
        for (double& v : buf.samples) v *= spec.amplitude;
        break;
    }
    case SignalKind::ClickTrain: {
        buf.samples = clicks(n, spec);
        for (double& v : buf.samples) v *= spec.amplitude;
        break;
    }
    case SignalKind::WhiteNoise: {
        buf.samples = noise(n, spec.seed);
        for (double& v : buf.samples) v *= spec.amplitude;
        break;
    }
    case SignalKind::Mix: {
        const auto t = tone(n, spec);
        const auto c = clicks(n, spec);
        const auto u = noise(n, spec.seed);
        buf.samples.resize(n);
        const double scale =
            spec.amplitude / (kMixToneWeight + kMixClickWeight + spec.noise_level);
        const double am_w = 2.0 * std::numbers::pi * spec.am_rate_hz / sr;
        for (std::size_t i = 0; i < n; ++i) {
            double am = 1.0;
            if (spec.am_depth > 0.0)
                am = 1.0 - spec.am_depth * 0.5 * (1.0 + std::sin(am_w * static_cast<double>(i)));
            const double pulsed = am * (kMixToneWeight * t[i] + kMixClickWeight * c[i]);
            buf.samples[i] = scale * (pulsed + spec.noise_level * u[i]);
        }
        break;
    }
    }
    return buf;
}

namespace {

struct Band {
    double lo = 0.0;
    double hi = 0.0;

    double at(double t) const { return lo + t * (hi - lo); }
};

// Every parameter rides the within-class latent: tempo, register, level,
// duration, noise and modulation depth rise with it while tilt falls so
// brightness rises too. Noise riding the latent gives pulse clarity a
// monotone within-class sweep, which the per-class gain-ratio matrix bins
// against, so features that track the latent score high and noise-born
// wobble scores low.
struct ClassRecipe {
    const char* name;
    Band bpm;
    Band freq;
    int harmonics;
    Band tilt;      // hi at t=0 down to lo at t=1
    Band noise;
    Band am_depth;
    Band duration;
    Band amplitude;
};

constexpr ClassRecipe kRecipes[kMaxCorpusClasses] = {
    {"alpha",   {52.0, 66.0},   {165.0, 185.0},   3,  {1.60, 1.90}, {0.004, 0.012},
     {0.06, 0.10}, {5.00, 5.50}, {0.50, 0.56}},
    {"bravo",   {80.0, 94.0},   {220.0, 247.0},   5,  {1.20, 1.50}, {0.020, 0.035},
     {0.14, 0.18}, {5.70, 6.20}, {0.60, 0.66}},
    {"charlie", {108.0, 122.0}, {294.0, 330.0},   7,  {0.85, 1.10}, {0.050, 0.075},
     {0.22, 0.26}, {6.40, 6.90}, {0.70, 0.76}},
    {"delta",   {136.0, 150.0}, {392.0, 440.0},   9,  {0.60, 0.80}, {0.095, 0.130},
     {0.30, 0.34}, {7.10, 7.60}, {0.80, 0.86}},
    {"echo",    {164.0, 178.0}, {523.0, 587.0},   11, {0.40, 0.55}, {0.150, 0.190},
     {0.38, 0.42}, {7.80, 8.30}, {0.88, 0.94}},
    {"foxtrot", {58.0, 72.0},   {659.0, 740.0},   12, {0.30, 0.38}, {0.210, 0.260},
     {0.46, 0.50}, {5.00, 5.50}, {0.40, 0.46}},
    {"golf",    {142.0, 156.0}, {831.0, 932.0},   13, {0.22, 0.28}, {0.280, 0.340},
     {0.54, 0.58}, {5.70, 6.20}, {0.30, 0.36}},
    {"hotel",   {96.0, 110.0},  {1047.0, 1175.0}, 14, {0.15, 0.20}, {0.360, 0.430},
     {0.62, 0.66}, {6.40, 6.90}, {0.22, 0.28}},
};

std::uint64_t file_stream_seed(std::uint64_t seed, int class_idx, int file_idx) {
    SplitMix64 a(seed + static_cast<std::uint64_t>(class_idx) * 0x51ED270B1ULL);
    SplitMix64 b(a.next() + static_cast<std::uint64_t>(file_idx));
    return b.next();
}

} // namespace

std::vector<CorpusFile> generate_corpus(int n_classes, int files_per_class, std::uint64_t seed,
                                        const std::filesystem::path& out_dir) {
    if (n_classes < 1 || files_per_class < 1)
        throw InvalidSpec("need at least one class and one file per class");
    if (n_classes > kMaxCorpusClasses)
        throw TooManyClasses("at most " + std::to_string(kMaxCorpusClasses) +
                             " class recipes exist");

    std::filesystem::create_directories(out_dir);
    std::vector<CorpusFile> files;

    for (int ci = 0; ci < n_classes; ++ci) {
        const ClassRecipe& recipe = kRecipes[ci];
        for (int fi = 0; fi < files_per_class; ++fi) {
            SplitMix64 rng(file_stream_seed(seed, ci, fi));
            // Stratified latent: file fi jitters within the middle of its
            // stratum, so fuller corpora sweep wider slices of each band
            // and sparser ones stay nested inside them.
            const double t = (fi + 0.5 + 0.1 * rng.next_bipolar()) / files_per_class;

            SynthSpec spec;
            spec.kind = SignalKind::Mix;
            spec.duration_s = recipe.duration.at(t);
            spec.amplitude = recipe.amplitude.at(t);
            spec.frequency_hz = recipe.freq.at(t);
            spec.harmonics = recipe.harmonics;
            spec.tilt = recipe.tilt.hi - t * (recipe.tilt.hi - recipe.tilt.lo);
            spec.bpm = recipe.bpm.at(t);
            spec.noise_level = recipe.noise.at(t);
            spec.am_depth = recipe.am_depth.at(t);
            spec.seed = rng.next();

            char id[32];
            std::snprintf(id, sizeof id, "%s_%02d", recipe.name, fi);
            const auto buf = synthesize(spec);
            write_wav_pcm16(out_dir / (std::string(id) + ".wav"), buf.samples,
                            buf.sample_rate_hz);
            files.push_back({id, recipe.name});
        }
    }

    std::sort(files.begin(), files.end(),
              [](const CorpusFile& a, const CorpusFile& b) { return a.file_id < b.file_id; });
    std::ofstream labels(out_dir / "labels.csv", std::ios::binary);
    if (!labels) throw std::runtime_error("cannot write labels.csv");
    labels << "file_id,class_label\n";
    for (const auto& f : files) labels << f.file_id << "," << f.class_label << "\n";
    return files;
}

} // namespace genregauge
