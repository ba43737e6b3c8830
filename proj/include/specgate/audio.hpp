#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace specgate {

// Planar multi-channel sample buffer. Interleaving happens only at file
// boundaries; all DSP loops run per channel.
struct AudioBuffer {
    int sample_rate = 44100;
    std::vector<std::vector<float>> samples;  // one vector per channel

    AudioBuffer() = default;
    AudioBuffer(int channels, size_t length, int rate)
        : sample_rate(rate), samples(static_cast<size_t>(channels), std::vector<float>(length, 0.0f)) {
        if (channels < 1) throw std::invalid_argument("AudioBuffer: channel count must be >= 1");
        if (rate <= 0) throw std::invalid_argument("AudioBuffer: sample rate must be > 0");
    }

    int channels() const { return static_cast<int>(samples.size()); }
    size_t length() const { return samples.empty() ? 0 : samples[0].size(); }
    double duration() const { return static_cast<double>(length()) / sample_rate; }

    std::vector<float>& channel(int c) { return samples[static_cast<size_t>(c)]; }
    const std::vector<float>& channel(int c) const { return samples[static_cast<size_t>(c)]; }

    // all channels equal length, finite samples, positive rate
    void validate() const {
        if (samples.empty()) throw std::invalid_argument("AudioBuffer: no channels");
        if (sample_rate <= 0) throw std::invalid_argument("AudioBuffer: sample rate must be > 0");
        for (const auto& ch : samples) {
            if (ch.size() != samples[0].size())
                throw std::invalid_argument("AudioBuffer: channel lengths differ");
            for (float s : ch)
                if (!std::isfinite(s)) throw std::invalid_argument("AudioBuffer: non-finite sample");
        }
    }

    // average of channels, used for mono side-chains and features
    std::vector<float> mixdown() const {
        std::vector<float> out(length(), 0.0f);
        const float scale = 1.0f / static_cast<float>(channels());
        for (const auto& ch : samples)
            for (size_t i = 0; i < out.size(); ++i) out[i] += ch[i] * scale;
        return out;
    }
};

constexpr double kDbFloor = -120.0;

// Amplitude convention: 20*log10. Power quantities use 10*log10 at the
// call sites that need it.
inline double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }

inline double linear_to_db(double lin, double floor_db = kDbFloor) {
    if (lin < 0.0) throw std::invalid_argument("linear_to_db: negative input");
    const double floor_lin = std::pow(10.0, floor_db / 20.0);
    if (lin <= floor_lin) return floor_db;
    return 20.0 * std::log10(lin);
}

inline double rms(const std::vector<float>& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;  // 64-bit accumulator
    for (float s : x) acc += static_cast<double>(s) * s;
    return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace specgate
