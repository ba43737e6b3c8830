#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "specgate/fft.hpp"
#include "specgate/mat.hpp"

namespace specgate {

// Periodic Hann; [0, N) without the repeated endpoint so overlap-add
// sums stay constant.
inline std::vector<float> hann_window(int n) {
    std::vector<float> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        w[static_cast<size_t>(i)] =
            static_cast<float>(0.5 - 0.5 * std::cos(2.0 * M_PI * i / static_cast<double>(n)));
    return w;
}

struct StftConfig {
    int fft_size = 1024;
    int hop = 256;

    int bins() const { return fft_size / 2 + 1; }
    double frame_rate(double sample_rate) const { return sample_rate / hop; }
    int pad() const { return fft_size - hop; }

    // hop must divide the FFT size and the Hann/hop pair must overlap-add
    // to a constant
    void validate() const {
        if (fft_size < 4 || (fft_size & (fft_size - 1)) != 0)
            throw std::invalid_argument("StftConfig: fft_size must be a power of two >= 4");
        if (hop <= 0 || fft_size % hop != 0)
            throw std::invalid_argument("StftConfig: hop must divide fft_size");
        if (hop == fft_size)
            throw std::invalid_argument("StftConfig: hop must be < fft_size for overlap");
        const auto w = hann_window(fft_size);
        double lo = 1e300, hi = -1e300;
        for (int n = 0; n < hop; ++n) {
            double s = 0.0;
            for (int t = 0; n + t * hop < fft_size; ++t) s += w[static_cast<size_t>(n + t * hop)];
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi - lo > 1e-6 * hi)
            throw std::invalid_argument("StftConfig: window/hop does not satisfy COLA");
    }

    // constant of sum_t w^2(n - tH); throws when not constant (needed for
    // resynthesis, not for analysis-only configs)
    double wola_constant() const {
        const auto w = hann_window(fft_size);
        double lo = 1e300, hi = -1e300;
        for (int n = 0; n < hop; ++n) {
            double s = 0.0;
            for (int t = 0; n + t * hop < fft_size; ++t) {
                const double x = w[static_cast<size_t>(n + t * hop)];
                s += x * x;
            }
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        if (hi - lo > 1e-6 * hi)
            throw std::invalid_argument("StftConfig: window/hop not WOLA-constant, cannot resynthesize");
        return 0.5 * (lo + hi);
    }

    bool operator==(const StftConfig&) const = default;
};

// Complex time-frequency matrix, frames x bins. Keeps the source length
// so the inverse transform can trim its padding.
struct Spectrogram {
    int frames = 0;
    int bins = 0;
    size_t signal_length = 0;
    StftConfig config;
    std::vector<std::complex<float>> values;  // row-major frames x bins

    std::complex<float>& at(int t, int f) { return values[static_cast<size_t>(t) * bins + f]; }
    const std::complex<float>& at(int t, int f) const {
        return values[static_cast<size_t>(t) * bins + f];
    }

    MatF magnitude() const {
        MatF m(frames, bins);
        for (size_t i = 0; i < values.size(); ++i) m.v[i] = std::abs(values[i]);
        return m;
    }
};

namespace detail {

inline int stft_frame_count(size_t length, const StftConfig& c) {
    // N-H zeros on each side so edge samples get full window coverage
    const long long padded = static_cast<long long>(length) + 2LL * c.pad();
    const long long span = padded - c.fft_size;
    return 1 + static_cast<int>((span + c.hop - 1) / c.hop);
}

}  // namespace detail

inline Spectrogram stft(std::span<const float> x, const StftConfig& config) {
    config.validate();
    if (x.size() < static_cast<size_t>(config.fft_size))
        throw std::invalid_argument("stft: input shorter than fft_size");
    const int n = config.fft_size;
    const int hop = config.hop;
    const int pad = config.pad();
    const int frames = detail::stft_frame_count(x.size(), config);

    Spectrogram spec;
    spec.frames = frames;
    spec.bins = config.bins();
    spec.signal_length = x.size();
    spec.config = config;
    spec.values.resize(static_cast<size_t>(frames) * spec.bins);

    const Fft fft(static_cast<size_t>(n));
    const auto window = hann_window(n);
    std::vector<std::complex<float>> buf(static_cast<size_t>(n));

    for (int t = 0; t < frames; ++t) {
        const long long start = static_cast<long long>(t) * hop - pad;  // position in x
        for (int i = 0; i < n; ++i) {
            const long long src = start + i;
            const float s =
                (src >= 0 && src < static_cast<long long>(x.size())) ? x[static_cast<size_t>(src)] : 0.0f;
            buf[static_cast<size_t>(i)] = {s * window[static_cast<size_t>(i)], 0.0f};
        }
        fft.forward(buf.data());
        std::copy(buf.begin(), buf.begin() + spec.bins, spec.values.begin() + static_cast<size_t>(t) * spec.bins);
    }
    return spec;
}

// Weighted overlap-add inverse; Hann on both sides, normalized by the
// constant window-square sum, padding removed.
inline std::vector<float> istft(const Spectrogram& spec) {
    const StftConfig& c = spec.config;
    c.validate();
    const double norm = c.wola_constant();
    const int n = c.fft_size;
    const int hop = c.hop;
    const int pad = c.pad();

    const Fft fft(static_cast<size_t>(n));
    const auto window = hann_window(n);
    std::vector<std::complex<float>> buf(static_cast<size_t>(n));
    std::vector<double> acc(static_cast<size_t>(spec.frames - 1) * hop + n, 0.0);

    for (int t = 0; t < spec.frames; ++t) {
        buf[0] = spec.at(t, 0);
        for (int f = 1; f < spec.bins; ++f) {
            buf[static_cast<size_t>(f)] = spec.at(t, f);
            if (f != n / 2) buf[static_cast<size_t>(n - f)] = std::conj(spec.at(t, f));
        }
        fft.inverse(buf.data());
        const size_t base = static_cast<size_t>(t) * hop;
        for (int i = 0; i < n; ++i)
            acc[base + i] += static_cast<double>(buf[static_cast<size_t>(i)].real()) *
                             window[static_cast<size_t>(i)];
    }

    std::vector<float> out(spec.signal_length);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<float>(acc[i + static_cast<size_t>(pad)] / norm);
    return out;
}

inline double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
inline double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

// Triangular mel filters (HTK scale), bins x n_mels, peak 1.
inline MatF make_mel_filterbank(int n_mels, int fft_size, int sample_rate) {
    if (n_mels < 1) throw std::invalid_argument("make_mel_filterbank: n_mels must be >= 1");
    const int bins = fft_size / 2 + 1;
    if (n_mels > bins) throw std::invalid_argument("make_mel_filterbank: n_mels exceeds bin count");

    const double mel_max = hz_to_mel(sample_rate / 2.0);
    std::vector<double> centers_hz(static_cast<size_t>(n_mels) + 2);
    for (int i = 0; i < n_mels + 2; ++i)
        centers_hz[static_cast<size_t>(i)] = mel_to_hz(mel_max * i / (n_mels + 1.0));

    MatF fb(bins, n_mels);
    for (int f = 0; f < bins; ++f) {
        const double hz = static_cast<double>(f) * sample_rate / fft_size;
        for (int m = 0; m < n_mels; ++m) {
            const double lo = centers_hz[static_cast<size_t>(m)];
            const double mid = centers_hz[static_cast<size_t>(m) + 1];
            const double hi = centers_hz[static_cast<size_t>(m) + 2];
            double w = 0.0;
            if (hz >= lo && hz <= mid && mid > lo) w = (hz - lo) / (mid - lo);
            else if (hz > mid && hz <= hi && hi > mid) w = (hi - hz) / (hi - mid);
            fb(f, m) = static_cast<float>(std::max(0.0, w));
        }
    }
    return fb;
}

}  // namespace specgate
