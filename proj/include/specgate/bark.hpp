#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "specgate/mat.hpp"
#include "specgate/stft.hpp"

namespace specgate {

// Traunmueller bark approximation; monotone and invertible on [0, fs/2].
inline double hz_to_bark(double f) { return 26.81 * f / (1960.0 + f) - 0.53; }
inline double bark_to_hz(double z) { return 1960.0 * (z + 0.53) / (26.28 - z); }

// Triangular bark-spaced analysis filterbank, bins x bands. Every row is
// renormalized to sum 1, so uniform band gains project back to a unity
// mask and per-bin masks are convex combinations of band gains.
struct BarkFilterbank {
    int bands = 0;
    int bins = 0;
    int fft_size = 0;
    int sample_rate = 0;
    MatF analysis;                     // H_A, bins x bands
    std::vector<double> band_edges_hz; // B+2 edge/center grid points
    std::vector<int> first_band;       // per-bin nonzero column range
    std::vector<int> last_band;        // inclusive

    double band_center_hz(int b) const { return band_edges_hz[static_cast<size_t>(b) + 1]; }
};

inline BarkFilterbank design_bark_filterbank(int bands, int sample_rate, int fft_size) {
    if (bands < 2) throw std::invalid_argument("design_bark_filterbank: need at least 2 bands");
    const int bins = fft_size / 2 + 1;
    if (bands > bins) throw std::invalid_argument("design_bark_filterbank: more bands than bins");

    BarkFilterbank fb;
    fb.bands = bands;
    fb.bins = bins;
    fb.fft_size = fft_size;
    fb.sample_rate = sample_rate;
    fb.analysis = MatF(bins, bands);
    fb.band_edges_hz.resize(static_cast<size_t>(bands) + 2);

    const double z_lo = hz_to_bark(0.0);
    const double z_hi = hz_to_bark(sample_rate / 2.0);
    std::vector<double> grid(static_cast<size_t>(bands) + 2);
    for (int i = 0; i < bands + 2; ++i) {
        grid[static_cast<size_t>(i)] = z_lo + (z_hi - z_lo) * i / (bands + 1.0);
        fb.band_edges_hz[static_cast<size_t>(i)] = bark_to_hz(grid[static_cast<size_t>(i)]);
    }

    for (int f = 0; f < bins; ++f) {
        const double z = hz_to_bark(static_cast<double>(f) * sample_rate / fft_size);
        double row_sum = 0.0;
        for (int b = 0; b < bands; ++b) {
            const double lo = grid[static_cast<size_t>(b)];
            const double mid = grid[static_cast<size_t>(b) + 1];
            const double hi = grid[static_cast<size_t>(b) + 2];
            double w = 0.0;
            if (z >= lo && z <= mid) w = (z - lo) / (mid - lo);
            else if (z > mid && z <= hi) w = (hi - z) / (hi - mid);
            fb.analysis(f, b) = static_cast<float>(std::max(0.0, w));
            row_sum += std::max(0.0, w);
        }
        if (row_sum < 1e-9) {
            // DC sits exactly on the lowest grid edge; assign it to the
            // nearest band so the partition of unity covers every bin
            const int b = z <= grid[1] ? 0 : bands - 1;
            fb.analysis(f, b) = 1.0f;
            row_sum = 1.0;
        }
        for (int b = 0; b < bands; ++b)
            fb.analysis(f, b) = static_cast<float>(fb.analysis(f, b) / row_sum);
    }

    fb.first_band.resize(static_cast<size_t>(bins));
    fb.last_band.resize(static_cast<size_t>(bins));
    for (int f = 0; f < bins; ++f) {
        int lo = bands - 1, hi = 0;
        for (int b = 0; b < bands; ++b) {
            if (fb.analysis(f, b) > 0.0f) {
                lo = std::min(lo, b);
                hi = std::max(hi, b);
            }
        }
        fb.first_band[static_cast<size_t>(f)] = lo;
        fb.last_band[static_cast<size_t>(f)] = hi;
    }
    return fb;
}

constexpr double kBandEnergyEpsilon = 1e-10;  // -100 dB floor

// Linear band powers, frames x bands: P[t,b] = sum_f H_A[f,b] |X[t,f]|^2
inline MatD band_powers(const MatF& mag, const BarkFilterbank& fb) {
    if (mag.cols != fb.bins) throw std::invalid_argument("band_powers: bin count mismatch");
    MatD p(mag.rows, fb.bands, 0.0);
    for (int t = 0; t < mag.rows; ++t) {
        const float* m = mag.row(t);
        double* out = p.row(t);
        for (int f = 0; f < fb.bins; ++f) {
            const double e = static_cast<double>(m[f]) * m[f];
            for (int b = fb.first_band[static_cast<size_t>(f)]; b <= fb.last_band[static_cast<size_t>(f)]; ++b)
                out[b] += fb.analysis(f, b) * e;
        }
    }
    return p;
}

inline MatF powers_to_db(const MatD& p) {
    MatF e(p.rows, p.cols);
    for (size_t i = 0; i < p.v.size(); ++i)
        e.v[i] = static_cast<float>(10.0 * std::log10(p.v[i] + kBandEnergyEpsilon));
    return e;
}

// Per-band energies in dB, frames x bands.
inline MatF band_energies(const MatF& mag, const BarkFilterbank& fb) {
    return powers_to_db(band_powers(mag, fb));
}

// Project linear band gains back onto frequency bins: mask[t,f] =
// sum_b H_A[f,b] g[t,b]. Row normalization makes this a convex
// combination, so gains in [0,1] give a mask in [0,1].
inline MatF project_gains(const MatF& gains, const BarkFilterbank& fb) {
    if (gains.cols != fb.bands) throw std::invalid_argument("project_gains: band count mismatch");
    for (float g : gains.v)
        if (g < 0.0f) throw std::invalid_argument("project_gains: negative gain");
    MatF mask(gains.rows, fb.bins);
    for (int t = 0; t < gains.rows; ++t) {
        const float* g = gains.row(t);
        float* out = mask.row(t);
        for (int f = 0; f < fb.bins; ++f) {
            float acc = 0.0f;
            for (int b = fb.first_band[static_cast<size_t>(f)]; b <= fb.last_band[static_cast<size_t>(f)]; ++b)
                acc += fb.analysis(f, b) * g[b];
            out[f] = acc;
        }
    }
    return mask;
}

// band index, low/center/high Hz -- one row per band
inline void dump_filterbank_csv(const BarkFilterbank& fb, std::ostream& os) {
    os << "band,low_hz,center_hz,high_hz\n";
    for (int b = 0; b < fb.bands; ++b)
        os << b << ',' << fb.band_edges_hz[static_cast<size_t>(b)] << ','
           << fb.band_edges_hz[static_cast<size_t>(b) + 1] << ','
           << fb.band_edges_hz[static_cast<size_t>(b) + 2] << '\n';
}

}  // namespace specgate
