#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace specgate {

// Iterative radix-2 FFT, power-of-two sizes only. Twiddles are computed
// in double and stored per stage; a plan is immutable and shareable
// between threads.
class Fft {
public:
    explicit Fft(size_t n) : n_(n) {
        if (n < 2 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Fft: size must be a power of two >= 2");
        log2n_ = 0;
        while ((size_t{1} << log2n_) < n) ++log2n_;
        bitrev_.resize(n);
        for (size_t i = 0; i < n; ++i) {
            size_t r = 0;
            for (size_t b = 0; b < log2n_; ++b) r |= ((i >> b) & 1u) << (log2n_ - 1 - b);
            bitrev_[i] = r;
        }
        // twiddles for the largest stage; smaller stages stride into it
        tw_.resize(n / 2);
        for (size_t k = 0; k < n / 2; ++k) {
            const double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
            tw_[k] = {static_cast<float>(std::cos(ang)), static_cast<float>(std::sin(ang))};
        }
    }

    size_t size() const { return n_; }

    void forward(std::complex<float>* x) const { run(x, false); }

    void inverse(std::complex<float>* x) const {
        run(x, true);
        const float s = 1.0f / static_cast<float>(n_);
        for (size_t i = 0; i < n_; ++i) x[i] *= s;
    }

private:
    void run(std::complex<float>* x, bool inv) const {
        for (size_t i = 0; i < n_; ++i) {
            const size_t j = bitrev_[i];
            if (j > i) std::swap(x[i], x[j]);
        }
        for (size_t len = 2; len <= n_; len <<= 1) {
            const size_t half = len >> 1;
            const size_t stride = n_ / len;
            for (size_t base = 0; base < n_; base += len) {
                for (size_t k = 0; k < half; ++k) {
                    std::complex<float> w = tw_[k * stride];
                    if (inv) w = std::conj(w);
                    const std::complex<float> u = x[base + k];
                    const std::complex<float> t = x[base + k + half] * w;
                    x[base + k] = u + t;
                    x[base + k + half] = u - t;
                }
            }
        }
    }

    size_t n_;
    size_t log2n_ = 0;
    std::vector<size_t> bitrev_;
    std::vector<std::complex<float>> tw_;
};

}  // namespace specgate
