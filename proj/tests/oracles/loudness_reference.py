#!/usr/bin/env python3
"""Independent BS.1770-4 integrated-loudness reference.

Computes expected LUFS values for the deterministic signals used in
tests/test_loudness.cpp. Run manually; the printed values are frozen
into the C++ test. Uses scipy.signal.lfilter so the filtering path is
independent of the library implementation.
"""
import numpy as np
from scipy.signal import lfilter

FS_TABLE_CHECK = 48000

# ITU-R BS.1770-4 table coefficients at 48 kHz (stage 1 shelf, stage 2 high-pass)
ITU_SHELF_B = [1.53512485958697, -2.69169618940638, 1.19839281085285]
ITU_SHELF_A = [1.0, -1.69065929318241, 0.73248077421585]
ITU_HP_B = [1.0, -2.0, 1.0]
ITU_HP_A = [1.0, -1.99004745483398, 0.99007225036621]


def high_shelf(fs, g_db=3.999843853973347, f0=1681.974450955533, q=0.7071752369554196):
    k = np.tan(np.pi * f0 / fs)
    vh = 10.0 ** (g_db / 20.0)
    vb = vh ** 0.499666774155
    a0 = 1.0 + k / q + k * k
    b = np.array([(vh + vb * k / q + k * k) / a0,
                  2.0 * (k * k - vh) / a0,
                  (vh - vb * k / q + k * k) / a0])
    a = np.array([1.0, 2.0 * (k * k - 1.0) / a0, (1.0 - k / q + k * k) / a0])
    return b, a


def high_pass(fs, f0=38.13547087602444, q=0.5003270373238773):
    k = np.tan(np.pi * f0 / fs)
    denom = 1.0 + k / q + k * k
    b = np.array([1.0, -2.0, 1.0])
    a = np.array([1.0, 2.0 * (k * k - 1.0) / denom, (1.0 - k / q + k * k) / denom])
    return b, a


def k_weight(x, fs):
    b1, a1 = high_shelf(fs)
    b2, a2 = high_pass(fs)
    return lfilter(b2, a2, lfilter(b1, a1, x))


def integrated_loudness(channels, fs):
    block = int(round(0.400 * fs))
    hop = int(round(0.100 * fs))
    weighted = [k_weight(np.asarray(ch, dtype=np.float64), fs) for ch in channels]
    n = len(weighted[0])
    if n < block:
        return None
    n_blocks = (n - block) // hop + 1
    powers = np.zeros(n_blocks)
    for j in range(n_blocks):
        s = j * hop
        powers[j] = sum(np.mean(w[s:s + block] ** 2) for w in weighted)
    l_blocks = -0.691 + 10.0 * np.log10(np.maximum(powers, 1e-30))
    abs_gated = powers[l_blocks > -70.0]
    if abs_gated.size == 0:
        return None
    rel_thresh = -0.691 + 10.0 * np.log10(abs_gated.mean()) - 10.0
    gated = powers[(l_blocks > -70.0) & (l_blocks > rel_thresh)]
    if gated.size == 0:
        return None
    return -0.691 + 10.0 * np.log10(gated.mean())


def sine(freq, amp, dur, fs):
    n = np.arange(int(dur * fs))
    return amp * np.sin(2.0 * np.pi * freq * n / fs)


def main():
    # sanity: the parametric design must reproduce the ITU 48 kHz table
    b, a = high_shelf(FS_TABLE_CHECK)
    assert np.allclose(b, ITU_SHELF_B, atol=1e-6) and np.allclose(a, ITU_SHELF_A, atol=1e-6), (b, a)
    b, a = high_pass(FS_TABLE_CHECK)
    assert np.allclose(b, ITU_HP_B, atol=1e-4) and np.allclose(a, ITU_HP_A, atol=1e-4), (b, a)
    print("filter design matches ITU 48k table")

    fs = 44100
    s1 = sine(997.0, 1.0, 5.0, fs)
    print("997Hz amp=1.0 stereo 5s  :", integrated_loudness([s1, s1], fs))
    s2 = sine(997.0, 0.25, 3.0, fs)
    print("997Hz amp=0.25 mono 3s   :", integrated_loudness([s2], fs))
    head = sine(400.0, 0.5, 2.0, fs)
    tail = sine(400.0, 0.003, 2.0, fs)
    s3 = np.concatenate([head, tail])
    print("400Hz 0.5|0.003 gated 4s :", integrated_loudness([s3], fs))
    s4 = sine(60.0, 0.5, 3.0, fs)
    print("60Hz amp=0.5 mono 3s     :", integrated_loudness([s4], fs))


if __name__ == "__main__":
    main()
