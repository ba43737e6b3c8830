#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "specgate/audio.hpp"

namespace specgate {

enum class WavEncoding { pcm16, pcm24, float32 };

namespace detail {

inline uint32_t read_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
inline uint16_t read_u16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}
inline void put_u32(std::vector<uint8_t>& b, uint32_t v) {
    b.push_back(v & 0xff); b.push_back((v >> 8) & 0xff);
    b.push_back((v >> 16) & 0xff); b.push_back((v >> 24) & 0xff);
}
inline void put_u16(std::vector<uint8_t>& b, uint16_t v) {
    b.push_back(v & 0xff); b.push_back((v >> 8) & 0xff);
}

}  // namespace detail

// RIFF/WAVE reader. PCM16, PCM24 and IEEE float32, 1-2 channels. The
// sample rate is preserved, never resampled.
inline AudioBuffer read_wav(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_wav: cannot open " + path);
    std::vector<uint8_t> raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
        std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
        throw std::runtime_error("read_wav: not a RIFF/WAVE file: " + path);

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t rate = 0;
    bool have_fmt = false;
    const uint8_t* data = nullptr;
    size_t data_size = 0;

    size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const char* id = reinterpret_cast<const char*>(raw.data() + pos);
        uint32_t sz = detail::read_u32(raw.data() + pos + 4);
        if (pos + 8 + sz > raw.size()) {
            if (std::memcmp(id, "data", 4) == 0)
                throw std::runtime_error("read_wav: truncated data chunk in " + path);
            break;
        }
        const uint8_t* body = raw.data() + pos + 8;
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (sz < 16) throw std::runtime_error("read_wav: short fmt chunk in " + path);
            format = detail::read_u16(body);
            channels = detail::read_u16(body + 2);
            rate = detail::read_u32(body + 4);
            bits = detail::read_u16(body + 14);
            if (format == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE: subformat tag leads the GUID
                if (sz < 40) throw std::runtime_error("read_wav: short extensible fmt chunk");
                format = detail::read_u16(body + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = body;
            data_size = sz;
        }
        pos += 8 + sz + (sz & 1);  // chunks are word aligned
    }
    if (!have_fmt) throw std::runtime_error("read_wav: missing fmt chunk in " + path);
    if (data == nullptr) throw std::runtime_error("read_wav: missing data chunk in " + path);
    if (channels < 1 || channels > 2)
        throw std::runtime_error("read_wav: unsupported channel count " + std::to_string(channels) +
                                 " (only 1-2 supported)");

    const bool is_float = format == 3;
    if (!(format == 1 || is_float))
        throw std::runtime_error("read_wav: unsupported encoding tag " + std::to_string(format));
    const int bytes_per_sample = bits / 8;
    if (is_float ? bits != 32 : (bits != 16 && bits != 24))
        throw std::runtime_error("read_wav: unsupported bit depth " + std::to_string(bits));

    const size_t frame_bytes = static_cast<size_t>(bytes_per_sample) * channels;
    const size_t n = frame_bytes == 0 ? 0 : data_size / frame_bytes;
    AudioBuffer buf(channels, n, static_cast<int>(rate));
    for (size_t i = 0; i < n; ++i) {
        for (int c = 0; c < channels; ++c) {
            const uint8_t* p = data + i * frame_bytes + static_cast<size_t>(c) * bytes_per_sample;
            float s = 0.0f;
            if (is_float) {
                uint32_t u = detail::read_u32(p);
                std::memcpy(&s, &u, 4);
            } else if (bits == 16) {
                int16_t v = static_cast<int16_t>(detail::read_u16(p));
                s = static_cast<float>(v) / 32768.0f;
            } else {  // 24-bit
                int32_t v = static_cast<int32_t>(p[0]) | (static_cast<int32_t>(p[1]) << 8) |
                            (static_cast<int32_t>(p[2]) << 16);
                if (v & 0x800000) v |= ~0xFFFFFF;
                s = static_cast<float>(v) / 8388608.0f;
            }
            buf.channel(c)[i] = s;
        }
    }
    return buf;
}

inline void write_wav(const std::string& path, const AudioBuffer& buf,
                      WavEncoding enc = WavEncoding::float32) {
    if (buf.channels() < 1 || buf.channels() > 2)
        throw std::runtime_error("write_wav: only 1-2 channels supported");
    const int channels = buf.channels();
    const size_t n = buf.length();
    const int bytes_per_sample = enc == WavEncoding::pcm16 ? 2 : enc == WavEncoding::pcm24 ? 3 : 4;
    const uint16_t tag = enc == WavEncoding::float32 ? 3 : 1;
    const uint32_t byte_rate = static_cast<uint32_t>(buf.sample_rate) * channels * bytes_per_sample;
    const uint32_t data_size = static_cast<uint32_t>(n * channels * bytes_per_sample);

    std::vector<uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    detail::put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    detail::put_u32(out, 16);
    detail::put_u16(out, tag);
    detail::put_u16(out, static_cast<uint16_t>(channels));
    detail::put_u32(out, static_cast<uint32_t>(buf.sample_rate));
    detail::put_u32(out, byte_rate);
    detail::put_u16(out, static_cast<uint16_t>(channels * bytes_per_sample));
    detail::put_u16(out, static_cast<uint16_t>(bytes_per_sample * 8));
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    detail::put_u32(out, data_size);

    for (size_t i = 0; i < n; ++i) {
        for (int c = 0; c < channels; ++c) {
            const float s = buf.channel(c)[i];
            if (enc == WavEncoding::float32) {
                uint32_t u;
                std::memcpy(&u, &s, 4);
                detail::put_u32(out, u);
            } else if (enc == WavEncoding::pcm16) {
                long v = std::lround(static_cast<double>(s) * 32768.0);
                v = std::min(32767L, std::max(-32768L, v));
                detail::put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
            } else {
                long v = std::lround(static_cast<double>(s) * 8388608.0);
                v = std::min(8388607L, std::max(-8388608L, v));
                out.push_back(static_cast<uint8_t>(v & 0xff));
                out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
                out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
            }
        }
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_wav: cannot open " + path + " for writing");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("write_wav: write failed for " + path);
}

}  // namespace specgate
