#include "viasnet/io/wav.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace viasnet::io {
namespace {

template <typename T>
void put(std::string& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.append(tmp, sizeof(T));
}

template <typename T>
T take(const char* p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
}

} // namespace

void write_wav(const std::string& path, const WavData& w) {
    const uint32_t n = static_cast<uint32_t>(w.samples.size());
    const uint32_t data_bytes = n * 4;
    std::string buf;
    buf.reserve(58 + data_bytes);
    buf.append("RIFF", 4);
    put<uint32_t>(buf, 4 + 26 + 12 + 8 + data_bytes);
    buf.append("WAVE", 4);
    buf.append("fmt ", 4);
    put<uint32_t>(buf, 18);
    put<uint16_t>(buf, 3); // IEEE float
    put<uint16_t>(buf, 1); // mono
    put<uint32_t>(buf, static_cast<uint32_t>(w.sample_rate));
    put<uint32_t>(buf, static_cast<uint32_t>(w.sample_rate) * 4);
    put<uint16_t>(buf, 4);
    put<uint16_t>(buf, 32);
    put<uint16_t>(buf, 0); // cbSize
    buf.append("fact", 4);
    put<uint32_t>(buf, 4);
    put<uint32_t>(buf, n);
    buf.append("data", 4);
    put<uint32_t>(buf, data_bytes);
    for (double s : w.samples) put<float>(buf, static_cast<float>(s));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("wav: cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("wav: short write to " + path);
}

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("wav: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
        std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
        throw std::runtime_error("wav: not a RIFF/WAVE file: " + path);

    WavData w;
    uint16_t format = 0, channels = 0, bits = 0;
    size_t pos = 12;
    while (pos + 8 <= buf.size()) {
        const char* id = buf.data() + pos;
        const uint32_t sz = take<uint32_t>(buf.data() + pos + 4);
        const size_t body = pos + 8;
        if (body + sz > buf.size()) throw std::runtime_error("wav: truncated chunk in " + path);
        if (std::memcmp(id, "fmt ", 4) == 0) {
            format = take<uint16_t>(buf.data() + body);
            channels = take<uint16_t>(buf.data() + body + 2);
            w.sample_rate = take<uint32_t>(buf.data() + body + 4);
            bits = take<uint16_t>(buf.data() + body + 14);
        } else if (std::memcmp(id, "data", 4) == 0) {
            if (channels != 1) throw std::runtime_error("wav: expected mono in " + path);
            if (format == 3 && bits == 32) {
                w.samples.resize(sz / 4);
                for (size_t i = 0; i < w.samples.size(); ++i)
                    w.samples[i] = take<float>(buf.data() + body + i * 4);
            } else if (format == 1 && bits == 16) {
                w.samples.resize(sz / 2);
                for (size_t i = 0; i < w.samples.size(); ++i)
                    w.samples[i] = take<int16_t>(buf.data() + body + i * 2) / 32768.0;
            } else {
                throw std::runtime_error("wav: unsupported format in " + path);
            }
        }
        pos = body + sz + (sz & 1);
    }
    if (w.sample_rate == 0) throw std::runtime_error("wav: missing fmt chunk in " + path);
    return w;
}

} // namespace viasnet::io
