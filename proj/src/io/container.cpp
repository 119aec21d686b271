#include "viasnet/io/container.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace viasnet::io {
namespace {

constexpr char kMagic[5] = {'V', 'S', 'A', 'L', '1'};

template <typename T>
void put(std::string& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.append(tmp, sizeof(T)); // little-endian host assumed (x86/aarch64)
}

template <typename T>
T take(const char*& p, const char* end) {
    if (p + sizeof(T) > end) throw std::runtime_error("container: truncated header");
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

} // namespace

uint16_t f32_to_f16(float v) {
    uint32_t x;
    std::memcpy(&x, &v, 4);
    const uint32_t sign = (x >> 16) & 0x8000u;
    int32_t exp = static_cast<int32_t>((x >> 23) & 0xff) - 127 + 15;
    uint32_t mant = x & 0x7fffffu;
    if (exp >= 31) return static_cast<uint16_t>(sign | 0x7c00u); // overflow -> inf
    if (exp <= 0) {
        if (exp < -10) return static_cast<uint16_t>(sign);
        mant |= 0x800000u;
        const int shift = 14 - exp;
        uint32_t half = (mant >> shift);
        if ((mant >> (shift - 1)) & 1u) half += 1; // round-to-nearest
        return static_cast<uint16_t>(sign | half);
    }
    uint32_t half = (static_cast<uint32_t>(exp) << 10) | (mant >> 13);
    if (mant & 0x1000u) half += 1;
    return static_cast<uint16_t>(sign | half);
}

float f16_to_f32(uint16_t h) {
    const uint32_t sign = (h & 0x8000u) << 16;
    uint32_t exp = (h >> 10) & 0x1f;
    uint32_t mant = h & 0x3ffu;
    uint32_t x;
    if (exp == 0) {
        if (mant == 0) {
            x = sign;
        } else {
            exp = 127 - 15 + 1;
            while ((mant & 0x400u) == 0) {
                mant <<= 1;
                --exp;
            }
            mant &= 0x3ffu;
            x = sign | (exp << 23) | (mant << 13);
        }
    } else if (exp == 31) {
        x = sign | 0x7f800000u | (mant << 13);
    } else {
        x = sign | ((exp - 15 + 127) << 23) | (mant << 13);
    }
    float f;
    std::memcpy(&f, &x, 4);
    return f;
}

void write_container(const std::string& path, const Container& c) {
    if (c.n_frames < 0 || c.height <= 0 || c.width <= 0 || c.channels <= 0)
        throw std::invalid_argument("container: bad geometry for " + path);
    if (static_cast<int64_t>(c.data.size()) != c.n_frames * c.frame_size())
        throw std::invalid_argument("container: data size mismatch for " + path);
    std::string buf;
    buf.reserve(14 + c.data.size() * 4);
    buf.append(kMagic, 5);
    put<uint32_t>(buf, static_cast<uint32_t>(c.n_frames));
    put<uint16_t>(buf, static_cast<uint16_t>(c.height));
    put<uint16_t>(buf, static_cast<uint16_t>(c.width));
    put<uint8_t>(buf, static_cast<uint8_t>(c.dtype));
    put<uint8_t>(buf, static_cast<uint8_t>(c.state));
    if (c.dtype == Dtype::F32) {
        for (double v : c.data) put<float>(buf, static_cast<float>(v));
    } else {
        for (double v : c.data) put<uint16_t>(buf, f32_to_f16(static_cast<float>(v)));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("container: cannot open " + path + " for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("container: short write to " + path);
}

Container read_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("container: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 14 || std::memcmp(buf.data(), kMagic, 5) != 0)
        throw std::runtime_error("container: bad magic in " + path);
    const char* p = buf.data() + 5;
    const char* end = buf.data() + buf.size();
    Container c;
    c.n_frames = take<uint32_t>(p, end);
    c.height = take<uint16_t>(p, end);
    c.width = take<uint16_t>(p, end);
    const uint8_t dtype = take<uint8_t>(p, end);
    const uint8_t state = take<uint8_t>(p, end);
    if (dtype > 1) throw std::runtime_error("container: unknown dtype in " + path);
    if (state > 2) throw std::runtime_error("container: unknown state in " + path);
    c.dtype = static_cast<Dtype>(dtype);
    c.state = static_cast<MapState>(state);
    const size_t payload = buf.size() - 14;
    const size_t elem = c.dtype == Dtype::F32 ? 4 : 2;
    const int64_t plane = c.n_frames * c.height * c.width;
    if (plane <= 0 || payload % elem != 0 ||
        (static_cast<int64_t>(payload / elem)) % plane != 0)
        throw std::runtime_error("container: payload does not tile frames in " + path);
    c.channels = static_cast<int64_t>(payload / elem) / plane;
    c.data.resize(payload / elem);
    for (size_t i = 0; i < c.data.size(); ++i) {
        if (c.dtype == Dtype::F32)
            c.data[i] = take<float>(p, end);
        else
            c.data[i] = f16_to_f32(take<uint16_t>(p, end));
    }
    return c;
}

} // namespace viasnet::io
