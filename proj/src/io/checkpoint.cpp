#include "viasnet/io/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace viasnet::io {
namespace {

constexpr char kMagic[6] = {'V', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw std::runtime_error("checkpoint: truncated file");
    return v;
}

} // namespace

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    out.write(kMagic, 6);
    put<uint32_t>(out, 1);
    put<uint64_t>(out, c.meta_json.size());
    out.write(c.meta_json.data(), static_cast<std::streamsize>(c.meta_json.size()));
    put<uint64_t>(out, c.tensors.size());
    for (const auto& [name, t] : c.tensors) {
        put<uint32_t>(out, static_cast<uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        put<uint32_t>(out, static_cast<uint32_t>(t.rank()));
        for (int i = 0; i < t.rank(); ++i) put<int64_t>(out, t.dim(i));
        out.write(reinterpret_cast<const char*>(t.data()),
                  static_cast<std::streamsize>(t.size() * 8));
    }
    if (!out) throw std::runtime_error("checkpoint: short write to " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[6];
    in.read(magic, 6);
    if (!in || std::memcmp(magic, kMagic, 6) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const uint32_t version = take<uint32_t>(in);
    if (version != 1) throw std::runtime_error("checkpoint: unsupported version in " + path);
    Checkpoint c;
    const uint64_t meta_len = take<uint64_t>(in);
    c.meta_json.resize(meta_len);
    in.read(c.meta_json.data(), static_cast<std::streamsize>(meta_len));
    const uint64_t count = take<uint64_t>(in);
    for (uint64_t i = 0; i < count; ++i) {
        const uint32_t name_len = take<uint32_t>(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        const uint32_t rank = take<uint32_t>(in);
        Shape shape(rank);
        for (uint32_t d = 0; d < rank; ++d) shape[d] = take<int64_t>(in);
        Tensor t(shape);
        in.read(reinterpret_cast<char*>(t.data()), static_cast<std::streamsize>(t.size() * 8));
        if (!in) throw std::runtime_error("checkpoint: truncated tensor in " + path);
        c.tensors.emplace(std::move(name), std::move(t));
    }
    return c;
}

} // namespace viasnet::io
