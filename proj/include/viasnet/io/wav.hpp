#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace viasnet::io {

struct WavData {
    int64_t sample_rate = 0;
    std::vector<double> samples; // mono, [-1,1]
};

// Mono IEEE-float32 WAV writer; reader also accepts 16-bit PCM.
void write_wav(const std::string& path, const WavData& w);
WavData read_wav(const std::string& path);

} // namespace viasnet::io
