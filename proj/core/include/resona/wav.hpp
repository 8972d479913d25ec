#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace resona {

struct WavData {
    std::uint32_t sample_rate = 0;
    std::vector<double> samples;  // in [-1, 1]
};

// PCM 16-bit mono RIFF/WAVE only.
WavData load_wav(const std::filesystem::path& path);
// Samples are clipped to [-1, 1] and written as PCM 16-bit mono.
void write_wav(const std::filesystem::path& path, const std::vector<double>& samples, std::uint32_t sample_rate);

}  // namespace resona
