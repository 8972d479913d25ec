#include "resona/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "resona/common.hpp"

namespace resona {

namespace {

std::uint32_t u32(const unsigned char* p) { return p[0] | (p[1] << 8) | (p[2] << 16) | (std::uint32_t(p[3]) << 24); }
std::uint16_t u16(const unsigned char* p) { return std::uint16_t(p[0] | (p[1] << 8)); }

void put32(std::vector<unsigned char>& b, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put16(std::vector<unsigned char>& b, std::uint16_t v)
{
    b.push_back(v & 0xff);
    b.push_back(v >> 8);
}

}  // namespace

WavData load_wav(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("load_wav: cannot open " + path.string());
    std::vector<unsigned char> b((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (b.size() < 12 || std::memcmp(b.data(), "RIFF", 4) != 0 || std::memcmp(b.data() + 8, "WAVE", 4) != 0)
        throw InvalidArgument("load_wav: malformed header (not RIFF/WAVE)");
    WavData w;
    bool have_fmt = false;
    std::size_t pos = 12;
    while (pos + 8 <= b.size()) {
        const std::uint32_t size = u32(b.data() + pos + 4);
        const unsigned char* body = b.data() + pos + 8;
        if (pos + 8 + size > b.size()) throw InvalidArgument("load_wav: malformed header (truncated chunk)");
        if (std::memcmp(b.data() + pos, "fmt ", 4) == 0) {
            if (size < 16) throw InvalidArgument("load_wav: malformed header (short fmt chunk)");
            if (u16(body) != 1) throw InvalidArgument("load_wav: unsupported encoding (PCM required)");
            if (u16(body + 2) != 1) throw InvalidArgument("load_wav: mono required");
            if (u16(body + 14) != 16) throw InvalidArgument("load_wav: unsupported encoding (16-bit required)");
            w.sample_rate = u32(body + 4);
            have_fmt = true;
        } else if (std::memcmp(b.data() + pos, "data", 4) == 0) {
            if (!have_fmt) throw InvalidArgument("load_wav: malformed header (data before fmt)");
            const std::size_t n = size / 2;
            w.samples.resize(n);
            for (std::size_t i = 0; i < n; ++i) w.samples[i] = std::int16_t(u16(body + 2 * i)) / 32768.0;
            return w;
        }
        pos += 8 + size + (size & 1);
    }
    throw InvalidArgument("load_wav: malformed header (no data chunk)");
}

void write_wav(const std::filesystem::path& path, const std::vector<double>& samples, std::uint32_t rate)
{
    if (rate == 0) throw InvalidArgument("write_wav: sample rate must be positive");
    std::vector<unsigned char> b;
    const auto data_bytes = std::uint32_t(2 * samples.size());
    b.insert(b.end(), {'R', 'I', 'F', 'F'});
    put32(b, 36 + data_bytes);
    b.insert(b.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put32(b, 16);
    put16(b, 1);
    put16(b, 1);
    put32(b, rate);
    put32(b, rate * 2);
    put16(b, 2);
    put16(b, 16);
    b.insert(b.end(), {'d', 'a', 't', 'a'});
    put32(b, data_bytes);
    for (double s : samples) {
        const double c = std::clamp(s, -1.0, 1.0);
        put16(b, std::uint16_t(std::int16_t(std::lround(c * 32767.0))));
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("write_wav: cannot open " + path.string());
    f.write(reinterpret_cast<const char*>(b.data()), std::streamsize(b.size()));
}

}  // namespace resona
