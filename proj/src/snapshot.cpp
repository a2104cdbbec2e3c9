#include "ollg/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace ollg {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts need byte swaps");

namespace {

constexpr std::size_t kHeaderSize = 64;
constexpr char kMagic[] = "OLLG1\n";

std::uint64_t byte_sum(const unsigned char* data, std::size_t len) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < len; ++i) s += data[i];
    return s;
}

} // namespace

void write_snapshot(const std::string& path, const VectorField3& n, double time) {
    char header[kHeaderSize];
    std::memset(header, ' ', sizeof header);
    const int len = std::snprintf(header, sizeof header, "OLLG1\n%d %.17g %.17g", n.grid.n_side,
                                  n.grid.length, time);
    if (len < 0 || static_cast<std::size_t>(len) >= kHeaderSize)
        throw std::runtime_error("write_snapshot: header overflow");
    header[len] = ' ';   // undo snprintf's terminator, keep space padding
    header[kHeaderSize - 1] = '\n';

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out.write(header, sizeof header);
    const auto* payload = reinterpret_cast<const unsigned char*>(n.values.data());
    const std::size_t payload_len = n.values.size() * sizeof(double);
    out.write(reinterpret_cast<const char*>(payload), static_cast<std::streamsize>(payload_len));
    const std::uint64_t sum = byte_sum(payload, payload_len);
    out.write(reinterpret_cast<const char*>(&sum), sizeof sum);
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

SnapshotData read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    char header[kHeaderSize];
    in.read(header, sizeof header);
    if (in.gcount() != kHeaderSize || std::memcmp(header, kMagic, 6) != 0)
        throw std::runtime_error("read_snapshot: bad header in " + path);

    int n_side = 0;
    double length = 0.0, time = 0.0;
    {
        char body[kHeaderSize - 5];
        std::memcpy(body, header + 6, kHeaderSize - 6);
        body[kHeaderSize - 6] = '\0';
        if (std::sscanf(body, "%d %lf %lf", &n_side, &length, &time) != 3)
            throw std::runtime_error("read_snapshot: unparsable header in " + path);
    }

    SnapshotData snap;
    snap.time = time;
    snap.n = VectorField3(GridSpec::make(n_side, length));
    const std::size_t payload_len = snap.n.values.size() * sizeof(double);
    in.read(reinterpret_cast<char*>(snap.n.values.data()),
            static_cast<std::streamsize>(payload_len));
    if (in.gcount() != static_cast<std::streamsize>(payload_len))
        throw std::runtime_error("read_snapshot: truncated payload in " + path);
    std::uint64_t stored = 0;
    in.read(reinterpret_cast<char*>(&stored), sizeof stored);
    if (in.gcount() != sizeof stored)
        throw std::runtime_error("read_snapshot: missing checksum in " + path);
    const std::uint64_t sum =
        byte_sum(reinterpret_cast<const unsigned char*>(snap.n.values.data()), payload_len);
    if (sum != stored)
        throw ChecksumError("read_snapshot: checksum mismatch in " + path);
    return snap;
}

} // namespace ollg
