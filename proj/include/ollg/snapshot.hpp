#pragma once

#include <string>

#include "ollg/field.hpp"

namespace ollg {

struct ChecksumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SnapshotData {
    VectorField3 n;
    double time = 0.0;
};

/// Binary snapshot: 64-byte ASCII header ("OLLG1\n" + n_side, length, time in
/// decimal text, space-padded), then row-major little-endian IEEE-754 triples
/// (n1,n2,n3 per node), then the 8-byte little-endian byte-sum checksum of
/// the payload.
void write_snapshot(const std::string& path, const VectorField3& n, double time);

/// Throws ChecksumError on a corrupted payload, std::runtime_error on a
/// malformed header.
SnapshotData read_snapshot(const std::string& path);

} // namespace ollg
