#pragma once

#include <filesystem>

#include "dnls/grid.hpp"

namespace dnls {

/// Raw snapshot format: 32-byte header (8-byte magic "DNLSFLD1", uint32
/// N1,N2,N3, uint32 reserved, float64 sample time), then N1*N2*N3
/// little-endian complex doubles (re,im interleaved), x-fastest.
/// Debug/restart aid, not a stability-guaranteed format.
struct FieldSnapshot {
  int n1 = 0, n2 = 0, n3 = 0;
  double time = 0.0;
  std::vector<Complex> values;
};

void write_field_snapshot(const std::filesystem::path& path, const Field& u,
                          double time);
FieldSnapshot read_field_snapshot(const std::filesystem::path& path);

}  // namespace dnls
