#include "dnls/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace dnls {

namespace {

constexpr char kMagic[8] = {'D', 'N', 'L', 'S', 'F', 'L', 'D', '1'};

}  // namespace

void write_field_snapshot(const std::filesystem::path& path, const Field& u,
                          double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  const std::uint32_t dims[4] = {static_cast<std::uint32_t>(u.grid.n1()),
                                 static_cast<std::uint32_t>(u.grid.n2()),
                                 static_cast<std::uint32_t>(u.grid.n3()), 0};
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(&time), sizeof(time));
  out.write(reinterpret_cast<const char*>(u.values.data()),
            static_cast<std::streamsize>(u.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

FieldSnapshot read_field_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  std::uint32_t dims[4];
  FieldSnapshot snap;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(dims), sizeof(dims));
  in.read(reinterpret_cast<char*>(&snap.time), sizeof(snap.time));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error(path.string() + " is not a field snapshot");
  snap.n1 = static_cast<int>(dims[0]);
  snap.n2 = static_cast<int>(dims[1]);
  snap.n3 = static_cast<int>(dims[2]);
  const std::size_t n =
      static_cast<std::size_t>(snap.n1) * snap.n2 * snap.n3;
  snap.values.resize(n);
  in.read(reinterpret_cast<char*>(snap.values.data()),
          static_cast<std::streamsize>(n * sizeof(Complex)));
  if (!in) throw std::runtime_error("truncated field snapshot " + path.string());
  return snap;
}

}  // namespace dnls
