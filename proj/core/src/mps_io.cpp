#include "topomagic/mps_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "topomagic/errors.hpp"

namespace topomagic {

static_assert(std::endian::native == std::endian::little, "checkpoint format assumes little-endian hosts");

namespace {

constexpr std::array<char, 4> kMagic{'T', 'M', 'P', 'S'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw std::runtime_error("truncated MPS file");
  return v;
}

}  // namespace

void write_mps(std::ostream& out, const Mps& psi) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, psi.ortho_center() ? static_cast<std::uint32_t>(*psi.ortho_center()) : UINT32_MAX);
  put<std::uint64_t>(out, psi.local_dim());
  put<std::uint64_t>(out, psi.length());
  put<double>(out, psi.norm_log());
  for (const auto& t : psi.sites()) {
    for (std::size_t a = 0; a < 3; ++a) put<std::uint64_t>(out, t.extent(a));
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(cplx)));
  }
  if (!out) throw std::runtime_error("failed writing MPS");
}

Mps read_mps(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw std::runtime_error("not an MPS checkpoint");
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("unsupported MPS checkpoint version");
  const auto center = get<std::uint32_t>(in);
  const auto d = get<std::uint64_t>(in);
  const auto length = get<std::uint64_t>(in);
  const double norm_log = get<double>(in);
  if (length == 0 || length > 100000 || d == 0 || d > 16) throw std::runtime_error("corrupt MPS header");
  std::vector<DenseTensor> ts;
  ts.reserve(length);
  for (std::uint64_t i = 0; i < length; ++i) {
    Shape shape(3);
    for (auto& e : shape) e = get<std::uint64_t>(in);
    if (shape_product(shape) > (std::size_t{1} << 28)) throw std::runtime_error("corrupt MPS tensor extents");
    std::vector<cplx> data(shape_product(shape));
    if (!in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(cplx)))) {
      throw std::runtime_error("truncated MPS file");
    }
    ts.emplace_back(std::move(shape), std::move(data));
  }
  Mps psi(d, std::move(ts));
  psi.set_norm_log(norm_log);
  if (center != UINT32_MAX && center < length) psi.set_ortho_center(center);
  return psi;
}

void save_mps(const std::filesystem::path& path, const Mps& psi) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    write_mps(out, psi);
  }
  std::filesystem::rename(tmp, path);
}

Mps load_mps(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_mps(in);
}

}  // namespace topomagic
