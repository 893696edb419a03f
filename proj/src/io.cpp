#include "dsii/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

namespace dsii::io {
namespace {

constexpr char kMagic[16] = {'D', 'S', 'I', 'I', '-', 'F', 'I', 'E',
                             'L', 'D', '-', 'V', '1', 0, 0, 0};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("field file truncated");
  return v;
}

}  // namespace

void write_field(const std::string& path, const Grid& g, double t, const cvec& f) {
  if (f.size() != g.size()) throw std::invalid_argument("field size mismatch");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os.write(kMagic, sizeof(kMagic));
  put(os, kVersion);
  put(os, std::uint32_t(g.nx));
  put(os, std::uint32_t(g.ny));
  put(os, g.lx);
  put(os, g.ly);
  put(os, t);
  os.write(reinterpret_cast<const char*>(f.data()), std::streamsize(f.size() * sizeof(cplx)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

LoadedField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  char magic[16];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("not a DSII field file: " + path);
  const auto version = get<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported field version");
  const auto nx = get<std::uint32_t>(is);
  const auto ny = get<std::uint32_t>(is);
  const double lx = get<double>(is);
  const double ly = get<double>(is);
  const double t = get<double>(is);
  LoadedField lf;
  lf.grid = Grid(int(nx), int(ny), lx, ly);
  lf.t = t;
  lf.f.resize(lf.grid.size());
  is.read(reinterpret_cast<char*>(lf.f.data()), std::streamsize(lf.f.size() * sizeof(cplx)));
  if (!is) throw std::runtime_error("field file truncated: " + path);
  return lf;
}

void write_norms_csv(const std::string& path,
                     const std::vector<std::pair<double, double>>& rows) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "t,l2\n";
  os.precision(17);
  for (const auto& [t, l2] : rows) os << t << ',' << l2 << '\n';
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? ',' : '\n');
  os.precision(17);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) os << r[i] << (i + 1 < r.size() ? ',' : '\n');
}

}  // namespace dsii::io
