#include "core/field_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace iaw {

static_assert(std::endian::native == std::endian::little, "field files assume a little-endian host");

void write_field(const std::string& base, const RealField& f) {
  std::ofstream bin(base + ".bin", std::ios::binary);
  require(bin.good(), Errc::io, "cannot open " + base + ".bin");
  bin.write(reinterpret_cast<const char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  require(bin.good(), Errc::io, "write failed for " + base + ".bin");

  std::ofstream hdr(base + ".hdr");
  require(hdr.good(), Errc::io, "cannot open " + base + ".hdr");
  char buf[64];
  hdr << "name = " << f.name << "\n";
  hdr << "dims = " << f.grid.dims() << "\n";
  hdr << "points =";
  for (int d = 0; d < f.grid.dims(); ++d) hdr << " " << f.grid.n(d);
  hdr << "\nlengths =";
  for (int d = 0; d < f.grid.dims(); ++d) {
    std::snprintf(buf, sizeof buf, " %.17g", f.grid.length(d));
    hdr << buf;
  }
  hdr << "\nformat = float64 little-endian row-major\n";
  require(hdr.good(), Errc::io, "write failed for " + base + ".hdr");
}

RealField read_field(const std::string& base) {
  std::ifstream hdr(base + ".hdr");
  require(hdr.good(), Errc::io, "cannot open " + base + ".hdr");
  std::string line, name;
  int dims = 0;
  std::vector<std::size_t> pts;
  std::vector<double> lens;
  while (std::getline(hdr, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(' ') + 1);
    std::string val = eq + 2 <= line.size() ? line.substr(eq + 2) : std::string();
    std::istringstream is(val);
    if (key == "name") name = val;
    else if (key == "dims") is >> dims;
    else if (key == "points") for (std::size_t p; is >> p;) pts.push_back(p);
    else if (key == "lengths") for (double l; is >> l;) lens.push_back(l);
  }
  require(dims >= 1 && pts.size() == static_cast<std::size_t>(dims) && lens.size() == pts.size(), Errc::io,
          "malformed header " + base + ".hdr");
  std::vector<Axis> axes;
  for (int d = 0; d < dims; ++d) axes.push_back({pts[d], lens[d]});
  RealField f(Grid(axes), name);
  std::ifstream bin(base + ".bin", std::ios::binary);
  require(bin.good(), Errc::io, "cannot open " + base + ".bin");
  bin.read(reinterpret_cast<char*>(f.v.data()), static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  require(bin.gcount() == static_cast<std::streamsize>(f.v.size() * sizeof(double)), Errc::io,
          "short read in " + base + ".bin");
  return f;
}

}  // namespace iaw
