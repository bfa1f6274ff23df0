#include "heismin/io.hpp"

#include <charconv>
#include <cmath>

#include "heismin/parallel.hpp"

namespace heismin::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

Mesh sample_chart(const SurfaceChart& chart, Interval u, Interval v, int nu, int nv) {
  Mesh m;
  m.nu = nu;
  m.nv = nv;
  m.vertices.resize(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  parallel_for(m.vertices.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k / static_cast<std::size_t>(nv));
    const int j = static_cast<int>(k % static_cast<std::size_t>(nv));
    const double a = nu > 1 ? u.lo + u.width() * i / (nu - 1) : u.mid();
    const double b = nv > 1 ? v.lo + v.width() * j / (nv - 1) : v.mid();
    m.vertices[k] = chart.point(a, b);
  });
  return m;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  for (const Vec3& p : mesh.vertices) {
    os << "v " << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z)
       << '\n';
  }
  for (int i = 0; i + 1 < mesh.nu; ++i) {
    for (int j = 0; j + 1 < mesh.nv; ++j) {
      const int a = i * mesh.nv + j + 1;
      os << "f " << a << ' ' << a + mesh.nv << ' ' << a + mesh.nv + 1 << ' ' << a + 1 << '\n';
    }
  }
}

}  // namespace heismin::io
