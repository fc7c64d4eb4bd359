#include "symrig/matrix_field_io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "symrig/errors.hpp"
#include "symrig/serialize.hpp"

namespace symrig {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void write_le(std::ostream& out, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> bytes;
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
  out.write(bytes.data(), 8);
}

double read_le(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!in) throw InvalidInput("field grid file is truncated");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::size_t FieldGrid::node_count() const { return ipow(static_cast<std::size_t>(per_axis), 2 * dim); }

ComplexLinearMap FieldGrid::at(std::size_t node) const {
  const std::size_t stride = static_cast<std::size_t>(2 * dim * dim);
  ComplexLinearMap a(dim, dim);
  const double* p = data.data() + node * stride;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c, p += 2) a(r, c) = Cx(p[0], p[1]);
  }
  return a;
}

FieldGrid sample_field_grid(const MatrixField& f, double extent, int per_axis) {
  if (per_axis < 2 || !(extent > 0.0)) throw InvalidInput("field grid needs per_axis >= 2 and extent > 0");
  FieldGrid g;
  g.dim = f.dim();
  g.per_axis = per_axis;
  g.extent = extent;
  const std::size_t nodes = g.node_count();
  g.data.reserve(nodes * 2 * g.dim * g.dim);
  const double h = 2.0 * extent / (per_axis - 1);
  for (std::size_t node = 0; node < nodes; ++node) {
    RealVector x(2 * g.dim);
    std::size_t rest = node;
    for (int ax = 2 * g.dim - 1; ax >= 0; --ax) {
      x[ax] = -extent + h * static_cast<double>(rest % per_axis);
      rest /= per_axis;
    }
    const ComplexLinearMap a = f(to_complex(x));
    for (int r = 0; r < g.dim; ++r) {
      for (int c = 0; c < g.dim; ++c) {
        g.data.push_back(a(r, c).real());
        g.data.push_back(a(r, c).imag());
      }
    }
  }
  return g;
}

MatrixField field_from_grid(FieldGrid grid) {
  const int n = grid.dim;
  if (n < 1 || grid.per_axis < 2 || grid.data.size() != grid.node_count() * 2 * n * n) {
    throw InvalidInput("field grid shape does not match its data");
  }
  double bound = 0.0;
  for (std::size_t node = 0; node < grid.node_count(); ++node) bound = std::max(bound, operator_norm(grid.at(node)));
  auto shared = std::make_shared<const FieldGrid>(std::move(grid));
  auto eval = [shared](const CxVector& z) -> ComplexLinearMap {
    const FieldGrid& g = *shared;
    const int axes = 2 * g.dim;
    const RealVector x = to_real(z);
    const double h = 2.0 * g.extent / (g.per_axis - 1);
    std::vector<int> base(axes);
    std::vector<double> frac(axes);
    for (int ax = 0; ax < axes; ++ax) {
      const double s = (x[ax] + g.extent) / h;
      if (s < 0.0 || s > g.per_axis - 1) return ComplexLinearMap::Zero(g.dim, g.dim);
      base[ax] = std::min(static_cast<int>(std::floor(s)), g.per_axis - 2);
      frac[ax] = s - base[ax];
    }
    ComplexLinearMap a = ComplexLinearMap::Zero(g.dim, g.dim);
    for (std::size_t corner = 0; corner < (std::size_t{1} << axes); ++corner) {
      double w = 1.0;
      std::size_t node = 0;
      for (int ax = 0; ax < axes; ++ax) {
        const bool up = (corner >> (axes - 1 - ax)) & 1u;
        w *= up ? frac[ax] : 1.0 - frac[ax];
        node = node * g.per_axis + base[ax] + (up ? 1 : 0);
      }
      if (w != 0.0) a += w * g.at(node);
    }
    return a;
  };
  const double extent = shared->extent;
  return MatrixField(n, eval, Domain::polydisc(std::vector<double>(n, extent * std::sqrt(2.0))), bound,
                     {{"kind", "grid"}, {"dim", n}, {"per_axis", shared->per_axis}, {"extent", extent}});
}

void write_field_grid(const FieldGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  for (double x : grid.data) write_le(out, x);
  std::vector<int> shape(2 * grid.dim, grid.per_axis);
  shape.insert(shape.end(), {grid.dim, grid.dim, 2});
  const nlohmann::json sidecar = {{"dtype", "float64-le"},
                                  {"order", "row-major"},
                                  {"shape", shape},
                                  {"dim", grid.dim},
                                  {"bounds", {-grid.extent, grid.extent}}};
  std::ofstream side(path.string() + ".json");
  if (!side) throw InvalidInput("cannot write sidecar for " + path.string());
  side << sidecar.dump(2) << '\n';
}

FieldGrid read_field_grid(const std::filesystem::path& path) {
  std::ifstream side(path.string() + ".json");
  if (!side) throw InvalidInput("missing sidecar " + path.string() + ".json");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(side);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sidecar: ") + e.what());
  }
  FieldGrid g;
  try {
    g.dim = meta.at("dim").get<int>();
    const auto shape = meta.at("shape").get<std::vector<int>>();
    const auto bounds = meta.at("bounds").get<std::vector<double>>();
    if (g.dim < 1 || shape.size() != static_cast<std::size_t>(2 * g.dim + 3) || bounds.size() != 2 ||
        bounds[0] != -bounds[1]) {
      throw InvalidInput("sidecar shape or bounds inconsistent");
    }
    g.per_axis = shape.front();
    g.extent = bounds[1];
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed sidecar: ") + e.what());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  const std::size_t count = g.node_count() * 2 * g.dim * g.dim;
  g.data.resize(count);
  for (double& x : g.data) x = read_le(in);
  return g;
}

MatrixField field_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InvalidInput("field descriptor needs a string \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) throw InvalidInput(std::string("field needs numeric \"") + key + "\"");
    return j.at(key).get<double>();
  };
  std::optional<MatrixField> f;
  if (kind == "constant") {
    std::optional<Domain> support;
    if (j.contains("support")) support = domain_from_json(j.at("support"));
    if (!j.contains("matrix")) throw InvalidInput("constant field needs \"matrix\"");
    f = MatrixField::constant(complex_matrix_from_json(j.at("matrix")), std::move(support));
  } else if (kind == "bump") {
    if (!j.contains("direction")) throw InvalidInput("bump field needs \"direction\"");
    const ComplexLinearMap dir = complex_matrix_from_json(j.at("direction"));
    const CxVector center =
        j.contains("center") ? vector_from_json(j.at("center")) : CxVector(CxVector::Zero(dir.rows()));
    f = MatrixField::bump(dir, number("amplitude"), center, number("radius"));
  } else if (kind == "grid") {
    if (!j.contains("path") || !j.at("path").is_string()) throw InvalidInput("grid field needs \"path\"");
    std::filesystem::path p = j.at("path").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    f = field_from_grid(read_field_grid(p));
  } else if (kind == "pushforward") {
    if (!j.contains("map") || !j.at("map").is_object()) throw InvalidInput("pushforward field needs \"map\"");
    const nlohmann::json& m = j.at("map");
    const std::string type = m.value("type", "");
    if (type == "linear") {
      if (!m.contains("matrix")) throw InvalidInput("linear map needs \"matrix\"");
      f = pushforward(JacobianField::linear(real_matrix_from_json(m.at("matrix"))));
    } else if (type == "twist") {
      if (!m.contains("dim") || !m.contains("amplitude") || !m.contains("radius")) {
        throw InvalidInput("twist map needs dim, amplitude and radius");
      }
      try {
        f = pushforward(JacobianField::twist(m.at("dim").get<int>(), m.at("amplitude").get<double>(),
                                             m.at("radius").get<double>()));
      } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed twist map: ") + e.what());
      }
    } else {
      throw InvalidInput("unknown pushforward map type \"" + type + "\"");
    }
  } else {
    throw InvalidInput("unknown field kind \"" + kind + "\"");
  }
  if (j.contains("truncate")) {
    const nlohmann::json& t = j.at("truncate");
    if (!t.is_object() || !t.contains("inner") || !t.contains("width") || !t.at("width").is_number()) {
      throw InvalidInput("truncate needs \"inner\" and numeric \"width\"");
    }
    f = truncate_field(*f, domain_from_json(t.at("inner")), t.at("width").get<double>());
  }
  if (j.contains("norm_bound")) f = f->with_norm_bound(number("norm_bound"));
  return f->with_descriptor(j);
}

}  // namespace symrig
