#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "support.hpp"
#include "symrig/cr_solver.hpp"
#include "symrig/errors.hpp"
#include "symrig/matrix_field_io.hpp"
#include "symrig/serialize.hpp"

using namespace symrig;
using namespace symrig::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / ("symrig_test_io_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::vector<double> read_f64(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<double> out;
  unsigned char b[8];
  while (in.read(reinterpret_cast<char*>(b), 8)) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
    double d;
    std::memcpy(&d, &bits, 8);
    out.push_back(d);
  }
  return out;
}

}  // namespace

TEST(Serialize, MatrixRoundTrips) {
  std::mt19937_64 rng(61);
  const ComplexLinearMap m = random_complex_matrix(3, 2, rng);
  EXPECT_EQ(complex_matrix_from_json(Json::parse(to_json(m).dump())), m);
  const RealLinearMap r = block_realify(m);
  EXPECT_EQ(real_matrix_from_json(Json::parse(to_json(r).dump())), r);
  const CxVector v = random_vector(4, rng);
  EXPECT_EQ(vector_from_json(Json::parse(to_json(v).dump())), v);
  EXPECT_EQ(vector_from_json(Json::parse("[0.5, 1]")), CxVector(Eigen::Vector2cd(0.5, 1.0)));
}

TEST(Serialize, MalformedInputRejected) {
  EXPECT_THROW(real_matrix_from_json(Json::parse("[[1, 2], [3]]")), InvalidInput);
  EXPECT_THROW(real_matrix_from_json(Json::parse("\"abc\"")), InvalidInput);
  EXPECT_THROW(complex_matrix_from_json(Json::parse("[[[1, 2, 3]]]")), InvalidInput);
  EXPECT_THROW(domain_from_json(Json::parse(R"({"variant": "torus"})")), InvalidInput);
  EXPECT_THROW(domain_from_json(Json::parse(R"({"variant": "ball", "radius": -1, "dim": 2})")), InvalidInput);
  EXPECT_THROW(domain_from_json(Json::parse(R"({"radius": 1})")), InvalidInput);
}

TEST(Serialize, DomainRoundTrips) {
  const std::vector<Domain> domains = {
      Domain::ball(0.5, 2), Domain::disc(2), Domain::polydisc({1, 1.5}), Domain::real_bidisc(1),
      Domain::cylinder(1, 3, 2), Domain::product({Domain::real_bidisc(1), Domain::polydisc({1, 1})}),
      Domain::transformed(swap_t0(), Domain::unit_polydisc(2))};
  for (const auto& g : domains) {
    const Json j = to_json(g);
    const Domain back = domain_from_json(Json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(back.describe(), g.describe());
  }
  EXPECT_EQ(to_json(Domain::cylinder(1, 3, 2))["axis"], 3);
}

TEST(Serialize, ClassificationFields) {
  const Json j = to_json(classify_orthogonal(swap_t0()));
  EXPECT_EQ(j["equivalent"], false);
  EXPECT_TRUE(j["witness"].is_null());
  EXPECT_TRUE(j["pattern"].is_null());
  EXPECT_EQ(j["failed_plane"], "TH1");
  const Json k = to_json(classify_orthogonal(RealLinearMap::Identity(4, 4)));
  EXPECT_EQ(k["pattern"], Json::parse("[1, 1]"));
  EXPECT_TRUE(k["failed_plane"].is_null());
}

TEST(Serialize, CandidateRoundTrip) {
  std::mt19937_64 rng(62);
  const AnalyticCandidate x = AnalyticCandidate::graph(3, 1, random_complex_matrix(3, 2, rng));
  const AnalyticCandidate y = candidate_from_json(Json::parse(to_json(x).dump()));
  EXPECT_EQ(y.axis, 1);
  EXPECT_EQ(y.kind, x.kind);
  EXPECT_EQ(y.point(Cx(0.3, 0.1)), x.point(Cx(0.3, 0.1)));
}

TEST(FieldJson, Kinds) {
  const MatrixField c = field_from_json(Json::parse(
      R"({"kind": "constant", "matrix": [[[0.2, 0], [0, 0]], [[0, 0], [0, 0.1]]], "support": {"variant": "ball", "radius": 0.5, "dim": 2}})"));
  EXPECT_NEAR(std::abs(c(CxVector::Zero(2))(1, 1) - Cx(0, 0.1)), 0.0, 1e-15);
  EXPECT_EQ(c(CxVector::Constant(2, 0.6)).norm(), 0.0);
  EXPECT_EQ(c.descriptor()["kind"], "constant");

  const MatrixField b = field_from_json(Json::parse(
      R"({"kind": "bump", "direction": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]], "amplitude": 0.3, "radius": 0.5})"));
  EXPECT_NEAR(spectral_norm(b(CxVector::Zero(2))), 0.3, 1e-15);

  const MatrixField p = field_from_json(Json::parse(
      R"({"kind": "pushforward", "map": {"type": "linear", "matrix": [[0.5, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}})"));
  EXPECT_NEAR(p.norm_bound(), 0.6, 1e-14);

  const MatrixField t = field_from_json(Json::parse(
      R"({"kind": "pushforward", "map": {"type": "twist", "dim": 2, "amplitude": 0.1, "radius": 0.98},
          "truncate": {"inner": {"variant": "polydisc", "radii": [0.5, 0.5]}, "width": 0.1}, "norm_bound": 0.4})"));
  EXPECT_EQ(t.norm_bound(), 0.4);
  EXPECT_EQ(t(CxVector::Constant(2, 0.7)).norm(), 0.0);

  EXPECT_THROW(field_from_json(Json::parse(R"({"kind": "spline"})")), InvalidInput);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind": "bump", "amplitude": 0.3})")), InvalidInput);
  EXPECT_THROW(field_from_json(Json::parse(R"({"kind": "grid", "path": "/nonexistent/field.bin"})")), InvalidInput);
}

TEST(FieldGridIo, RoundTripAndInterpolation) {
  const fs::path dir = scratch_dir();
  ComplexLinearMap dir_m = ComplexLinearMap::Zero(1, 1);
  dir_m(0, 0) = Cx(0.6, 0.8);
  const MatrixField f = MatrixField::bump(dir_m, 0.4, CxVector::Zero(1), 0.8);
  const FieldGrid grid = sample_field_grid(f, 1.0, 33);
  EXPECT_EQ(grid.node_count(), 33u * 33u);
  write_field_grid(grid, dir / "field.bin");
  const FieldGrid back = read_field_grid(dir / "field.bin");
  EXPECT_EQ(back.data, grid.data);
  EXPECT_EQ(back.per_axis, 33);
  EXPECT_EQ(back.extent, 1.0);
  const Json side = Json::parse(std::ifstream(dir / "field.bin.json"));
  EXPECT_EQ(side["shape"], Json::parse("[33, 33, 1, 1, 2]"));
  EXPECT_EQ(side["dtype"], "float64-le");
  EXPECT_EQ(read_f64(dir / "field.bin"), grid.data);

  // Nodes reproduce exactly; between nodes the error is second order in the spacing.
  const MatrixField g = field_from_grid(back);
  EXPECT_NEAR(std::abs(g(CxVector::Zero(1))(0, 0) - f(CxVector::Zero(1))(0, 0)), 0.0, 1e-15);
  std::mt19937_64 rng(63);
  for (int k = 0; k < 200; ++k) {
    const CxVector z = random_vector(1, rng, 0.9);
    EXPECT_LE((g(z) - f(z)).norm(), 0.02);
  }
  EXPECT_EQ(g(CxVector::Constant(1, Cx(1.5, 0))).norm(), 0.0);

  Json desc = {{"kind", "grid"}, {"path", "field.bin"}};
  const MatrixField h = field_from_json(desc, dir);
  EXPECT_EQ(h(CxVector::Constant(1, Cx(0.2, 0.1))), g(CxVector::Constant(1, Cx(0.2, 0.1))));
  fs::remove_all(dir);
}

TEST(SolutionIo, GridWriterShape) {
  const fs::path dir = scratch_dir();
  SolverConfig cfg;
  cfg.n_r = 16;
  cfg.n_theta = 32;
  const DiscSolution s = solve_disc(MatrixField::zero(2), CxVector::Zero(2), 0, cfg);
  write_solution_grid(s, dir / "z.bin");
  const std::vector<double> raw = read_f64(dir / "z.bin");
  ASSERT_EQ(raw.size(), 16u * 32u * 2u * 2u);
  const Cx node = s.z.samples()->grid.node(3, 5);
  const size_t base = ((3 * 32) + 5) * 4;
  EXPECT_NEAR(raw[base], node.real(), 1e-15);
  EXPECT_NEAR(raw[base + 1], node.imag(), 1e-15);
  const Json side = Json::parse(std::ifstream(dir / "z.bin.json"));
  EXPECT_EQ(side["shape"], Json::parse("[16, 32, 2, 2]"));
  const Json summary = solution_summary(s);
  EXPECT_EQ(summary["axis"], 1);
  EXPECT_EQ(summary["converged"], true);
  fs::remove_all(dir);
}
