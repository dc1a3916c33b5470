#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specgeo/metric_field.hpp"
#include "specgeo/rmap.hpp"
#include "specgeo/sampling.hpp"

using namespace specgeo;

namespace {


HomogeneousFunction h_xyz() {
  Eigen::Vector3d base(1.0, 1.0, 1.0);
  return HomogeneousFunction::polynomial(Polynomial(3, {{{1, 1, 1}, 1.0}}), base);
}

HomogeneousFunction h_special() {
  Eigen::Vector3d base(1.0, 2.0, 1.0);
  return HomogeneousFunction::polynomial(
      Polynomial(3, {{{2, 1, 0}, 1.0}, {{1, 0, 2}, -1.0}}), base);
}

HomogeneousFunction h_quartic() {  // x^3 y - x^2 z^2, degree 4
  Eigen::Vector3d base(1.0, 2.0, 1.0);
  return HomogeneousFunction::polynomial(
      Polynomial(3, {{{3, 1, 0}, 1.0}, {{2, 0, 2}, -1.0}}), base);
}

Eigen::VectorXcd lift(const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
  Eigen::VectorXcd z(x.size());
  for (int i = 0; i < x.size(); ++i) z[i] = Complex(y[i], x[i]);
  return z;
}

}  // namespace

TEST_CASE("rigid r-map metric blocks and y-independence") {
  auto h = h_xyz();
  Eigen::VectorXd y1 = Eigen::Vector3d(0.4, -2.0, 1.1);
  Eigen::VectorXd y2 = Eigen::Vector3d(3.0, 0.0, -0.7);
  Eigen::VectorXd x = Eigen::Vector3d::Ones();
  Eigen::MatrixXd g1 = rigid_rmap_metric(h, lift(y1, x));
  Eigen::MatrixXd g2 = rigid_rmap_metric(h, lift(y2, x));
  CHECK((g1 - g2).cwiseAbs().maxCoeff() == 0.0);

  Eigen::Matrix3d block;
  block << 0, -1, -1, -1, 0, -1, -1, -1, 0;
  CHECK((g1.topLeftCorner(3, 3) - block).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((g1.bottomRightCorner(3, 3) - block).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(g1.topRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);

  // signature doubles the (n-1, 1) Lorentzian signature of g_U
  Signature s = signature(g1);
  CHECK(s == Signature{4, 2, 0});
}

TEST_CASE("rigid r-map agrees with the prepotential route") {
  Rng rng(61);
  for (auto& h : {h_xyz(), h_special()}) {
    for (int i = 0; i < 15; ++i) {
      Eigen::VectorXcd z = sample_complex_point(h, 0.0, rng);
      CHECK(rigid_rmap_cross_residual(h, z) < 1e-10);
    }
  }
}

TEST_CASE("deformed r-map metric: hand values") {
  auto h = h_xyz();
  Eigen::VectorXd x = Eigen::Vector3d::Ones();
  Eigen::VectorXd y = Eigen::Vector3d(0.3, -0.4, 2.0);
  SUBCASE("c = 0 gives quarter identity") {
    Eigen::MatrixXd m = deformed_rmap_metric(h, 0.0, lift(y, x));
    CHECK((m - 0.25 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("c = -1/2 doubles the homogeneous example") {
    Eigen::Matrix3d block;
    block << 4, 2, 2, 2, 4, 2, 2, 2, 4;
    Eigen::MatrixXd m = deformed_rmap_metric(h, -0.5, lift(y, x));
    CHECK((m.topLeftCorner(3, 3) - 0.25 * block).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m.bottomRightCorner(3, 3) - 0.25 * block).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.topRightCorner(3, 3).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("deformed r-map: both construction paths agree and are positive definite") {
  Rng rng(67);
  for (auto& h : {h_xyz(), h_special()}) {
    for (double c : {0.0, 0.5, -0.5}) {
      for (int i = 0; i < 12; ++i) {
        Eigen::VectorXcd z = sample_complex_point(h, c, rng);
        DeformedRmapMetric m = deformed_rmap_metric_detail(h, c, z);
        CHECK(m.residual < 1e-10);
        CHECK(signature(m.path_a) == Signature{6, 0, 0});
      }
    }
  }
}

TEST_CASE("Im h identity") {
  SUBCASE("n = 1, h = z^3 by hand") {
    Eigen::VectorXd base1(1);
    base1 << 1.0;
    auto h1 = HomogeneousFunction::polynomial(Polynomial(1, {{{3}, 1.0}}), base1);
    // Im h(z) = 3y^2 x - x^3 and sum Im(zbar dh) - 4h(x) = 3|z|^2 x - 4x^3
    Eigen::VectorXcd z(1);
    z[0] = Complex(0.7, 0.4);
    CHECK(imh_identity_residual(h1, z) < 1e-14);
  }
  SUBCASE("real points are trivial") {
    auto h = h_xyz();
    Eigen::VectorXcd z(3);
    z << 1.0, 2.0, 0.5;
    CHECK(imh_identity_residual(h, z) == 0.0);
  }
  SUBCASE("fuzzed complex points") {
    Rng rng(71);
    for (auto& h : {h_xyz(), h_special()}) {
      for (int i = 0; i < 50; ++i) {
        Eigen::VectorXcd z(3);
        for (int k = 0; k < 3; ++k)
          z[k] = Complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        double scale = std::max(1.0, std::abs(z.cwiseAbs().maxCoeff()));
        CHECK(imh_identity_residual(h, z) < 1e-12 * scale * scale * scale);
      }
    }
  }
  SUBCASE("degree-4 input is rejected") {
    auto h4 = h_quartic();
    Eigen::VectorXcd z(3);
    z << 1.0, 2.0, 0.5;
    CHECK_THROWS_AS((void)imh_identity_residual(h4, z), ConfigError);
  }
}

TEST_CASE("elementary deformation identity") {
  Rng rng(73);
  SUBCASE("cubics, mixed c") {
    for (auto& h : {h_xyz(), h_special()}) {
      for (double c : {0.0, 0.35, -0.35}) {
        for (int i = 0; i < 10; ++i) {
          Eigen::VectorXcd z = sample_complex_point(h, c, rng);
          CHECK(elementary_deformation_residual(h, c, z) < 1e-10);
        }
      }
    }
  }
  SUBCASE("degree-4 family") {
    auto h4 = h_quartic();
    for (double c : {0.0, 0.3, -0.3}) {
      for (int i = 0; i < 10; ++i) {
        Eigen::VectorXcd z = sample_complex_point(h4, c, rng);
        CHECK(elementary_deformation_residual(h4, c, z) < 1e-10);
      }
    }
  }
}

TEST_CASE("doubled scaling isometry of the deformed metric") {
  auto h = h_xyz();
  Rng rng(79);
  for (double lam : {0.5, 2.0}) {
    for (double c : {-0.4, 0.4}) {
      for (int i = 0; i < 8; ++i) {
        Eigen::VectorXd x = 2.0 * sample_point_Uc(h, c, rng);
        Eigen::VectorXd y(3);
        for (int k = 0; k < 3; ++k) y[k] = rng.uniform(-1.0, 1.0);
        double c_back = c * std::pow(lam, -3.0);
        if (!(h.uc_margin(lam * x, c) > 0) || !(h.uc_margin(x, c_back) > 0)) continue;
        Eigen::MatrixXd pulled =
            lam * lam * deformed_rmap_metric(h, c, lift(lam * y, lam * x));
        Eigen::MatrixXd target = deformed_rmap_metric(h, c_back, lift(y, x));
        CHECK((pulled - target).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("deformed metric field matches the pointwise construction") {
  auto h = h_special();
  const double c = 0.4;
  MetricField field = MetricField::deformed_rmap(h, c);
  CHECK(field.dim() == 6);
  Rng rng(83);
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXd x = sample_point_Uc(h, c, rng);
    Eigen::VectorXd y(3);
    for (int k = 0; k < 3; ++k) y[k] = rng.uniform(-2.0, 2.0);
    Eigen::VectorXd yx(6);
    yx << y, x;
    CHECK((field.value(yx) - deformed_rmap_metric(h, c, lift(y, x))).cwiseAbs().maxCoeff() <
          1e-13);
  }
  // entries carry jets in all 2n variables: y-derivatives vanish
  Eigen::VectorXd yx(6);
  yx << 0.1, -0.5, 2.0, 1.0, 2.1, 0.95;
  auto jets = field.entries(yx, 1);
  for (const auto& e : jets) {
    for (int v = 0; v < 3; ++v) CHECK(e.derivative(v).value() == 0.0);
  }
  // and the 6-dim Christoffel pass runs on it
  Christoffels G = christoffel(field, yx);
  CHECK(G.n == 6);
}

TEST_CASE("curvature bookkeeping under the quarter rescaling") {
  auto h = h_special();
  const double c = -0.3;
  Eigen::Vector3d x(1.0, 2.2, 0.9);
  double scal_full = scalar_curvature(MetricField::gprime_c(h, c), x);
  double scal_quarter =
      scalar_curvature(MetricField::scaled(MetricField::gprime_c(h, c), 0.25), x);
  CHECK(scal_quarter == doctest::Approx(4.0 * scal_full).epsilon(1e-10));
}

TEST_CASE("outside U_c raises") {
  auto h = h_xyz();
  Eigen::VectorXd x = Eigen::Vector3d::Ones();
  Eigen::VectorXd y = Eigen::Vector3d::Zero();
  CHECK_THROWS_AS((void)deformed_rmap_metric(h, 0.5, lift(y, x)), DomainError);
}
