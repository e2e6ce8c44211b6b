#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "ejlab/campaigns.hpp"
#include "ejlab/model.hpp"
#include "ejlab/model_io.hpp"
#include "ejlab/rng.hpp"
#include "oracles.hpp"

using namespace ejlab;

namespace {

std::vector<double> unit_vec8(int k) {
  std::vector<double> v(8, 0.0);
  v[static_cast<std::size_t>(k)] = 1.0;
  return v;
}

}  // namespace

TEST(Octonion, TableMatchesCayleyDicksonRecursion) {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const std::vector<double> prod = testor::cd_mul(unit_vec8(i), unit_vec8(j));
      const Octonion direct = Octonion::unit(i) * Octonion::unit(j);
      for (int k = 0; k < 8; ++k)
        EXPECT_EQ(prod[static_cast<std::size_t>(k)],
                  direct.c[static_cast<std::size_t>(k)])
            << "entry (" << i << "," << j << ") coordinate " << k;
    }
}

TEST(Octonion, PinnedTableEntries) {
  auto touch = [](int i, int j) { return Octonion::unit(i) * Octonion::unit(j); };
  EXPECT_EQ(touch(1, 2).c[3], 1.0);
  EXPECT_EQ(touch(2, 1).c[3], -1.0);
  EXPECT_EQ(touch(4, 5).c[1], 1.0);
  EXPECT_EQ(touch(5, 6).c[3], -1.0);
  EXPECT_EQ(touch(1, 7).c[6], 1.0);
  EXPECT_EQ(touch(6, 7).c[1], -1.0);
  EXPECT_EQ(touch(3, 3).c[0], -1.0);
  EXPECT_EQ(touch(0, 5).c[5], 1.0);
}

TEST(Octonion, PropertyBattery) {
  const OctonionKernelResult r = run_octonion_kernel(1000, 0xc0ffee, 1e-12);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_LE(r.max_alternativity, 1e-12);
  EXPECT_LE(r.max_norm_multiplicativity, 1e-12);
  EXPECT_LE(r.max_conjugation, 1e-12);
}

TEST(ModelBuild, DimensionsMatchClosedForms) {
  EXPECT_EQ(shared_model(Kind::real, 3).dim, 6);
  EXPECT_EQ(shared_model(Kind::complex, 3).dim, 9);
  EXPECT_EQ(shared_model(Kind::complex, 4).dim, 16);
  EXPECT_EQ(shared_model(Kind::quaternion, 3).dim, 15);
  EXPECT_EQ(shared_model(Kind::octonion, 3).dim, 27);
  EXPECT_EQ(model_dim(Kind::quaternion, 4), 4 * (2 * 4 - 1));
}

TEST(ModelBuild, RejectsUnsupportedSizes) {
  EXPECT_THROW(build_model(Kind::octonion, 4), ConfigError);
  EXPECT_THROW(build_model(Kind::octonion, 2), ConfigError);
  EXPECT_THROW(build_model(Kind::real, 1), ConfigError);
}

TEST(ModelBuild, SharedModelCaches) {
  EXPECT_EQ(&shared_model(Kind::complex, 3), &shared_model(Kind::complex, 3));
}

TEST(ModelBuild, StructureTensorFullySymmetric) {
  const AlgebraModel& m = shared_model(Kind::quaternion, 3);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j)
      for (int k = 0; k < m.dim; ++k) {
        const double v = m.structure[static_cast<std::size_t>(i)](j, k);
        EXPECT_EQ(v, m.structure[static_cast<std::size_t>(j)](i, k));
        EXPECT_EQ(v, m.structure[static_cast<std::size_t>(i)](k, j));
      }
}

TEST(ModelBuild, UnitActsTrivially) {
  for (Kind k : {Kind::real, Kind::complex, Kind::quaternion, Kind::octonion}) {
    const AlgebraModel& m = shared_model(k, 3);
    Rng rng(7);
    const AlgebraElement x = random_element(m, rng);
    const AlgebraElement ux = jordan_product(unit_element(m), x);
    EXPECT_LE((ux.coords - x.coords).norm(), 1e-14);
  }
}

TEST(ModelBuild, JordanProductMatchesDenseOracle) {
  for (Kind k : {Kind::real, Kind::complex, Kind::quaternion}) {
    for (int n : {2, 3}) {
      const AlgebraModel& m = shared_model(k, n);
      Rng rng(101);
      for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXd xc = rng.normal_vector(m.dim);
        const Eigen::VectorXd yc = rng.normal_vector(m.dim);
        const Eigen::VectorXd lib =
            jordan_product(element(m, xc), element(m, yc)).coords;
        const testor::CMat prod = testor::jordan_dense(
            testor::to_dense(k, n, xc), testor::to_dense(k, n, yc));
        const Eigen::VectorXd ora = testor::from_dense(k, n, prod);
        EXPECT_LE((lib - ora).norm(), 1e-12)
            << kind_name(k) << " n=" << n << " trial " << trial;
      }
    }
  }
}

TEST(ModelBuild, TraceFormMatchesDenseOracle) {
  for (Kind k : {Kind::real, Kind::complex, Kind::quaternion}) {
    const int n = 3;
    const AlgebraModel& m = shared_model(k, n);
    Rng rng(202);
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::VectorXd xc = rng.normal_vector(m.dim);
      const Eigen::VectorXd yc = rng.normal_vector(m.dim);
      const double lib = trace_form(element(m, xc), element(m, yc));
      const double ora = testor::trace_form_dense(
          k, testor::to_dense(k, n, xc), testor::to_dense(k, n, yc));
      EXPECT_NEAR(lib, ora, 1e-12);
    }
  }
}

TEST(ModelBuild, TripleProductMatchesSandwichOracle) {
  // In an associative representation {x,y,z} = (xyz + zyx)/2.
  for (Kind k : {Kind::complex, Kind::quaternion}) {
    const int n = 3;
    const AlgebraModel& m = shared_model(k, n);
    Rng rng(303);
    for (int trial = 0; trial < 30; ++trial) {
      const Eigen::VectorXd xc = rng.normal_vector(m.dim);
      const Eigen::VectorXd yc = rng.normal_vector(m.dim);
      const Eigen::VectorXd zc = rng.normal_vector(m.dim);
      const Eigen::VectorXd lib =
          triple_product(element(m, xc), element(m, yc), element(m, zc))
              .coords;
      const testor::CMat X = testor::to_dense(k, n, xc);
      const testor::CMat Y = testor::to_dense(k, n, yc);
      const testor::CMat Z = testor::to_dense(k, n, zc);
      const Eigen::VectorXd ora =
          testor::from_dense(k, n, 0.5 * (X * Y * Z + Z * Y * X));
      EXPECT_LE((lib - ora).norm(), 1e-11);
    }
  }
}

TEST(ModelBuild, JordanIdentityInEveryKind) {
  for (Kind k : {Kind::real, Kind::complex, Kind::quaternion, Kind::octonion}) {
    const AlgebraModel& m = shared_model(k, 3);
    Rng rng(404);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const AlgebraElement x = random_element(m, rng);
      const AlgebraElement y = random_element(m, rng);
      const AlgebraElement x2 = jordan_product(x, x);
      const AlgebraElement lhs = jordan_product(x2, jordan_product(x, y));
      const AlgebraElement rhs = jordan_product(x, jordan_product(x2, y));
      worst = std::max(worst, (lhs.coords - rhs.coords).norm());
    }
    EXPECT_LE(worst, 1e-10) << kind_name(k);
  }
}

TEST(ModelBuild, PositivitySeparatesSquaresFromNegatives) {
  const AlgebraModel& m = shared_model(Kind::octonion, 3);
  Rng rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const AlgebraElement y = random_element(m, rng);
    const AlgebraElement sq = jordan_product(y, y);
    EXPECT_GE(positivity_margin(sq), -1e-12);
    if (sq.coords.norm() > 1e-6)
      EXPECT_FALSE(is_positive(AlgebraElement{&m, -sq.coords}));
  }
  EXPECT_TRUE(is_positive(unit_element(m)));
}

TEST(H2Complex, FrozenProductAndCompression) {
  const AlgebraModel& m = shared_model(Kind::complex, 2);
  Eigen::VectorXd e(4), f(4);
  e << 1, 0, 0, 0;
  f << 0.5, 0.5, 1.0 / std::sqrt(2.0), 0;
  const Eigen::VectorXd ef = jordan_product(element(m, e), element(m, f)).coords;
  EXPECT_NEAR(ef(0), 0.5, 1e-15);
  EXPECT_NEAR(ef(1), 0.0, 1e-15);
  EXPECT_NEAR(ef(2), std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_NEAR(ef(3), 0.0, 1e-15);
  const SuperOperator l = mult_operator(element(m, e));
  const Eigen::VectorXd uf = (2.0 * l * l - l) * f;
  EXPECT_NEAR(uf(0), 0.5, 1e-15);
  EXPECT_NEAR(uf(1), 0.0, 1e-15);
  EXPECT_NEAR(uf(2), 0.0, 1e-15);
  EXPECT_NEAR(uf(3), 0.0, 1e-15);
}

TEST(ModelIo, RoundTripIsExact) {
  const AlgebraModel& m = shared_model(Kind::complex, 3);
  const nlohmann::json j = model_to_json(m);
  const AlgebraModel back = model_from_json(j);
  EXPECT_EQ(back.kind, m.kind);
  EXPECT_EQ(back.n, m.n);
  EXPECT_EQ(back.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    EXPECT_EQ((back.structure[static_cast<std::size_t>(i)] -
               m.structure[static_cast<std::size_t>(i)])
                  .norm(),
              0.0);
  EXPECT_EQ((back.unit - m.unit).norm(), 0.0);
  EXPECT_EQ((back.gram - m.gram).norm(), 0.0);
}

TEST(ModelIo, RejectsTamperedData) {
  const AlgebraModel& m = shared_model(Kind::real, 3);
  {
    nlohmann::json j = model_to_json(m);
    j["structure"][0][1][2] = 0.5;  // breaks slot symmetry
    EXPECT_THROW(model_from_json(j), ConfigError);
  }
  {
    nlohmann::json j = model_to_json(m);
    j["gram"][0][0] = 2.0;
    EXPECT_THROW(model_from_json(j), ConfigError);
  }
  {
    // symmetric corruption that passes the shape checks but breaks the
    // algebra laws
    nlohmann::json j = model_to_json(m);
    j["structure"][0][0][0] = 2.0;
    EXPECT_THROW(model_from_json(j), ConfigError);
  }
  {
    nlohmann::json j = model_to_json(m);
    j["dim"] = 7;
    EXPECT_THROW(model_from_json(j), ConfigError);
  }
}

TEST(ModelIo, ImportedModelComputes) {
  const AlgebraModel& m = shared_model(Kind::real, 3);
  const AlgebraModel back = model_from_json(model_to_json(m));
  Rng rng(606);
  const Eigen::VectorXd xc = rng.normal_vector(m.dim);
  const Eigen::VectorXd yc = rng.normal_vector(m.dim);
  const Eigen::VectorXd a =
      jordan_product(element(m, xc), element(m, yc)).coords;
  const Eigen::VectorXd b =
      jordan_product(element(back, xc), element(back, yc)).coords;
  EXPECT_EQ((a - b).norm(), 0.0);
}
