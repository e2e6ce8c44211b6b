#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "ejlab/model.hpp"
#include "ejlab/rng.hpp"

namespace ejlab {

inline constexpr int kModelSchemaVersion = 1;

/// Serializes a model to JSON: {schema_version, kind, n, dim, structure,
/// gram, unit}.  `structure` is a dense triple-indexed array
/// structure[i][j][k]; doubles survive the round trip exactly.
inline nlohmann::json model_to_json(const AlgebraModel& m) {
  nlohmann::json j;
  j["schema_version"] = kModelSchemaVersion;
  j["kind"] = kind_name(m.kind);
  j["n"] = m.n;
  j["dim"] = m.dim;
  nlohmann::json structure = nlohmann::json::array();
  for (int i = 0; i < m.dim; ++i) {
    nlohmann::json plane = nlohmann::json::array();
    for (int jj = 0; jj < m.dim; ++jj) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < m.dim; ++k)
        row.push_back(m.structure[static_cast<std::size_t>(i)](jj, k));
      plane.push_back(std::move(row));
    }
    structure.push_back(std::move(plane));
  }
  j["structure"] = std::move(structure);
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < m.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 0; jj < m.dim; ++jj) row.push_back(m.gram(i, jj));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  nlohmann::json unit = nlohmann::json::array();
  for (int i = 0; i < m.dim; ++i) unit.push_back(m.unit(i));
  j["unit"] = std::move(unit);
  return j;
}

/// Rebuilds a model from JSON and revalidates the algebra axioms:
/// tensor shape and symmetry, orthonormal gram, unit law, commutativity,
/// and a seeded sample of Jordan-identity and trace-associativity checks.
/// The dense matrix representation is not serialized, so imported models
/// support coordinate operations only.
inline AlgebraModel model_from_json(const nlohmann::json& j) {
  AlgebraModel m;
  m.kind = kind_from_name(j.at("kind").get<std::string>());
  m.n = j.at("n").get<int>();
  m.dim = j.at("dim").get<int>();
  if (m.n < 2 || m.dim != model_dim(m.kind, m.n))
    throw ConfigError("serialized model has inconsistent dimensions");

  const auto& st = j.at("structure");
  if (static_cast<int>(st.size()) != m.dim)
    throw ConfigError("structure tensor has wrong extent");
  m.structure.assign(static_cast<std::size_t>(m.dim),
                     Eigen::MatrixXd::Zero(m.dim, m.dim));
  for (int i = 0; i < m.dim; ++i) {
    const auto& plane = st.at(static_cast<std::size_t>(i));
    if (static_cast<int>(plane.size()) != m.dim)
      throw ConfigError("structure tensor has wrong extent");
    for (int jj = 0; jj < m.dim; ++jj) {
      const auto& row = plane.at(static_cast<std::size_t>(jj));
      if (static_cast<int>(row.size()) != m.dim)
        throw ConfigError("structure tensor has wrong extent");
      for (int k = 0; k < m.dim; ++k)
        m.structure[static_cast<std::size_t>(i)](jj, k) =
            row.at(static_cast<std::size_t>(k)).get<double>();
    }
  }

  const auto& gr = j.at("gram");
  m.gram = Eigen::MatrixXd::Zero(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int jj = 0; jj < m.dim; ++jj)
      m.gram(i, jj) =
          gr.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj))
              .get<double>();
  const auto& un = j.at("unit");
  m.unit = Eigen::VectorXd::Zero(m.dim);
  for (int i = 0; i < m.dim; ++i)
    m.unit(i) = un.at(static_cast<std::size_t>(i)).get<double>();

  // Axioms.  The gram must be the identity (the basis contract); the
  // tensor must be symmetric in all slots; the unit must act trivially.
  if ((m.gram - Eigen::MatrixXd::Identity(m.dim, m.dim)).norm() > 1e-12)
    throw ConfigError("serialized model gram is not orthonormal");
  for (int i = 0; i < m.dim; ++i)
    for (int jj = 0; jj < m.dim; ++jj)
      for (int k = 0; k < m.dim; ++k) {
        const double v = m.structure[static_cast<std::size_t>(i)](jj, k);
        if (std::abs(v - m.structure[static_cast<std::size_t>(jj)](i, k)) >
                1e-12 ||
            std::abs(v - m.structure[static_cast<std::size_t>(i)](k, jj)) >
                1e-12)
          throw ConfigError("serialized structure tensor is not symmetric");
      }

  Rng rng(0x6a6f7264616eULL);
  for (int trial = 0; trial < 8; ++trial) {
    const AlgebraElement x{&m, rng.normal_vector(m.dim)};
    const AlgebraElement y{&m, rng.normal_vector(m.dim)};
    const AlgebraElement z{&m, rng.normal_vector(m.dim)};
    const double scale = x.coords.norm() * y.coords.norm();
    if ((jordan_product(unit_element(m), x).coords - x.coords).norm() >
        1e-9 * (1.0 + x.coords.norm()))
      throw ConfigError("serialized model violates the unit law");
    const AlgebraElement x2 = jordan_product(x, x);
    const AlgebraElement lhs = jordan_product(x2, jordan_product(x, y));
    const AlgebraElement rhs = jordan_product(x, jordan_product(x2, y));
    if ((lhs.coords - rhs.coords).norm() >
        1e-9 * (1.0 + x.coords.squaredNorm() * scale))
      throw ConfigError("serialized model violates the power-associative law");
    const double a1 = trace_form(jordan_product(x, y), z);
    const double a2 = trace_form(x, jordan_product(y, z));
    if (std::abs(a1 - a2) > 1e-9 * (1.0 + scale * z.coords.norm()))
      throw ConfigError("serialized model violates trace associativity");
  }
  return m;
}

}  // namespace ejlab
