// Copyright 2026 The qmlbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmlbench/varmodels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace qmlbench {

std::string_view to_string(ModelKind kind) { return kind == ModelKind::vqc ? "vqc" : "qcnn"; }

ModelKind parse_model_kind(std::string_view s) {
  if (s == "vqc") return ModelKind::vqc;
  if (s == "qcnn") return ModelKind::qcnn;
  throw ParameterError("unknown variational model kind '" + std::string(s) + "'");
}

std::string_view to_string(Optimizer opt) {
  return opt == Optimizer::spsa ? "spsa" : "gradient_descent";
}

Optimizer parse_optimizer(std::string_view s) {
  if (s == "spsa") return Optimizer::spsa;
  if (s == "gradient_descent") return Optimizer::gradient_descent;
  throw ParameterError("unknown optimizer '" + std::string(s) + "'");
}

int QcnnSpec::layers() const {
  if (n_qubits < 2 || !std::has_single_bit(static_cast<unsigned>(n_qubits)))
    throw ParameterError("QCNN needs a power-of-two qubit count >= 2, got " +
                         std::to_string(n_qubits));
  return std::countr_zero(static_cast<unsigned>(n_qubits));
}

Circuit build_ansatz(int n_qubits, int layers) {
  if (layers < 1) throw ParameterError("ansatz needs at least one layer");
  Circuit c(n_qubits);
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < n_qubits; ++q) {
      const auto slot = c.add_param("ry_l" + std::to_string(l) + "_q" + std::to_string(q));
      c.add(Gate::ry(q, 0.0).with_slot(slot));
    }
    if (n_qubits == 2) {
      c.add(Gate::cz(0, 1));
    } else if (n_qubits > 2) {
      for (int q = 0; q < n_qubits; ++q) c.add(Gate::cz(q, (q + 1) % n_qubits));
    }
  }
  return c;
}

Circuit build_qcnn(const QcnnSpec& spec) {
  const int layers = spec.layers();
  Circuit c(spec.n_qubits);
  std::vector<int> active(static_cast<std::size_t>(spec.n_qubits));
  for (int q = 0; q < spec.n_qubits; ++q) active[static_cast<std::size_t>(q)] = q;

  for (int l = 0; l < layers; ++l) {
    const std::string tag = "l" + std::to_string(l);
    const auto a = c.add_param("conv_a_" + tag);
    const auto b = c.add_param("conv_b_" + tag);
    const auto cc = c.add_param("conv_c_" + tag);
    const auto d = c.add_param("pool_d_" + tag);
    const auto e = c.add_param("pool_e_" + tag);
    const auto f = c.add_param("pool_f_" + tag);

    std::vector<int> survivors;
    for (std::size_t k = 0; k + 1 < active.size(); k += 2) {
      const int p = active[k], s = active[k + 1];
      c.add(Gate::ry(p, 0.0).with_slot(a));
      c.add(Gate::ry(s, 0.0).with_slot(b));
      c.add(Gate::cz(p, s));
      c.add(Gate::ry(p, 0.0).with_slot(cc));
    }
    for (std::size_t k = 0; k + 1 < active.size(); k += 2) {
      const int p = active[k], s = active[k + 1];
      c.add(Gate::cry(s, p, 0.0).with_slot(d));
      c.add(Gate::rz(p, 0.0).with_slot(e));
      c.add(Gate::ry(p, 0.0).with_slot(f));
      survivors.push_back(p);
    }
    active = std::move(survivors);
  }
  return c;
}

VqcModel make_vqc(const FeatureMapSpec& feature_map, int layers) {
  VqcModel m;
  m.kind = ModelKind::vqc;
  m.feature_map = feature_map;
  m.layers = layers;
  m.ansatz = build_ansatz(feature_map.n_qubits, layers);
  m.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.ansatz.num_params()));
  m.readout_qubit = 0;
  return m;
}

VqcModel make_qcnn(const FeatureMapSpec& feature_map) {
  VqcModel m;
  m.kind = ModelKind::qcnn;
  m.feature_map = feature_map;
  m.layers = QcnnSpec{feature_map.n_qubits}.layers();
  m.ansatz = build_qcnn(QcnnSpec{feature_map.n_qubits});
  m.theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.ansatz.num_params()));
  m.readout_qubit = 0;
  return m;
}

Circuit full_circuit(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return concat(build_feature_map(x, model.feature_map), model.ansatz);
}

namespace {

void check_theta(const VqcModel& model) {
  if (static_cast<std::size_t>(model.theta.size()) != model.ansatz.num_params())
    throw BindingError("model theta has " + std::to_string(model.theta.size()) +
                       " entries, ansatz has " + std::to_string(model.ansatz.num_params()) +
                       " slots");
}

void check_rows(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                const Eigen::Ref<const Eigen::VectorXi>& labels) {
  if (rows.rows() == 0) throw DataError("cost needs a nonempty dataset");
  if (rows.rows() != labels.size()) throw DimensionError("row and label counts differ");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) != 0 && labels(i) != 1) throw DataError("labels must be 0 or 1");
}

double z_after(const Statevector& encoded, const Circuit& bound_ansatz, int readout) {
  return expectation_z(apply_circuit(encoded, bound_ansatz), readout);
}

// d loss / d <Z> for p = (1 + z) / 2; zero where the clamp is active.
double dloss_dz(double z, int y) {
  const double p = 0.5 * (1.0 + z);
  if (p <= kProbabilityClamp || p >= 1.0 - kProbabilityClamp) return 0.0;
  const double dldp = y == 1 ? -1.0 / p : 1.0 / (1.0 - p);
  return 0.5 * dldp;
}

}  // namespace

double readout_expectation(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_theta(model);
  Statevector state = encode_state(x, model.feature_map);
  apply_circuit_inplace(state, model.ansatz, model.theta);
  return expectation_z(state, model.readout_qubit);
}

double forward(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::clamp(0.5 * (1.0 + readout_expectation(model, x)), 0.0, 1.0);
}

Eigen::VectorXi predict(const VqcModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  Eigen::VectorXi out(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    out(i) = forward(model, rows.row(i).transpose()) >= 0.5 ? 1 : 0;
  return out;
}

double bce(double p, int y) {
  const double pc = std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return y == 1 ? -std::log(pc) : -std::log(1.0 - pc);
}

double cost(const VqcModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
            const Eigen::Ref<const Eigen::VectorXi>& labels) {
  check_rows(rows, labels);
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    total += bce(forward(model, rows.row(i).transpose()), labels(i));
  return total / double(rows.rows());
}

Eigen::VectorXd grad_parameter_shift(const VqcModel& model,
                                     const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                     const Eigen::Ref<const Eigen::VectorXi>& labels) {
  check_rows(rows, labels);
  check_theta(model);
  Circuit bound = bind(model.ansatz, model.theta);
  const auto& gates = model.ansatz.gates();

  constexpr double kHalfPi = kPi / 2;
  const double c_plus = (std::sqrt(2.0) + 1.0) / (4.0 * std::sqrt(2.0));
  const double c_minus = (std::sqrt(2.0) - 1.0) / (4.0 * std::sqrt(2.0));

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(model.theta.size());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const Statevector encoded = encode_state(rows.row(r).transpose(), model.feature_map);
    const double z0 = z_after(encoded, bound, model.readout_qubit);
    const double chain = dloss_dz(z0, labels(r));
    if (chain == 0.0) continue;

    auto shifted = [&](std::size_t g, double shift) {
      double& angle = bound.gates()[g].angle;
      const double saved = angle;
      angle = saved + shift;
      const double z = z_after(encoded, bound, model.readout_qubit);
      angle = saved;
      return z;
    };

    for (std::size_t g = 0; g < gates.size(); ++g) {
      if (!gates[g].slot) continue;
      double dz = 0.0;
      if (gates[g].kind == GateKind::CRY) {
        dz = c_plus * (shifted(g, kHalfPi) - shifted(g, -kHalfPi)) -
             c_minus * (shifted(g, 3 * kHalfPi) - shifted(g, -3 * kHalfPi));
      } else {
        dz = 0.5 * (shifted(g, kHalfPi) - shifted(g, -kHalfPi));
      }
      grad(static_cast<Eigen::Index>(*gates[g].slot)) += chain * dz;
    }
  }
  return grad / double(rows.rows());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Eigen::VectorXd spsa_step(const Eigen::VectorXd& theta, const CostFn& cost_fn, int k,
                          const SpsaSchedule& s, std::uint64_t seed) {
  if (k < 1) throw ParameterError("SPSA iteration index starts at 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  Eigen::VectorXd delta(theta.size());
  for (Eigen::Index i = 0; i < delta.size(); ++i) delta(i) = coin(rng) ? 1.0 : -1.0;

  const double a_k = s.a / std::pow(double(k) + s.A, s.alpha);
  const double c_k = s.c / std::pow(double(k), s.gamma);
  const double diff = cost_fn(theta + c_k * delta) - cost_fn(theta - c_k * delta);
  if (diff == 0.0) return theta;
  // delta_i is +-1, so 1 / delta_i == delta_i.
  const Eigen::VectorXd g = (diff / (2.0 * c_k)) * delta;
  return theta - a_k * g;
}

TrainResult train(VqcModel model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                  const Eigen::Ref<const Eigen::VectorXi>& labels, const TrainConfig& config) {
  if (config.iterations < 1) throw ParameterError("iterations must be >= 1");
  if (!(config.learning_rate > 0.0)) throw ParameterError("learning_rate must be > 0");
  check_rows(rows, labels);
  if (labels.minCoeff() == labels.maxCoeff())
    throw DataError("training needs both classes present");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(-kPi, kPi);
  model.theta.resize(static_cast<Eigen::Index>(model.ansatz.num_params()));
  for (Eigen::Index i = 0; i < model.theta.size(); ++i) model.theta(i) = init(rng);

  auto loss_at = [&](const Eigen::VectorXd& theta) {
    VqcModel probe = model;
    probe.theta = theta;
    return cost(probe, rows, labels);
  };

  TrainResult result;
  result.loss_trace.push_back(cost(model, rows, labels));
  Eigen::VectorXd best = model.theta;
  double best_loss = result.loss_trace.front();

  for (int k = 1; k <= config.iterations; ++k) {
    if (config.optimizer == Optimizer::gradient_descent) {
      model.theta -= config.learning_rate * grad_parameter_shift(model, rows, labels);
    } else {
      model.theta = spsa_step(model.theta, loss_at, k, config.spsa,
                              derive_seed(config.seed, static_cast<std::uint64_t>(k)));
    }
    const double loss = cost(model, rows, labels);
    if (!std::isfinite(loss) || !model.theta.allFinite())
      throw TrainingError("training diverged at iteration " + std::to_string(k));
    result.loss_trace.push_back(loss);
    if (loss < best_loss) {
      best_loss = loss;
      best = model.theta;
      result.best_index = static_cast<std::size_t>(k);
    }
  }
  model.theta = best;
  result.model = std::move(model);
  return result;
}

}  // namespace qmlbench
