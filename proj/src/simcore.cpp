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

#include "qmlbench/simcore.hpp"

#include <sstream>

namespace qmlbench {

std::string to_string(const Gate& gate) {
  std::ostringstream os;
  os << gate_name(gate.kind) << '(' << gate.targets[0];
  if (gate.arity() == 2) os << ',' << gate.targets[1];
  if (is_rotation(gate.kind)) {
    if (gate.slot)
      os << "; p" << *gate.slot;
    else
      os << "; " << gate.angle;
  }
  os << ')';
  return os.str();
}

Circuit bind(const Circuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& params) {
  if (static_cast<std::size_t>(params.size()) != circuit.num_params())
    throw BindingError("circuit has " + std::to_string(circuit.num_params()) +
                       " parameter slots but " + std::to_string(params.size()) +
                       " values were supplied");
  Circuit out(circuit.n_qubits());
  for (Gate g : circuit.gates()) {
    if (g.slot) {
      g.angle = params(static_cast<Eigen::Index>(*g.slot));
      g.slot.reset();
    }
    out.add(g);
  }
  return out;
}

Circuit concat(const Circuit& head, const Circuit& tail) {
  if (head.n_qubits() != tail.n_qubits())
    throw DimensionError("cannot concatenate circuits on different registers");
  Circuit out = head;
  const std::size_t offset = head.num_params();
  for (const auto& name : tail.param_slots()) out.add_param(name);
  for (Gate g : tail.gates()) {
    if (g.slot) g.slot = *g.slot + offset;
    out.add(g);
  }
  return out;
}

}  // namespace qmlbench
