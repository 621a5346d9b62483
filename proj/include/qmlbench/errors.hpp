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

#pragma once

#include <stdexcept>
#include <string>

namespace qmlbench {

/// Base class of every error raised by the library. The CLI maps
/// ValidationError subclasses to exit code 1 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QMLBENCH_DEFINE_ERROR(Name, Base) \
  class Name : public Base {              \
   public:                                \
    using Base::Base;                     \
  };

QMLBENCH_DEFINE_ERROR(CapacityError, Error)
QMLBENCH_DEFINE_ERROR(BindingError, Error)
QMLBENCH_DEFINE_ERROR(IndexError, Error)
QMLBENCH_DEFINE_ERROR(DimensionError, Error)
QMLBENCH_DEFINE_ERROR(ParameterError, Error)
QMLBENCH_DEFINE_ERROR(DataError, Error)
QMLBENCH_DEFINE_ERROR(SchemaError, Error)
QMLBENCH_DEFINE_ERROR(KernelError, Error)
QMLBENCH_DEFINE_ERROR(EncodingError, Error)
QMLBENCH_DEFINE_ERROR(TrainingError, Error)
QMLBENCH_DEFINE_ERROR(GenerationError, Error)
QMLBENCH_DEFINE_ERROR(IoError, Error)
QMLBENCH_DEFINE_ERROR(ModelKindError, Error)
QMLBENCH_DEFINE_ERROR(ValidationError, Error)

#undef QMLBENCH_DEFINE_ERROR

}  // namespace qmlbench
