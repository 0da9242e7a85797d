// Copyright 2026 The contractlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CONTRACTLAB_INSTANCE_IO_H_
#define CONTRACTLAB_INSTANCE_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "contractlab/instance.h"

namespace contractlab {

// Instance files are JSON objects:
//   finite: {"m": 3, "values": [...], "actions": [{"cost": c, "pmf": [...]}]}
//   ccdf:   {"m": 3, "values": [...], "cost_max": c,
//            "ccdf": [[{"cost": c, "value": F}, ...], ...]}   (m-1 curves)
// Unknown keys are rejected.
using AnyInstance = std::variant<FiniteInstance, CcdfInstance>;

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadOptions {
  // Prepends the null action to finite instances that lack one.
  bool insert_null_action = false;
};

// Throws InstanceFormatError with line/column (syntax) or a JSON path
// (schema). Semantic validity is left to ValidateFinite / ValidateCcdf.
AnyInstance ParseInstance(std::string_view text, const LoadOptions& options = {});
AnyInstance LoadInstance(const std::string& path, const LoadOptions& options = {});

std::string SerializeInstance(const FiniteInstance& instance);
std::string SerializeInstance(const CcdfInstance& instance);
void SaveInstance(const std::string& path, const FiniteInstance& instance);
void SaveInstance(const std::string& path, const CcdfInstance& instance);

// Reads a whole file; throws std::runtime_error if unreadable.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

}  // namespace contractlab

#endif  // CONTRACTLAB_INSTANCE_IO_H_
