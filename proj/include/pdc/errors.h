// Copyright 2026 The pdc-toolkit Authors
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

#ifndef PDC_ERRORS_H
#define PDC_ERRORS_H

#include <stdexcept>
#include <string>

namespace pdc {

/// A computation would exceed one of the enumeration or Hilbert-space caps.
class SizeCapExceeded : public std::runtime_error {
   public:
    explicit SizeCapExceeded(const std::string &what) : std::runtime_error(what) {}
};

/// No parameter choice satisfies the requested security targets.
class Infeasible : public std::runtime_error {
   public:
    explicit Infeasible(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace pdc

#endif  // PDC_ERRORS_H
