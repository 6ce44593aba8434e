//
// Copyright 2026 The labeldp Authors
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
//

#ifndef LABELDP_STATUS_MACROS_H_
#define LABELDP_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define LABELDP_CONCAT_INNER_(x, y) x##y
#define LABELDP_CONCAT_(x, y) LABELDP_CONCAT_INNER_(x, y)

// Returns early from the enclosing function if `expr` is not OK.
#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _status = (expr);       \
    if (!_status.ok()) return _status;         \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>), returning its status on error and
// otherwise moving the value into `lhs`.
#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(LABELDP_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // LABELDP_STATUS_MACROS_H_
