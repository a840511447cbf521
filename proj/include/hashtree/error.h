// Copyright 2026 The Hashtree Authors. All Rights Reserved.
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

#ifndef HASHTREE_ERROR_H_
#define HASHTREE_ERROR_H_

#include <stdexcept>
#include <string>

namespace hashtree {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Message length outside the domain of an operation (e.g. l < 2 for the
// planner).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A caller broke a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Arity list cannot describe a tree over the requested leaf count.
class InvalidPlanError : public Error {
 public:
  using Error::Error;
};

// Leaf count exceeds the capacity of the available levels.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// A stored rightmost profile disagrees with the recomputed tree.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// No fixed threshold constant exists for the requested case/level.
class UnsupportedConstantError : public Error {
 public:
  using Error::Error;
};

// The updatable set is not downward closed under the sequence order.
class OrderInconsistencyError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search requested beyond its configured size bound.
class ScaleError : public Error {
 public:
  using Error::Error;
};

// Block count does not match the topology, or similar input mismatch.
class InputError : public Error {
 public:
  using Error::Error;
};

// Signals a bug: an internal invariant that should be impossible to break.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hashtree

#endif  // HASHTREE_ERROR_H_
