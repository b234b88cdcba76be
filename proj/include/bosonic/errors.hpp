// Copyright 2026 The bosonic-degeneracy Authors
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

#ifndef BOSONIC_ERRORS_HPP_
#define BOSONIC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace bosonic {

// Shapes, dimensions or parameters that do not fit together.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// An input object violates a mathematical precondition (non-PSD state,
// inconsistent canonical relations, ...).
class PreconditionViolated : public std::runtime_error {
 public:
  explicit PreconditionViolated(const std::string& what) : std::runtime_error(what) {}
};

// A partial map does not preserve the symplectic form (or is not injective).
class FormNotPreserved : public PreconditionViolated {
 public:
  explicit FormNotPreserved(const std::string& what) : PreconditionViolated(what) {}
};

// The channel lacks the degeneracy a construction needs.
class NoDegeneracy : public std::runtime_error {
 public:
  explicit NoDegeneracy(const std::string& what) : std::runtime_error(what) {}
};

// Something that cannot happen for valid input happened anyway.
class InternalConsistency : public std::logic_error {
 public:
  explicit InternalConsistency(const std::string& what) : std::logic_error(what) {}
};

// Numerical thresholds shared by the whole library. Every operation that
// makes a rank or positivity decision takes one of these, defaulted.
struct Tolerance {
  // singular values below rank_rel * max(sigma_max, 1) count as zero
  double rank_rel = 1e-8;
  // skew Gram entries below this make a subspace isotropic
  double isotropy = 1e-10;
  // deviation allowed in form-preservation and basis checks
  double form = 1e-9;
  // smallest admissible eigenvalue of a matrix that must be PSD
  double eigen_floor = -1e-9;
  // subspace equality/containment via projector comparison
  double subspace = 1e-8;
};

}  // namespace bosonic

#endif  // BOSONIC_ERRORS_HPP_
