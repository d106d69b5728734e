// SPDX-License-Identifier: Apache-2.0
//
// beamsim: optimal analog beamforming analysis for sparse mmWave links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace beamsim {

/// Argument outside an operation's domain. The message is prefixed with the
/// operation name.
class DomainError : public std::invalid_argument
{
  public:
    DomainError(std::string operation, const std::string& what)
        : std::invalid_argument(operation + ": " + what), operation_(std::move(operation))
    {
    }
    const std::string& operation() const noexcept { return operation_; }

  private:
    std::string operation_;
};

/// Beam count that is not a perfect square where M_t = M_r = sqrt(B) is required.
class NonSquareBeamCountError : public DomainError
{
  public:
    using DomainError::DomainError;
};

/// A numerical routine failed to converge or to certify its result.
class NumericalError : public std::runtime_error
{
  public:
    NumericalError(std::string operation, const std::string& what)
        : std::runtime_error(operation + ": " + what), operation_(std::move(operation))
    {
    }
    const std::string& operation() const noexcept { return operation_; }

  private:
    std::string operation_;
};

/// Closed-form approximation whose validity condition does not hold.
class ApproximationInvalidError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

/// Beam training cannot finish inside the coherence interval for any beam count.
class InfeasibleError : public std::runtime_error
{
  public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace beamsim
