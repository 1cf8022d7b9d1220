// Copyright 2026 The archbench Authors
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

#ifndef ARCHBENCH__ERRORS_HPP_
#define ARCHBENCH__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace archbench
{

/// Base class for every domain error raised by the harness.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invariant-violating computation graph.
class TopologyError : public Error
{
public:
  using Error::Error;
};

/// A ground-truth query whose preconditions do not hold (unknown entity, kind mismatch).
class OracleError : public Error
{
public:
  using Error::Error;
};

class GenerationError : public Error
{
public:
  using Error::Error;
};

class PromptError : public Error
{
public:
  using Error::Error;
};

/// Bad model configuration, missing API key, unreadable config file.
class ConfigError : public Error
{
public:
  using Error::Error;
};

class ReplayError : public Error
{
public:
  using Error::Error;
};

class EvaluationError : public Error
{
public:
  using Error::Error;
};

/// A pipeline stage was invoked before the stage it depends on completed.
class StageOrderError : public Error
{
public:
  using Error::Error;
};

}  // namespace archbench

#endif  // ARCHBENCH__ERRORS_HPP_
