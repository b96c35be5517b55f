// Copyright 2026 The fptc Authors
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

#ifndef FPTC_ERRORS_HPP_
#define FPTC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fptc {

// Base for every error raised by the library. Each subclass corresponds to
// one failure kind so callers can catch precisely what they expect.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FPTC_DEFINE_ERROR(Name)          \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// geometry
FPTC_DEFINE_ERROR(DegenerateSegment);
FPTC_DEFINE_ERROR(AmbiguousSide);
FPTC_DEFINE_ERROR(InvalidArc);

// motion
FPTC_DEFINE_ERROR(NonPsdCovariance);
FPTC_DEFINE_ERROR(UnstableModel);
FPTC_DEFINE_ERROR(OutOfHorizon);
FPTC_DEFINE_ERROR(InvalidPlan);

// reduction / fptd
FPTC_DEFINE_ERROR(NotApproaching);
FPTC_DEFINE_ERROR(DegenerateVariance);
FPTC_DEFINE_ERROR(MethodCollapse);
FPTC_DEFINE_ERROR(NegativeDensity);
FPTC_DEFINE_ERROR(OutOfValidityDomain);

// baselines
FPTC_DEFINE_ERROR(UnsupportedRegion);

// harness
FPTC_DEFINE_ERROR(InvalidArgument);

#undef FPTC_DEFINE_ERROR

// Scenario file problems carry the offending field and, when known, the line.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = -1)
      : Error(Format(field, message, line)), field_(std::move(field)),
        line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string Format(const std::string& field,
                            const std::string& message, int line) {
    std::string out = "config error";
    if (line >= 0) out += " (line " + std::to_string(line) + ")";
    out += " in '" + field + "': " + message;
    return out;
  }

  std::string field_;
  int line_;
};

// Wraps a failure raised while running one method of an experiment.
class MethodError : public Error {
 public:
  MethodError(std::string method, const std::string& message)
      : Error(method + ": " + message), method_(std::move(method)) {}

  const std::string& method() const { return method_; }

 private:
  std::string method_;
};

}  // namespace fptc

#endif  // FPTC_ERRORS_HPP_
