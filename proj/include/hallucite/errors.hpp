// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hallucite {

// Base of every error the library throws. Callers that only need to know
// "something in the pipeline failed" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  virtual const char* kind() const noexcept { return "Error"; }
  // Throws a copy of the same dynamic type with `prefix` prepended.
  [[noreturn]] virtual void rethrow_with(const std::string& prefix) const {
    throw Error(prefix + what());
  }
};

#define HALLUCITE_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                           \
   public:                                                              \
    using Error::Error;                                                 \
    const char* kind() const noexcept override { return #Name; }        \
    [[noreturn]] void rethrow_with(const std::string& prefix) const override { \
      throw Name(prefix + what());                                      \
    }                                                                   \
  }

// core-model
HALLUCITE_DEFINE_ERROR(MissingField);
HALLUCITE_DEFINE_ERROR(UnknownField);
HALLUCITE_DEFINE_ERROR(InvalidRecord);
HALLUCITE_DEFINE_ERROR(StatusRegression);

// extractor
HALLUCITE_DEFINE_ERROR(UnreadableDocument);
HALLUCITE_DEFINE_ERROR(EmptyDocument);
HALLUCITE_DEFINE_ERROR(NoReferenceSection);

// recognizer
HALLUCITE_DEFINE_ERROR(ModelUnavailable);
HALLUCITE_DEFINE_ERROR(LengthMismatch);

// matcher
HALLUCITE_DEFINE_ERROR(EmptyDatabase);
HALLUCITE_DEFINE_ERROR(InvalidConfig);

// bibdb
HALLUCITE_DEFINE_ERROR(MissingTitleColumn);
HALLUCITE_DEFINE_ERROR(CorruptDatabase);
HALLUCITE_DEFINE_ERROR(ManifestMismatch);
HALLUCITE_DEFINE_ERROR(LockfileMissing);

// report-cli
HALLUCITE_DEFINE_ERROR(AnnotationFailure);

#undef HALLUCITE_DEFINE_ERROR

}  // namespace hallucite
