#pragma once

#include <stdexcept>
#include <string>

namespace vimu {

// Error codes shared across the pipeline. Each maps to one failure mode a
// caller can reasonably branch on; everything else is InvalidArgument.
enum class Errc {
  // file formats
  BadMagic,
  VersionMismatch,
  TruncatedPayload,
  NonFiniteValue,
  IoFailure,
  // sequences
  EmptySequence,
  TooFewFrames,
  DegenerateBone,
  ShapeMismatch,
  // dataset assembly
  UnknownFamily,
  InsufficientRecords,
  EmptyResult,
  // training / evaluation
  DegenerateBatch,
  NonFiniteLoss,
  EmptyTrainSet,
  UnknownJointName,
  LengthMismatch,
  // configuration
  ConfigError,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace vimu
