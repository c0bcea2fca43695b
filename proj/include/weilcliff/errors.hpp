#pragma once

#include <stdexcept>
#include <string>

namespace weilcliff {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated structural identity, carries the witnessing triple/pair in the message.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularForm : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotDiagonal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDescriptor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlavorMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CertificateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAcyclicFlavor : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotACoboundary : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotCentral : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotACocycle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClassNotResolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankNotReached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CenterSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonCentralGenerator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IsoMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerdictFail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace weilcliff
