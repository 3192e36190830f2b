#pragma once

#include <stdexcept>
#include <string>

namespace torodyn {

// Base class for all contract failures raised by the library. The CLI maps
// these to exit code 1 (invariant violation); config problems are a separate
// hierarchy mapped to exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition was violated by the caller.
struct PreconditionError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Root isolation could not certify disks within the precision budget.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// An eigenvalue disk straddles the unit circle and the exact tests cannot
// settle which side it belongs to within the budget.
struct NeutralSpectrum : Error {
  using Error::Error;
};

// Seed of a partner search has a reducible characteristic polynomial.
struct ReducibleSeed : Error {
  using Error::Error;
};

// The cylinder window cannot resolve the ball (b^-L exceeds its diameter).
struct WindowTooCoarse : Error {
  using Error::Error;
};

// Dead-state pruning removed every state: the window sees an empty shift.
struct EmptyShift : Error {
  using Error::Error;
};

// No infinite admissible continuation exists; sampling is impossible.
struct DegenerateShift : Error {
  using Error::Error;
};

// Trace partition is coarser than the requested epsilon grid.
struct DepthTooCoarse : Error {
  using Error::Error;
};

struct EntropyOutOfRange : Error {
  using Error::Error;
};

struct InvalidGeometry : Error {
  using Error::Error;
};

// Grid and map are not compatible for exact pushforward.
struct IncompatibleGrid : Error {
  using Error::Error;
};

// A simple factor has rank < 2, so the rank >= 2 hypothesis fails structurally.
struct RankTooLow : Error {
  using Error::Error;
};

// Invalid or malformed run configuration; CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace torodyn
