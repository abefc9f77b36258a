#pragma once

#include <stdexcept>
#include <string>

namespace modvis {

// Base class for every error raised by the engine.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AmbientMismatch : EngineError {
  explicit AmbientMismatch(const std::string& m) : EngineError("AmbientMismatch: " + m) {}
};
struct SpanMismatch : EngineError {
  explicit SpanMismatch(const std::string& m) : EngineError("SpanMismatch: " + m) {}
};
struct NotASublattice : EngineError {
  explicit NotASublattice(const std::string& m) : EngineError("NotASublattice: " + m) {}
};
struct InfiniteQuotient : EngineError {
  explicit InfiniteQuotient(const std::string& m) : EngineError("InfiniteQuotient: " + m) {}
};
struct NotStarStable : EngineError {
  explicit NotStarStable(const std::string& m) : EngineError("NotStarStable: " + m) {}
};
struct GenusZero : EngineError {
  explicit GenusZero(const std::string& m) : EngineError("GenusZero: " + m) {}
};
struct RankNotZero : EngineError {
  explicit RankNotZero(const std::string& m) : EngineError("RankNotZero: " + m) {}
};
struct PairDegenerate : EngineError {
  explicit PairDegenerate(const std::string& m) : EngineError("PairDegenerate: " + m) {}
};
struct BoundExceeded : EngineError {
  explicit BoundExceeded(const std::string& m) : EngineError("BoundExceeded: " + m) {}
};
struct LevelTooLarge : EngineError {
  explicit LevelTooLarge(const std::string& m) : EngineError("LevelTooLarge: " + m) {}
};
struct BadReduction : EngineError {
  explicit BadReduction(const std::string& m) : EngineError("BadReduction: " + m) {}
};
struct AmbiguousMatch : EngineError {
  explicit AmbiguousMatch(const std::string& m) : EngineError("AmbiguousMatch: " + m) {}
};
struct SchemaError : EngineError {
  explicit SchemaError(const std::string& m) : EngineError("SchemaError: " + m) {}
};
struct IoError : EngineError {
  explicit IoError(const std::string& m) : EngineError("IoError: " + m) {}
};
struct ConfigError : EngineError {
  explicit ConfigError(const std::string& m) : EngineError("ConfigError: " + m) {}
};
struct CacheCorrupt : EngineError {
  explicit CacheCorrupt(const std::string& m) : EngineError("CacheCorrupt: " + m) {}
};

}  // namespace modvis
