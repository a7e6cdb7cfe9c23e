#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sizecalc {

struct DominanceViolation : std::runtime_error {
  uint64_t index;
  explicit DominanceViolation(uint64_t n)
      : std::runtime_error("dominance violated at index " + std::to_string(n)), index(n) {}
};

struct MonotonicityViolation : std::runtime_error {
  uint64_t index;
  explicit MonotonicityViolation(uint64_t n)
      : std::runtime_error("size sequence decreases at index " + std::to_string(n)), index(n) {}
};

struct NotIncreasing : std::runtime_error {
  explicit NotIncreasing(const std::string& what) : std::runtime_error("function not strictly increasing: " + what) {}
};

struct IncompatibleUniverse : std::runtime_error {
  explicit IncompatibleUniverse(const std::string& what)
      : std::runtime_error("incompatible universes: " + what) {}
};

struct DuplicateElement : std::runtime_error {
  explicit DuplicateElement(const std::string& what) : std::runtime_error("duplicate element: " + what) {}
};

struct EmptyInterval : std::runtime_error {
  EmptyInterval() : std::runtime_error("interval is empty (lo >= hi)") {}
};

struct CertificateInvalid : std::logic_error {
  explicit CertificateInvalid(const std::string& what) : std::logic_error("certificate invalid: " + what) {}
};

struct SyntaxError : std::runtime_error {
  size_t position;
  SyntaxError(size_t pos, const std::string& msg)
      : std::runtime_error("syntax error at offset " + std::to_string(pos) + ": " + msg), position(pos) {}
};

struct UniverseMismatch : std::runtime_error {
  explicit UniverseMismatch(const std::string& what) : std::runtime_error("universe mismatch: " + what) {}
};

struct UnknownTheorem : std::runtime_error {
  explicit UnknownTheorem(const std::string& id) : std::runtime_error("unknown theorem: " + id) {}
};

}  // namespace sizecalc
