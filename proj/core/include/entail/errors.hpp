#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entail {

/// Malformed textual input. `where()` is a 1-based line for line-oriented
/// formats and a 0-based character offset for logic-form text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t where)
      : std::runtime_error(what), where_(where) {}

  std::size_t where() const noexcept { return where_; }

 private:
  std::size_t where_;
};

/// Well-formed input that violates a knowledge-base invariant.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reference to a synset id the knowledge base does not contain.
class LookupError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Annotated tokens that cannot be turned into a logical form.
class DerivationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace entail
