#pragma once

#include <stdexcept>
#include <string>

namespace brauerk {

  // Base of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed textual input: ring specs, JSON files, group specs.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  // Structurally well-formed data that violates an axiom (ring axioms,
  // module action, coherence tables, ...).
  class ValidationError : public Error {
   public:
    using Error::Error;
  };

  // A search or construction stopped at a configured limit. The answer is
  // unknown, not negative; the CLI maps this to exit code 2.
  class Inconclusive : public Error {
   public:
    Inconclusive(std::string stage, std::string const& what)
        : Error(what), _stage(std::move(stage)) {}

    std::string const& stage() const noexcept {
      return _stage;
    }

   private:
    std::string _stage;
  };

  // Order of a constructed object exceeds the size cap.
  class CapExceeded : public Inconclusive {
   public:
    CapExceeded(std::string stage, std::string const& what)
        : Inconclusive(std::move(stage), what) {}
  };

  // Node or object budget exhausted during enumeration.
  class BudgetExceeded : public Inconclusive {
   public:
    BudgetExceeded(std::string stage, std::string const& what)
        : Inconclusive(std::move(stage), what) {}
  };

}  // namespace brauerk
