#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esakia/error.hpp"
#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"
#include "esakia/presheaf.hpp"

namespace esakia {

/// Error in an input document, carrying a 1-based line number (0 when the
/// error is not tied to a line).
class InputError : public Error {
 public:
  InputError(std::size_t line, const std::string& message)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SyntaxError : public InputError {
 public:
  using InputError::InputError;
};

class UnresolvedReference : public InputError {
 public:
  UnresolvedReference(std::size_t line, const std::string& name)
      : InputError(line, "unresolved reference '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A declaration that parses but describes an invalid structure (a cyclic
/// order, a non-distributive lattice, a non-functorial presheaf).
class InvalidDeclaration : public InputError {
 public:
  using InputError::InputError;
};

/// Named declarations in file order.
///
/// Grammar, one statement per line, '#' to end of line is a comment:
///
///     poset NAME                     algebra NAME
///     elem ID...                     elem ID...
///     cover ID ID                    cover ID ID
///
///     map NAME DOMPOSET CODPOSET
///     send ID ID
///
///     presheaf NAME BASEPOSET
///     fiber POSET_ELEM ID...
///     restrict POSET_ELEM POSET_ELEM FIBER_ID FIBER_ID
///
/// An `algebra` block lists a finite distributive lattice by its order.
/// Maps must send every domain element exactly once.
struct InputDocument {
  std::vector<std::pair<std::string, PosetPtr>> posets;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras;
  std::vector<std::pair<std::string, PosetMap>> maps;
  std::vector<std::pair<std::string, PresheafPtr>> presheaves;

  const PosetPtr* find_poset(std::string_view name) const;
  const AlgebraPtr* find_algebra(std::string_view name) const;
  const PosetMap* find_map(std::string_view name) const;
  const PresheafPtr* find_presheaf(std::string_view name) const;
  /// Name under which a poset object was declared, if any.
  std::string name_of(const PosetPtr& p) const;
};

/// Throws SyntaxError, UnresolvedReference or InvalidDeclaration.
InputDocument parse_document(std::string_view text);
/// Reads and parses a file; an unreadable file is an InputError at line 0.
InputDocument parse_file(const std::filesystem::path& path);

void write_poset(std::ostream& out, std::string_view name, const FinitePoset& p);
/// Writes an `algebra` block listing the lattice order by its covers.
void write_algebra(std::ostream& out, std::string_view name, const FiniteHeytingAlgebra& a);
void write_map(std::ostream& out, std::string_view name, std::string_view domain,
               std::string_view codomain, const PosetMap& f);
/// Writes a homomorphism as `send` lines under a `hom` header.
void write_hom(std::ostream& out, std::string_view name, std::string_view domain,
               std::string_view codomain, const HeytingHom& h);

/// Hasse diagram: one node per element in index order, one edge per cover
/// from the lower to the upper element.
void write_dot(std::ostream& out, std::string_view name, const FinitePoset& p);
/// Hasse diagram of the total, grouped into one cluster per base element.
void write_bundle_dot(std::ostream& out, std::string_view name, const Bundle& b);

}  // namespace esakia
