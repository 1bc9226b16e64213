#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvelim/cert/relation.hpp"

namespace curvelim::frame {

enum class EntryKind { kAxiom, kTarget, kSaturation };

std::string to_string(EntryKind k);

struct RegistryEntry {
  std::string id;
  EntryKind kind = EntryKind::kTarget;
  std::string role;  // axioms only
  std::string text;
  Polynomial poly;
  std::string citation;
  std::string quote;
  std::vector<std::string> notes;
};

struct Axiom {
  std::string id;
  Polynomial poly;
  std::string citation;
  std::string quote;
  std::string role;  // constraint | curvature-component | biharmonic | codazzi | nondegeneracy | definition

  Relation relation() const { return {id, poly, citation, quote}; }
};

struct NamedSaturation {
  std::string id;
  SaturationRecord record;
  std::string citation;
};

class EquationRegistry {
 public:
  explicit EquationRegistry(VarTablePtr table) : table_(std::move(table)) {}

  // Line format documented in data/registry.txt; throws ParseError with the line number.
  static EquationRegistry parse(const std::string& text, const VarTablePtr& table);
  // The embedded registry over load_frame_symbols().
  static const EquationRegistry& frame();
  // Codazzi registry for the connection-coefficient table.
  static const EquationRegistry& codazzi();

  const VarTablePtr& table() const { return table_; }
  const std::vector<RegistryEntry>& entries() const { return entries_; }
  const RegistryEntry* find(const std::string& id) const;
  // Throws StructuralError naming the id.
  const RegistryEntry& at(const std::string& id) const;
  // Entries whose id starts with prefix + "_" or equals prefix.
  std::vector<const RegistryEntry*> family(const std::string& prefix) const;

  // Replaces an entry with the same id or appends.
  void put(RegistryEntry e);
  void add_note(const std::string& id, const std::string& note);

  std::vector<Axiom> axioms() const;
  std::vector<NamedSaturation> saturations() const;

 private:
  VarTablePtr table_;
  std::vector<RegistryEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

// Axioms of the embedded registry, including the defining relations of K, s and B.
std::vector<Axiom> load_frame_axioms();
// Pairwise differences of {-2H, lam2, lam3, lam4}, h1, and the sum of squared differences.
std::vector<NamedSaturation> frame_saturations();

// Raw text of the embedded registry.
const std::string& embedded_registry_text();

}  // namespace curvelim::frame
