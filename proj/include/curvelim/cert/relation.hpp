#pragma once

#include <string>
#include <vector>

#include "curvelim/exactpoly/polynomial.hpp"

namespace curvelim {

// A polynomial asserted to vanish, with its source.
struct Relation {
  std::string id;
  Polynomial poly;
  std::string citation;
  std::string quote;
};

class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(MonomialOrder order) : order_(std::move(order)) {}

  // Throws StructuralError on duplicate id or zero polynomial.
  void add(Relation r);
  void add(std::string id, Polynomial poly);

  const Relation* find(const std::string& id) const;
  const Relation& at(const std::string& id) const;
  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  const MonomialOrder& order() const { return order_; }

  std::vector<Polynomial> polys() const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Relation> relations_;
  MonomialOrder order_ = MonomialOrder::grevlex();
};

struct SaturationRecord {
  Polynomial multiplier;
  std::string justification;
};

}  // namespace curvelim
